// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <cstdio>
#include <map>

#include "subcat/suites.hpp"

int main() {
  using namespace subcat::suites;
  // wall-clock limits in seconds, where a criterion states one
  const std::map<int, double> limits = {{1, 10.0}, {2, 30.0}, {10, 60.0}};
  Options opts;
  opts.seed = 1;
  int failed = 0;
  std::printf("acceptance seed=%llu\n", static_cast<unsigned long long>(opts.seed));
  for (auto& e : registry()) {
    SuiteResult r;
    std::string error;
    try {
      r = run(e, opts);
    } catch (const std::exception& ex) {
      r.name = e.name;
      error = ex.what();
    }
    bool pass = error.empty() && r.passed && !r.vacuous;
    std::string note = r.summary;
    if (auto it = limits.find(e.criterion); it != limits.end() && r.seconds > it->second) {
      pass = false;
      note += "; over the " + std::to_string(static_cast<int>(it->second)) + " s limit";
    }
    if (!error.empty()) note = "error: " + error;
    std::printf("[%s] criterion %2d %-15s %s (%.2f s)\n", pass ? "PASS" : "FAIL", e.criterion, e.name.c_str(), note.c_str(), r.seconds);
    if (!pass) {
      std::printf("  %s\n", r.to_json().dump().c_str());
      ++failed;
    }
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, registry().size());
  return failed == 0 ? 0 : 1;
}
