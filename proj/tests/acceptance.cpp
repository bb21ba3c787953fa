// Runs acceptance criteria 1..11 and prints one line per criterion.
// Usage: jamesop_acceptance [id ...]

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "jamesop/suites.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty())
    for (int id = 1; id <= 11; ++id) ids.push_back(id);

  const jamesop::RunConfig config;
  int failed = 0;
  for (int id : ids) {
    const jamesop::CriterionResult r = jamesop::run_criterion(id, config);
    std::printf("criterion %2d: %s  %-75s %8.2fs\n", id, r.pass ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
    if (!r.pass) {
      ++failed;
      for (const jamesop::Assertion& a : r.assertions)
        if (!a.pass)
          std::printf("    failed: %s value=%.9g bound=%.9g tol=%.3g\n", a.what.c_str(), a.value, a.bound,
                      a.tolerance);
      if (!r.note.empty()) std::printf("    note: %s\n", r.note.c_str());
    }
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", ids.size(), failed);
  return failed == 0 ? 0 : 1;
}
