// Runs every acceptance criterion and prints one line per criterion.
// Exit status is non-zero when any criterion fails.

#include <cstdio>

#include "annulus/verify.hpp"

int main() {
  int failed = 0;
  for (const auto& c : annulus::verify::criteria()) {
    const auto r = annulus::verify::run(c);
    std::printf("[%s] %2d %s (%.2f s) %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  std::printf("%d of %zu criteria failed\n", failed, annulus::verify::criteria().size());
  return failed ? 1 : 0;
}
