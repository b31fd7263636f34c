// Acceptance suite: runs every bundled property suite at full scale and
// prints one pass/fail line per criterion.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "posprod/selftest.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  for (int i = 1; i < argc - 1; ++i) {
    if (std::strcmp(argv[i], "--seed") == 0) {
      seed = std::strtoull(argv[i + 1], nullptr, 10);
    }
  }
  const int failures = posprod::selftest::run(
      posprod::selftest::Level::full, seed,
      [](const std::string& line) { std::printf("%s\n", line.c_str()); });
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
