// Runs every verification criterion at its full documented range and exits
// nonzero if any fails.  Output is one line per criterion.

#include <iostream>

#include "rht/verify.hpp"

int main() {
  int failures = rht::run_verification_suite(std::cout, {});
  return failures == 0 ? 0 : 1;
}
