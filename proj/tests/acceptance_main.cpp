// One line per acceptance criterion; nonzero exit if any criterion fails.
#include <iostream>

#include "mfbs/validation.hpp"

int main() {
  const auto checks = mfbs::validation::run_acceptance();
  return mfbs::validation::report(checks, std::cout) ? 0 : 1;
}
