#pragma once

/*
 * The release gate: nine exhaustive or differential checks at desk scale,
 * each with its own in-function reference oracle where one is needed.
 * Every search result is cross-checked against an independent
 * implementation, so a regression anywhere in the stack turns exactly one
 * of these red.
 */

#include <iosfwd>
#include <string>
#include <vector>

namespace monobox {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail; // counts checked, or the first failure
  double seconds = 0.0;
};

int criterion_count();

// id is 1-based; throws std::out_of_range otherwise.  Exceptions inside a
// criterion are caught and reported as a failure.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_acceptance();

// One "PASS"/"FAIL" line per criterion; true iff all pass.
bool run_selftest(std::ostream& out);

} // namespace monobox
