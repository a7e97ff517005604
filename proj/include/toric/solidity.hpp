#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toric/model.hpp"

namespace toric {

struct SolidityVerdict {
  std::string variety;
  std::string group_desc;
  bool minimal = false;
  bool irreducible = false;
  bool solid = false;
  std::optional<bool> superrigid_condition_b;
  std::optional<std::string> appendix_outcome;
  std::string str() const;
};

/// Minimality + irreducibility verdict; requires a terminal model.
SolidityVerdict is_g_solid(const ToricModel& x, const FiniteMatrixGroup& w);

/// True iff w equals its own normalizer in GL(M) (no finite overgroup has it
/// as a proper normal subgroup). Requires q_irreducible(w).
bool superrigidity_condition_b(const FiniteMatrixGroup& w);

/// Appendix lookup: outcome for (variety, group column), after re-verifying
/// the computable preconditions (minimality, S4 type, transitivity notes).
/// Returns the precondition failure text instead of the label on mismatch.
std::string appendix_row(const ToricModel& x, const FiniteMatrixGroup& w);

struct SweepEntry {
  std::string variety;
  int subgroup_index = 0;
  int order = 0;
  std::string type;
  bool contains_a4 = false;
  bool minimal = false;
  bool irreducible = false;
  bool solid = false;
};

/// Verdicts over every subgroup of weyl(x); parallel kernel with a serial
/// reference for testing.
std::vector<SweepEntry> solidity_sweep(const ToricModel& x);
std::vector<SweepEntry> solidity_sweep_serial(const ToricModel& x);

struct SweepSummary {
  int groups = 0;
  int solid_count = 0;
  std::vector<std::string> violations;  // empty = the classification pattern holds
  bool pass = false;
};

/// Check the sweep of every terminal rank-3 catalog model against the
/// expected pattern: solid exactly on the five distinguished varieties for
/// subgroups containing A4, minus the two V4 exceptions.
SweepSummary check_sweep_pattern();

}  // namespace toric
