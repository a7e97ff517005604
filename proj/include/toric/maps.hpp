#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toric/model.hpp"

namespace toric {

/// One end of a monomial map: a torus (cocharacter lattice) plus an optional
/// homogeneous-coordinate chart. Either a catalog model or an auxiliary
/// coordinate space sharing a model's torus.
struct TorusEnd {
  std::string name;
  EmbeddedLattice n_lattice;
  EmbeddedLattice m_lattice;
  std::optional<Chart> chart;
};

/// A single-monomial coordinate formula: sign * product of source coordinates.
struct MonomialFormula {
  int sign = 1;
  std::vector<Int> exp;  // exponents over the source homogeneous coordinates
};

/// Monomial rational map between tori: r' = signs (.) r^L in the torus
/// coordinates attached to the lattice bases, optionally carrying the
/// homogeneous formulas it was extracted from.
struct MonomialRationalMap {
  std::string name;
  std::string source, target;
  IMat lattice_map;        // reference coordinates, N_src -> N_tgt
  IMat lattice_map_bases;  // basis coordinates; row j = exponents of r'_j
  std::vector<int> sign_translation;
  std::optional<std::vector<MonomialFormula>> formulas;
};

const TorusEnd& torus_end(const std::string& name);

/// Extract (lattice map, sign translation) from homogeneous formulas through
/// the source and target charts. Throws "not a monomial map" style errors on
/// malformed input; full per-coordinate verification is sampling's job.
MonomialRationalMap from_homogeneous(const std::string& name, const std::string& source,
                                     const std::string& target,
                                     const std::vector<MonomialFormula>& formulas);

MonomialRationalMap torus_level_map(const std::string& name, const std::string& source,
                                    const std::string& target, const IMat& exponent_rows,
                                    const std::vector<int>& signs);

/// g after f; requires target(f) == source(g).
MonomialRationalMap compose(const MonomialRationalMap& f, const MonomialRationalMap& g);

/// Inverse of a birational monomial map (|det| = 1 on the lattices).
MonomialRationalMap inverse(const MonomialRationalMap& f);

/// Index [N_tgt : L(N_src)]; 1 means birational. Throws when L is singular.
Int generic_degree(const MonomialRationalMap& f);

struct EquivarianceResult {
  bool success = false;
  std::string detail;
  std::vector<std::pair<int, int>> bijection;  // indices into the element lists
};

/// Does conjugation by the lattice map carry w_src onto w_tgt (as sets), with
/// the sign translation fixed by the conjugated action?
EquivarianceResult check_equivariance(const MonomialRationalMap& f, const FiniteMatrixGroup& w_src,
                                      const FiniteMatrixGroup& w_tgt);

struct IdentityCheck {
  bool equal = false;
  std::string detail;
};

IdentityCheck verify_identity(const MonomialRationalMap& lhs, const MonomialRationalMap& rhs);

struct SampleReport {
  int trials = 0;
  int resamples = 0;
  int failures = 0;
  bool pass = false;
  std::string detail;  // first failure, if any
};

/// Draw random rational torus points, push them through the homogeneous
/// formulas exactly, and check target equations plus agreement with the
/// lattice-level prediction. Deterministic for a fixed seed.
SampleReport sample_consistency(const MonomialRationalMap& f, int trials, std::uint64_t seed);

/// Fixture access (data/maps.json).
const std::vector<std::string>& map_fixture_names();
const MonomialRationalMap& map_fixture(const std::string& name);
struct MapExpectation {
  std::optional<long> degree;
  std::optional<std::string> src_group, tgt_group;  // model_subgroup names or "weyl"
};
const MapExpectation& map_expectation(const std::string& name);

/// Exact evaluation helpers used by sampling and the round-trip checks.
Rat rational_power(const Rat& base, const Int& e);
std::vector<Rat> evaluate_chart(const Chart& chart, const std::vector<Rat>& torus);
std::vector<Rat> evaluate_formulas(const std::vector<MonomialFormula>& formulas,
                                   const std::vector<Rat>& coords);

/// Deterministic generator used by sampling (splitmix64).
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  /// Nonzero rational with numerator in [-9,9] and denominator in [1,9].
  Rat rat();
};

}  // namespace toric
