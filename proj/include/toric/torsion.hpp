#pragma once

#include <string>
#include <vector>

#include "toric/group.hpp"

namespace toric {

inline constexpr int kModulusGuard = 12;

/// Action of a Weyl group on the N-torsion points T[N] ~ (Z/N)^rank, in the
/// dual basis of the group's lattice. Matrices are the contragredients
/// reduced mod N, deduplicated and sorted.
struct TorsionAction {
  std::string lattice_name;
  int modulus = 0;
  int rank = 0;
  std::vector<std::vector<int>> matrices;  // row-major rank*rank, entries in [0, N)
};

TorsionAction torsion_action(const FiniteMatrixGroup& w, int modulus);

/// Subgroup of (Z/N)^rank, canonical Hermite-form generators.
struct SubgroupModN {
  int modulus = 0;
  int rank = 0;
  std::vector<std::vector<Int>> gens;  // rows of the canonical HNF basis of its lattice
  Int order = 1;
  std::vector<Int> invariant_factors;  // full chain d1 | d2 | ... (1s included)

  /// Invariant factors with the trivial entries dropped.
  std::vector<Int> shape() const;
  /// Exponent: the largest invariant factor.
  Int exponent() const;
  std::string str() const;
};

/// Every subgroup of (Z/N)^rank stable under all action matrices,
/// deterministic order. Guarded at kModulusGuard.
std::vector<SubgroupModN> enumerate_invariant(const TorsionAction& a, int guard = kModulusGuard);
std::vector<SubgroupModN> enumerate_invariant_serial(const TorsionAction& a,
                                                     int guard = kModulusGuard);

/// Test-only independent route: all subgroups by pairwise joins of cyclic
/// subgroups (element-set closure), then the invariance filter.
std::vector<SubgroupModN> enumerate_invariant_bruteforce(const TorsionAction& a);

enum class Scheme { lemma71, cor72, cor73 };
Scheme scheme_from_string(const std::string& s);
std::string scheme_name(Scheme s);
/// Lattice each scheme is pinned to (M2, M1, M3 respectively).
std::string scheme_lattice(Scheme s);

struct ShapeCheck {
  bool pass = false;
  std::vector<SubgroupModN> counterexamples;
  std::vector<int> shape_counts;  // per scheme shape, how many subgroups realized it
  int total = 0;
};

/// Check every invariant subgroup against the scheme's allowed invariant
/// factor shapes (n = subgroup exponent). Errors if the action's lattice does
/// not match the scheme.
ShapeCheck verify_classification(const TorsionAction& a, Scheme scheme, int guard = kModulusGuard);

/// Number of shapes a scheme allows.
int scheme_shape_count(Scheme s);
std::string scheme_shape_str(Scheme s, int idx);

struct CubicCore {
  Int n;      // largest n with the full n-torsion cube inside the subgroup
  Int index;  // [subgroup : that cube]
};

CubicCore cubic_core(const SubgroupModN& s);

}  // namespace toric
