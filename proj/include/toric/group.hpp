#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toric/lattice.hpp"

namespace toric {

/// Finite subgroup of GL(L), stored as integer matrices in the basis
/// coordinates of its lattice. The element list is sorted, so group equality
/// is list equality.
struct FiniteMatrixGroup {
  EmbeddedLattice lattice;
  std::vector<IMat> generators;
  std::vector<IMat> elements;  // canonically sorted, closed under product and inverse
  int order = 0;

  int rank() const { return lattice.rank(); }
  bool contains(const IMat& m) const;
  int index_of(const IMat& m) const;  // -1 when absent
  bool same_elements(const FiniteMatrixGroup& o) const { return elements == o.elements; }
};

inline constexpr int kDefaultOrderCap = 384;

/// Breadth-first product closure of the generators. Throws when the closure
/// exceeds order_cap (an infinite-order generator slipped in).
FiniteMatrixGroup closure(const EmbeddedLattice& lattice, const std::vector<IMat>& generators,
                          int order_cap = kDefaultOrderCap);

struct GroupCensus {
  int order = 0;
  bool abelian = false;
  std::map<int, int> order_histogram;  // element order -> count
  int center_order = 0;
  int derived_order = 0;
};

GroupCensus census(const FiniteMatrixGroup& g);

/// Abstract type from the census. Labels: 1, C2, C2^2, C3, C4, S3, C6, D8,
/// A4, S4, A4xC2, S4xC2, S3xC2, other(n).
std::string identify(const FiniteMatrixGroup& g);

int element_order(const IMat& m, int cap = kDefaultOrderCap);

/// Basis of {F symmetric : g^T F g = F for all g}, integer and primitive.
std::vector<IMat> invariant_symmetric_forms(const FiniteMatrixGroup& g);

/// Sum over the group of g^T g, divided by its content: the canonical
/// positive-definite invariant form.
IMat averaged_form(const FiniteMatrixGroup& g);

/// All integer X with X^T f_to X = scale * f_from (both forms positive
/// definite). Complete backtracking enumeration, deterministic order.
std::vector<IMat> form_isometries(const IMat& f_from, const IMat& f_to, const Rat& scale);

/// Decides conjugacy in GL_n(Z): returns X with X g X^-1 in g2 for all g in
/// g1 (as a set bijection), or nullopt after the exhaustive isometry search.
/// Requires both invariant-form spaces to be one-dimensional and definite.
std::optional<IMat> conjugator(const FiniteMatrixGroup& g1, const FiniteMatrixGroup& g2);

/// True iff L (x) Q has no proper nonzero invariant subspace. Rank <= 3 only.
bool q_irreducible(const FiniteMatrixGroup& g);

/// Normalizer of g in GL(L), computed inside the (finite) automorphism group
/// of the unique invariant form. Requires a one-dimensional definite form
/// space.
FiniteMatrixGroup normalizer(const FiniteMatrixGroup& g);

// ---- index-based machinery for subgroup sweeps (orders <= 64) ----

struct CayleyTable {
  int n = 0;
  std::vector<int> mul;     // n*n products
  std::vector<int> inv;     // inverses
  std::vector<int> orders;  // element orders
  int identity = 0;
  int at(int a, int b) const { return mul[size_t(a) * n + b]; }
};

CayleyTable cayley_table(const FiniteMatrixGroup& g);

using ElementMask = std::uint64_t;

ElementMask closure_mask(const CayleyTable& t, ElementMask seed);

struct Subgroup {
  ElementMask mask = 0;
  std::vector<int> gens;  // indices into the parent element list
  int order = 0;
};

/// Every subgroup of g, deterministic order (by order, then mask).
std::vector<Subgroup> all_subgroups(const FiniteMatrixGroup& g);

std::string identify_subgroup(const FiniteMatrixGroup& g, const CayleyTable& t, const Subgroup& h);

FiniteMatrixGroup subgroup_to_group(const FiniteMatrixGroup& g, const Subgroup& h);

std::vector<int> mask_elements(ElementMask m);

}  // namespace toric
