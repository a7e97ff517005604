#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toric/polytope.hpp"

namespace toric {

/// A homogeneous-coordinate description of a model (or auxiliary target
/// space): how each coordinate restricts to the torus, how to read torus
/// coordinates back off a point, and which binomial equations cut the image.
struct Chart {
  std::vector<int> factors;               // coordinate counts per projective factor
  std::vector<std::string> coord_names;   // flattened
  struct Monomial {
    int sign = 1;
    std::vector<Int> exp;  // exponents over the torus coordinates
  };
  std::vector<Monomial> monomials;        // one per homogeneous coordinate
  // Per torus coordinate: a degree-zero ratio of homogeneous coordinates.
  std::vector<std::vector<std::pair<int, Int>>> ratios;
  // Binomial equations: lhs/rhs exponent vectors over the coordinates.
  std::vector<std::pair<std::vector<Int>, std::vector<Int>>> equations;
  bool generate_binomials = false;  // add all quadratic binomial identities of the chart

  int num_coords() const { return int(monomials.size()); }
};

struct StrataCensus {
  int divisors = 0;
  int curves = 0;
  int fixed_points = 0;
  std::map<std::string, int> point_classes;  // classification label -> count
  std::vector<ConeClassification> maximal_classes;
  std::string str() const;
};

/// Named variety: cocharacter lattice, Fano polytope, face fan, census data.
struct ToricModel {
  std::string name;
  std::optional<int> grdb_id;
  EmbeddedLattice n_lattice;  // polytope lives here
  EmbeddedLattice m_lattice;  // dual; Weyl groups live here
  LatticePolytope polytope;
  FaceFan fan;
  bool terminal = false;
  std::optional<std::string> expected_weyl;
  std::optional<Chart> chart;
};

/// Deterministic catalog of all models; loads and validates the data file.
const std::vector<ToricModel>& catalog();
const ToricModel& model(const std::string& name);

StrataCensus strata(const ToricModel& x);

/// Weyl group of the model, as a subgroup of GL(M) (basis coordinates of the
/// dual lattice): the contragredients of the polytope automorphisms.
const FiniteMatrixGroup& weyl(const ToricModel& x);

struct OrbitDecomposition {
  // Per dimension d (cones of dimension d+1): orbits as sets of face indices.
  std::vector<std::vector<std::vector<int>>> orbits;
  std::vector<std::vector<int>> orbit_sizes;  // sorted multisets
  std::string str() const;
};

/// Orbit partition of fan faces under W (a subgroup of weyl(x), checked),
/// acting through the contragredient on N.
OrbitDecomposition orbits(const ToricModel& x, const FiniteMatrixGroup& w);

AbelianInvariants class_group(const ToricModel& x);

/// rank Cl(X)^W over Q = (#W-orbits on rays) - dim (M (x) Q)^W.
int invariant_class_rank(const ToricModel& x, const FiniteMatrixGroup& w);

enum class S4Type { I, II, not_s4 };
S4Type s4_type(const FiniteMatrixGroup& w);
std::string s4_type_str(S4Type t);

/// Subgroups of weyl(x) resolved by name: full, A4, A4xC2, S4I, S4II, C2,
/// C3, C4, C6, S3T (ray-transitive S3), S3N, 1.
FiniteMatrixGroup model_subgroup(const ToricModel& x, const std::string& name);
std::vector<std::string> model_subgroup_names(const ToricModel& x);

/// Vertex permutation induced by an M-side group element (contragredient).
std::vector<int> vertex_permutation(const ToricModel& x, const IMat& m_side);

}  // namespace toric
