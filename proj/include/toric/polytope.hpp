#pragma once

#include <string>
#include <vector>

#include "toric/group.hpp"

namespace toric {

/// Full-dimensional lattice polytope. Vertices are reference-coordinate
/// rational points, all members of the carrying lattice, and are required to
/// be exactly the extreme points of their hull.
struct LatticePolytope {
  EmbeddedLattice lattice;
  std::vector<std::vector<Rat>> vertices;

  /// Vertices in lattice-basis coordinates (always integral).
  std::vector<std::vector<Int>> vertex_coords() const;
};

struct Face {
  int dim = 0;
  std::vector<int> vertex_ids;  // sorted
  bool operator==(const Face& o) const { return dim == o.dim && vertex_ids == o.vertex_ids; }
  bool operator<(const Face& o) const {
    if (dim != o.dim) return dim < o.dim;
    return vertex_ids < o.vertex_ids;
  }
};

struct FacePoset {
  std::vector<std::vector<Face>> by_dim;  // by_dim[d] = proper faces of dimension d
  std::vector<int> f_vector() const;
};

/// Exact convex hull face enumeration; rank 2 or 3. Throws on degenerate
/// input or when a listed vertex is not extreme.
FacePoset face_poset(const LatticePolytope& p);

/// A pointed rational cone, generators primitive in the carrying lattice and
/// given in lattice-basis coordinates.
struct Cone {
  std::vector<std::vector<Int>> gens;  // primitive, pairwise non-proportional
  int dim = 0;
  std::vector<int> vertex_ids;  // the polytope face this cone sits over
};

struct FaceFan {
  EmbeddedLattice lattice;
  std::vector<Cone> maximal;
  std::vector<std::vector<Cone>> by_dim;  // index d = cones of dimension d+1 ... [0]=rays
};

/// Fan of cones over the proper faces of p; requires the origin interior.
FaceFan face_fan(const LatticePolytope& p);

enum class ConeClass { smooth, odp, half_1_1_1, other };

struct ConeClassification {
  ConeClass cls = ConeClass::other;
  Int multiplicity = 1;  // normalized volume of conv(0, gens) in the carrying lattice
  bool terminal = true;  // conv(0, gens) has no lattice points besides 0 and the gens
  std::string str() const;
};

/// Classify a cone given in lattice-basis coordinates of its carrying lattice.
ConeClassification classify_cone(const Cone& c);

/// True iff every maximal cone's conv(0, generators) contains no lattice
/// point other than 0 and the generators.
bool is_terminal_fano(const FaceFan& f);

/// All lattice-preserving linear maps permuting the vertex set, found by
/// backtracking over images of an independent vertex triple. Returned on the
/// polytope's own lattice (basis coordinates).
FiniteMatrixGroup automorphisms(const LatticePolytope& p);

/// Exact membership of x in conv(points) via Caratheodory enumeration.
bool point_in_hull(const std::vector<std::vector<Int>>& points, const std::vector<Int>& x);

/// All lattice points of conv(points) (basis coordinates, small boxes only).
std::vector<std::vector<Int>> hull_lattice_points(const std::vector<std::vector<Int>>& points);

}  // namespace toric
