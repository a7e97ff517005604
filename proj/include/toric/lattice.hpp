#pragma once

#include <string>
#include <vector>

#include "toric/intlin.hpp"

namespace toric {

/// A rank-d lattice inside reference coordinates Q^d, given by a rational
/// basis. Columns of basis() are the basis vectors. Membership, duality and
/// index tests are exact.
class EmbeddedLattice {
public:
  EmbeddedLattice() = default;
  EmbeddedLattice(std::string name, QMat basis);

  static EmbeddedLattice standard(std::string name, int rank);

  const std::string& name() const { return name_; }
  int rank() const { return rank_; }
  const QMat& basis() const { return basis_; }
  const QMat& basis_inverse() const { return basis_inv_; }
  const Int& denominator() const { return den_; }

  bool contains(const std::vector<Rat>& x) const;
  /// Basis coordinates of a reference point; throws if not a lattice member.
  std::vector<Int> coords(const std::vector<Rat>& x) const;
  std::vector<Rat> from_coords(const std::vector<Int>& c) const;

  /// Dual lattice under the standard pairing; its basis is the dual basis.
  EmbeddedLattice dual(std::string name) const;

  /// Index [this : sub] when sub is a finite-index sublattice.
  Int index_of_sublattice(const EmbeddedLattice& sub) const;

  /// v is primitive if v/k is not a member for any k >= 2.
  bool is_primitive(const std::vector<Rat>& x) const;
  /// Scale a nonzero member to the primitive generator of its ray.
  std::vector<Rat> primitivize(const std::vector<Rat>& x) const;

  bool operator==(const EmbeddedLattice& o) const;

private:
  std::string name_;
  int rank_ = 0;
  QMat basis_, basis_inv_;
  Int den_ = 1;
};

std::vector<Rat> rat_vec(const std::vector<Int>& v);

}  // namespace toric
