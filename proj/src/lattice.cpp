#include "toric/lattice.hpp"

#include <stdexcept>

namespace toric {

std::vector<Rat> rat_vec(const std::vector<Int>& v) {
  std::vector<Rat> r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

EmbeddedLattice::EmbeddedLattice(std::string name, QMat basis)
    : name_(std::move(name)), rank_(basis.cols()), basis_(std::move(basis)) {
  if (basis_.rows() != basis_.cols()) throw std::invalid_argument("EmbeddedLattice: basis not square");
  if (basis_.det() == 0) throw std::invalid_argument("EmbeddedLattice: singular basis");
  basis_inv_ = basis_.inverse();
  den_ = 1;
  for (int r = 0; r < rank_; ++r)
    for (int c = 0; c < rank_; ++c) {
      Rat v = basis_.at(r, c);
      v.canonicalize();
      den_ = lcm(den_, Int(v.get_den()));
    }
}

EmbeddedLattice EmbeddedLattice::standard(std::string name, int rank) {
  return EmbeddedLattice(std::move(name), QMat::identity(rank));
}

bool EmbeddedLattice::contains(const std::vector<Rat>& x) const {
  std::vector<Rat> c = basis_inv_ * x;
  for (Rat& v : c) {
    v.canonicalize();
    if (v.get_den() != 1) return false;
  }
  return true;
}

std::vector<Int> EmbeddedLattice::coords(const std::vector<Rat>& x) const {
  std::vector<Rat> c = basis_inv_ * x;
  std::vector<Int> out(c.size());
  for (size_t i = 0; i < c.size(); ++i) {
    c[i].canonicalize();
    if (c[i].get_den() != 1) throw std::invalid_argument("coords: not a lattice member of " + name_);
    out[i] = c[i].get_num();
  }
  return out;
}

std::vector<Rat> EmbeddedLattice::from_coords(const std::vector<Int>& c) const {
  return basis_ * rat_vec(c);
}

EmbeddedLattice EmbeddedLattice::dual(std::string name) const {
  return EmbeddedLattice(std::move(name), basis_inv_.transpose());
}

Int EmbeddedLattice::index_of_sublattice(const EmbeddedLattice& sub) const {
  QMat t = basis_inv_ * sub.basis();
  for (int r = 0; r < rank_; ++r)
    for (int c = 0; c < rank_; ++c) {
      Rat v = t.at(r, c);
      v.canonicalize();
      if (v.get_den() != 1) throw std::invalid_argument("index_of_sublattice: not a sublattice");
    }
  Rat d = t.det();
  d.canonicalize();
  Int idx = d.get_num();
  return idx < 0 ? Int(-idx) : idx;
}

bool EmbeddedLattice::is_primitive(const std::vector<Rat>& x) const {
  std::vector<Int> c = coords(x);
  Int g = 0;
  for (const Int& v : c) g = gcd(g, v);
  return g == 1;
}

std::vector<Rat> EmbeddedLattice::primitivize(const std::vector<Rat>& x) const {
  std::vector<Int> c = coords(x);
  Int g = 0;
  for (const Int& v : c) g = gcd(g, v);
  if (g == 0) throw std::invalid_argument("primitivize: zero vector");
  for (Int& v : c) v /= g;
  return from_coords(c);
}

bool EmbeddedLattice::operator==(const EmbeddedLattice& o) const {
  if (rank_ != o.rank_) return false;
  // Same lattice set, regardless of basis choice.
  QMat t = basis_inv_ * o.basis();
  for (int r = 0; r < rank_; ++r)
    for (int c = 0; c < rank_; ++c) {
      Rat v = t.at(r, c);
      v.canonicalize();
      if (v.get_den() != 1) return false;
    }
  Rat d = t.det();
  d.canonicalize();
  return d == 1 || d == -1;
}

}  // namespace toric
