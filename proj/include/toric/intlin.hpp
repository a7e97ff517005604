#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace toric {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Dense integer matrix with arbitrary-precision entries.
/// Column-vector convention throughout: a matrix acts as v -> M*v,
/// and the columns of a basis matrix are the basis vectors.
class IMat {
public:
  IMat() : rows_(0), cols_(0) {}
  IMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Int(0)) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("IMat: rows/cols must be >= 1");
  }
  IMat(std::initializer_list<std::initializer_list<long>> lst);

  static IMat identity(int n);
  static IMat from_rows(const std::vector<std::vector<Int>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Int& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const Int& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

  IMat transpose() const;
  IMat operator*(const IMat& o) const;
  std::vector<Int> operator*(const std::vector<Int>& v) const;
  IMat operator-() const;
  bool operator==(const IMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const IMat& o) const { return !(*this == o); }
  bool operator<(const IMat& o) const;  // lexicographic, for canonical element lists

  bool is_identity() const;
  Int det() const;          // square only, fraction-free elimination
  IMat inverse_unimodular() const;  // requires |det| = 1
  int rank() const;
  std::string str() const;

private:
  int rows_, cols_;
  std::vector<Int> a_;
};

/// Dense rational matrix, used for embedded-lattice bases and exact solves.
class QMat {
public:
  QMat() : rows_(0), cols_(0) {}
  QMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Rat(0)) {}
  static QMat identity(int n);
  static QMat from_int(const IMat& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rat& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const Rat& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

  QMat transpose() const;
  QMat operator*(const QMat& o) const;
  std::vector<Rat> operator*(const std::vector<Rat>& v) const;
  bool operator==(const QMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  Rat det() const;
  QMat inverse() const;  // square nonsingular
  int rank() const;
  /// Basis of the right kernel {x : M x = 0}, as columns.
  QMat kernel() const;
  /// Solve M x = b; returns false if inconsistent.
  bool solve(const std::vector<Rat>& b, std::vector<Rat>& x) const;
  std::string str() const;

private:
  int rows_, cols_;
  std::vector<Rat> a_;
};

/// Invariant-factor description of a finitely generated abelian group:
/// Z^free_rank + sum Z/torsion[i], with torsion[i] | torsion[i+1], all >= 2.
struct AbelianInvariants {
  int free_rank = 0;
  std::vector<Int> torsion;
  bool operator==(const AbelianInvariants& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  std::string str() const;
};

struct HnfResult {
  IMat h;  // row-style Hermite form: upper echelon, positive pivots, reduced above
  IMat u;  // unimodular, u * a = h
};

struct SnfResult {
  IMat u, s, v;  // u * a * v = s, diagonal, d1 | d2 | ..., di >= 0
};

HnfResult hermite_normal_form(const IMat& a);
SnfResult smith_normal_form(const IMat& a);

/// Invariants of coker(A : Z^cols -> Z^rows).
AbelianInvariants cokernel_invariants(const IMat& a);

/// Columns of b span a sublattice; returns a column basis of its saturation
/// (smallest primitive sublattice containing it), canonicalized by column HNF.
/// Throws if b is not of full column rank.
IMat saturate(const IMat& b);

struct SublatticeIndex {
  bool finite = true;
  Int index = 0;  // meaningful when finite
};

/// Index of the column lattice of `sub` inside the column lattice of `super`.
/// Throws if sub is not contained in super; infinite when the ranks differ.
SublatticeIndex sublattice_index(const IMat& sub, const IMat& super);

/// Column HNF canonical form of a full-column-rank matrix (lattice equality test).
IMat column_hnf(const IMat& a);

}  // namespace toric
