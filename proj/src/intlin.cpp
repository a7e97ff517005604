#include "toric/intlin.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

IMat::IMat(std::initializer_list<std::initializer_list<long>> lst) {
  rows_ = int(lst.size());
  cols_ = rows_ ? int(lst.begin()->size()) : 0;
  if (rows_ < 1 || cols_ < 1) throw std::invalid_argument("IMat: empty initializer");
  a_.reserve(size_t(rows_) * cols_);
  for (const auto& row : lst) {
    if (int(row.size()) != cols_) throw std::invalid_argument("IMat: ragged initializer");
    for (long v : row) a_.emplace_back(v);
  }
}

IMat IMat::identity(int n) {
  IMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMat IMat::from_rows(const std::vector<std::vector<Int>>& rows) {
  if (rows.empty() || rows[0].empty()) throw std::invalid_argument("IMat: empty rows");
  IMat m(int(rows.size()), int(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r) {
    if (int(rows[r].size()) != m.cols()) throw std::invalid_argument("IMat: ragged rows");
    for (int c = 0; c < m.cols(); ++c) m.at(r, c) = rows[r][c];
  }
  return m;
}

IMat IMat::transpose() const {
  IMat t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

IMat IMat::operator*(const IMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("IMat: dimension mismatch");
  IMat m(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      const Int& v = at(r, k);
      if (v == 0) continue;
      for (int c = 0; c < o.cols_; ++c) m.at(r, c) += v * o.at(k, c);
    }
  return m;
}

std::vector<Int> IMat::operator*(const std::vector<Int>& v) const {
  if (int(v.size()) != cols_) throw std::invalid_argument("IMat: vector dimension mismatch");
  std::vector<Int> r(rows_, Int(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

IMat IMat::operator-() const {
  IMat m(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.at(r, c) = -at(r, c);
  return m;
}

bool IMat::operator<(const IMat& o) const {
  if (rows_ != o.rows_) return rows_ < o.rows_;
  if (cols_ != o.cols_) return cols_ < o.cols_;
  for (size_t i = 0; i < a_.size(); ++i) {
    int c = cmp(a_[i], o.a_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

bool IMat::is_identity() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (at(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

Int IMat::det() const {
  if (rows_ != cols_) throw std::invalid_argument("det: not square");
  // Bareiss fraction-free elimination.
  int n = rows_;
  std::vector<Int> m(a_);
  auto e = [&](int r, int c) -> Int& { return m[size_t(r) * n + c]; };
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (e(k, k) == 0) {
      int p = -1;
      for (int r = k + 1; r < n; ++r)
        if (e(r, k) != 0) { p = r; break; }
      if (p < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(e(k, c), e(p, c));
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r)
      for (int c = k + 1; c < n; ++c)
        e(r, c) = (e(k, k) * e(r, c) - e(r, k) * e(k, c)) / prev;
    prev = e(k, k);
  }
  return sign * e(n - 1, n - 1);
}

IMat IMat::inverse_unimodular() const {
  Int d = det();
  if (d != 1 && d != -1) throw std::invalid_argument("inverse_unimodular: |det| != 1");
  QMat q = QMat::from_int(*this).inverse();
  IMat r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      Rat v = q.at(i, j);
      v.canonicalize();
      if (v.get_den() != 1) throw std::logic_error("inverse_unimodular: non-integer inverse");
      r.at(i, j) = v.get_num();
    }
  return r;
}

int IMat::rank() const { return QMat::from_int(*this).rank(); }

std::string IMat::str() const {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < rows_; ++r) {
    os << (r ? "; " : "");
    for (int c = 0; c < cols_; ++c) os << (c ? "," : "") << at(r, c).get_str();
  }
  os << "]";
  return os.str();
}

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMat QMat::from_int(const IMat& m) {
  QMat q(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) q.at(r, c) = Rat(m.at(r, c));
  return q;
}

QMat QMat::transpose() const {
  QMat t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

QMat QMat::operator*(const QMat& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("QMat: dimension mismatch");
  QMat m(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k = 0; k < cols_; ++k) {
      const Rat& v = at(r, k);
      if (v == 0) continue;
      for (int c = 0; c < o.cols_; ++c) m.at(r, c) += v * o.at(k, c);
    }
  return m;
}

std::vector<Rat> QMat::operator*(const std::vector<Rat>& v) const {
  if (int(v.size()) != cols_) throw std::invalid_argument("QMat: vector dimension mismatch");
  std::vector<Rat> r(rows_, Rat(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

namespace {

// Row echelon over Q in place; returns pivot columns. If inv != nullptr it
// accumulates the row operations (starts as identity of matching size).
std::vector<int> echelon(QMat& m, QMat* ops) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m.at(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    if (ops && p != r)
      for (int j = 0; j < ops->cols(); ++j) std::swap(ops->at(p, j), ops->at(r, j));
    Rat inv_piv = 1 / m.at(r, c);
    for (int j = 0; j < m.cols(); ++j) m.at(r, j) *= inv_piv;
    if (ops)
      for (int j = 0; j < ops->cols(); ++j) ops->at(r, j) *= inv_piv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
      if (ops)
        for (int j = 0; j < ops->cols(); ++j) ops->at(i, j) -= f * ops->at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rat QMat::det() const {
  if (rows_ != cols_) throw std::invalid_argument("det: not square");
  QMat m = *this;
  Rat d = 1;
  for (int c = 0; c < cols_; ++c) {
    int p = -1;
    for (int i = c; i < rows_; ++i)
      if (m.at(i, c) != 0) { p = i; break; }
    if (p < 0) return 0;
    if (p != c) {
      for (int j = 0; j < cols_; ++j) std::swap(m.at(p, j), m.at(c, j));
      d = -d;
    }
    d *= m.at(c, c);
    Rat inv_piv = 1 / m.at(c, c);
    for (int i = c + 1; i < rows_; ++i) {
      if (m.at(i, c) == 0) continue;
      Rat f = m.at(i, c) * inv_piv;
      for (int j = c; j < cols_; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return d;
}

QMat QMat::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse: not square");
  QMat m = *this;
  QMat inv = QMat::identity(rows_);
  auto pivots = echelon(m, &inv);
  if (int(pivots.size()) != rows_) throw std::invalid_argument("inverse: singular matrix");
  return inv;
}

int QMat::rank() const {
  QMat m = *this;
  return int(echelon(m, nullptr).size());
}

QMat QMat::kernel() const {
  QMat m = *this;
  auto pivots = echelon(m, nullptr);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;
  int nfree = cols_ - int(pivots.size());
  if (nfree == 0) return QMat(cols_, 0);
  QMat k(cols_, nfree);
  int fc = 0;
  for (int c = 0; c < cols_; ++c) {
    if (is_pivot[c]) continue;
    k.at(c, fc) = 1;
    for (int r = 0; r < int(pivots.size()); ++r) k.at(pivots[r], fc) = -m.at(r, c);
    ++fc;
  }
  return k;
}

bool QMat::solve(const std::vector<Rat>& b, std::vector<Rat>& x) const {
  QMat aug(rows_, cols_ + 1);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
    aug.at(r, cols_) = b[r];
  }
  auto pivots = echelon(aug, nullptr);
  if (!pivots.empty() && pivots.back() == cols_) return false;  // inconsistent
  x.assign(cols_, Rat(0));
  for (int r = 0; r < int(pivots.size()); ++r) x[pivots[r]] = aug.at(r, cols_);
  return true;
}

std::string QMat::str() const {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < rows_; ++r) {
    os << (r ? "; " : "");
    for (int c = 0; c < cols_; ++c) os << (c ? "," : "") << at(r, c).get_str();
  }
  os << "]";
  return os.str();
}

std::string AbelianInvariants::str() const {
  std::ostringstream os;
  os << "Z^" << free_rank;
  for (const Int& t : torsion) os << " + Z/" << t.get_str();
  return os.str();
}

HnfResult hermite_normal_form(const IMat& a) {
  IMat h = a;
  IMat u = IMat::identity(a.rows());
  int r = 0;
  for (int c = 0; c < h.cols() && r < h.rows(); ++c) {
    // Euclidean reduction of column c below row r.
    while (true) {
      int p = -1;
      for (int i = r; i < h.rows(); ++i) {
        if (h.at(i, c) == 0) continue;
        if (p < 0 || abs(h.at(i, c)) < abs(h.at(p, c))) p = i;
      }
      if (p < 0) break;
      if (p != r) {
        for (int j = 0; j < h.cols(); ++j) std::swap(h.at(p, j), h.at(r, j));
        for (int j = 0; j < u.cols(); ++j) std::swap(u.at(p, j), u.at(r, j));
      }
      bool done = true;
      for (int i = r + 1; i < h.rows(); ++i) {
        if (h.at(i, c) == 0) continue;
        Int q = h.at(i, c) / h.at(r, c);  // truncated; remainder refined next pass
        if (q != 0) {
          for (int j = 0; j < h.cols(); ++j) h.at(i, j) -= q * h.at(r, j);
          for (int j = 0; j < u.cols(); ++j) u.at(i, j) -= q * u.at(r, j);
        }
        if (h.at(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (h.at(r, c) == 0) continue;
    if (h.at(r, c) < 0) {
      for (int j = 0; j < h.cols(); ++j) h.at(r, j) = -h.at(r, j);
      for (int j = 0; j < u.cols(); ++j) u.at(r, j) = -u.at(r, j);
    }
    // Reduce entries above the pivot into [0, pivot).
    for (int i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(r, c).get_mpz_t());
      if (q != 0) {
        for (int j = 0; j < h.cols(); ++j) h.at(i, j) -= q * h.at(r, j);
        for (int j = 0; j < u.cols(); ++j) u.at(i, j) -= q * u.at(r, j);
      }
    }
    ++r;
  }
  return {h, u};
}

SnfResult smith_normal_form(const IMat& a) {
  IMat s = a;
  IMat u = IMat::identity(a.rows());
  IMat v = IMat::identity(a.cols());
  int n = std::min(a.rows(), a.cols());

  auto row_op = [&](int i, int k, const Int& q) {  // row i -= q * row k
    for (int j = 0; j < s.cols(); ++j) s.at(i, j) -= q * s.at(k, j);
    for (int j = 0; j < u.cols(); ++j) u.at(i, j) -= q * u.at(k, j);
  };
  auto col_op = [&](int j, int k, const Int& q) {  // col j -= q * col k
    for (int i = 0; i < s.rows(); ++i) s.at(i, j) -= q * s.at(i, k);
    for (int i = 0; i < v.rows(); ++i) v.at(i, j) -= q * v.at(i, k);
  };
  auto row_swap = [&](int i, int k) {
    for (int j = 0; j < s.cols(); ++j) std::swap(s.at(i, j), s.at(k, j));
    for (int j = 0; j < u.cols(); ++j) std::swap(u.at(i, j), u.at(k, j));
  };
  auto col_swap = [&](int j, int k) {
    for (int i = 0; i < s.rows(); ++i) std::swap(s.at(i, j), s.at(i, k));
    for (int i = 0; i < v.rows(); ++i) std::swap(v.at(i, j), v.at(i, k));
  };

  for (int t = 0; t < n; ++t) {
    // Find a nonzero pivot in the trailing block.
    int pr = -1, pc = -1;
    for (int i = t; i < s.rows() && pr < 0; ++i)
      for (int j = t; j < s.cols(); ++j)
        if (s.at(i, j) != 0) { pr = i; pc = j; break; }
    if (pr < 0) break;
    row_swap(t, pr);
    col_swap(t, pc);

    while (true) {
      bool clean = true;
      for (int i = t + 1; i < s.rows(); ++i) {
        if (s.at(i, t) == 0) continue;
        Int q = s.at(i, t) / s.at(t, t);
        row_op(i, t, q);
        if (s.at(i, t) != 0) { row_swap(t, i); clean = false; }
      }
      for (int j = t + 1; j < s.cols(); ++j) {
        if (s.at(t, j) == 0) continue;
        Int q = s.at(t, j) / s.at(t, t);
        col_op(j, t, q);
        if (s.at(t, j) != 0) { col_swap(t, j); clean = false; }
      }
      if (!clean) continue;
      // Pivot must divide every entry of the trailing block.
      bool divides = true;
      for (int i = t + 1; i < s.rows() && divides; ++i)
        for (int j = t + 1; j < s.cols(); ++j)
          if (s.at(i, j) % s.at(t, t) != 0) {
            row_op(t, i, Int(-1));  // row t += row i, then restart reduction
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (s.at(t, t) < 0) {
      for (int j = 0; j < s.cols(); ++j) s.at(t, j) = -s.at(t, j);
      for (int j = 0; j < u.cols(); ++j) u.at(t, j) = -u.at(t, j);
    }
  }
  return {u, s, v};
}

AbelianInvariants cokernel_invariants(const IMat& a) {
  SnfResult snf = smith_normal_form(a);
  AbelianInvariants inv;
  int n = std::min(a.rows(), a.cols());
  int nonzero = 0;
  for (int i = 0; i < n; ++i) {
    const Int& d = snf.s.at(i, i);
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) inv.torsion.push_back(d);
  }
  inv.free_rank = a.rows() - nonzero;
  return inv;
}

IMat column_hnf(const IMat& a) {
  HnfResult h = hermite_normal_form(a.transpose());
  // Drop zero rows of the transposed form, keep a basis of the column lattice.
  std::vector<std::vector<Int>> rows;
  for (int r = 0; r < h.h.rows(); ++r) {
    bool zero = true;
    for (int c = 0; c < h.h.cols(); ++c)
      if (h.h.at(r, c) != 0) { zero = false; break; }
    if (!zero) {
      std::vector<Int> row(h.h.cols());
      for (int c = 0; c < h.h.cols(); ++c) row[c] = h.h.at(r, c);
      rows.push_back(row);
    }
  }
  return IMat::from_rows(rows).transpose();
}

IMat saturate(const IMat& b) {
  if (b.rank() != b.cols()) throw std::invalid_argument("saturate: not full column rank");
  SnfResult snf = smith_normal_form(b);
  IMat uinv = snf.u.inverse_unimodular();
  // Column span of b saturates to the span of the first cols(b) columns of u^-1.
  std::vector<std::vector<Int>> rows(b.rows(), std::vector<Int>(b.cols()));
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) rows[r][c] = uinv.at(r, c);
  return column_hnf(IMat::from_rows(rows));
}

SublatticeIndex sublattice_index(const IMat& sub, const IMat& super) {
  QMat sp = QMat::from_int(super);
  int rank_super = sp.rank();
  int rank_sub = QMat::from_int(sub).rank();
  // Coordinates of each sub column in the column span of super.
  QMat coords(super.cols(), sub.cols());
  for (int c = 0; c < sub.cols(); ++c) {
    std::vector<Rat> rhs(sub.rows());
    for (int r = 0; r < sub.rows(); ++r) rhs[r] = Rat(sub.at(r, c));
    std::vector<Rat> x;
    if (!sp.solve(rhs, x)) throw std::invalid_argument("sublattice_index: sub not in span of super");
    for (int r = 0; r < super.cols(); ++r) coords.at(r, c) = x[r];
  }
  for (int r = 0; r < coords.rows(); ++r)
    for (int c = 0; c < coords.cols(); ++c) {
      Rat v = coords.at(r, c);
      v.canonicalize();
      if (v.get_den() != 1) throw std::invalid_argument("sublattice_index: sub not contained in super");
    }
  if (rank_sub < rank_super) return {false, Int(0)};
  if (rank_sub > rank_super) throw std::invalid_argument("sublattice_index: sub exceeds super rank");
  if (coords.rows() != coords.cols()) {
    // Equal rank but rectangular coordinate matrix: index via SNF of the integer coords.
    IMat ic(coords.rows(), coords.cols());
    for (int r = 0; r < coords.rows(); ++r)
      for (int c = 0; c < coords.cols(); ++c) ic.at(r, c) = coords.at(r, c).get_num();
    SnfResult snf = smith_normal_form(ic);
    Int idx = 1;
    for (int i = 0; i < std::min(ic.rows(), ic.cols()); ++i)
      if (snf.s.at(i, i) != 0) idx *= snf.s.at(i, i);
    return {true, idx};
  }
  Rat d = coords.det();
  d.canonicalize();
  Int idx = d.get_num();
  if (idx < 0) idx = -idx;
  return {true, idx};
}

}  // namespace toric
