#include "toric/torsion.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace toric {

TorsionAction torsion_action(const FiniteMatrixGroup& w, int modulus) {
  if (modulus < 1) throw std::invalid_argument("torsion_action: modulus must be >= 1");
  TorsionAction a;
  a.lattice_name = w.lattice.name();
  a.modulus = modulus;
  a.rank = w.rank();
  std::set<std::vector<int>> seen;
  for (const IMat& g : w.elements) {
    IMat contra = g.inverse_unimodular().transpose();
    std::vector<int> m(size_t(a.rank) * a.rank);
    for (int r = 0; r < a.rank; ++r)
      for (int c = 0; c < a.rank; ++c) {
        Int v = contra.at(r, c) % modulus;
        if (v < 0) v += modulus;
        m[size_t(r) * a.rank + c] = int(v.get_si());
      }
    seen.insert(m);
  }
  a.matrices.assign(seen.begin(), seen.end());
  return a;
}

std::vector<Int> SubgroupModN::shape() const {
  std::vector<Int> s;
  for (const Int& d : invariant_factors)
    if (d > 1) s.push_back(d);
  return s;
}

Int SubgroupModN::exponent() const {
  return invariant_factors.empty() ? Int(1) : invariant_factors.back();
}

std::string SubgroupModN::str() const {
  std::ostringstream os;
  os << "order " << order.get_str() << ", factors (";
  for (size_t i = 0; i < invariant_factors.size(); ++i)
    os << (i ? "," : "") << invariant_factors[i].get_str();
  os << ") mod " << modulus;
  return os.str();
}

namespace {

// Divisors of n in increasing order.
std::vector<int> divisors(int n) {
  std::vector<int> d;
  for (int k = 1; k <= n; ++k)
    if (n % k == 0) d.push_back(k);
  return d;
}

// Row-HNF candidate bases for lattices L with N Z^r <= L <= Z^r: upper
// triangular, positive pivots dividing N, entries above a pivot reduced mod
// that pivot. The form is canonical, so no deduplication is needed; the
// containment N Z^r <= L is equivalent to N * H^-1 being integral.
struct Candidate {
  IMat h;
  IMat relations;  // N * H^-1, integral exactly for valid candidates
  bool valid = false;
};

Candidate make_candidate(const std::vector<std::vector<Int>>& rows, int modulus) {
  Candidate c;
  c.h = IMat::from_rows(rows);
  int r = c.h.rows();
  QMat hinv = QMat::from_int(c.h).inverse();
  IMat rel(r, r);
  c.valid = true;
  for (int i = 0; i < r && c.valid; ++i)
    for (int j = 0; j < r; ++j) {
      Rat v = hinv.at(i, j) * Rat(modulus);
      v.canonicalize();
      if (v.get_den() != 1) { c.valid = false; break; }
      rel.at(i, j) = v.get_num();
    }
  c.relations = rel;
  return c;
}

// Membership of an integer vector in the row lattice of an upper-triangular
// H whose row lattice contains N Z^r (so entries only matter mod N).
bool in_row_lattice(const IMat& h, std::vector<Int> v) {
  int r = h.rows();
  for (int i = r - 1; i >= 0; --i) {
    const Int& piv = h.at(i, i);
    if (v[i] % piv != 0) return false;
    Int c = v[i] / piv;
    for (int j = 0; j < r; ++j) v[j] -= c * h.at(i, j);
  }
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

bool invariant_under(const Candidate& cand, const TorsionAction& a) {
  int r = a.rank;
  for (const auto& m : a.matrices) {
    for (int g = 0; g < r; ++g) {
      // Image of generator row g under the action matrix (column convention).
      std::vector<Int> img(r, Int(0));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) img[i] += Int(m[size_t(i) * r + j]) * cand.h.at(g, j);
      if (!in_row_lattice(cand.h, img)) return false;
    }
  }
  return true;
}

SubgroupModN finish_subgroup(const Candidate& cand, int modulus) {
  SubgroupModN s;
  s.modulus = modulus;
  s.rank = cand.h.rows();
  for (int i = 0; i < s.rank; ++i) {
    std::vector<Int> row(s.rank);
    for (int j = 0; j < s.rank; ++j) row[j] = cand.h.at(i, j);
    s.gens.push_back(row);
  }
  // Invariant factors of L / N Z^r from the relation matrix N * H^-1.
  SnfResult snf = smith_normal_form(cand.relations);
  for (int i = 0; i < s.rank; ++i) s.invariant_factors.push_back(snf.s.at(i, i));
  std::sort(s.invariant_factors.begin(), s.invariant_factors.end());
  s.order = 1;
  for (const Int& d : s.invariant_factors) s.order *= d;
  return s;
}

std::vector<Candidate> hnf_candidates(int modulus, int rank) {
  if (rank != 3) throw std::invalid_argument("enumerate_invariant: rank 3 only");
  std::vector<Candidate> out;
  for (int d1 : divisors(modulus))
    for (int d2 : divisors(modulus))
      for (int d3 : divisors(modulus))
        for (int a12 = 0; a12 < d2; ++a12)
          for (int a13 = 0; a13 < d3; ++a13)
            for (int a23 = 0; a23 < d3; ++a23) {
              std::vector<std::vector<Int>> rows = {
                  {Int(d1), Int(a12), Int(a13)}, {Int(0), Int(d2), Int(a23)}, {Int(0), Int(0), Int(d3)}};
              Candidate c = make_candidate(rows, modulus);
              if (c.valid) out.push_back(std::move(c));
            }
  return out;
}

void sort_subgroups(std::vector<SubgroupModN>& subs) {
  std::sort(subs.begin(), subs.end(), [](const SubgroupModN& a, const SubgroupModN& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.gens < b.gens;
  });
}

}  // namespace

std::vector<SubgroupModN> enumerate_invariant_serial(const TorsionAction& a, int guard) {
  if (a.modulus > guard) throw std::runtime_error("enumeration bound exceeded");
  std::vector<Candidate> cands = hnf_candidates(a.modulus, a.rank);
  std::vector<SubgroupModN> out;
  for (const Candidate& c : cands)
    if (invariant_under(c, a)) out.push_back(finish_subgroup(c, a.modulus));
  sort_subgroups(out);
  return out;
}

std::vector<SubgroupModN> enumerate_invariant(const TorsionAction& a, int guard) {
  if (a.modulus > guard) throw std::runtime_error("enumeration bound exceeded");
#ifdef _OPENMP
  std::vector<Candidate> cands = hnf_candidates(a.modulus, a.rank);
  std::vector<char> keep(cands.size(), 0);
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < long(cands.size()); ++i)
    keep[i] = invariant_under(cands[i], a) ? 1 : 0;
  std::vector<SubgroupModN> out;
  for (size_t i = 0; i < cands.size(); ++i)
    if (keep[i]) out.push_back(finish_subgroup(cands[i], a.modulus));
  sort_subgroups(out);
  return out;
#else
  return enumerate_invariant_serial(a, guard);
#endif
}

std::vector<SubgroupModN> enumerate_invariant_bruteforce(const TorsionAction& a) {
  int n = a.modulus, r = a.rank;
  long total = 1;
  for (int i = 0; i < r; ++i) total *= n;
  if (total > 64) throw std::runtime_error("bruteforce oracle: modulus too large");

  auto index_of = [&](const std::vector<int>& v) {
    long idx = 0;
    for (int i = 0; i < r; ++i) idx = idx * n + v[i];
    return idx;
  };
  std::vector<std::vector<int>> elems(total, std::vector<int>(r));
  for (long e = 0; e < total; ++e) {
    long x = e;
    for (int i = r - 1; i >= 0; --i) {
      elems[e][i] = int(x % n);
      x /= n;
    }
  }
  std::vector<int> add_table(size_t(total) * total);
  for (long x = 0; x < total; ++x)
    for (long y = 0; y < total; ++y) {
      std::vector<int> v(r);
      for (int i = 0; i < r; ++i) v[i] = (elems[x][i] + elems[y][i]) % n;
      add_table[size_t(x) * total + y] = int(index_of(v));
    }
  auto close_set = [&](std::uint64_t s) {
    s |= 1;  // identity
    while (true) {
      std::uint64_t next = s;
      for (int x = 0; x < total; ++x) {
        if (!(s >> x & 1)) continue;
        for (int y = x; y < total; ++y)
          if (s >> y & 1) next |= std::uint64_t(1) << add_table[size_t(x) * total + y];
      }
      if (next == s) return s;
      s = next;
    }
  };
  std::set<std::uint64_t> subs;
  subs.insert(close_set(0));
  for (long e = 0; e < total; ++e) subs.insert(close_set(std::uint64_t(1) << e));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint64_t> snapshot(subs.begin(), subs.end());
    for (size_t i = 0; i < snapshot.size(); ++i)
      for (size_t j = i + 1; j < snapshot.size(); ++j)
        if (subs.insert(close_set(snapshot[i] | snapshot[j])).second) grew = true;
  }
  // Invariance filter, element by element.
  auto act = [&](const std::vector<int>& m, long e) {
    std::vector<int> v(r, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) v[i] = (v[i] + m[size_t(i) * r + j] * elems[e][j]) % n;
    return index_of(v);
  };
  std::vector<SubgroupModN> out;
  for (std::uint64_t s : subs) {
    bool inv = true;
    for (const auto& m : a.matrices) {
      for (int e = 0; e < total && inv; ++e)
        if ((s >> e & 1) && !(s >> act(m, e) & 1)) inv = false;
      if (!inv) break;
    }
    if (!inv) continue;
    // Reconstruct the canonical description through the lattice route.
    std::vector<std::vector<Int>> rows;
    int count = 0;
    for (int e = 0; e < total; ++e) {
      if (!(s >> e & 1)) continue;
      ++count;
      std::vector<Int> row(r);
      for (int i = 0; i < r; ++i) row[i] = elems[e][i];
      rows.push_back(row);
    }
    for (int i = 0; i < r; ++i) {
      std::vector<Int> row(r, Int(0));
      row[i] = n;
      rows.push_back(row);
    }
    HnfResult h = hermite_normal_form(IMat::from_rows(rows));
    std::vector<std::vector<Int>> hr;
    for (int i = 0; i < r; ++i) {
      std::vector<Int> row(r);
      for (int j = 0; j < r; ++j) row[j] = h.h.at(i, j);
      hr.push_back(row);
    }
    Candidate c = make_candidate(hr, n);
    if (!c.valid) throw std::logic_error("bruteforce oracle: inconsistent lattice");
    SubgroupModN sub = finish_subgroup(c, n);
    if (sub.order != Int(count))
      throw std::logic_error("bruteforce oracle: order mismatch against element count");
    out.push_back(sub);
  }
  sort_subgroups(out);
  return out;
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "lemma71") return Scheme::lemma71;
  if (s == "cor72") return Scheme::cor72;
  if (s == "cor73") return Scheme::cor73;
  throw std::invalid_argument("unknown scheme: " + s);
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::lemma71: return "lemma71";
    case Scheme::cor72: return "cor72";
    case Scheme::cor73: return "cor73";
  }
  return "?";
}

std::string scheme_lattice(Scheme s) {
  switch (s) {
    case Scheme::lemma71: return "M2";
    case Scheme::cor72: return "M1";
    case Scheme::cor73: return "M3";
  }
  return "?";
}

namespace {

// Allowed invariant-factor triples (a | b | c with c = n the exponent).
bool shape_matches(Scheme s, int idx, const Int& a, const Int& b, const Int& n) {
  switch (s) {
    case Scheme::lemma71:
      if (idx == 0) return a == n && b == n;
      if (idx == 1) return n % 2 == 0 && a == n / 2 && b == n;
      if (idx == 2) return n % 2 == 0 && a == n / 2 && b == n / 2;
      return false;
    case Scheme::cor72:
      if (idx < 3) return shape_matches(Scheme::lemma71, idx, a, b, n);
      if (idx == 3) return n % 4 == 0 && a == n / 4 && b == n / 2;
      if (idx == 4) return n % 4 == 0 && a == n / 4 && b == n / 4;
      return false;
    case Scheme::cor73:
      if (idx == 0) return a == n && b == n;
      if (idx == 1) return n % 2 == 0 && a == n / 2 && b == n;
      if (idx == 2) return n % 4 == 0 && a == n / 4 && b == n;
      return false;
  }
  return false;
}

}  // namespace

int scheme_shape_count(Scheme s) { return s == Scheme::cor72 ? 5 : 3; }

std::string scheme_shape_str(Scheme s, int idx) {
  switch (s) {
    case Scheme::lemma71:
    case Scheme::cor72:
      if (idx == 0) return "mu_n^3";
      if (idx == 1) return "mu_n^2 x mu_{n/2}";
      if (idx == 2) return "mu_n x mu_{n/2}^2";
      if (idx == 3) return "mu_n x mu_{n/2} x mu_{n/4}";
      if (idx == 4) return "mu_n x mu_{n/4}^2";
      break;
    case Scheme::cor73:
      if (idx == 0) return "mu_n^3";
      if (idx == 1) return "mu_n^2 x mu_{n/2}";
      if (idx == 2) return "mu_n^2 x mu_{n/4}";
      break;
  }
  return "?";
}

ShapeCheck verify_classification(const TorsionAction& a, Scheme scheme, int guard) {
  if (a.lattice_name != scheme_lattice(scheme))
    throw std::invalid_argument("scheme " + scheme_name(scheme) + " requires the lattice " +
                                scheme_lattice(scheme) + ", got " + a.lattice_name);
  ShapeCheck check;
  check.shape_counts.assign(scheme_shape_count(scheme), 0);
  for (const SubgroupModN& s : enumerate_invariant(a, guard)) {
    ++check.total;
    Int n = s.exponent();
    Int f1 = s.invariant_factors.size() > 0 ? s.invariant_factors[0] : Int(1);
    Int f2 = s.invariant_factors.size() > 1 ? s.invariant_factors[1] : Int(1);
    bool matched = false;
    for (int idx = 0; idx < scheme_shape_count(scheme); ++idx)
      if (shape_matches(scheme, idx, f1, f2, n)) {
        ++check.shape_counts[idx];
        matched = true;
        break;
      }
    if (!matched) check.counterexamples.push_back(s);
  }
  check.pass = check.counterexamples.empty();
  return check;
}

CubicCore cubic_core(const SubgroupModN& s) {
  if (s.rank != 3) throw std::invalid_argument("cubic_core: rank 3 only");
  Int n = s.invariant_factors.empty() ? Int(1) : s.invariant_factors.front();
  CubicCore c;
  c.n = n;
  c.index = s.order / (n * n * n);
  return c;
}

}  // namespace toric
