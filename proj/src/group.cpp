#include "toric/group.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace toric {

bool FiniteMatrixGroup::contains(const IMat& m) const {
  return std::binary_search(elements.begin(), elements.end(), m);
}

int FiniteMatrixGroup::index_of(const IMat& m) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), m);
  if (it == elements.end() || !(*it == m)) return -1;
  return int(it - elements.begin());
}

FiniteMatrixGroup closure(const EmbeddedLattice& lattice, const std::vector<IMat>& generators,
                          int order_cap) {
  int n = lattice.rank();
  for (const IMat& g : generators) {
    if (g.rows() != n || g.cols() != n) throw std::invalid_argument("closure: generator size mismatch");
    Int d = g.det();
    if (d != 1 && d != -1) throw std::invalid_argument("closure: generator not invertible over Z");
  }
  std::set<IMat> seen;
  seen.insert(IMat::identity(n));
  std::vector<IMat> work(seen.begin(), seen.end());
  for (const IMat& g : generators)
    if (seen.insert(g).second) work.push_back(g);
  size_t head = 0;
  while (head < work.size()) {
    IMat m = work[head++];
    for (const IMat& g : generators) {
      for (const IMat& p : {m * g, g * m}) {
        if (seen.insert(p).second) {
          if (int(seen.size()) > order_cap)
            throw std::runtime_error("group not finite within cap");
          work.push_back(p);
        }
      }
    }
  }
  FiniteMatrixGroup grp;
  grp.lattice = lattice;
  grp.generators = generators;
  grp.elements.assign(seen.begin(), seen.end());
  grp.order = int(grp.elements.size());
  return grp;
}

int element_order(const IMat& m, int cap) {
  IMat id = IMat::identity(m.rows());
  IMat p = m;
  for (int k = 1; k <= cap; ++k) {
    if (p == id) return k;
    p = p * m;
  }
  throw std::runtime_error("element_order: cap exceeded");
}

GroupCensus census(const FiniteMatrixGroup& g) {
  GroupCensus c;
  c.order = g.order;
  c.abelian = true;
  for (const IMat& a : g.elements) {
    ++c.order_histogram[element_order(a)];
    for (const IMat& b : g.elements) {
      if (!(a * b == b * a)) { c.abelian = false; break; }
    }
    if (!c.abelian) break;
  }
  // center
  for (const IMat& a : g.elements) {
    bool central = true;
    for (const IMat& b : g.elements)
      if (!(a * b == b * a)) { central = false; break; }
    if (central) ++c.center_order;
  }
  // derived subgroup
  std::vector<IMat> comms;
  for (const IMat& a : g.elements)
    for (const IMat& b : g.elements)
      comms.push_back(a * b * a.inverse_unimodular() * b.inverse_unimodular());
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  FiniteMatrixGroup der = closure(g.lattice, comms, g.order);
  c.derived_order = der.order;
  return c;
}

std::string identify(const FiniteMatrixGroup& g) {
  GroupCensus c = census(g);
  auto hist = [&](int k) {
    auto it = c.order_histogram.find(k);
    return it == c.order_histogram.end() ? 0 : it->second;
  };
  int n = c.order;
  if (n == 1) return "1";
  if (c.abelian) {
    if (n == 2) return "C2";
    if (n == 3) return "C3";
    if (n == 4) return hist(4) > 0 ? "C4" : "C2^2";
    if (n == 6) return "C6";
    return "other(" + std::to_string(n) + ")";
  }
  if (n == 6) return "S3";
  if (n == 8 && hist(4) == 2) return "D8";
  if (n == 12 && c.derived_order == 4 && hist(3) == 8) return "A4";
  if (n == 12 && c.derived_order == 3 && hist(6) == 2) return "S3xC2";
  if (n == 24 && c.center_order == 1 && c.derived_order == 12) return "S4";
  if (n == 24 && c.center_order == 2 && c.derived_order == 4 && hist(6) == 8) return "A4xC2";
  if (n == 48 && c.center_order == 2 && c.derived_order == 12) return "S4xC2";
  return "other(" + std::to_string(n) + ")";
}

std::vector<IMat> invariant_symmetric_forms(const FiniteMatrixGroup& g) {
  int n = g.rank();
  // Unknowns: entries f_{ij}, i <= j.
  std::vector<std::pair<int, int>> vars;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) vars.emplace_back(i, j);
  int nv = int(vars.size());
  std::vector<std::vector<Rat>> eqs;
  auto var_index = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    for (int k = 0; k < nv; ++k)
      if (vars[k] == std::make_pair(i, j)) return k;
    return -1;
  };
  const std::vector<IMat>& gens = g.generators.empty() ? g.elements : g.generators;
  for (const IMat& a : gens) {
    // (a^T F a - F)_{rc} = 0 for r <= c
    for (int r = 0; r < n; ++r)
      for (int cc = r; cc < n; ++cc) {
        std::vector<Rat> row(nv, Rat(0));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            row[var_index(i, j)] += Rat(a.at(i, r) * a.at(j, cc));
        row[var_index(r, cc)] -= 1;
        eqs.push_back(row);
      }
  }
  QMat sys(std::max<int>(1, int(eqs.size())), nv);
  for (int r = 0; r < int(eqs.size()); ++r)
    for (int c = 0; c < nv; ++c) sys.at(r, c) = eqs[r][c];
  QMat ker = sys.kernel();
  std::vector<IMat> basis;
  for (int c = 0; c < ker.cols(); ++c) {
    Int den = 1;
    for (int r = 0; r < nv; ++r) {
      Rat v = ker.at(r, c);
      v.canonicalize();
      den = lcm(den, Int(v.get_den()));
    }
    IMat f(n, n);
    Int content = 0;
    for (int r = 0; r < nv; ++r) {
      Rat v = ker.at(r, c) * Rat(den);
      v.canonicalize();
      Int e = v.get_num();
      f.at(vars[r].first, vars[r].second) = e;
      f.at(vars[r].second, vars[r].first) = e;
      content = gcd(content, e);
    }
    if (content > 1)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) f.at(i, j) /= content;
    // Normalize sign so the trace is nonnegative (diagonal first nonzero).
    for (int i = 0; i < n; ++i) {
      if (f.at(i, i) != 0) {
        if (f.at(i, i) < 0) f = -f;
        break;
      }
    }
    basis.push_back(f);
  }
  return basis;
}

IMat averaged_form(const FiniteMatrixGroup& g) {
  int n = g.rank();
  IMat sum(n, n);
  for (const IMat& a : g.elements) {
    IMat f = a.transpose() * a;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sum.at(i, j) += f.at(i, j);
  }
  Int content = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) content = gcd(content, sum.at(i, j));
  if (content > 1)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sum.at(i, j) /= content;
  return sum;
}

namespace {

bool positive_definite(const IMat& f) {
  // Leading principal minors all positive.
  int n = f.rows();
  for (int k = 1; k <= n; ++k) {
    IMat sub(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub.at(i, j) = f.at(i, j);
    if (sub.det() <= 0) return false;
  }
  return true;
}

Int isqrt_floor(const Int& v) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

// All integer vectors v (up to no symmetry; both signs included) with
// v^T f v == target exactly, f positive definite.
std::vector<std::vector<Int>> vectors_of_norm(const IMat& f, const Rat& target) {
  std::vector<std::vector<Int>> out;
  Rat t = target;
  t.canonicalize();
  if (t < 0) return out;
  int n = f.rows();
  QMat finv = QMat::from_int(f).inverse();
  std::vector<Int> bound(n);
  for (int i = 0; i < n; ++i) {
    Rat b = t * finv.at(i, i);
    b.canonicalize();
    Int fl = b.get_num() / b.get_den();
    bound[i] = isqrt_floor(fl);
  }
  std::vector<Int> v(n, Int(0));
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      Rat norm = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) norm += Rat(v[a] * f.at(a, b) * v[b]);
      if (norm == t) out.push_back(v);
      return;
    }
    for (Int x = -bound[i]; x <= bound[i]; ++x) {
      v[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

Rat bilinear(const IMat& f, const std::vector<Int>& a, const std::vector<Int>& b) {
  Rat s = 0;
  int n = f.rows();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += Rat(a[i] * f.at(i, j) * b[j]);
  return s;
}

}  // namespace

std::vector<IMat> form_isometries(const IMat& f_from, const IMat& f_to, const Rat& scale) {
  int n = f_from.rows();
  std::vector<IMat> result;
  // Candidate j-th columns: vectors with f_to-norm == scale * (f_from)_{jj}.
  std::vector<std::vector<std::vector<Int>>> cand(n);
  for (int j = 0; j < n; ++j) {
    Rat t = scale * Rat(f_from.at(j, j));
    cand[j] = vectors_of_norm(f_to, t);
    if (cand[j].empty()) return result;
  }
  std::vector<std::vector<Int>> cols(n);
  std::function<void(int)> rec = [&](int j) {
    if (j == n) {
      IMat x(n, n);
      for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) x.at(r, c) = cols[c][r];
      Int d = x.det();
      if (d == 1 || d == -1) result.push_back(x);
      return;
    }
    for (const auto& v : cand[j]) {
      bool ok = true;
      for (int i = 0; i < j && ok; ++i)
        if (bilinear(f_to, cols[i], v) != scale * Rat(f_from.at(i, j))) ok = false;
      if (!ok) continue;
      cols[j] = v;
      rec(j + 1);
    }
  };
  rec(0);
  std::sort(result.begin(), result.end());
  return result;
}

namespace {

// The unique primitive invariant form when the space is one-dimensional and
// definite; throws otherwise with the spec'd messages.
IMat unique_definite_form(const FiniteMatrixGroup& g) {
  std::vector<IMat> forms = invariant_symmetric_forms(g);
  if (forms.size() != 1) throw std::runtime_error("unsupported: non-unique invariant form");
  IMat f = forms[0];
  if (!positive_definite(f)) {
    f = -f;
    if (!positive_definite(f)) throw std::runtime_error("unsupported: form space not definite");
  }
  return f;
}

bool conjugates_onto(const IMat& x, const FiniteMatrixGroup& g1, const FiniteMatrixGroup& g2) {
  IMat xi = x.inverse_unimodular();
  std::vector<IMat> mapped;
  mapped.reserve(g1.elements.size());
  for (const IMat& g : g1.elements) mapped.push_back(x * g * xi);
  std::sort(mapped.begin(), mapped.end());
  return mapped == g2.elements;
}

}  // namespace

std::optional<IMat> conjugator(const FiniteMatrixGroup& g1, const FiniteMatrixGroup& g2) {
  if (g1.rank() != g2.rank()) throw std::invalid_argument("conjugator: rank mismatch");
  if (g1.order != g2.order) return std::nullopt;
  if (g1.same_elements(g2)) return IMat::identity(g1.rank());
  IMat f1 = unique_definite_form(g1);
  IMat f2 = unique_definite_form(g2);
  // Any conjugator X satisfies X^T f2 X = lambda f1 with lambda^rank =
  // det(f2)/det(f1) (up to the primitive scaling), so lambda is pinned.
  int n = g1.rank();
  Rat ratio = Rat(f2.det()) / Rat(f1.det());
  ratio.canonicalize();
  Int num_root, den_root;
  int exact_num = mpz_root(num_root.get_mpz_t(), ratio.get_num_mpz_t(), n);
  int exact_den = mpz_root(den_root.get_mpz_t(), ratio.get_den_mpz_t(), n);
  if (!exact_num || !exact_den) return std::nullopt;  // no rational scale, no isometry
  Rat lambda(num_root, den_root);
  for (const IMat& x : form_isometries(f1, f2, lambda))
    if (conjugates_onto(x, g1, g2)) return x;
  return std::nullopt;
}

namespace {

// Intersection refinement of rational eigenspace candidates over the
// generators; nonempty result means a common eigenline exists.
bool has_invariant_line(const std::vector<IMat>& gens, int n) {
  std::vector<QMat> spaces;  // columns span candidate subspaces
  QMat full = QMat::identity(n);
  spaces.push_back(full);
  for (const IMat& g : gens) {
    std::vector<QMat> next;
    for (const QMat& sp : spaces) {
      for (int sign = -1; sign <= 1; sign += 2) {
        // Solve (g - sign I) * (sp * y) = 0 for y.
        QMat m = QMat::from_int(g);
        for (int i = 0; i < n; ++i) m.at(i, i) -= sign;
        QMat restricted = m * sp;
        QMat ker = restricted.kernel();
        if (ker.cols() == 0) continue;
        next.push_back(sp * ker);
      }
    }
    spaces = std::move(next);
    if (spaces.empty()) return false;
  }
  return true;
}

}  // namespace

bool q_irreducible(const FiniteMatrixGroup& g) {
  int n = g.rank();
  if (n > 3) throw std::invalid_argument("unsupported rank");
  if (n == 1) return true;
  std::vector<IMat> gens = g.generators.empty() ? g.elements : g.generators;
  if (has_invariant_line(gens, n)) return false;
  if (n == 3) {
    std::vector<IMat> tgens;
    tgens.reserve(gens.size());
    for (const IMat& m : gens) tgens.push_back(m.transpose());
    if (has_invariant_line(tgens, n)) return false;  // invariant plane
  }
  return true;
}

FiniteMatrixGroup normalizer(const FiniteMatrixGroup& g) {
  IMat f = unique_definite_form(g);
  std::vector<IMat> auts = form_isometries(f, f, Rat(1));
  std::vector<IMat> norm;
  for (const IMat& x : auts)
    if (conjugates_onto(x, g, g)) norm.push_back(x);
  FiniteMatrixGroup result = closure(g.lattice, norm);
  if (result.order != int(norm.size()))
    throw std::logic_error("normalizer: filtered set not closed");
  return result;
}

CayleyTable cayley_table(const FiniteMatrixGroup& g) {
  if (g.order > 64) throw std::invalid_argument("cayley_table: order > 64 unsupported");
  CayleyTable t;
  t.n = g.order;
  t.mul.resize(size_t(t.n) * t.n);
  t.inv.resize(t.n);
  t.orders.resize(t.n);
  t.identity = g.index_of(IMat::identity(g.rank()));
  for (int a = 0; a < t.n; ++a) {
    for (int b = 0; b < t.n; ++b) {
      int p = g.index_of(g.elements[a] * g.elements[b]);
      if (p < 0) throw std::logic_error("cayley_table: product escapes element list");
      t.mul[size_t(a) * t.n + b] = p;
      if (p == t.identity) t.inv[a] = b;
    }
    t.orders[a] = element_order(g.elements[a]);
  }
  return t;
}

ElementMask closure_mask(const CayleyTable& t, ElementMask seed) {
  ElementMask m = seed | (ElementMask(1) << t.identity);
  while (true) {
    ElementMask next = m;
    for (int a = 0; a < t.n; ++a) {
      if (!(m >> a & 1)) continue;
      next |= ElementMask(1) << t.inv[a];
      for (int b = 0; b < t.n; ++b)
        if (m >> b & 1) next |= ElementMask(1) << t.at(a, b);
    }
    if (next == m) return m;
    m = next;
  }
}

std::vector<int> mask_elements(ElementMask m) {
  std::vector<int> v;
  for (int i = 0; i < 64; ++i)
    if (m >> i & 1) v.push_back(i);
  return v;
}

std::vector<Subgroup> all_subgroups(const FiniteMatrixGroup& g) {
  CayleyTable t = cayley_table(g);
  std::map<ElementMask, std::vector<int>> found;
  ElementMask triv = ElementMask(1) << t.identity;
  found[triv] = {};
  std::vector<ElementMask> work{triv};
  while (!work.empty()) {
    ElementMask h = work.back();
    work.pop_back();
    const std::vector<int> base_gens = found[h];
    for (int e = 0; e < t.n; ++e) {
      if (h >> e & 1) continue;
      ElementMask k = closure_mask(t, h | (ElementMask(1) << e));
      if (found.count(k)) continue;
      std::vector<int> gens = base_gens;
      gens.push_back(e);
      found[k] = gens;
      work.push_back(k);
    }
  }
  std::vector<Subgroup> subs;
  for (const auto& [mask, gens] : found) {
    Subgroup s;
    s.mask = mask;
    s.gens = gens;
    s.order = int(mask_elements(mask).size());
    subs.push_back(s);
  }
  std::sort(subs.begin(), subs.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.mask < b.mask;
  });
  return subs;
}

FiniteMatrixGroup subgroup_to_group(const FiniteMatrixGroup& g, const Subgroup& h) {
  FiniteMatrixGroup out;
  out.lattice = g.lattice;
  for (int e : h.gens) out.generators.push_back(g.elements[e]);
  if (out.generators.empty()) out.generators.push_back(IMat::identity(g.rank()));
  for (int e : mask_elements(h.mask)) out.elements.push_back(g.elements[e]);
  std::sort(out.elements.begin(), out.elements.end());
  out.order = int(out.elements.size());
  return out;
}

std::string identify_subgroup(const FiniteMatrixGroup& g, const CayleyTable& t, const Subgroup& h) {
  (void)t;
  return identify(subgroup_to_group(g, h));
}

}  // namespace toric
