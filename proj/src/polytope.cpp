#include "toric/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace toric {

std::vector<std::vector<Int>> LatticePolytope::vertex_coords() const {
  std::vector<std::vector<Int>> out;
  out.reserve(vertices.size());
  for (const auto& v : vertices) out.push_back(lattice.coords(v));
  return out;
}

std::vector<int> FacePoset::f_vector() const {
  std::vector<int> f;
  for (const auto& faces : by_dim) f.push_back(int(faces.size()));
  return f;
}

namespace {

std::vector<Int> sub(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<Int> cross(const std::vector<Int>& a, const std::vector<Int>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool is_zero(const std::vector<Int>& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

void primitivize_vec(std::vector<Int>& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  if (g > 1)
    for (Int& x : v) x /= g;
}

struct Facet {
  std::vector<Int> normal;  // primitive outer normal (basis coords)
  Int offset;               // <normal, p> = offset on the facet, < offset inside
  std::vector<int> vertex_ids;
};

// Supporting hyperplanes of conv(pts); pts must be the extreme points.
std::vector<Facet> facets_of(const std::vector<std::vector<Int>>& pts, int rank) {
  int n = int(pts.size());
  std::set<std::pair<std::vector<Int>, Int>> seen;
  std::vector<Facet> facets;
  auto consider = [&](std::vector<Int> normal) {
    if (is_zero(normal)) return;
    primitivize_vec(normal);
    for (int sign = 0; sign < 2; ++sign) {
      std::vector<Int> nn = normal;
      if (sign) for (Int& x : nn) x = -x;
      Int off = dot(nn, pts[0]);
      bool support = true;
      for (int t = 0; t < n; ++t) {
        Int v = dot(nn, pts[t]);
        if (v > off) off = v;
      }
      for (int t = 0; t < n; ++t)
        if (dot(nn, pts[t]) > off) { support = false; break; }
      (void)support;
      std::vector<int> on;
      for (int t = 0; t < n; ++t)
        if (dot(nn, pts[t]) == off) on.push_back(t);
      if (int(on.size()) >= rank && !seen.count({nn, off})) {
        // A facet must contain rank many affinely independent points.
        QMat diff(rank, int(on.size()) - 1);
        for (int c = 1; c < int(on.size()); ++c)
          for (int r = 0; r < rank; ++r)
            diff.at(r, c - 1) = Rat(pts[on[c]][r] - pts[on[0]][r]);
        if (int(on.size()) == 1 || diff.rank() == rank - 1) {
          seen.insert({nn, off});
          facets.push_back({nn, off, on});
        }
      }
    }
  };
  if (rank == 3) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
          consider(cross(sub(pts[j], pts[i]), sub(pts[k], pts[i])));
  } else if (rank == 2) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        std::vector<Int> d = sub(pts[j], pts[i]);
        consider({d[1], -d[0]});
      }
  } else {
    throw std::invalid_argument("facets_of: rank must be 2 or 3");
  }
  std::sort(facets.begin(), facets.end(),
            [](const Facet& a, const Facet& b) { return a.vertex_ids < b.vertex_ids; });
  return facets;
}

int affine_rank(const std::vector<std::vector<Int>>& pts) {
  if (pts.size() <= 1) return 0;
  QMat diff(int(pts[0].size()), int(pts.size()) - 1);
  for (size_t c = 1; c < pts.size(); ++c)
    for (size_t r = 0; r < pts[0].size(); ++r)
      diff.at(int(r), int(c - 1)) = Rat(pts[c][r] - pts[0][r]);
  return diff.rank();
}

}  // namespace

bool point_in_hull(const std::vector<std::vector<Int>>& points, const std::vector<Int>& x) {
  int d = int(x.size());
  int n = int(points.size());
  // Caratheodory: x in conv(points) iff in the hull of some <= d+1 of them.
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<int> comb;
  std::function<bool(int, int)> rec = [&](int start, int need) -> bool {
    if (need == 0) {
      int k = int(comb.size());
      // Solve sum l_i p_i = x, sum l_i = 1, l_i >= 0.
      QMat sys(d + 1, k);
      for (int c = 0; c < k; ++c) {
        for (int r = 0; r < d; ++r) sys.at(r, c) = Rat(points[comb[c]][r]);
        sys.at(d, c) = 1;
      }
      std::vector<Rat> rhs(d + 1);
      for (int r = 0; r < d; ++r) rhs[r] = Rat(x[r]);
      rhs[d] = 1;
      std::vector<Rat> sol;
      if (!sys.solve(rhs, sol)) return false;
      // The solve returns one solution of the affine system; for simplex-sized
      // subsets the solution is unique, so nonnegativity decides membership.
      for (const Rat& l : sol)
        if (l < 0) return false;
      // Verify, since solve() picks free variables as zero.
      std::vector<Rat> check(d + 1, Rat(0));
      for (int c = 0; c < k; ++c) {
        for (int r = 0; r < d; ++r) check[r] += sol[c] * Rat(points[comb[c]][r]);
        check[d] += sol[c];
      }
      for (int r = 0; r <= d; ++r)
        if (check[r] != rhs[r]) return false;
      return true;
    }
    for (int i = start; i <= n - need; ++i) {
      comb.push_back(i);
      if (rec(i + 1, need - 1)) { comb.pop_back(); return true; }
      comb.pop_back();
    }
    return false;
  };
  for (int k = 1; k <= std::min(n, d + 1); ++k)
    if (rec(0, k)) return true;
  return false;
}

std::vector<std::vector<Int>> hull_lattice_points(const std::vector<std::vector<Int>>& points) {
  int d = int(points[0].size());
  std::vector<Int> lo(points[0]), hi(points[0]);
  for (const auto& p : points)
    for (int i = 0; i < d; ++i) {
      if (p[i] < lo[i]) lo[i] = p[i];
      if (p[i] > hi[i]) hi[i] = p[i];
    }
  std::vector<std::vector<Int>> found;
  std::vector<Int> cur(d);
  std::function<void(int)> rec = [&](int i) {
    if (i == d) {
      if (point_in_hull(points, cur)) found.push_back(cur);
      return;
    }
    for (Int v = lo[i]; v <= hi[i]; ++v) {
      cur[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return found;
}

FacePoset face_poset(const LatticePolytope& p) {
  int rank = p.lattice.rank();
  if (rank != 2 && rank != 3) throw std::invalid_argument("face_poset: rank must be 2 or 3");
  std::vector<std::vector<Int>> pts = p.vertex_coords();
  int n = int(pts.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pts[i] == pts[j]) throw std::invalid_argument("face_poset: duplicate vertices");
  if (affine_rank(pts) != rank) throw std::invalid_argument("face_poset: polytope not full-dimensional");

  std::vector<Facet> facets = facets_of(pts, rank);

  // Each listed point must be extreme: on >= rank facets with normals of full rank.
  for (int t = 0; t < n; ++t) {
    QMat normals(rank, 0);
    std::vector<std::vector<Rat>> rows;
    for (const Facet& f : facets)
      if (std::find(f.vertex_ids.begin(), f.vertex_ids.end(), t) != f.vertex_ids.end()) {
        std::vector<Rat> r(rank);
        for (int i = 0; i < rank; ++i) r[i] = Rat(f.normal[i]);
        rows.push_back(r);
      }
    QMat m(std::max<int>(1, int(rows.size())), rank);
    for (size_t r = 0; r < rows.size(); ++r)
      for (int c = 0; c < rank; ++c) m.at(int(r), c) = rows[r][c];
    if (rows.empty() || m.rank() != rank)
      throw std::invalid_argument("face_poset: listed point is not an extreme point");
  }

  FacePoset poset;
  poset.by_dim.assign(rank, {});
  for (int t = 0; t < n; ++t) poset.by_dim[0].push_back({0, {t}});
  if (rank == 2) {
    for (const Facet& f : facets) {
      Face face{1, f.vertex_ids};
      std::sort(face.vertex_ids.begin(), face.vertex_ids.end());
      poset.by_dim[1].push_back(face);
    }
  } else {
    // Edges: vertex pairs lying on two distinct facets.
    std::set<std::vector<int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int shared = 0;
        for (const Facet& f : facets) {
          bool hi = std::find(f.vertex_ids.begin(), f.vertex_ids.end(), i) != f.vertex_ids.end();
          bool hj = std::find(f.vertex_ids.begin(), f.vertex_ids.end(), j) != f.vertex_ids.end();
          if (hi && hj) ++shared;
        }
        if (shared >= 2) edges.insert({i, j});
      }
    for (const auto& e : edges) poset.by_dim[1].push_back({1, e});
    for (const Facet& f : facets) {
      Face face{2, f.vertex_ids};
      std::sort(face.vertex_ids.begin(), face.vertex_ids.end());
      poset.by_dim[2].push_back(face);
    }
  }
  for (auto& faces : poset.by_dim) std::sort(faces.begin(), faces.end());
  return poset;
}

namespace {

Cone cone_over(const std::vector<std::vector<Int>>& pts, const Face& face) {
  Cone c;
  c.vertex_ids = face.vertex_ids;
  c.dim = face.dim + 1;
  for (int id : face.vertex_ids) {
    std::vector<Int> g = pts[id];
    primitivize_vec(g);
    c.gens.push_back(g);
  }
  // Drop duplicate ray generators (distinct vertices on a common ray cannot
  // happen for extreme points, but keep the invariant explicit).
  std::sort(c.gens.begin(), c.gens.end());
  c.gens.erase(std::unique(c.gens.begin(), c.gens.end()), c.gens.end());
  return c;
}

}  // namespace

FaceFan face_fan(const LatticePolytope& p) {
  int rank = p.lattice.rank();
  FacePoset poset = face_poset(p);
  std::vector<std::vector<Int>> pts = p.vertex_coords();

  // Origin strictly interior: every facet's supporting value must be positive.
  std::vector<Facet> facets = facets_of(pts, rank);
  for (const Facet& f : facets)
    if (f.offset <= 0) throw std::invalid_argument("face_fan: origin not interior");

  FaceFan fan;
  fan.lattice = p.lattice;
  fan.by_dim.assign(rank, {});
  for (int d = 0; d < rank; ++d)
    for (const Face& face : poset.by_dim[d]) fan.by_dim[d].push_back(cone_over(pts, face));
  fan.maximal = fan.by_dim[rank - 1];

  if (rank == 3) {
    // Completeness: every 2-dimensional cone borders exactly two maximal cones.
    for (const Cone& edge : fan.by_dim[1]) {
      int cnt = 0;
      for (const Cone& mx : fan.maximal) {
        bool inside = true;
        for (int id : edge.vertex_ids)
          if (std::find(mx.vertex_ids.begin(), mx.vertex_ids.end(), id) == mx.vertex_ids.end())
            inside = false;
        if (inside) ++cnt;
      }
      if (cnt != 2) throw std::logic_error("face_fan: fan is not complete");
    }
  }
  return fan;
}

std::string ConeClassification::str() const {
  switch (cls) {
    case ConeClass::smooth: return "smooth";
    case ConeClass::odp: return "ODP";
    case ConeClass::half_1_1_1: return "1/2(1,1,1)";
    case ConeClass::other:
      return "other(mult " + multiplicity.get_str() + (terminal ? ", terminal" : ", not terminal") + ")";
  }
  return "?";
}

namespace {

Int det3(const std::vector<Int>& a, const std::vector<Int>& b, const std::vector<Int>& c) {
  return dot(a, cross(b, c));
}

bool cone_is_pointed(const std::vector<std::vector<Int>>& gens) {
  // Pointed iff 0 is not a nontrivial nonnegative combination of the
  // generators, i.e. 0 is not in conv(gens).
  std::vector<Int> zero(gens[0].size(), Int(0));
  return !point_in_hull(gens, zero);
}

bool terminal_cone(const std::vector<std::vector<Int>>& gens) {
  std::vector<std::vector<Int>> pts = gens;
  pts.push_back(std::vector<Int>(gens[0].size(), Int(0)));
  auto latpts = hull_lattice_points(pts);
  std::set<std::vector<Int>> allowed(pts.begin(), pts.end());
  for (const auto& q : latpts)
    if (!allowed.count(q)) return false;
  return true;
}

// Normalized volume of conv(0, gens) for a full-dimensional cone in Z^3.
Int cone_multiplicity(const std::vector<std::vector<Int>>& gens) {
  if (gens.size() == 3) {
    Int d = det3(gens[0], gens[1], gens[2]);
    return d < 0 ? Int(-d) : d;
  }
  if (gens.size() == 4) {
    // Order the quadrilateral: find the diagonal pairing and triangulate.
    // (a, c) is a diagonal iff b and d lie on opposite sides of plane(0, a, c).
    const auto& a = gens[0];
    for (int c = 1; c < 4; ++c) {
      int b = -1, d = -1;
      for (int t = 1; t < 4; ++t)
        if (t != c) (b < 0 ? b : d) = t;
      std::vector<Int> n = cross(a, gens[c]);
      Int sb = dot(n, gens[b]), sd = dot(n, gens[d]);
      if ((sb > 0 && sd < 0) || (sb < 0 && sd > 0)) {
        Int m1 = det3(a, gens[c], gens[b]);
        Int m2 = det3(a, gens[c], gens[d]);
        Int v = (m1 < 0 ? -m1 : m1) + (m2 < 0 ? -m2 : m2);
        return v;
      }
    }
    throw std::logic_error("cone_multiplicity: generators not in convex position");
  }
  throw std::invalid_argument("cone_multiplicity: unsupported generator count");
}

}  // namespace

ConeClassification classify_cone(const Cone& c) {
  int rank = int(c.gens.empty() ? 0 : c.gens[0].size());
  if (c.gens.empty()) throw std::invalid_argument("classify_cone: empty cone");
  if (!cone_is_pointed(c.gens)) throw std::invalid_argument("classify_cone: cone not pointed");

  ConeClassification out;
  if (c.dim < rank) {
    // Lower-dimensional cones: smooth when the generators extend to a basis
    // of their saturated span (all SNF invariants 1).
    IMat m(rank, int(c.gens.size()));
    for (int col = 0; col < int(c.gens.size()); ++col)
      for (int r = 0; r < rank; ++r) m.at(r, col) = c.gens[col][r];
    SnfResult snf = smith_normal_form(m);
    Int prod = 1;
    for (int i = 0; i < std::min(m.rows(), m.cols()); ++i)
      if (snf.s.at(i, i) != 0) prod *= snf.s.at(i, i);
    out.multiplicity = prod;
    out.terminal = true;
    out.cls = (prod == 1) ? ConeClass::smooth : ConeClass::other;
    return out;
  }

  if (rank == 2) {
    IMat m(2, 2);
    for (int col = 0; col < 2; ++col)
      for (int r = 0; r < 2; ++r) m.at(r, col) = c.gens[col][r];
    Int d = m.det();
    if (d < 0) d = -d;
    out.multiplicity = d;
    out.terminal = (d == 1);
    out.cls = (d == 1) ? ConeClass::smooth : ConeClass::other;
    return out;
  }

  if (rank != 3) throw std::invalid_argument("classify_cone: rank must be 2 or 3");

  out.multiplicity = cone_multiplicity(c.gens);
  out.terminal = terminal_cone(c.gens);

  if (c.gens.size() == 3) {
    if (out.multiplicity == 1) {
      out.cls = ConeClass::smooth;
      return out;
    }
    if (out.multiplicity == 2) {
      // Half point iff the nonzero coset representative is the half-sum.
      std::vector<Rat> half(3, Rat(0));
      QMat g(3, 3);
      for (int col = 0; col < 3; ++col)
        for (int r = 0; r < 3; ++r) g.at(r, col) = Rat(c.gens[col][r]);
      std::vector<Rat> hs = g * std::vector<Rat>{Rat(1, 2), Rat(1, 2), Rat(1, 2)};
      bool integral = true;
      for (Rat& v : hs) {
        v.canonicalize();
        if (v.get_den() != 1) integral = false;
      }
      out.cls = integral ? ConeClass::half_1_1_1 : ConeClass::other;
      return out;
    }
    out.cls = ConeClass::other;
    return out;
  }

  if (c.gens.size() == 4) {
    // ODP: empty lattice quadrilateral over a height-one plane, i.e. the cone
    // over the unit square (normalized volume 2, only the four vertices).
    bool empty = true;
    auto pts = hull_lattice_points(c.gens);
    std::set<std::vector<Int>> verts(c.gens.begin(), c.gens.end());
    for (const auto& q : pts)
      if (!verts.count(q)) empty = false;
    if (empty && out.multiplicity == 2) {
      out.cls = ConeClass::odp;
      return out;
    }
    out.cls = ConeClass::other;
    return out;
  }

  out.cls = ConeClass::other;
  return out;
}

bool is_terminal_fano(const FaceFan& f) {
  for (const Cone& c : f.maximal)
    if (!terminal_cone(c.gens)) return false;
  return true;
}

FiniteMatrixGroup automorphisms(const LatticePolytope& p) {
  int rank = p.lattice.rank();
  std::vector<std::vector<Int>> pts = p.vertex_coords();
  int n = int(pts.size());
  // An independent tuple of vertices to pin the linear map.
  std::vector<int> base;
  QMat chosen(rank, 0);
  std::vector<std::vector<Rat>> cols;
  for (int i = 0; i < n && int(base.size()) < rank; ++i) {
    std::vector<int> cand = base;
    cand.push_back(i);
    QMat m(rank, int(cand.size()));
    for (size_t c = 0; c < cand.size(); ++c)
      for (int r = 0; r < rank; ++r) m.at(r, int(c)) = Rat(pts[cand[c]][r]);
    if (m.rank() == int(cand.size())) base = cand;
  }
  if (int(base.size()) != rank) throw std::invalid_argument("automorphisms: degenerate polytope");
  QMat v(rank, rank);
  for (int c = 0; c < rank; ++c)
    for (int r = 0; r < rank; ++r) v.at(r, c) = Rat(pts[base[c]][r]);
  QMat vinv = v.inverse();

  std::set<std::vector<Int>> vert_set(pts.begin(), pts.end());
  std::vector<IMat> found;
  std::vector<int> img(rank);
  std::function<void(int)> rec = [&](int k) {
    if (k == rank) {
      QMat w(rank, rank);
      for (int c = 0; c < rank; ++c)
        for (int r = 0; r < rank; ++r) w.at(r, c) = Rat(pts[img[c]][r]);
      QMat x = w * vinv;
      IMat xi(rank, rank);
      for (int r = 0; r < rank; ++r)
        for (int c = 0; c < rank; ++c) {
          Rat e = x.at(r, c);
          e.canonicalize();
          if (e.get_den() != 1) return;
          xi.at(r, c) = e.get_num();
        }
      Int d = xi.det();
      if (d != 1 && d != -1) return;
      std::set<std::vector<Int>> image;
      for (const auto& q : pts) {
        std::vector<Int> iq = xi * q;
        if (!vert_set.count(iq)) return;
        image.insert(iq);
      }
      if (int(image.size()) != n) return;
      found.push_back(xi);
      return;
    }
    for (int i = 0; i < n; ++i) {
      img[k] = i;
      rec(k + 1);
    }
  };
  rec(0);
  std::sort(found.begin(), found.end());

  // Minimal generating set, greedily.
  FiniteMatrixGroup full;
  full.lattice = p.lattice;
  full.elements = found;
  full.order = int(found.size());
  std::vector<IMat> gens;
  FiniteMatrixGroup sofar = closure(p.lattice, gens);
  for (const IMat& e : found) {
    if (sofar.contains(e)) continue;
    gens.push_back(e);
    sofar = closure(p.lattice, gens);
    if (sofar.order == full.order) break;
  }
  full.generators = gens.empty() ? std::vector<IMat>{IMat::identity(rank)} : gens;
  if (sofar.order != full.order) throw std::logic_error("automorphisms: vertex maps not closed");
  return full;
}

}  // namespace toric
