#include "toric/model.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "toric/data_path.hpp"

namespace toric {

using nlohmann::json;

namespace {

QMat parse_basis(const json& j) {
  Int den(j.at("den").get<long>());
  auto cols = j.at("cols");
  int rank = int(cols.size());
  QMat b(rank, rank);
  for (int c = 0; c < rank; ++c)
    for (int r = 0; r < rank; ++r) b.at(r, c) = Rat(Int(cols[c][r].get<long>()), den);
  return b;
}

std::vector<std::vector<Rat>> parse_points(const json& j) {
  Int den(j.at("den").get<long>());
  std::vector<std::vector<Rat>> pts;
  for (const auto& p : j.at("points")) {
    std::vector<Rat> v;
    for (const auto& x : p) v.emplace_back(Int(x.get<long>()), den);
    pts.push_back(v);
  }
  return pts;
}

Chart parse_chart(const json& j) {
  Chart c;
  c.factors = j.at("factors").get<std::vector<int>>();
  c.coord_names = j.at("coords").get<std::vector<std::string>>();
  for (const auto& m : j.at("monomials")) {
    Chart::Monomial mon;
    mon.sign = m.at("sign").get<int>();
    for (const auto& e : m.at("exp")) mon.exp.emplace_back(e.get<long>());
    c.monomials.push_back(mon);
  }
  for (const auto& ratio : j.at("ratios")) {
    std::vector<std::pair<int, Int>> terms;
    for (const auto& t : ratio) terms.emplace_back(t[0].get<int>(), Int(t[1].get<long>()));
    c.ratios.push_back(terms);
  }
  if (j.contains("equations")) {
    for (const auto& eq : j.at("equations")) {
      std::vector<Int> lhs, rhs;
      for (const auto& e : eq.at("lhs")) lhs.emplace_back(e.get<long>());
      for (const auto& e : eq.at("rhs")) rhs.emplace_back(e.get<long>());
      c.equations.emplace_back(lhs, rhs);
    }
  }
  c.generate_binomials = j.value("generate_binomials", false);
  if (int(c.monomials.size()) != std::accumulate(c.factors.begin(), c.factors.end(), 0))
    throw std::runtime_error("chart: coordinate count does not match factor structure");
  return c;
}

struct CatalogState {
  std::vector<ToricModel> models;
  std::map<std::string, int> by_name;
  std::map<std::string, FiniteMatrixGroup> weyl_cache;
  std::mutex mu;
};

CatalogState& state() {
  static CatalogState s;
  return s;
}

void validate_model(const ToricModel& m, const json& expected) {
  // Vertices are lattice points with primitive treatment handled by the fan;
  // the stored census must match the computed one.
  for (const auto& v : m.polytope.vertices)
    if (!m.n_lattice.contains(v)) throw std::runtime_error(m.name + ": vertex not in lattice");
  StrataCensus c = strata(m);
  if (expected.contains("divisors") && c.divisors != expected.at("divisors").get<int>())
    throw std::runtime_error(m.name + ": divisor census mismatch");
  if (expected.contains("curves") && c.curves != expected.at("curves").get<int>())
    throw std::runtime_error(m.name + ": curve census mismatch");
  if (expected.contains("points") && c.fixed_points != expected.at("points").get<int>())
    throw std::runtime_error(m.name + ": fixed point census mismatch");
  if (expected.contains("terminal") && m.terminal != expected.at("terminal").get<bool>())
    throw std::runtime_error(m.name + ": terminality mismatch");
  if (expected.contains("point_classes")) {
    std::map<std::string, int> want;
    for (auto it = expected.at("point_classes").begin(); it != expected.at("point_classes").end(); ++it)
      want[it.key()] = it.value().get<int>();
    std::map<std::string, int> got;
    for (const auto& [k, v] : c.point_classes) got[k] = v;
    if (want != got) throw std::runtime_error(m.name + ": singularity census mismatch");
  }
}

void load_catalog() {
  CatalogState& s = state();
  if (!s.models.empty()) return;
  std::ifstream in(data_file("catalog.json"));
  json j;
  in >> j;
  for (const auto& mj : j.at("models")) {
    ToricModel m;
    m.name = mj.at("name").get<std::string>();
    if (mj.contains("grdb") && !mj.at("grdb").is_null()) m.grdb_id = mj.at("grdb").get<int>();
    m.n_lattice = EmbeddedLattice(m.name + ".N", parse_basis(mj.at("lattice")));
    m.m_lattice = m.n_lattice.dual(m.name + ".M");
    m.polytope.lattice = m.n_lattice;
    m.polytope.vertices = parse_points(mj.at("vertices"));
    m.fan = face_fan(m.polytope);
    m.terminal = is_terminal_fano(m.fan);
    if (mj.contains("expected") && mj.at("expected").contains("weyl_type"))
      m.expected_weyl = mj.at("expected").at("weyl_type").get<std::string>();
    if (mj.contains("chart")) m.chart = parse_chart(mj.at("chart"));
    if (mj.contains("expected")) validate_model(m, mj.at("expected"));
    s.by_name[m.name] = int(s.models.size());
    s.models.push_back(std::move(m));
  }
}

}  // namespace

const std::vector<ToricModel>& catalog() {
  CatalogState& s = state();
  std::lock_guard<std::mutex> lock(s.mu);
  load_catalog();
  return s.models;
}

const ToricModel& model(const std::string& name) {
  const auto& models = catalog();
  auto it = state().by_name.find(name);
  if (it == state().by_name.end()) throw std::invalid_argument("unknown variety: " + name);
  return models[it->second];
}

std::string StrataCensus::str() const {
  std::ostringstream os;
  os << divisors << " divisors, " << curves << " curves, " << fixed_points << " fixed points (";
  bool first = true;
  for (const auto& [k, v] : point_classes) {
    os << (first ? "" : ", ") << v << " " << k;
    first = false;
  }
  os << ")";
  return os.str();
}

StrataCensus strata(const ToricModel& x) {
  StrataCensus c;
  int rank = x.n_lattice.rank();
  c.divisors = int(x.fan.by_dim[0].size());
  c.curves = rank == 3 ? int(x.fan.by_dim[1].size()) : 0;
  c.fixed_points = int(x.fan.maximal.size());
  for (const Cone& cone : x.fan.maximal) {
    ConeClassification cc = classify_cone(cone);
    c.maximal_classes.push_back(cc);
    std::string label;
    switch (cc.cls) {
      case ConeClass::smooth: label = "smooth"; break;
      case ConeClass::odp: label = "ODP"; break;
      case ConeClass::half_1_1_1: label = "half"; break;
      case ConeClass::other: label = cc.terminal ? "other_terminal" : "other_nonterminal"; break;
    }
    ++c.point_classes[label];
  }
  return c;
}

const FiniteMatrixGroup& weyl(const ToricModel& x) {
  CatalogState& s = state();
  std::lock_guard<std::mutex> lock(s.mu);
  auto it = s.weyl_cache.find(x.name);
  if (it != s.weyl_cache.end()) return it->second;
  FiniteMatrixGroup aut = automorphisms(x.polytope);  // on N
  FiniteMatrixGroup w;
  w.lattice = x.m_lattice;
  for (const IMat& g : aut.elements) w.elements.push_back(g.inverse_unimodular().transpose());
  std::sort(w.elements.begin(), w.elements.end());
  w.order = int(w.elements.size());
  for (const IMat& g : aut.generators) w.generators.push_back(g.inverse_unimodular().transpose());
  if (x.expected_weyl && identify(w) != *x.expected_weyl)
    throw std::runtime_error(x.name + ": Weyl type mismatch: " + identify(w));
  return s.weyl_cache.emplace(x.name, std::move(w)).first->second;
}

std::vector<int> vertex_permutation(const ToricModel& x, const IMat& m_side) {
  IMat n_side = m_side.inverse_unimodular().transpose();
  std::vector<std::vector<Int>> pts = x.polytope.vertex_coords();
  std::map<std::vector<Int>, int> index;
  for (int i = 0; i < int(pts.size()); ++i) index[pts[i]] = i;
  std::vector<int> perm(pts.size());
  for (int i = 0; i < int(pts.size()); ++i) {
    auto it = index.find(n_side * pts[i]);
    if (it == index.end())
      throw std::invalid_argument("group element does not preserve the polytope of " + x.name);
    perm[i] = it->second;
  }
  return perm;
}

std::string OrbitDecomposition::str() const {
  std::ostringstream os;
  for (size_t d = 0; d < orbit_sizes.size(); ++d) {
    os << (d ? "; " : "") << "dim" << d << ": [";
    for (size_t i = 0; i < orbit_sizes[d].size(); ++i) os << (i ? "," : "") << orbit_sizes[d][i];
    os << "]";
  }
  return os.str();
}

OrbitDecomposition orbits(const ToricModel& x, const FiniteMatrixGroup& w) {
  const FiniteMatrixGroup& full = weyl(x);
  for (const IMat& g : w.elements)
    if (!full.contains(g)) throw std::invalid_argument("group is not a subgroup of the Weyl group");

  std::vector<std::vector<int>> perms;
  for (const IMat& g : w.elements) perms.push_back(vertex_permutation(x, g));

  OrbitDecomposition out;
  int rank = x.n_lattice.rank();
  out.orbits.resize(rank);
  out.orbit_sizes.resize(rank);
  for (int d = 0; d < rank; ++d) {
    const auto& cones = x.fan.by_dim[d];
    std::map<std::vector<int>, int> face_index;
    for (int i = 0; i < int(cones.size()); ++i) face_index[cones[i].vertex_ids] = i;
    std::vector<int> orbit_of(cones.size(), -1);
    for (int i = 0; i < int(cones.size()); ++i) {
      if (orbit_of[i] >= 0) continue;
      std::vector<int> members;
      std::vector<int> stack{i};
      orbit_of[i] = i;
      while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        members.push_back(f);
        for (const auto& perm : perms) {
          std::vector<int> mapped;
          for (int vid : cones[f].vertex_ids) mapped.push_back(perm[vid]);
          std::sort(mapped.begin(), mapped.end());
          auto it = face_index.find(mapped);
          if (it == face_index.end()) throw std::logic_error("orbit: face image missing");
          if (orbit_of[it->second] < 0) {
            orbit_of[it->second] = i;
            stack.push_back(it->second);
          }
        }
      }
      std::sort(members.begin(), members.end());
      out.orbits[d].push_back(members);
    }
    for (const auto& orb : out.orbits[d]) out.orbit_sizes[d].push_back(int(orb.size()));
    std::sort(out.orbit_sizes[d].begin(), out.orbit_sizes[d].end());
  }
  return out;
}

AbelianInvariants class_group(const ToricModel& x) {
  const auto& rays = x.fan.by_dim[0];
  int rank = x.n_lattice.rank();
  IMat a(int(rays.size()), rank);
  for (int i = 0; i < int(rays.size()); ++i)
    for (int j = 0; j < rank; ++j) a.at(i, j) = rays[i].gens[0][j];
  if (a.rank() != rank) throw std::invalid_argument("class_group: rays do not span");
  return cokernel_invariants(a);
}

int invariant_class_rank(const ToricModel& x, const FiniteMatrixGroup& w) {
  OrbitDecomposition dec = orbits(x, w);
  int ray_orbits = int(dec.orbits[0].size());
  // dim of the fixed subspace of M (x) Q.
  int rank = x.m_lattice.rank();
  const std::vector<IMat>& gens = w.generators.empty() ? w.elements : w.generators;
  QMat stack(rank * std::max<int>(1, int(gens.size())), rank);
  for (int g = 0; g < int(gens.size()); ++g)
    for (int r = 0; r < rank; ++r)
      for (int c = 0; c < rank; ++c)
        stack.at(g * rank + r, c) = Rat(gens[g].at(r, c) - (r == c ? 1 : 0));
  int fixed = stack.kernel().cols();
  return ray_orbits - fixed;
}

S4Type s4_type(const FiniteMatrixGroup& w) {
  if (identify(w) != "S4") return S4Type::not_s4;
  for (const IMat& g : w.elements)
    if (g.det() == -1) return S4Type::I;
  return S4Type::II;
}

std::string s4_type_str(S4Type t) {
  switch (t) {
    case S4Type::I: return "I";
    case S4Type::II: return "II";
    default: return "not_S4";
  }
}

namespace {

FiniteMatrixGroup a4_core(const ToricModel& x) {
  const FiniteMatrixGroup& w = weyl(x);
  std::vector<IMat> gens;
  for (const IMat& g : w.elements)
    if (element_order(g) == 3) gens.push_back(g);
  if (gens.empty()) throw std::invalid_argument(x.name + ": Weyl group has no A4 subgroup");
  FiniteMatrixGroup core = closure(w.lattice, gens);
  if (identify(core) != "A4")
    throw std::invalid_argument(x.name + ": order-3 elements do not generate an A4");
  return core;
}

FiniteMatrixGroup cyclic_subgroup(const ToricModel& x, int order) {
  const FiniteMatrixGroup& w = weyl(x);
  for (const IMat& g : w.elements)
    if (element_order(g) == order) return closure(w.lattice, {g});
  throw std::invalid_argument(x.name + ": no element of order " + std::to_string(order));
}

}  // namespace

FiniteMatrixGroup model_subgroup(const ToricModel& x, const std::string& name) {
  const FiniteMatrixGroup& w = weyl(x);
  if (name == "full") return w;
  if (name == "1") return closure(w.lattice, {});
  if (name == "A4") return a4_core(x);
  if (name == "A4xC2") {
    FiniteMatrixGroup core = a4_core(x);
    IMat sigma = -IMat::identity(w.rank());
    if (!w.contains(sigma)) throw std::invalid_argument(x.name + ": -I not in Weyl group");
    std::vector<IMat> gens = core.generators;
    gens.push_back(sigma);
    return closure(w.lattice, gens);
  }
  if (name == "C2") {
    IMat sigma = -IMat::identity(w.rank());
    if (!w.contains(sigma)) throw std::invalid_argument(x.name + ": -I not in Weyl group");
    return closure(w.lattice, {sigma});
  }
  if (name == "C3") return cyclic_subgroup(x, 3);
  if (name == "C4") return cyclic_subgroup(x, 4);
  if (name == "C6") return cyclic_subgroup(x, 6);
  if (name == "S4I" || name == "S4II") {
    FiniteMatrixGroup core = a4_core(x);
    std::vector<FiniteMatrixGroup> s4s;
    for (const IMat& g : w.elements) {
      if (core.contains(g)) continue;
      std::vector<IMat> gens = core.generators;
      gens.push_back(g);
      FiniteMatrixGroup h = closure(w.lattice, gens);
      if (h.order != 24 || identify(h) != "S4") continue;
      bool seen = false;
      for (const auto& other : s4s)
        if (other.same_elements(h)) seen = true;
      if (!seen) s4s.push_back(h);
    }
    S4Type want = (name == "S4I") ? S4Type::I : S4Type::II;
    for (const auto& h : s4s)
      if (s4_type(h) == want) return h;
    throw std::invalid_argument(x.name + ": no S4 subgroup of type " + (name == "S4I" ? "I" : "II"));
  }
  if (name == "S3T" || name == "S3N") {
    // The two S3 subgroups of a 2D Weyl group, split by ray-transitivity.
    std::vector<FiniteMatrixGroup> s3s;
    for (const IMat& g : w.elements) {
      for (const IMat& h : w.elements) {
        FiniteMatrixGroup k = closure(w.lattice, {g, h});
        if (k.order != 6 || identify(k) != "S3") continue;
        bool seen = false;
        for (const auto& other : s3s)
          if (other.same_elements(k)) seen = true;
        if (!seen) s3s.push_back(k);
      }
    }
    int nrays = int(x.fan.by_dim[0].size());
    for (const auto& k : s3s) {
      bool transitive = int(orbits(x, k).orbits[0].size()) == 1;
      (void)nrays;
      if ((name == "S3T") == transitive) return k;
    }
    throw std::invalid_argument(x.name + ": no matching S3 subgroup " + name);
  }
  throw std::invalid_argument("unknown subgroup name: " + name);
}

std::vector<std::string> model_subgroup_names(const ToricModel& x) {
  std::vector<std::string> out{"full", "1"};
  for (const std::string& n : {"A4", "A4xC2", "S4I", "S4II", "C2", "C3", "C4", "C6", "S3T", "S3N"}) {
    try {
      model_subgroup(x, n);
      out.push_back(n);
    } catch (const std::exception&) {
    }
  }
  return out;
}

}  // namespace toric
