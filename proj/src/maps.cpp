#include "toric/maps.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "toric/data_path.hpp"

namespace toric {

using nlohmann::json;

namespace {

struct MapState {
  std::map<std::string, TorusEnd> ends;
  std::map<std::string, MonomialRationalMap> maps;
  std::map<std::string, MapExpectation> expectations;
  std::vector<std::string> order;
  std::mutex mu;
  bool loaded = false;
};

MapState& mstate() {
  static MapState s;
  return s;
}

Chart parse_chart_json(const json& j);

std::vector<MonomialFormula> parse_formulas(const json& j) {
  std::vector<MonomialFormula> out;
  for (const auto& f : j) {
    MonomialFormula mf;
    mf.sign = f.value("sign", 1);
    if (mf.sign != 1 && mf.sign != -1) throw std::runtime_error("formula coefficient not +-1: unsupported");
    for (const auto& e : f.at("exp")) mf.exp.emplace_back(e.get<long>());
    out.push_back(mf);
  }
  return out;
}

Chart parse_chart_json(const json& j) {
  Chart c;
  c.factors = j.at("factors").get<std::vector<int>>();
  c.coord_names = j.at("coords").get<std::vector<std::string>>();
  for (const auto& m : j.at("monomials")) {
    Chart::Monomial mon;
    mon.sign = m.value("sign", 1);
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
  return c;
}

void register_model_ends() {
  MapState& s = mstate();
  for (const ToricModel& m : catalog()) {
    TorusEnd e;
    e.name = m.name;
    e.n_lattice = m.n_lattice;
    e.m_lattice = m.m_lattice;
    e.chart = m.chart;
    s.ends[m.name] = e;
  }
}

void load_maps() {
  MapState& s = mstate();
  if (s.loaded) return;
  register_model_ends();
  std::ifstream in(data_file("maps.json"));
  json j;
  in >> j;
  if (j.contains("aux_targets")) {
    for (const auto& a : j.at("aux_targets")) {
      TorusEnd e;
      e.name = a.at("name").get<std::string>();
      const ToricModel& host = model(a.at("torus_of").get<std::string>());
      e.n_lattice = host.n_lattice;
      e.m_lattice = host.m_lattice;
      e.chart = parse_chart_json(a.at("chart"));
      s.ends[e.name] = e;
    }
  }
  for (const auto& mj : j.at("maps")) {
    std::string name = mj.at("name").get<std::string>();
    std::string src = mj.at("source").get<std::string>();
    std::string tgt = mj.at("target").get<std::string>();
    MonomialRationalMap m;
    if (mj.contains("torus_rows")) {
      int rank = int(mj.at("torus_rows").size());
      IMat rows(rank, rank);
      for (int r = 0; r < rank; ++r)
        for (int c = 0; c < rank; ++c) rows.at(r, c) = Int(mj.at("torus_rows")[r][c].get<long>());
      std::vector<int> signs(rank, 1);
      if (mj.contains("signs")) signs = mj.at("signs").get<std::vector<int>>();
      m = torus_level_map(name, src, tgt, rows, signs);
    } else {
      m = from_homogeneous(name, src, tgt, parse_formulas(mj.at("formulas")));
    }
    MapExpectation ex;
    if (mj.contains("expected_degree")) ex.degree = mj.at("expected_degree").get<long>();
    if (mj.contains("equivariance")) {
      ex.src_group = mj.at("equivariance")[0].get<std::string>();
      ex.tgt_group = mj.at("equivariance")[1].get<std::string>();
    }
    s.maps[name] = std::move(m);
    s.expectations[name] = ex;
    s.order.push_back(name);
  }
  s.loaded = true;
}

void ensure_loaded() {
  MapState& s = mstate();
  std::lock_guard<std::mutex> lock(s.mu);
  load_maps();
}

Rat rat_pow(const Rat& base, const Int& e) {
  if (e == 0) return Rat(1);
  Rat b = base;
  Int n = e;
  bool invert = n < 0;
  if (invert) n = -n;
  Rat acc(1);
  for (Int i = 0; i < n; ++i) acc *= b;
  if (invert) {
    if (acc == 0) throw std::domain_error("rat_pow: zero base with negative exponent");
    acc = 1 / acc;
  }
  return acc;
}

std::vector<Rat> eval_chart(const Chart& chart, const std::vector<Rat>& torus) {
  std::vector<Rat> coords;
  coords.reserve(chart.monomials.size());
  for (const auto& mon : chart.monomials) {
    Rat v(mon.sign);
    for (size_t i = 0; i < mon.exp.size(); ++i) v *= rat_pow(torus[i], mon.exp[i]);
    coords.push_back(v);
  }
  return coords;
}

// Symbolic Laurent monomial: sign * r^exp in the source torus coordinates.
struct SymMonomial {
  int sign = 1;
  std::vector<Int> exp;
};

SymMonomial substitute(const Chart& chart, const MonomialFormula& f, int rank) {
  SymMonomial m;
  m.sign = f.sign;
  m.exp.assign(rank, Int(0));
  if (int(f.exp.size()) != chart.num_coords())
    throw std::runtime_error("formula arity does not match source chart");
  for (size_t j = 0; j < f.exp.size(); ++j) {
    if (f.exp[j] == 0) continue;
    const auto& mon = chart.monomials[j];
    if (mon.sign < 0 && f.exp[j] % 2 != 0) m.sign = -m.sign;
    for (int i = 0; i < rank; ++i) m.exp[i] += f.exp[j] * mon.exp[i];
  }
  return m;
}

std::vector<std::pair<std::vector<Int>, std::vector<Int>>> chart_equations(const Chart& chart) {
  auto eqs = chart.equations;
  if (chart.generate_binomials) {
    // All quadratic binomial identities z_a z_b = z_c z_d forced by the chart
    // exponents (necessary conditions on the closure of the torus image).
    int n = chart.num_coords();
    std::map<std::vector<Int>, std::vector<std::pair<int, int>>> by_sum;
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) {
        std::vector<Int> sum = chart.monomials[a].exp;
        for (size_t i = 0; i < sum.size(); ++i) sum[i] += chart.monomials[b].exp[i];
        by_sum[sum].emplace_back(a, b);
      }
    for (const auto& [sum, pairs] : by_sum) {
      for (size_t k = 1; k < pairs.size(); ++k) {
        std::vector<Int> lhs(n, Int(0)), rhs(n, Int(0));
        lhs[pairs[0].first] += 1;
        lhs[pairs[0].second] += 1;
        rhs[pairs[k].first] += 1;
        rhs[pairs[k].second] += 1;
        eqs.emplace_back(lhs, rhs);
      }
    }
  }
  return eqs;
}

}  // namespace

std::uint64_t Rng::next() {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rat Rng::rat() {
  long num = long(next() % 19) - 9;  // [-9, 9]
  if (num == 0) num = 1;
  long den = long(next() % 9) + 1;  // [1, 9]
  return Rat(Int(num), Int(den));
}

const TorusEnd& torus_end(const std::string& name) {
  ensure_loaded();
  auto it = mstate().ends.find(name);
  if (it == mstate().ends.end()) throw std::invalid_argument("unknown torus end: " + name);
  return it->second;
}

MonomialRationalMap torus_level_map(const std::string& name, const std::string& source,
                                    const std::string& target, const IMat& exponent_rows,
                                    const std::vector<int>& signs) {
  const TorusEnd& se = torus_end(source);
  const TorusEnd& te = torus_end(target);
  MonomialRationalMap m;
  m.name = name;
  m.source = source;
  m.target = target;
  m.lattice_map_bases = exponent_rows;
  m.sign_translation = signs;
  // Reference matrix: B_tgt * L * B_src^{-1}; must send N_src into N_tgt.
  QMat ref = te.n_lattice.basis() * QMat::from_int(exponent_rows) * se.n_lattice.basis_inverse();
  IMat refi(ref.rows(), ref.cols());
  for (int r = 0; r < ref.rows(); ++r)
    for (int c = 0; c < ref.cols(); ++c) {
      Rat v = ref.at(r, c);
      v.canonicalize();
      if (v.get_den() != 1)
        throw std::runtime_error(name + ": lattice map is not integral in reference coordinates");
      refi.at(r, c) = v.get_num();
    }
  m.lattice_map = refi;
  return m;
}

MonomialRationalMap from_homogeneous(const std::string& name, const std::string& source,
                                     const std::string& target,
                                     const std::vector<MonomialFormula>& formulas) {
  const TorusEnd& se = torus_end(source);
  const TorusEnd& te = torus_end(target);
  if (!se.chart || !te.chart) throw std::invalid_argument(name + ": missing chart");
  int rank = se.n_lattice.rank();
  if (int(formulas.size()) != te.chart->num_coords())
    throw std::invalid_argument(name + ": formula count does not match target coordinates");
  std::vector<SymMonomial> image;
  image.reserve(formulas.size());
  for (const auto& f : formulas) image.push_back(substitute(*se.chart, f, rank));
  // Torus coordinates of the image through the target's ratio recipes.
  int trank = te.n_lattice.rank();
  IMat rows(trank, rank);
  std::vector<int> signs(trank, 1);
  for (int l = 0; l < trank; ++l) {
    SymMonomial acc;
    acc.exp.assign(rank, Int(0));
    for (const auto& [idx, e] : te.chart->ratios[l]) {
      const SymMonomial& c = image[idx];
      if (c.sign < 0 && e % 2 != 0) acc.sign = -acc.sign;
      for (int i = 0; i < rank; ++i) acc.exp[i] += e * c.exp[i];
    }
    for (int i = 0; i < rank; ++i) rows.at(l, i) = acc.exp[i];
    signs[l] = acc.sign;
  }
  MonomialRationalMap m = torus_level_map(name, source, target, rows, signs);
  m.formulas = formulas;
  return m;
}

namespace {

std::vector<int> push_signs(const IMat& rows, const std::vector<int>& s) {
  std::vector<int> out(rows.rows(), 1);
  for (int j = 0; j < rows.rows(); ++j) {
    int v = 1;
    for (int i = 0; i < rows.cols(); ++i)
      if (s[i] < 0 && rows.at(j, i) % 2 != 0) v = -v;
    out[j] = v;
  }
  return out;
}

}  // namespace

MonomialRationalMap compose(const MonomialRationalMap& f, const MonomialRationalMap& g) {
  if (f.target != g.source)
    throw std::invalid_argument("compose: target of " + f.name + " is not source of " + g.name);
  MonomialRationalMap m;
  m.name = g.name + "*" + f.name;
  m.source = f.source;
  m.target = g.target;
  m.lattice_map_bases = g.lattice_map_bases * f.lattice_map_bases;
  m.lattice_map = g.lattice_map * f.lattice_map;
  std::vector<int> pushed = push_signs(g.lattice_map_bases, f.sign_translation);
  m.sign_translation.resize(pushed.size());
  for (size_t i = 0; i < pushed.size(); ++i)
    m.sign_translation[i] = pushed[i] * g.sign_translation[i];
  return m;
}

MonomialRationalMap inverse(const MonomialRationalMap& f) {
  Int d = f.lattice_map_bases.det();
  if (d != 1 && d != -1) throw std::invalid_argument("inverse: map is not birational on the lattices");
  MonomialRationalMap m;
  m.name = f.name + "^-1";
  m.source = f.target;
  m.target = f.source;
  m.lattice_map_bases = f.lattice_map_bases.inverse_unimodular();
  m.lattice_map = f.lattice_map.inverse_unimodular();
  m.sign_translation = push_signs(m.lattice_map_bases, f.sign_translation);
  return m;
}

Int generic_degree(const MonomialRationalMap& f) {
  Int d = f.lattice_map_bases.det();
  if (d == 0) throw std::invalid_argument("not generically finite");
  return d < 0 ? Int(-d) : d;
}

EquivarianceResult check_equivariance(const MonomialRationalMap& f, const FiniteMatrixGroup& w_src,
                                      const FiniteMatrixGroup& w_tgt) {
  EquivarianceResult res;
  const IMat& l = f.lattice_map_bases;
  QMat lq = QMat::from_int(l);
  QMat linv = lq.inverse();
  // N-side contragredients of the stored M-side groups.
  std::vector<IMat> tgt_n;
  for (const IMat& g : w_tgt.elements) tgt_n.push_back(g.inverse_unimodular().transpose());
  std::sort(tgt_n.begin(), tgt_n.end());
  for (int i = 0; i < int(w_src.elements.size()); ++i) {
    IMat gn = w_src.elements[i].inverse_unimodular().transpose();
    QMat conj = lq * QMat::from_int(gn) * linv;
    IMat ci(conj.rows(), conj.cols());
    bool integral = true;
    for (int r = 0; r < conj.rows(); ++r)
      for (int c = 0; c < conj.cols(); ++c) {
        Rat v = conj.at(r, c);
        v.canonicalize();
        if (v.get_den() != 1) integral = false;
        else ci.at(r, c) = v.get_num();
      }
    auto it = integral ? std::lower_bound(tgt_n.begin(), tgt_n.end(), ci) : tgt_n.end();
    if (!integral || it == tgt_n.end() || !(*it == ci)) {
      res.success = false;
      res.detail = "conjugate of element " + std::to_string(i) + " not in target group";
      return res;
    }
    res.bijection.emplace_back(i, int(it - tgt_n.begin()));
    // Sign translation must be fixed by the conjugated action.
    std::vector<int> moved(f.sign_translation.size(), 1);
    for (int r = 0; r < ci.rows(); ++r) {
      int v = 1;
      for (int c = 0; c < ci.cols(); ++c)
        if (f.sign_translation[c] < 0 && ci.at(r, c) % 2 != 0) v = -v;
      moved[r] = v;
    }
    if (moved != f.sign_translation) {
      res.success = false;
      res.detail = "sign translation not preserved by conjugated element " + std::to_string(i);
      return res;
    }
  }
  // Surjectivity: both groups must have equal order for a set bijection.
  if (w_src.order != w_tgt.order) {
    res.success = false;
    res.detail = "group orders differ";
    return res;
  }
  std::vector<int> hit(w_tgt.order, 0);
  for (const auto& [a, b] : res.bijection) hit[b] = 1;
  for (int h : hit)
    if (!h) {
      res.success = false;
      res.detail = "conjugation is not onto the target group";
      return res;
    }
  res.success = true;
  res.detail = "conjugation carries the source group onto the target group";
  return res;
}

IdentityCheck verify_identity(const MonomialRationalMap& lhs, const MonomialRationalMap& rhs) {
  IdentityCheck c;
  if (lhs.source != rhs.source || lhs.target != rhs.target) {
    c.equal = false;
    c.detail = "endpoint mismatch";
    return c;
  }
  if (!(lhs.lattice_map_bases == rhs.lattice_map_bases)) {
    c.equal = false;
    c.detail = "lattice maps differ: " + lhs.lattice_map_bases.str() + " vs " +
               rhs.lattice_map_bases.str();
    return c;
  }
  if (lhs.sign_translation != rhs.sign_translation) {
    c.equal = false;
    c.detail = "sign translations differ";
    return c;
  }
  c.equal = true;
  c.detail = "maps agree as (lattice map, sign translation) pairs";
  return c;
}

SampleReport sample_consistency(const MonomialRationalMap& f, int trials, std::uint64_t seed) {
  SampleReport rep;
  const TorusEnd& se = torus_end(f.source);
  const TorusEnd& te = torus_end(f.target);
  if (!f.formulas || !se.chart || !te.chart) {
    rep.pass = false;
    rep.detail = "map carries no homogeneous form";
    return rep;
  }
  const Chart& sc = *se.chart;
  const Chart& tc = *te.chart;
  auto target_eqs = chart_equations(tc);
  auto source_eqs = chart_equations(sc);
  int rank = se.n_lattice.rank();
  Rng rng(seed);
  int attempts = 0;
  for (int t = 0; t < trials && attempts < 10 * trials + 100; ++t) {
    ++attempts;
    std::vector<Rat> r(rank);
    for (int i = 0; i < rank; ++i) r[i] = rng.rat();
    std::vector<Rat> src = eval_chart(sc, r);
    for (const auto& [lhs, rhs] : source_eqs) {
      Rat lv(1), rv(1);
      for (size_t k = 0; k < lhs.size(); ++k) lv *= rat_pow(src[k], lhs[k]);
      for (size_t k = 0; k < rhs.size(); ++k) rv *= rat_pow(src[k], rhs[k]);
      if (lv != rv) {
        ++rep.failures;
        if (rep.detail.empty()) rep.detail = "source equations violated (chart is inconsistent)";
      }
    }
    // Push through the homogeneous formulas.
    std::vector<Rat> img;
    img.reserve(f.formulas->size());
    for (const auto& mono : *f.formulas) {
      Rat v(mono.sign);
      for (size_t k = 0; k < mono.exp.size(); ++k) v *= rat_pow(src[k], mono.exp[k]);
      img.push_back(v);
    }
    // Indeterminacy: a whole projective factor vanishing.
    bool indeterminate = false;
    int off = 0;
    for (int sz : tc.factors) {
      bool all_zero = true;
      for (int k = off; k < off + sz; ++k)
        if (img[k] != 0) all_zero = false;
      if (all_zero) indeterminate = true;
      off += sz;
    }
    if (indeterminate) {
      ++rep.resamples;
      --t;  // resample with the next stream value
      continue;
    }
    ++rep.trials;
    for (const auto& [lhs, rhs] : target_eqs) {
      Rat lv(1), rv(1);
      bool bad_pow = false;
      for (size_t k = 0; k < lhs.size() && !bad_pow; ++k) {
        if (img[k] == 0 && lhs[k] < 0) bad_pow = true;
        else lv *= rat_pow(img[k], lhs[k]);
      }
      for (size_t k = 0; k < rhs.size() && !bad_pow; ++k) {
        if (img[k] == 0 && rhs[k] < 0) bad_pow = true;
        else rv *= rat_pow(img[k], rhs[k]);
      }
      if (bad_pow) continue;
      if (lv != rv) {
        ++rep.failures;
        if (rep.detail.empty())
          rep.detail = "target equation violated at trial " + std::to_string(t);
      }
    }
    // Chart agreement with the lattice-level prediction.
    int trank = te.n_lattice.rank();
    bool ratio_ok = true;
    std::vector<Rat> got(trank);
    for (int l = 0; l < trank && ratio_ok; ++l) {
      Rat v(1);
      for (const auto& [idx, e] : tc.ratios[l]) {
        if (img[idx] == 0) { ratio_ok = false; break; }
        v *= rat_pow(img[idx], e);
      }
      got[l] = v;
    }
    if (!ratio_ok) {
      ++rep.resamples;
      continue;
    }
    for (int l = 0; l < trank; ++l) {
      Rat want(f.sign_translation[l]);
      for (int i = 0; i < rank; ++i) want *= rat_pow(r[i], f.lattice_map_bases.at(l, i));
      if (got[l] != want) {
        ++rep.failures;
        if (rep.detail.empty())
          rep.detail = "torus coordinate " + std::to_string(l + 1) +
                       " disagrees with the lattice prediction at trial " + std::to_string(t);
        break;
      }
    }
  }
  rep.pass = rep.failures == 0 && rep.trials > 0;
  if (rep.pass)
    rep.detail = std::to_string(rep.trials) + " samples exact, " + std::to_string(rep.resamples) +
                 " resamples";
  return rep;
}

const std::vector<std::string>& map_fixture_names() {
  ensure_loaded();
  return mstate().order;
}

const MonomialRationalMap& map_fixture(const std::string& name) {
  ensure_loaded();
  auto it = mstate().maps.find(name);
  if (it == mstate().maps.end()) throw std::invalid_argument("unknown map fixture: " + name);
  return it->second;
}

const MapExpectation& map_expectation(const std::string& name) {
  ensure_loaded();
  auto it = mstate().expectations.find(name);
  if (it == mstate().expectations.end()) throw std::invalid_argument("unknown map fixture: " + name);
  return it->second;
}

}  // namespace toric
