#include "toric/solidity.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "toric/data_path.hpp"

namespace toric {

using nlohmann::json;

std::string SolidityVerdict::str() const {
  std::ostringstream os;
  os << variety << " / " << group_desc << ": minimal=" << (minimal ? "yes" : "no")
     << " irreducible=" << (irreducible ? "yes" : "no") << " solid=" << (solid ? "yes" : "no");
  if (superrigid_condition_b)
    os << " normalizer-trivial=" << (*superrigid_condition_b ? "yes" : "no");
  if (appendix_outcome) os << " outcome=\"" << *appendix_outcome << "\"";
  return os.str();
}

SolidityVerdict is_g_solid(const ToricModel& x, const FiniteMatrixGroup& w) {
  if (!x.terminal) throw std::invalid_argument(x.name + " is not a terminal Fano model");
  SolidityVerdict v;
  v.variety = x.name;
  v.group_desc = identify(w) + " (order " + std::to_string(w.order) + ")";
  v.minimal = invariant_class_rank(x, w) == 1;
  v.irreducible = q_irreducible(w);
  v.solid = v.minimal && v.irreducible;
  return v;
}

bool superrigidity_condition_b(const FiniteMatrixGroup& w) {
  if (!q_irreducible(w))
    throw std::invalid_argument("superrigidity_condition_b requires an irreducible group");
  return normalizer(w).order == w.order;
}

namespace {

struct AppendixTable {
  // variety -> column -> label
  std::map<std::string, std::map<std::string, std::string>> cells;
  std::mutex mu;
  bool loaded = false;
};

AppendixTable& appendix() {
  static AppendixTable t;
  return t;
}

void load_appendix() {
  AppendixTable& t = appendix();
  std::lock_guard<std::mutex> lock(t.mu);
  if (t.loaded) return;
  std::ifstream in(data_file("appendix.json"));
  json j;
  in >> j;
  for (const auto& row : j.at("rows")) {
    std::string variety = row.at("variety").get<std::string>();
    for (auto it = row.at("cells").begin(); it != row.at("cells").end(); ++it)
      t.cells[variety][it.key()] = it.value().get<std::string>();
  }
  t.loaded = true;
}

bool contains_minus_identity(const FiniteMatrixGroup& w) {
  return w.contains(-IMat::identity(w.rank()));
}

// Transitivity of w on the model's maximal cones (fixed points) or rays.
int orbit_count(const ToricModel& x, const FiniteMatrixGroup& w, int dim) {
  return int(orbits(x, w).orbits[dim].size());
}

}  // namespace

std::string appendix_row(const ToricModel& x, const FiniteMatrixGroup& w) {
  load_appendix();
  AppendixTable& t = appendix();
  auto row_it = t.cells.find(x.name);
  if (row_it == t.cells.end())
    throw std::invalid_argument(x.name + " is outside the outcome table");
  std::string type = identify(w);
  std::string column;
  if (type == "S4xC2") column = "S4xC2";
  else if (type == "A4xC2") column = "A4xC2";
  else if (type == "A4") column = "A4";
  else if (type == "S4") column = s4_type(w) == S4Type::I ? "S4_I" : "S4_II";
  else throw std::invalid_argument("group type " + type + " is outside the outcome table");

  // The group must contain the unique A4 of the Weyl group.
  FiniteMatrixGroup core = model_subgroup(x, "A4");
  for (const IMat& g : core.elements)
    if (!w.contains(g)) throw std::invalid_argument("group does not contain the A4 core");

  auto cell_it = row_it->second.find(column);
  if (cell_it == row_it->second.end())
    throw std::invalid_argument(x.name + " has no " + column + " column in the outcome table");
  std::string label = cell_it->second;

  // Re-verify computable preconditions.
  bool minimal = invariant_class_rank(x, w) == 1;
  bool label_says_nonminimal = label == "not G-minimal";
  if (minimal == label_says_nonminimal)
    return "precondition failure: computed minimality disagrees with the table for " + x.name +
           " / " + column;
  if (x.name == "X24" && (column == "S4_I" || column == "S4_II")) {
    // Type II acts transitively on the eight singular points, type I does not.
    int orbits_on_points = orbit_count(x, w, 2);
    bool transitive = orbits_on_points == 1;
    if (transitive != (column == "S4_II"))
      return "precondition failure: singular-point transitivity disagrees for X24 " + column;
  }
  if (x.name == "V4" && (column == "S4_I" || column == "S4_II")) {
    int orbits_on_rays = orbit_count(x, w, 0);
    bool transitive = orbits_on_rays == 1;
    if (transitive != (column == "S4_II"))
      return "precondition failure: surface transitivity disagrees for V4 " + column;
  }
  return label;
}

namespace {

std::vector<SweepEntry> sweep_impl(const ToricModel& x, bool parallel) {
  const FiniteMatrixGroup& w = weyl(x);
  std::vector<Subgroup> subs = all_subgroups(w);
  FiniteMatrixGroup core = model_subgroup(x, "A4");
  ElementMask core_mask = 0;
  for (const IMat& g : core.elements) {
    int idx = w.index_of(g);
    if (idx < 0) throw std::logic_error("sweep: A4 core escapes the Weyl group");
    core_mask |= ElementMask(1) << idx;
  }
  std::vector<SweepEntry> out(subs.size());
  auto run_one = [&](long i) {
    FiniteMatrixGroup h = subgroup_to_group(w, subs[i]);
    SweepEntry e;
    e.variety = x.name;
    e.subgroup_index = int(i);
    e.order = h.order;
    e.type = identify(h);
    e.contains_a4 = (subs[i].mask & core_mask) == core_mask;
    e.minimal = invariant_class_rank(x, h) == 1;
    e.irreducible = q_irreducible(h);
    e.solid = e.minimal && e.irreducible;
    out[i] = e;
  };
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
    for (long i = 0; i < long(subs.size()); ++i) run_one(i);
#else
    for (long i = 0; i < long(subs.size()); ++i) run_one(i);
#endif
  } else {
    for (long i = 0; i < long(subs.size()); ++i) run_one(i);
  }
  return out;
}

}  // namespace

std::vector<SweepEntry> solidity_sweep(const ToricModel& x) { return sweep_impl(x, true); }
std::vector<SweepEntry> solidity_sweep_serial(const ToricModel& x) { return sweep_impl(x, false); }

SweepSummary check_sweep_pattern() {
  SweepSummary s;
  const std::vector<std::string> five = {"V6", "V4", "X24", "Y24", "P3"};
  for (const ToricModel& x : catalog()) {
    if (x.n_lattice.rank() != 3 || !x.terminal) continue;
    bool is_five = std::find(five.begin(), five.end(), x.name) != five.end();
    for (const SweepEntry& e : solidity_sweep(x)) {
      ++s.groups;
      if (e.solid) ++s.solid_count;
      bool expect_solid = false;
      if (is_five && e.contains_a4) {
        expect_solid = true;
        if (x.name == "V4") {
          // The two stated exceptions: A4 itself, and the S4 preserving the
          // two ray tetrahedra (type I).
          if (e.type == "A4") expect_solid = false;
          if (e.type == "S4") {
            FiniteMatrixGroup h = subgroup_to_group(weyl(x), all_subgroups(weyl(x))[e.subgroup_index]);
            if (s4_type(h) == S4Type::I) expect_solid = false;
          }
        }
      }
      if (e.solid != expect_solid) {
        std::ostringstream os;
        os << x.name << " subgroup #" << e.subgroup_index << " (" << e.type << ", order " << e.order
           << "): solid=" << e.solid << " expected=" << expect_solid;
        s.violations.push_back(os.str());
      }
    }
  }
  s.pass = s.violations.empty();
  return s;
}

}  // namespace toric
