#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <ostream>
#include <sstream>

#include "poisskit/fixtures.hpp"
#include "poisskit_cli.hpp"

namespace poisskit::cli {
namespace {

std::string point_text(const QVector& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
  return s + ")";
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

class Ctx {
 public:
  Ctx(const Manifest& m, const json& t, const Overrides& o, std::string where)
      : m_(m), t_(t), o_(o), where_(std::move(where)) {}

  const Manifest& m() const { return m_; }
  bool has(const std::string& key) const {
    if (key == "f" && o_.f) return true;
    if (key == "point" && o_.point) return true;
    return t_.contains(key);
  }

  std::string str(const std::string& key, const std::string& fallback = {}) const {
    if (key == "f" && o_.f) return *o_.f;
    if (!t_.contains(key)) {
      if (fallback.empty()) throw ManifestError(loc(key), "missing parameter");
      return fallback;
    }
    const json& v = t_.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw ManifestError(loc(key), "expected a string");
  }

  RatFunc expr(const std::string& key) const { return m_.expr(str(key), loc(key)); }

  const MultiVec& structure() const {
    try {
      return m_.bivector(t_.contains("structure") ? str("structure") : "");
    } catch (const ManifestError& e) {
      throw ManifestError(loc("structure"), e.what());
    }
  }
  std::string structure_label() const { return t_.contains("structure") ? str("structure") : "pi"; }

  QVector point() const {
    if (o_.point) return *o_.point;
    if (!t_.contains("point")) throw ManifestError(loc("point"), "missing parameter (or pass --point)");
    QVector p;
    for (const auto& v : t_.at("point")) p.push_back(parse_rational(v.is_string() ? v.get<std::string>() : v.dump()));
    return p;
  }

  std::size_t index(const std::string& key, std::size_t fallback) const {
    if (!t_.contains(key)) return fallback;
    const json& v = t_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) throw ManifestError(loc(key), "expected a nonnegative integer");
    return v.get<std::size_t>();
  }

  double real(const std::string& key, double fallback) const {
    if (!t_.contains(key)) return fallback;
    if (!t_.at(key).is_number()) throw ManifestError(loc(key), "expected a number");
    return t_.at(key).get<double>();
  }

  const json& raw(const std::string& key) const {
    if (!t_.contains(key)) throw ManifestError(loc(key), "missing parameter");
    return t_.at(key);
  }

  template <class Map>
  const typename Map::mapped_type& named(const Map& map, const std::string& key) const {
    const std::string n = str(key);
    auto it = map.find(n);
    if (it == map.end()) throw ManifestError(loc(key), "unknown name '" + n + "'");
    return it->second;
  }

  std::string loc(const std::string& key) const { return where_ + "." + key; }

 private:
  const Manifest& m_;
  const json& t_;
  const Overrides& o_;
  std::string where_;
};

TaskResult verdict(const std::string& task, bool ok, const std::string& label) {
  TaskResult r;
  r.task = task;
  r.status = ok ? "PASS" : "FAIL";
  r.lines.push_back(r.status + " " + label);
  r.data["ok"] = ok;
  return r;
}

TaskResult info(const std::string& task, const std::string& line) {
  TaskResult r;
  r.task = task;
  r.status = "INFO";
  r.lines.push_back("INFO " + line);
  return r;
}

DiffForm volume_of(const Ctx& c, const ChartPtr& chart) {
  IndexTuple all;
  for (std::size_t i = 0; i < chart->dim(); ++i) all.push_back(i);
  RatFunc density = c.has("volume") ? c.m().expr(c.str("volume"), c.loc("volume")) : RatFunc(chart->dim(), Rational(1));
  return DiffForm::basis(chart, all, density);
}

std::vector<DVector> double_points(const json& v, std::size_t dim, const std::string& where) {
  std::vector<DVector> out;
  if (!v.is_array()) throw ManifestError(where, "expected an array of points");
  for (const auto& p : v) {
    DVector d;
    for (const auto& x : p) {
      if (!x.is_number()) throw ManifestError(where, "expected numeric coordinates");
      d.push_back(x.get<double>());
    }
    if (d.size() != dim) throw ManifestError(where, "point has the wrong dimension");
    out.push_back(std::move(d));
  }
  return out;
}

ConstraintSystem system_of(const Ctx& c) {
  const ConstraintSpec& s = c.named(c.m().constraints, "constraint");
  return ConstraintSystem{PoissonStructure::unchecked(c.m().bivector(s.structure)), s.psi, s.level, s.samples,
                          s.parametrization};
}

using Runner = std::function<TaskResult(const Ctx&)>;

TaskResult is_poisson_task(const Ctx& c) {
  const std::string n = c.structure_label();
  auto chk = is_poisson(c.structure());
  TaskResult r = verdict("is_poisson", chk.ok, "[" + n + "," + n + "]=0");
  if (!chk.ok) r.lines.push_back("  [" + n + "," + n + "] = " + to_string(chk.square));
  r.data["square"] = to_string(chk.square);
  return r;
}

TaskResult casimir_task(const Ctx& c) {
  const MultiVec& pi = c.structure();
  RatFunc f = c.expr("f");
  const bool ok = casimir_check(pi, f);
  TaskResult r = verdict("casimir", ok, "Casimir");
  MultiVec x = hamiltonian_vf(pi, f);
  if (!ok) r.lines.push_back("  X_f = " + to_string(x));
  r.data["hamiltonian_vf"] = to_string(x);
  return r;
}

TaskResult bracket_task(const Ctx& c) {
  const MultiVec& pi = c.structure();
  RatFunc v = bracket(pi, c.expr("f"), c.expr("g"));
  TaskResult r = info("bracket", "{f,g} = " + to_string(v, pi.chart()));
  r.data["value"] = to_string(v, pi.chart());
  return r;
}

TaskResult hamiltonian_task(const Ctx& c) {
  MultiVec x = hamiltonian_vf(c.structure(), c.expr("f"));
  TaskResult r = info("hamiltonian", "X_f = " + to_string(x));
  r.data["field"] = to_string(x);
  return r;
}

TaskResult jacobiator_task(const Ctx& c) {
  const MultiVec& pi = c.structure();
  RatFunc j = jacobiator(pi, c.expr("f"), c.expr("g"), c.expr("h"));
  TaskResult r = verdict("jacobiator", j.is_zero(), "Jacobi");
  if (!j.is_zero()) r.lines.push_back("  jacobiator = " + to_string(j, pi.chart()));
  return r;
}

TaskResult rank_task(const Ctx& c) {
  QVector p = c.point();
  const std::size_t k = rank_at(c.structure(), p);
  TaskResult r = info("rank", "rank at " + point_text(p) + " = " + std::to_string(k));
  r.data["rank"] = k;
  return r;
}

TaskResult char_fiber_task(const Ctx& c) {
  QVector p = c.point();
  CharFiber f = char_fiber(c.structure(), p);
  TaskResult r = info("char_fiber", "characteristic fiber at " + point_text(p));
  std::string basis;
  for (const auto& v : f.r_basis) basis += (basis.empty() ? "" : ", ") + point_text(v);
  r.lines.push_back("  R = span{" + basis + "}");
  r.lines.push_back("  Omega = " + to_string(f.omega));
  r.data["dim"] = f.r_basis.size();
  return r;
}

TaskResult darboux_task(const Ctx& c) {
  QVector p = c.point();
  DarbouxBasis d = darboux_basis_at(c.structure(), p);
  TaskResult r = info("darboux", "Darboux basis at " + point_text(p) + ", half rank " + std::to_string(d.half_rank));
  r.lines.push_back("  basis = " + to_string(d.basis));
  r.data["half_rank"] = d.half_rank;
  return r;
}

TaskResult modular_task(const Ctx& c) {
  const MultiVec& pi = c.structure();
  MultiVec x = modular_vf(pi, volume_of(c, pi.chart_ptr()));
  if (!c.has("expect")) {
    TaskResult r = info("modular", "modular field = " + to_string(x));
    r.data["field"] = to_string(x);
    return r;
  }
  std::vector<RatFunc> comps;
  for (const auto& e : c.raw("expect")) comps.push_back(c.m().expr(e.get<std::string>(), c.loc("expect")));
  if (comps.size() != pi.dim()) throw ManifestError(c.loc("expect"), "one component per chart variable");
  const bool ok = x == MultiVec::from_components(pi.chart_ptr(), comps);
  TaskResult r = verdict("modular", ok, "modular field");
  if (!ok) r.lines.push_back("  modular field = " + to_string(x));
  r.data["field"] = to_string(x);
  return r;
}

TaskResult cohomology_task(const Ctx& c) {
  PoissonStructure pi(c.structure());
  const std::size_t k = c.index("k", 1);
  const unsigned d = static_cast<unsigned>(c.index("d", 0));
  const bool cumulative = !c.has("cumulative") || c.raw("cumulative").get<bool>();
  std::size_t total = 0;
  std::vector<std::string> lines, reps;
  for (unsigned dd = cumulative ? 0 : d; dd <= d; ++dd) {
    CohomologyReport rep = cohomology(pi, k, dd);
    total += rep.dim_h;
    lines.push_back("  degree " + std::to_string(dd) + ": kernel " + std::to_string(rep.dim_kernel) + ", image " +
                    std::to_string(rep.dim_image) + ", dim " + std::to_string(rep.dim_h));
    for (const auto& x : rep.representatives) reps.push_back(to_string(x));
  }
  const std::string head = "H^" + std::to_string(k) + " up to degree " + std::to_string(d) + ": dim " + std::to_string(total);
  TaskResult r;
  if (c.has("expect")) {
    r = verdict("cohomology", total == c.index("expect", 0), head);
  } else {
    r = info("cohomology", head);
  }
  r.lines.insert(r.lines.end(), lines.begin(), lines.end());
  for (const auto& s : reps) r.lines.push_back("  rep " + s);
  r.data["dim"] = total;
  r.data["representatives"] = reps;
  return r;
}

TaskResult gauge_task(const Ctx& c) {
  const MultiVec& pi = c.structure();
  const DiffForm& b = c.named(c.m().forms, "form");
  try {
    GaugeResult g = gauge_transform(pi, b);
    TaskResult r = verdict("gauge", true, "gauge transform");
    r.lines.push_back("  pi_B = " + to_string(g.pi.pi()));
    r.lines.push_back("  det(I + BP) = " + to_string(g.determinant, pi.chart()));
    r.data["pi_B"] = to_string(g.pi.pi());
    return r;
  } catch (const VerificationError& e) {
    TaskResult r = verdict("gauge", false, "gauge transform");
    r.lines.push_back(std::string("  ") + e.what());
    return r;
  }
}

TaskResult lie_poisson_task(const Ctx& c) {
  const LieAlgebra& g = c.named(c.m().algebras, "algebra");
  PoissonStructure lp = lie_poisson(g);
  TaskResult r = verdict("lie_poisson", lp.verified(), "[pi,pi]=0");
  r.lines.push_back("  pi = " + to_string(lp.pi()));
  r.data["pi"] = to_string(lp.pi());
  return r;
}

TaskResult modular_character_task(const Ctx& c) {
  const LieAlgebra& g = c.named(c.m().algebras, "algebra");
  PoissonStructure lp = lie_poisson(g);
  QVector chi = modular_character(g);
  IndexTuple all;
  for (std::size_t i = 0; i < g.dim(); ++i) all.push_back(i);
  std::vector<RatFunc> comps;
  for (const auto& x : chi) comps.emplace_back(g.dim(), x);
  MultiVec field = modular_vf(lp.pi(), DiffForm::basis(lp.chart_ptr(), all));
  const bool ok = field == MultiVec::from_components(lp.chart_ptr(), comps);
  TaskResult r = verdict("modular_character", ok, "modular character");
  r.lines.push_back("  chi = " + point_text(chi));
  if (!ok) r.lines.push_back("  modular field = " + to_string(field));
  return r;
}

AlgMultiVec alg_bivector(const Ctx& c, const std::shared_ptr<const LieAlgebra>& g, const std::string& key) {
  AlgMultiVec r(g, 2);
  const json& table = c.raw(key);
  if (!table.is_object()) throw ManifestError(c.loc(key), "expected {\"i,j\": coefficient}");
  for (const auto& [k, v] : table.items()) {
    std::size_t i = 0, j = 0;
    if (std::sscanf(k.c_str(), "%zu,%zu", &i, &j) != 2 || i >= g->dim() || j >= g->dim())
      throw ManifestError(c.loc(key) + "." + k, "expected an index pair \"i,j\"");
    r.add({i, j}, parse_rational(v.get<std::string>()));
  }
  return r;
}

TaskResult cyb_task(const Ctx& c) {
  auto g = std::make_shared<const LieAlgebra>(c.named(c.m().algebras, "algebra"));
  CybReport rep = cyb_check(*g, alg_bivector(c, g, "r"));
  const std::string line = "r-matrix: " + to_string(rep.kind) + ", [r,r] = " + to_string(rep.square);
  TaskResult r = c.has("expect") ? verdict("cyb", to_string(rep.kind) == c.str("expect"), line) : info("cyb", line);
  r.data["kind"] = to_string(rep.kind);
  return r;
}

TaskResult bialgebra_task(const Ctx& c) {
  auto g = std::make_shared<const LieAlgebra>(c.named(c.m().algebras, "algebra"));
  const LieAlgebra& dual = c.named(c.m().algebras, "dual");
  BialgebraReport rep = bialgebra_check(*g, Cobracket::dual_to(g, dual));
  TaskResult r = verdict("bialgebra", rep.dual_jacobi && rep.compat, "Lie bialgebra");
  r.lines.push_back(std::string("  dual Jacobi: ") + (rep.dual_jacobi ? "yes" : "no") +
                    ", cocycle: " + (rep.compat ? "yes" : "no"));
  r.data["dual_jacobi"] = rep.dual_jacobi;
  r.data["compat"] = rep.compat;
  return r;
}

TaskResult classify_task(const Ctx& c) {
  SubmanifoldClass k = classify_submanifold(system_of(c));
  std::string kinds;
  if (k.poisson) kinds += " poisson";
  if (k.coisotropic) kinds += " coisotropic";
  if (k.cosymplectic) kinds += " cosymplectic";
  if (kinds.empty()) kinds = " none";
  const std::string line = "submanifold:" + kinds + (k.sampled ? " (sampled at " + std::to_string(k.samples_checked) + " points)" : "");
  TaskResult r;
  if (c.has("expect")) {
    const std::string e = c.str("expect");
    const bool ok = (e == "poisson" && k.poisson) || (e == "coisotropic" && k.coisotropic) ||
                    (e == "cosymplectic" && k.cosymplectic);
    r = verdict("classify", ok, e + " submanifold");
    r.lines.push_back("  " + line);
  } else {
    r = info("classify", line);
  }
  r.data["poisson"] = k.poisson;
  r.data["coisotropic"] = k.coisotropic;
  r.data["cosymplectic"] = k.cosymplectic;
  r.data["samples_checked"] = k.samples_checked;
  return r;
}

TaskResult dirac_bracket_task(const Ctx& c) {
  ConstraintSystem cs = system_of(c);
  try {
    DiracBracket db(cs);
    RatFunc f = c.expr("f"), g = c.expr("g");
    TaskResult r = verdict("dirac_bracket", true, "Dirac bracket");
    if (cs.parametrization) {
      RatFunc v = db.restricted(f, g);
      r.lines.push_back("  {f,g}_N = " + to_string(v, *cs.parametrization->source()));
      r.data["restricted"] = to_string(v, *cs.parametrization->source());
    } else {
      r.lines.push_back("  {f,g}_N at samples = " + point_text(db.at_samples(f, g)));
    }
    r.lines.push_back("  c_upper = " + to_string(db.data().c_upper, cs.ambient.chart()));
    return r;
  } catch (const DomainError& e) {
    TaskResult r = verdict("dirac_bracket", false, "Dirac bracket");
    r.lines.push_back(std::string("  ") + e.what());
    return r;
  }
}

TaskResult coregularity_task(const Ctx& c) {
  CoregularityReport rep = coregularity_check(system_of(c));
  std::string dims;
  for (auto d : rep.dims) dims += (dims.empty() ? "" : ",") + std::to_string(d);
  TaskResult r = verdict("coregularity", rep.constant, "coregular");
  r.lines.push_back("  dim(TN + R) = " + dims);
  r.data["dims"] = rep.dims;
  return r;
}

TaskResult integrate_task(const Ctx& c) {
  const FlowSpec& f = c.named(c.m().flows, "flow");
  if (!f.hamiltonian) throw ManifestError(c.loc("flow"), "flow has no hamiltonian");
  if (f.x0.empty()) throw ManifestError(c.loc("flow"), "flow has no x0");
  Trajectory tr = integrate_hamiltonian(c.m().bivector(f.structure), *f.hamiltonian, f.x0, f.cfg, f.casimirs);
  bool ok = tr.h_drift < f.cfg.tolerance;
  for (double d : tr.casimir_drifts) ok = ok && d < f.cfg.tolerance;
  TaskResult r = verdict("integrate", ok, "conservation");
  std::string line = "  H drift " + num(tr.h_drift);
  for (double d : tr.casimir_drifts) line += ", casimir drift " + num(d);
  r.lines.push_back(line);
  r.data["h_drift"] = tr.h_drift;
  r.data["casimir_drifts"] = tr.casimir_drifts;
  return r;
}

TaskResult leaf_trace_task(const Ctx& c) {
  const FlowSpec& f = c.named(c.m().flows, "flow");
  if (f.x0.empty()) throw ManifestError(c.loc("flow"), "flow has no x0");
  LeafTrace tr = leaf_trace(c.m().bivector(f.structure), f.generators, f.x0, f.schedule, f.cfg, f.casimirs);
  bool ok = true;
  for (double d : tr.casimir_drifts) ok = ok && d < f.cfg.tolerance;
  TaskResult r = verdict("leaf_trace", ok, "leaf confinement");
  std::string line = "  " + std::to_string(tr.points.size()) + " points";
  for (double d : tr.casimir_drifts) line += ", casimir drift " + num(d);
  r.lines.push_back(line);
  if (c.has("output")) {
    std::ofstream out(c.str("output"));
    if (!out) throw ManifestError(c.loc("output"), "cannot write trace file");
    write_trace(out, tr);
  }
  r.data["points"] = tr.points.size();
  r.data["casimir_drifts"] = tr.casimir_drifts;
  return r;
}

FlowConfig task_config(const Ctx& c) {
  FlowConfig cfg;
  cfg.dt = c.real("dt", cfg.dt);
  cfg.tolerance = c.real("tolerance", cfg.tolerance);
  cfg.t_max = c.real("t_max", 1.0);
  cfg.validate();
  return cfg;
}

TaskResult moser_task(const Ctx& c) {
  const MultiVec& pi = c.structure();
  const DiffForm& alpha = c.named(c.m().forms, "alpha");
  FlowConfig cfg = task_config(c);
  std::vector<double> grid;
  for (const auto& t : c.raw("grid")) grid.push_back(t.get<double>());
  MoserReport rep = moser_verify(pi, alpha, grid, double_points(c.raw("samples"), pi.dim(), c.loc("samples")), cfg);
  TaskResult r = verdict("moser", rep.max_deviation < cfg.tolerance, "Moser path");
  r.lines.push_back("  max deviation " + num(rep.max_deviation) + " over " + std::to_string(rep.samples_checked) + " samples");
  r.data["max_deviation"] = rep.max_deviation;
  return r;
}

TaskResult spray_task(const Ctx& c) {
  const MultiVec& pi = c.structure();
  FlowConfig cfg = task_config(c);
  auto samples = double_points(c.raw("samples"), 2 * pi.dim(), c.loc("samples"));
  auto rs = spray_realization(pi, samples, c.index("nodes", 64), cfg);
  const double dev = realization_check(rs, pi);
  TaskResult r = verdict("spray", dev < cfg.tolerance, "symplectic realization");
  r.lines.push_back("  max deviation " + num(dev) + " over " + std::to_string(rs.size()) + " samples");
  r.data["max_deviation"] = dev;
  return r;
}

const std::vector<std::pair<std::string, Runner>>& catalogue() {
  static const std::vector<std::pair<std::string, Runner>> tasks = {
      {"is_poisson", is_poisson_task},
      {"casimir", casimir_task},
      {"bracket", bracket_task},
      {"hamiltonian", hamiltonian_task},
      {"jacobiator", jacobiator_task},
      {"rank", rank_task},
      {"char_fiber", char_fiber_task},
      {"darboux", darboux_task},
      {"modular", modular_task},
      {"cohomology", cohomology_task},
      {"gauge", gauge_task},
      {"lie_poisson", lie_poisson_task},
      {"modular_character", modular_character_task},
      {"cyb", cyb_task},
      {"bialgebra", bialgebra_task},
      {"classify", classify_task},
      {"dirac_bracket", dirac_bracket_task},
      {"coregularity", coregularity_task},
      {"integrate", integrate_task},
      {"leaf_trace", leaf_trace_task},
      {"moser", moser_task},
      {"spray", spray_task},
  };
  return tasks;
}

TaskResult run_at(const Manifest& m, const json& task, const Overrides& o, const std::string& where) {
  const std::string name = task.at("task").get<std::string>();
  for (const auto& [n, fn] : catalogue())
    if (n == name) {
      try {
        return fn(Ctx(m, task, o, where));
      } catch (const ManifestError&) {
        throw;
      } catch (const Error& e) {
        TaskResult r = verdict(name, false, name);
        r.lines.push_back(std::string("  error: ") + e.what());
        return r;
      }
    }
  throw ManifestError(where + ".task", "unknown task '" + name + "'");
}

}  // namespace

std::vector<std::string> task_names() {
  std::vector<std::string> out;
  for (const auto& [n, fn] : catalogue()) out.push_back(n);
  return out;
}

TaskResult run_task(const Manifest& m, const json& task, const Overrides& o) { return run_at(m, task, o, "task"); }

std::vector<TaskResult> run_tasks(const Manifest& m, const RunOptions& opts) {
  std::vector<std::pair<json, std::string>> selected;
  if (opts.tasks.empty()) {
    for (std::size_t i = 0; i < m.tasks.size(); ++i) selected.emplace_back(m.tasks[i], "tasks[" + std::to_string(i) + "]");
  } else {
    const auto names = task_names();
    for (const auto& want : opts.tasks) {
      if (std::find(names.begin(), names.end(), want) == names.end())
        throw ManifestError("--task", "unknown task '" + want + "'");
      bool found = false;
      for (std::size_t i = 0; i < m.tasks.size(); ++i)
        if (m.tasks[i].at("task") == want) {
          selected.emplace_back(m.tasks[i], "tasks[" + std::to_string(i) + "]");
          found = true;
        }
      if (!found) selected.emplace_back(json{{"task", want}}, "--task " + want);
    }
  }
  std::vector<TaskResult> out;
  if (opts.parallel && selected.size() > 1) {
    std::vector<std::future<TaskResult>> jobs;
    for (const auto& [t, where] : selected)
      jobs.push_back(std::async(std::launch::async, [&, t = t, where = where] { return run_at(m, t, opts.overrides, where); }));
    for (auto& j : jobs) out.push_back(j.get());
  } else {
    for (const auto& [t, where] : selected) out.push_back(run_at(m, t, opts.overrides, where));
  }
  return out;
}

int report(const std::vector<TaskResult>& results, bool json_output, std::ostream& out) {
  bool ok = true;
  for (const auto& r : results) ok = ok && r.ok();
  if (json_output) {
    json doc = json::array();
    for (const auto& r : results) doc.push_back({{"task", r.task}, {"status", r.status}, {"lines", r.lines}, {"data", r.data}});
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& r : results)
      for (const auto& l : r.lines) out << l << "\n";
  }
  return ok ? 0 : 1;
}

int run_file(const std::string& path, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    Manifest m = Manifest::load(path);
    return report(run_tasks(m, opts), opts.json_output, out);
  } catch (const ManifestError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace poisskit::cli
