#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include "poisskit/fixtures.hpp"
#include "poisskit_cli.hpp"

namespace poisskit::cli {
namespace {

std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ManifestError(where, "missing key '" + key + "'");
  return obj.at(key);
}

std::string as_string(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ManifestError(where, "expected a string");
}

double as_double(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return std::stod(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ManifestError(where, "expected a number");
}

std::size_t as_index(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) throw ManifestError(where, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

RatFunc parse_in(const std::string& text, const Chart& chart, const std::string& where) {
  try {
    return parse_expr(text, chart);
  } catch (const ParseError& e) {
    throw ManifestError(where, e.what());
  }
}

Rational rational_in(const json& v, const std::string& where) {
  try {
    return parse_rational(as_string(v, where));
  } catch (const ParseError& e) {
    throw ManifestError(where, e.what());
  } catch (const DomainError& e) {
    throw ManifestError(where, e.what());
  }
}

QVector rational_vector(const json& v, const std::string& where) {
  if (!v.is_array()) throw ManifestError(where, "expected an array");
  QVector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational_in(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

DVector double_vector(const json& v, const std::string& where) {
  if (!v.is_array()) throw ManifestError(where, "expected an array");
  DVector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_double(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::string> string_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ManifestError(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_string(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

// "0,2" or "x,z"
IndexTuple index_tuple(const std::string& key, const Chart& chart, const std::string& where) {
  IndexTuple t;
  if (key.empty()) return t;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    while (!part.empty() && part.front() == ' ') part.erase(part.begin());
    while (!part.empty() && part.back() == ' ') part.pop_back();
    if (!part.empty() && part.find_first_not_of("0123456789") == std::string::npos) {
      std::size_t i = std::stoul(part);
      if (i >= chart.dim()) throw ManifestError(where, "index " + part + " out of range");
      t.push_back(i);
    } else if (auto i = chart.index_of(part)) {
      t.push_back(*i);
    } else {
      throw ManifestError(where, "unknown variable '" + part + "'");
    }
  }
  return t;
}

template <class Kind>
Alternating<Kind> coefficient_table(const json& table, const ChartPtr& chart, std::optional<std::size_t> degree,
                                    const std::string& where) {
  if (!table.is_object()) throw ManifestError(where, "expected an object of coefficients");
  std::optional<std::size_t> deg = degree;
  std::vector<std::pair<IndexTuple, RatFunc>> entries;
  for (const auto& [key, val] : table.items()) {
    const std::string loc = join(where, key);
    IndexTuple t = index_tuple(key, *chart, loc);
    if (deg && *deg != t.size()) throw ManifestError(loc, "index tuple length differs from the degree");
    deg = t.size();
    entries.emplace_back(t, parse_in(as_string(val, loc), *chart, loc));
  }
  if (!deg) throw ManifestError(where, "empty table needs an explicit degree");
  Alternating<Kind> out(chart, *deg);
  for (auto& [t, c] : entries) {
    IndexTuple s = t;
    if (sort_with_sign(s) == 0) throw ManifestError(where, "repeated index in a coefficient key");
    out.add(t, c);
  }
  return out;
}

DiffForm form_from(const json& v, const ChartPtr& chart, const std::string& where) {
  if (v.is_object() && v.contains("degree")) {
    const std::size_t d = as_index(v.at("degree"), join(where, "degree"));
    return coefficient_table<FormKind>(v.contains("coeffs") ? v.at("coeffs") : json::object(), chart, d,
                                       join(where, "coeffs"));
  }
  return coefficient_table<FormKind>(v, chart, std::nullopt, where);
}

LieAlgebra algebra_from(const json& v, const std::string& where) {
  if (v.is_string()) {
    const std::string n = v.get<std::string>();
    if (n == "so3") return LieAlgebra::so3();
    if (n == "sl2r") return LieAlgebra::sl2r();
    if (n == "book") return LieAlgebra::book();
    if (n == "heisenberg") return LieAlgebra::heisenberg();
    throw ManifestError(where, "unknown named algebra '" + n + "'");
  }
  const std::size_t dim = as_index(require(v, "dim", where), join(where, "dim"));
  std::vector<StructureConstant> triples;
  const json& br = require(v, "brackets", where);
  if (!br.is_array()) throw ManifestError(join(where, "brackets"), "expected an array of [i, j, k, c]");
  for (std::size_t n = 0; n < br.size(); ++n) {
    const std::string loc = join(where, "brackets") + "[" + std::to_string(n) + "]";
    const json& e = br[n];
    if (!e.is_array() || e.size() != 4) throw ManifestError(loc, "expected [i, j, k, c]");
    StructureConstant sc{as_index(e[0], loc), as_index(e[1], loc), as_index(e[2], loc), rational_in(e[3], loc)};
    if (sc.i >= dim || sc.j >= dim || sc.k >= dim) throw ManifestError(loc, "index out of range");
    triples.push_back(sc);
  }
  try {
    return LieAlgebra::from_triples(dim, triples);
  } catch (const VerificationError& e) {
    throw ManifestError(where, e.what());
  }
}

std::vector<QVector> sample_list(const json& v, std::size_t dim, const std::string& where) {
  std::vector<QVector> out;
  if (v.is_object()) {
    const std::size_t count = as_index(require(v, "sphere", where), join(where, "sphere"));
    Rational radius = v.contains("radius") ? rational_in(v.at("radius"), join(where, "radius")) : Rational(1);
    for (auto& p : rational_sphere_points(dim, count, radius)) out.push_back(std::move(p));
    return out;
  }
  if (!v.is_array()) throw ManifestError(where, "expected an array of points or {\"sphere\": count}");
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string loc = where + "[" + std::to_string(i) + "]";
    out.push_back(rational_vector(v[i], loc));
    if (out.back().size() != dim) throw ManifestError(loc, "point has the wrong dimension");
  }
  return out;
}

}  // namespace

RatFunc Manifest::expr(const std::string& text, const std::string& where) const {
  if (auto it = expressions.find(text); it != expressions.end()) return it->second;
  return parse_in(text, *chart, where);
}

const MultiVec& Manifest::bivector(const std::string& name) const {
  if (name.empty()) {
    if (bivectors.size() == 1) return bivectors.begin()->second;
    if (auto it = bivectors.find("pi"); it != bivectors.end()) return it->second;
    throw ManifestError("structure", "several bivectors and none named 'pi'; name one");
  }
  auto it = bivectors.find(name);
  if (it == bivectors.end()) throw ManifestError("structure", "unknown bivector '" + name + "'");
  return it->second;
}

Manifest Manifest::parse(const json& doc) {
  if (!doc.is_object()) throw ManifestError("manifest", "top level must be an object");
  Manifest m;
  try {
    m.chart = make_chart(string_list(require(doc, "chart", "manifest"), "chart"));
  } catch (const DomainError& e) {
    throw ManifestError("chart", e.what());
  }
  static const std::vector<std::string> known = {"chart",      "expressions", "bivectors", "forms", "algebras",
                                                 "constraints", "flows",       "tasks",     "name"};
  for (const auto& [k, v] : doc.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) throw ManifestError(k, "unknown section");

  if (doc.contains("expressions"))
    for (const auto& [k, v] : doc.at("expressions").items())
      m.expressions.emplace(k, parse_in(as_string(v, join("expressions", k)), *m.chart, join("expressions", k)));
  if (doc.contains("bivectors"))
    for (const auto& [k, v] : doc.at("bivectors").items())
      m.bivectors.emplace(k, coefficient_table<VectorKind>(v, m.chart, 2, join("bivectors", k)));
  if (doc.contains("forms"))
    for (const auto& [k, v] : doc.at("forms").items()) m.forms.emplace(k, form_from(v, m.chart, join("forms", k)));
  if (doc.contains("algebras"))
    for (const auto& [k, v] : doc.at("algebras").items()) m.algebras.emplace(k, algebra_from(v, join("algebras", k)));

  auto structure_ref = [&](const json& v, const std::string& where) {
    std::string s = v.contains("structure") ? as_string(v.at("structure"), join(where, "structure")) : "";
    try {
      m.bivector(s);
    } catch (const ManifestError& e) {
      throw ManifestError(where, e.what());
    }
    return s;
  };
  auto expr_list = [&](const json& v, const std::string& where) {
    std::vector<RatFunc> out;
    auto texts = string_list(v, where);
    for (std::size_t i = 0; i < texts.size(); ++i) out.push_back(m.expr(texts[i], where + "[" + std::to_string(i) + "]"));
    return out;
  };

  if (doc.contains("constraints"))
    for (const auto& [k, v] : doc.at("constraints").items()) {
      const std::string where = join("constraints", k);
      ConstraintSpec c;
      c.structure = structure_ref(v, where);
      c.psi = expr_list(require(v, "psi", where), join(where, "psi"));
      c.level = v.contains("level") ? rational_vector(v.at("level"), join(where, "level")) : QVector(c.psi.size(), 0);
      if (c.level.size() != c.psi.size()) throw ManifestError(join(where, "level"), "one level value per constraint");
      if (v.contains("samples")) c.samples = sample_list(v.at("samples"), m.chart->dim(), join(where, "samples"));
      if (v.contains("parametrization")) {
        const std::string pw = join(where, "parametrization");
        const json& p = v.at("parametrization");
        ChartPtr src;
        try {
          src = make_chart(string_list(require(p, "chart", pw), join(pw, "chart")));
        } catch (const DomainError& e) {
          throw ManifestError(join(pw, "chart"), e.what());
        }
        auto comps = string_list(require(p, "components", pw), join(pw, "components"));
        if (comps.size() != m.chart->dim()) throw ManifestError(join(pw, "components"), "one component per chart variable");
        std::vector<RatFunc> cs;
        for (std::size_t i = 0; i < comps.size(); ++i)
          cs.push_back(parse_in(comps[i], *src, join(pw, "components") + "[" + std::to_string(i) + "]"));
        c.parametrization = PolyMap(src, m.chart, cs);
      }
      m.constraints.emplace(k, std::move(c));
    }

  if (doc.contains("flows"))
    for (const auto& [k, v] : doc.at("flows").items()) {
      const std::string where = join("flows", k);
      FlowSpec f;
      f.structure = structure_ref(v, where);
      if (v.contains("dt")) f.cfg.dt = as_double(v.at("dt"), join(where, "dt"));
      if (v.contains("t_max")) f.cfg.t_max = as_double(v.at("t_max"), join(where, "t_max"));
      if (v.contains("tolerance")) f.cfg.tolerance = as_double(v.at("tolerance"), join(where, "tolerance"));
      if (v.contains("record_stride"))
        f.cfg.record_stride = as_index(v.at("record_stride"), join(where, "record_stride"));
      try {
        f.cfg.validate();
      } catch (const DomainError& e) {
        throw ManifestError(where, e.what());
      }
      if (v.contains("hamiltonian"))
        f.hamiltonian = m.expr(as_string(v.at("hamiltonian"), join(where, "hamiltonian")), join(where, "hamiltonian"));
      if (v.contains("x0")) {
        f.x0 = double_vector(v.at("x0"), join(where, "x0"));
        if (f.x0.size() != m.chart->dim()) throw ManifestError(join(where, "x0"), "point has the wrong dimension");
      }
      if (v.contains("casimirs")) f.casimirs = expr_list(v.at("casimirs"), join(where, "casimirs"));
      if (v.contains("generators")) f.generators = expr_list(v.at("generators"), join(where, "generators"));
      if (v.contains("schedule")) {
        const json& s = v.at("schedule");
        const std::string sw = join(where, "schedule");
        if (!s.is_array()) throw ManifestError(sw, "expected an array of [generator, t]");
        for (std::size_t i = 0; i < s.size(); ++i) {
          const std::string loc = sw + "[" + std::to_string(i) + "]";
          if (!s[i].is_array() || s[i].size() != 2) throw ManifestError(loc, "expected [generator, t]");
          Segment seg{as_index(s[i][0], loc), as_double(s[i][1], loc)};
          if (seg.generator >= f.generators.size()) throw ManifestError(loc, "generator index out of range");
          f.schedule.push_back(seg);
        }
      }
      m.flows.emplace(k, std::move(f));
    }

  if (doc.contains("tasks")) {
    const json& t = doc.at("tasks");
    if (!t.is_array()) throw ManifestError("tasks", "expected an array");
    const auto names = task_names();
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string loc = "tasks[" + std::to_string(i) + "]";
      const std::string name = as_string(require(t[i], "task", loc), join(loc, "task"));
      if (std::find(names.begin(), names.end(), name) == names.end())
        throw ManifestError(join(loc, "task"), "unknown task '" + name + "'");
      m.tasks.push_back(t[i]);
    }
  }
  return m;
}

Manifest Manifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ManifestError(path, "cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ManifestError(path, "syntax error at byte " + std::to_string(e.byte));
  }
  return parse(doc);
}

void list_fixtures(std::ostream& out) {
  for (const auto& name : fixture_names()) {
    Fixture f = fixture(name);
    out << name << "  " << f.summary << "\n    " << to_string(f.pi) << "\n";
  }
}

json export_fixture(const std::string& name) {
  Fixture f = fixture(name);
  const Chart& c = f.pi.chart();
  json coeffs = json::object();
  for (const auto& [t, v] : f.pi.coeffs()) coeffs[std::to_string(t[0]) + "," + std::to_string(t[1])] = to_string(v, c);
  json doc;
  doc["name"] = name;
  doc["chart"] = c.names();
  doc["bivectors"] = {{"pi", coeffs}};
  doc["tasks"] = json::array({{{"task", "is_poisson"}, {"structure", "pi"}}});
  return doc;
}

}  // namespace poisskit::cli
