#pragma once

// Manifest-driven front end shared by the poisskit executable, the
// acceptance runner and the tests.

#include <iosfwd>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "poisskit/dirac.hpp"
#include "poisskit/flow.hpp"
#include "poisskit/liealg.hpp"

namespace poisskit::cli {

using nlohmann::json;

/// Malformed or inconsistent manifest; `where()` is a dotted path into the document.
class ManifestError : public Error {
 public:
  ManifestError(const std::string& where, const std::string& what) : Error(where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

struct ConstraintSpec {
  std::string structure;
  std::vector<RatFunc> psi;
  QVector level;
  std::vector<QVector> samples;
  std::optional<PolyMap> parametrization;
};

struct FlowSpec {
  FlowConfig cfg;
  std::string structure;
  std::optional<RatFunc> hamiltonian;
  DVector x0;
  std::vector<RatFunc> casimirs;
  std::vector<RatFunc> generators;
  std::vector<Segment> schedule;
};

struct Manifest {
  ChartPtr chart;
  std::map<std::string, RatFunc> expressions;
  std::map<std::string, MultiVec> bivectors;
  std::map<std::string, DiffForm> forms;
  std::map<std::string, LieAlgebra> algebras;
  std::map<std::string, ConstraintSpec> constraints;
  std::map<std::string, FlowSpec> flows;
  std::vector<json> tasks;

  /// Throws ManifestError (or ParseError-derived detail inside it) on any
  /// unresolved name or unparsable expression.
  static Manifest parse(const json& doc);
  static Manifest load(const std::string& path);

  /// A named expression, or the text parsed in the chart.
  RatFunc expr(const std::string& text, const std::string& where = "expression") const;
  /// Named bivector; the default is the only one, else the one called "pi".
  const MultiVec& bivector(const std::string& name) const;
};

/// Command-line values that fill in or replace task parameters.
struct Overrides {
  std::optional<std::string> f;
  std::optional<QVector> point;
};

struct TaskResult {
  std::string task;
  std::string status;  // PASS, FAIL or INFO
  std::vector<std::string> lines;
  json data;
  bool ok() const { return status != "FAIL"; }
};

std::vector<std::string> task_names();
TaskResult run_task(const Manifest& m, const json& task, const Overrides& o = {});

struct RunOptions {
  std::vector<std::string> tasks;  // empty: every manifest task
  Overrides overrides;
  bool json_output = false;
  bool parallel = false;
};

std::vector<TaskResult> run_tasks(const Manifest& m, const RunOptions& opts);
/// Report lines (or the JSON dump) for the results; returns the exit code.
int report(const std::vector<TaskResult>& results, bool json_output, std::ostream& out);
/// Load, run and report; manifest problems go to `err` with exit code 2.
int run_file(const std::string& path, const RunOptions& opts, std::ostream& out, std::ostream& err);

void list_fixtures(std::ostream& out);
/// Manifest document holding one fixture as bivector "pi" plus an is_poisson task.
json export_fixture(const std::string& name);

}  // namespace poisskit::cli
