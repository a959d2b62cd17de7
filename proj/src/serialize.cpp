#include "mfsteiner/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mfsteiner/errors.hpp"
#include "mfsteiner/harness.hpp"

namespace mfsteiner {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> read_optional(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

json edges_to_json(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const Edge& e : edges) out.push_back({e.first, e.second});
  return out;
}

std::string csv_number(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", v);
  return buffer;
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

json to_json(const Seed& seed) {
  return {{"master", seed.master}, {"purpose", seed.purpose},
          {"trial", seed.trial}};
}

Seed seed_from_json(const json& j) {
  return {j.at("master").get<std::uint64_t>(),
          j.at("purpose").get<std::uint64_t>(),
          j.at("trial").get<std::uint64_t>()};
}

json to_json(const Instance& inst) {
  return {{"n", inst.size()},
          {"seed", to_json(inst.seed())},
          {"layout", "upper-triangular-row-major"},
          {"weights", std::vector<double>(inst.weights().begin(),
                                          inst.weights().end())}};
}

Instance instance_from_json(const json& j) {
  return Instance(j.at("n").get<std::size_t>(),
                  j.at("weights").get<std::vector<double>>(),
                  seed_from_json(j.at("seed")));
}

json to_json(const SteinerResult& result) {
  return {{"terminals", result.terminals},
          {"weight", result.weight},
          {"edges", edges_to_json(result.edges)}};
}

json to_json(const MaximalResult& result) {
  return {{"weight", result.weight}, {"witness", result.witness}};
}

json to_json(const BallGrowthTrace& trace) {
  json roots = json::array();
  for (const RootTrace& r : trace.roots) {
    roots.push_back({{"root", r.ball.root},
                     {"z1", r.z1},
                     {"z2", r.z2},
                     {"ball",
                      {{"vertices", r.ball.vertices},
                       {"arrival", r.ball.arrival},
                       {"parent", r.ball.parent}}},
                     {"annulus",
                      {{"vertices", r.annulus.vertices},
                       {"arrival", r.annulus.arrival},
                       {"parent", r.annulus.parent}}}});
  }
  return {{"m", trace.m}, {"roots", roots}};
}

json to_json(const BallGrowthOutcome& outcome) {
  json j = {{"status", to_string(outcome.status)},
            {"tree", edges_to_json(outcome.tree)},
            {"tree_weight", outcome.tree_weight},
            {"certificate", outcome.certificate},
            {"path_lengths", outcome.path_lengths},
            {"trace", to_json(outcome.trace)}};
  j["meeting"] = outcome.meeting == kNoVertex ? json(nullptr)
                                              : json(outcome.meeting);
  return j;
}

json to_json(const TailCheck& check) {
  return {{"freq", check.freq},
          {"bound", check.bound},
          {"standard_error", check.standard_error},
          {"passed", check.passed}};
}

json to_json(const CouplingLawReport& report) {
  json summaries = json::array();
  for (const auto& s : report.summaries) {
    summaries.push_back({{"name", s.name}, {"statistic", s.statistic}});
  }
  return {{"summaries", summaries},
          {"statistic", report.statistic},
          {"threshold", report.threshold},
          {"passed", report.statistic <= report.threshold},
          {"acceptance_rate", report.acceptance_rate},
          {"attempts", report.attempts},
          {"memoryless_statistic", report.memoryless_statistic}};
}

json to_json(const LowerBoundConditions& c) {
  return {{"shifted_minima", c.shifted_minima},
          {"far_from_chosen", c.far_from_chosen},
          {"typical_weight", c.typical_weight}};
}

// ---------------------------------------------------------------------------
// Experiment reports

std::string render_json(const ExperimentReport& report, bool include_timing) {
  const ExperimentConfig& c = report.config;
  const std::string label = quantity_label(c);
  json rows = json::array();
  for (const ReportRow& row : report.rows) {
    json r = {{"quantity", label},       {"k", c.k},
              {"l", c.l},                {"n", row.n},
              {"trials", row.trials},    {"failures", row.failures},
              {"limit_constant", optional_number(row.reference)},
              {"failure_bound", optional_number(row.failure_bound)}};
    const auto& s = row.summary;
    r["mean"] = s ? json(s->mean) : json(nullptr);
    r["sd"] = s ? json(s->sd) : json(nullptr);
    r["min"] = s ? json(s->min) : json(nullptr);
    r["max"] = s ? json(s->max) : json(nullptr);
    r["q05"] = s ? json(s->q05) : json(nullptr);
    r["q50"] = s ? json(s->q50) : json(nullptr);
    r["q95"] = s ? json(s->q95) : json(nullptr);
    if (c.retain_trials) r["values"] = row.values;
    rows.push_back(std::move(r));
  }
  json doc = {{"version", kReportVersion},
              {"config",
               {{"quantity", label},
                {"k", c.k},
                {"l", c.l},
                {"n_grid", c.n_grid},
                {"trials", c.trials},
                {"seed", c.seed},
                {"epsilon", c.epsilon},
                {"budget", c.budget},
                {"retain_trials", c.retain_trials}}},
              {"rows", rows}};
  if (include_timing) doc["wall_seconds"] = report.wall_seconds;
  return doc.dump(2) + "\n";
}

ExperimentReport parse_report_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("report: invalid JSON: ") + e.what());
  }
  if (doc.at("version") != kReportVersion) {
    throw ConfigError("report: unsupported version");
  }
  ExperimentReport report;
  const json& jc = doc.at("config");
  ExperimentConfig& c = report.config;
  parse_quantity(jc.at("quantity").get<std::string>(), c);
  c.k = jc.at("k").get<std::size_t>();
  c.l = jc.at("l").get<std::size_t>();
  c.n_grid = jc.at("n_grid").get<std::vector<std::size_t>>();
  c.trials = jc.at("trials").get<std::size_t>();
  c.seed = jc.at("seed").get<std::uint64_t>();
  c.epsilon = jc.at("epsilon").get<double>();
  c.budget = jc.at("budget").get<std::uint64_t>();
  c.retain_trials = jc.at("retain_trials").get<bool>();
  if (doc.contains("wall_seconds")) {
    report.wall_seconds = doc.at("wall_seconds").get<double>();
  }

  for (const json& r : doc.at("rows")) {
    ReportRow row;
    row.n = r.at("n").get<std::size_t>();
    row.trials = r.at("trials").get<std::size_t>();
    row.failures = r.at("failures").get<std::size_t>();
    row.reference = read_optional(r, "limit_constant");
    row.failure_bound = read_optional(r, "failure_bound");
    if (!r.at("mean").is_null()) {
      stats::Summary s;
      s.count = row.trials - row.failures;
      s.mean = r.at("mean").get<double>();
      s.sd = r.at("sd").get<double>();
      s.min = r.at("min").get<double>();
      s.max = r.at("max").get<double>();
      s.q05 = r.at("q05").get<double>();
      s.q50 = r.at("q50").get<double>();
      s.q95 = r.at("q95").get<double>();
      row.summary = s;
    }
    if (r.contains("values")) row.values = r.at("values").get<std::vector<double>>();
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string render_csv(const ExperimentReport& report) {
  const ExperimentConfig& c = report.config;
  const std::string label = csv_quote(quantity_label(c));
  std::ostringstream out;
  out << "quantity,k,l,n,trials,mean,sd,q05,q50,q95,limit_constant,failures\n";
  for (const ReportRow& row : report.rows) {
    out << label << ',' << c.k << ',' << c.l << ',' << row.n << ','
        << row.trials << ',';
    const auto& s = row.summary;
    for (double v : s ? std::vector<double>{s->mean, s->sd, s->q05, s->q50,
                                            s->q95}
                      : std::vector<double>{}) {
      out << csv_number(v) << ',';
    }
    if (!s) out << ",,,,,";
    out << (row.reference ? csv_number(*row.reference) : std::string()) << ','
        << row.failures << '\n';
  }
  return out.str();
}

void emit_report(const ExperimentReport& report, ReportFormat format,
                 const std::string& path, bool include_timing) {
  const std::string text = format == ReportFormat::json
                               ? render_json(report, include_timing)
                               : render_csv(report);
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

}  // namespace mfsteiner
