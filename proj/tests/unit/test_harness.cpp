#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "mfsteiner/errors.hpp"
#include "mfsteiner/harness.hpp"

using namespace mfsteiner;

namespace {

ExperimentConfig config_for(const std::string& label, std::vector<std::size_t> grid, std::size_t trials) {
  ExperimentConfig c;
  parse_quantity(label, c);
  c.n_grid = std::move(grid);
  c.trials = trials;
  c.seed = 2024;
  return c;
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n';
  return lines;
}

}  // namespace

TEST_CASE("limit_constant") {
  CHECK(limit_constant(2, 0) == 1);
  CHECK(limit_constant(0, 2) == 3);
  CHECK(limit_constant(1, 1) == 2);
  CHECK(limit_constant(5, 0) == 4);
  CHECK(limit_constant(0, 3) == 5);
  for (std::size_t k = 2; k < 10; ++k) CHECK(limit_constant(k, 0) == static_cast<int>(k) - 1);
  for (std::size_t l = 2; l < 10; ++l) CHECK(limit_constant(0, l) == 2 * static_cast<int>(l) - 1);
  CHECK_THROWS_AS(limit_constant(1, 0), DomainError);
  CHECK_THROWS_AS(limit_constant(0, 1), DomainError);
  CHECK_THROWS_AS(limit_constant(0, 0), DomainError);
}

TEST_CASE("quantity labels round-trip") {
  for (const char* label : {"W(2,0)", "W(0,3)", "ball_growth(2)", "ball_ratio(3)", "mst", "lemma2(2,10)",
                            "f_lemma", "coupling(1)", "mgf(2)"}) {
    ExperimentConfig c;
    parse_quantity(label, c);
    CHECK(quantity_label(c) == label);
  }
  ExperimentConfig c;
  CHECK_THROWS_AS(parse_quantity("W(2)", c), ConfigError);
  CHECK_THROWS_AS(parse_quantity("nonsense", c), ConfigError);
  CHECK_THROWS_AS(parse_quantity("W(a,b)", c), ConfigError);
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(validate(config_for("W(2,0)", {10, 20}, 1)));
  CHECK_THROWS_AS(validate(config_for("W(2,0)", {10, 20}, 0)), ConfigError);
  CHECK_THROWS_AS(validate(config_for("W(2,0)", {20, 10}, 1)), ConfigError);
  CHECK_THROWS_AS(validate(config_for("W(2,0)", {20, 20}, 1)), ConfigError);
  CHECK_THROWS_AS(validate(config_for("W(2,0)", {}, 1)), ConfigError);
  CHECK_THROWS_AS(validate(config_for("W(1,0)", {10}, 1)), ConfigError);
  CHECK_THROWS_AS(validate(config_for("ball_ratio(1)", {100}, 1)), ConfigError);
  CHECK_THROWS_AS(validate(config_for("ball_growth(2)", {40}, 1)), ConfigError);
  CHECK_THROWS_AS(validate(config_for("lemma2(2,30)", {20}, 1)), ConfigError);
  CHECK_THROWS_AS(validate(config_for("mgf(2)", {60}, 1)), ConfigError);
  ExperimentConfig degenerate = config_for("coupling(1)", {60}, 1);
  degenerate.epsilon = 0.5;
  CHECK_THROWS_AS(validate(degenerate), ConfigError);
  ExperimentConfig threads = config_for("mst", {10}, 1);
  threads.threads = 0;
  CHECK_THROWS_AS(validate(threads), ConfigError);
  // Errors surface before any work.
  CHECK_THROWS_AS(run_experiment(config_for("W(2,0)", {20, 10}, 1)), ConfigError);
}

TEST_CASE("a single trial collapses the summary") {
  for (const char* label : {"W(1,1)", "mst", "coupling(1)", "f_lemma", "mgf(2)"}) {
    const std::size_t n = std::string(label) == "mgf(2)" ? 1000 : 60;
    const ExperimentReport r = run_experiment(config_for(label, {n}, 1));
    REQUIRE(r.rows.size() == 1);
    REQUIRE(r.rows[0].summary);
    const auto& s = *r.rows[0].summary;
    CHECK(s.min == s.max);
    CHECK(s.q05 == s.mean);
    CHECK(s.q50 == s.mean);
    CHECK(s.q95 == s.mean);
  }
}

TEST_CASE("report rows, references and monotone quantiles") {
  const ExperimentReport r = run_experiment(config_for("W(2,0)", {30, 60, 90}, 25));
  REQUIRE(r.rows.size() == 3);
  for (const ReportRow& row : r.rows) {
    CHECK(row.trials == 25);
    CHECK(row.failures == 0);
    CHECK(row.reference == 1.0);
    REQUIRE(row.summary);
    CHECK(row.summary->min >= 0.0);
    CHECK(row.summary->q05 <= row.summary->q50);
    CHECK(row.summary->q50 <= row.summary->q95);
    CHECK(row.values.empty());
  }
  CHECK(r.total_trials() == 75);
}

TEST_CASE("trial statistic matches a direct computation") {
  const ExperimentConfig c = config_for("W(0,2)", {40}, 3);
  ExperimentConfig retained = c;
  retained.retain_trials = true;
  const ExperimentReport r = run_experiment(retained);
  for (std::uint64_t t = 0; t < 3; ++t) {
    CHECK(r.rows[0].values[t] == *trial_statistic(c, 40, t));
  }
}

TEST_CASE("capability errors are per-trial failures") {
  ExperimentConfig c = config_for("W(0,3)", {20}, 4);
  c.budget = 5;
  const ExperimentReport r = run_experiment(c);
  CHECK(r.rows[0].failures == 4);
  CHECK_FALSE(r.rows[0].summary);
  CHECK(r.total_failures() == 4);
}

TEST_CASE("ball-growth comparison") {
  ExperimentConfig c = config_for("ball_growth(2)", {400}, 8);
  const ExperimentReport r = compare_ballgrow_exact(c);
  CHECK(quantity_label(r.config) == "ball_ratio(2)");
  REQUIRE(r.rows[0].summary);
  CHECK(r.rows[0].summary->min >= 1.0 - 1e-12);
  REQUIRE(r.rows[0].failure_bound);
  CHECK(*r.rows[0].failure_bound == doctest::Approx(std::pow(400.0, -3.0)));
  CHECK_THROWS_AS(compare_ballgrow_exact(config_for("ball_growth(1)", {400}, 1)), ConfigError);
  CHECK_THROWS_AS(compare_ballgrow_exact(config_for("mst", {400}, 1)), ConfigError);
}

TEST_CASE("reports do not depend on the worker count") {
  for (const char* label : {"W(1,1)", "ball_growth(2)", "coupling(2)", "lemma2(2,10)"}) {
    std::string first;
    for (std::size_t threads : {1u, 4u, 8u}) {
      ExperimentConfig c = config_for(label, {300, 400}, 9);
      c.threads = threads;
      c.retain_trials = true;
      const std::string json = render_json(run_experiment(c));
      if (first.empty()) first = json;
      CHECK(json == first);
    }
  }
}

TEST_CASE("JSON round-trip is byte-identical") {
  ExperimentConfig c = config_for("W(0,2)", {30, 50}, 5);
  c.retain_trials = true;
  const std::string json = render_json(run_experiment(c));
  CHECK(render_json(parse_report_json(json)) == json);
  const std::string summary_only = render_json(run_experiment(config_for("mst", {30}, 3)));
  CHECK(summary_only.find("\"values\"") == std::string::npos);
  CHECK(render_json(parse_report_json(summary_only)) == summary_only);

  ExperimentConfig failing = config_for("W(0,3)", {20}, 2);
  failing.budget = 1;
  const std::string nulls = render_json(run_experiment(failing));
  CHECK(nulls.find("\"mean\": null") != std::string::npos);
  CHECK(render_json(parse_report_json(nulls)) == nulls);
  CHECK_THROWS_AS(parse_report_json("{"), ConfigError);
  CHECK_THROWS_AS(parse_report_json(R"({"version": "other"})"), ConfigError);
}

TEST_CASE("timing is opt-in") {
  const ExperimentReport r = run_experiment(config_for("mst", {20}, 2));
  CHECK(render_json(r).find("wall_seconds") == std::string::npos);
  CHECK(render_json(r, true).find("wall_seconds") != std::string::npos);
}

TEST_CASE("CSV layout") {
  const ExperimentReport r = run_experiment(config_for("W(2,0)", {20, 30, 40}, 3));
  const std::string csv = render_csv(r);
  CHECK(csv.rfind("quantity,k,l,n,trials,mean,sd,q05,q50,q95,limit_constant,failures\n", 0) == 0);
  CHECK(count_lines(csv) == 4);
  CHECK(csv.find('\r') == std::string::npos);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  CHECK(line.rfind("\"W(2,0)\",2,0,20,3,", 0) == 0);
  CHECK(line.substr(line.size() - 4) == ",1,0");
}

TEST_CASE("emit_report writes files and reports the path on failure") {
  const ExperimentReport r = run_experiment(config_for("mst", {20}, 2));
  const std::string path = "harness_emit_test.json";
  emit_report(r, ReportFormat::json, path);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == render_json(r));
  std::remove(path.c_str());
  try {
    emit_report(r, ReportFormat::csv, "/nonexistent-dir/report.csv");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent-dir/report.csv") != std::string::npos);
  }
}
