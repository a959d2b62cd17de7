// Command-line front end: instance generation, single computations, the
// lemma checks, and Monte Carlo experiments.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "mfsteiner/ballgrow.hpp"
#include "mfsteiner/errors.hpp"
#include "mfsteiner/harness.hpp"
#include "mfsteiner/instance.hpp"
#include "mfsteiner/maximal.hpp"
#include "mfsteiner/rng.hpp"
#include "mfsteiner/serialize.hpp"
#include "mfsteiner/stats.hpp"
#include "mfsteiner/steiner.hpp"
#include "mfsteiner/theory.hpp"

namespace ms = mfsteiner;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSystemic = 3;

struct Globals {
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string out = "-";
  std::string format = "json";
};

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ms::IoError("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw ms::IoError("failed writing '" + path + "'");
}

void write_json(const Globals& g, const json& doc) {
  if (g.format != "json") {
    throw ms::ConfigError("--format csv is only available for 'experiment'");
  }
  write_text(g.out, doc.dump(2) + "\n");
}

ms::Instance load_or_generate(const Globals& g, const std::string& input,
                              std::size_t n, std::uint64_t trial) {
  if (!input.empty()) {
    std::ifstream file(input);
    if (!file) throw ms::IoError("cannot open '" + input + "'");
    try {
      return ms::instance_from_json(json::parse(file));
    } catch (const json::exception& e) {
      throw ms::ConfigError("'" + input + "': " + e.what());
    }
  }
  if (n == 0) throw ms::ConfigError("either --n or --input is required");
  return ms::gen_instance(n, {g.seed, ms::purpose_tag("instance"), trial});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steiner tree experiments on complete graphs with exponential edge weights"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Master seed")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (experiment)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--out", g.out, "Output path, - for stdout")
      ->capture_default_str();
  app.add_option("--format", g.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  // Instance selection shared by the single-instance subcommands.
  std::size_t n = 0;
  std::uint64_t trial = 0;
  std::string input;
  auto add_instance_options = [&](CLI::App* sub) {
    sub->add_option("-n,--n", n, "Vertex count");
    sub->add_option("--trial", trial, "Substream index of the instance")
        ->capture_default_str();
    sub->add_option("--input", input, "Read the instance from a gen JSON file");
  };

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("-n,--n", n, "Vertex count")->required();
  gen->add_option("--trial", trial, "Substream index")->capture_default_str();

  auto* steiner = app.add_subcommand("steiner", "Exact Steiner tree");
  add_instance_options(steiner);
  std::vector<std::size_t> terminals;
  steiner->add_option("--terminals", terminals, "Terminal vertices, 0-based")
      ->required()
      ->delimiter(',');

  auto* wkl = app.add_subcommand("wkl", "Maximal Steiner weight W(k,l)");
  add_instance_options(wkl);
  std::size_t k = 2;
  std::size_t l = 0;
  std::uint64_t budget = ms::MaximalOptions{}.budget;
  wkl->add_option("-k", k, "Fixed vertices v_1..v_k")->capture_default_str();
  wkl->add_option("-l", l, "Free vertices")->capture_default_str();
  wkl->add_option("--budget", budget, "Subset enumeration cap")
      ->capture_default_str();

  auto* ballgrow = app.add_subcommand("ballgrow", "Staged ball-growth tree");
  add_instance_options(ballgrow);
  std::size_t ball_m = 0;
  std::string meeting = "lowest_index";
  bool with_exact = false;
  ballgrow->add_option("-k", k, "Terminals v_1..v_k")->capture_default_str();
  ballgrow->add_option("-m", ball_m, "Ball size (default ceil(c_{k,n}))");
  ballgrow->add_option("--meeting", meeting, "lowest_index or shortest_total")
      ->check(CLI::IsMember({"lowest_index", "shortest_total"}))
      ->capture_default_str();
  ballgrow->add_flag("--exact", with_exact, "Also report the exact weight");

  auto* check = app.add_subcommand("check", "Empirical checks of the lemmas");
  check->require_subcommand(1);
  check->fallthrough();

  auto* lemma2 = check->add_subcommand("lemma2", "Empty k-fold intersections");
  std::size_t subset_m = 1;
  std::size_t trials = 10'000;
  lemma2->add_option("-n,--n", n, "Ground set size")->required();
  lemma2->add_option("-m", subset_m, "Subset size")->required();
  lemma2->add_option("-k", k, "Number of subsets")->capture_default_str();
  lemma2->add_option("--trials", trials)->capture_default_str();

  auto* flemma = check->add_subcommand("flemma", "Conditioning transform f");
  double mu = 1.0;
  double b = 5.0;
  double alpha = 0.5;
  std::size_t samples = 100'000;
  flemma->add_option("--mu", mu, "Mean of X")->capture_default_str();
  flemma->add_option("-b", b, "Truncation level")->capture_default_str();
  flemma->add_option("--alpha", alpha, "Tail bound slope")
      ->capture_default_str();
  flemma->add_option("--samples", samples)->capture_default_str();

  auto* coupling = check->add_subcommand("coupling", "Lower-bound coupling");
  ms::CouplingLawOptions law;
  coupling->add_option("-n,--n", law.n)->capture_default_str();
  coupling->add_option("--epsilon", law.epsilon)->capture_default_str();
  coupling->add_option("-k", law.k)->capture_default_str();
  coupling->add_option("--offset", law.chosen_offset, "Offset of l_j")
      ->capture_default_str();
  coupling->add_option("--accepted", law.accepted)->capture_default_str();

  auto* mgf = check->add_subcommand("mgf", "Stage-time moment generating bound");
  double t = 0.5;
  std::size_t mgf_trials = 0;
  mgf->add_option("-n,--n", n)->required();
  mgf->add_option("-k", k)->capture_default_str();
  mgf->add_option("-t", t, "Argument of E exp(n t Z_1)")->capture_default_str();
  mgf->add_option("--trials", mgf_trials,
                  "Also estimate by simulating the stage times");

  auto* experiment = app.add_subcommand("experiment", "Monte Carlo sweep");
  std::string quantity = "W(2,0)";
  ms::ExperimentConfig config;
  bool timing = false;
  experiment->add_option("--quantity", quantity,
                         "W(k,l), ball_growth(k), ball_ratio(k), mst, "
                         "lemma2(k,m), f_lemma, coupling(k), mgf(k)")
      ->capture_default_str();
  experiment->add_option("--n-grid", config.n_grid, "Vertex counts")
      ->required()
      ->delimiter(',');
  experiment->add_option("--trials", config.trials)->capture_default_str();
  experiment->add_option("--epsilon", config.epsilon)->capture_default_str();
  experiment->add_option("--budget", config.budget)->capture_default_str();
  experiment->add_flag("--retain", config.retain_trials,
                       "Keep per-trial values in the report");
  experiment->add_flag("--timing", timing, "Include wall-clock seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*gen) {
      write_json(g, ms::to_json(ms::gen_instance(
                        n, {g.seed, ms::purpose_tag("instance"), trial})));
    } else if (*steiner) {
      const ms::Instance inst = load_or_generate(g, input, n, trial);
      std::vector<ms::Vertex> s(terminals.begin(), terminals.end());
      write_json(g, ms::to_json(ms::steiner_exact(inst, s)));
    } else if (*wkl) {
      const ms::Instance inst = load_or_generate(g, input, n, trial);
      ms::MaximalOptions options;
      options.budget = budget;
      json doc = ms::to_json(ms::w_max(inst, k, l, options));
      doc["n"] = inst.size();
      doc["k"] = k;
      doc["l"] = l;
      write_json(g, doc);
    } else if (*ballgrow) {
      const ms::Instance inst = load_or_generate(g, input, n, trial);
      ms::BallGrowthOptions options;
      if (ball_m > 0) options.m = ball_m;
      if (meeting == "shortest_total") {
        options.meeting = ms::MeetingRule::shortest_total;
      }
      const ms::BallGrowthOutcome outcome =
          ms::ball_growth_tree(inst, k, options);
      json doc = ms::to_json(outcome);
      if (with_exact) {
        std::vector<ms::Vertex> s(k);
        for (std::size_t i = 0; i < k; ++i) s[i] = i;
        doc["exact_weight"] = ms::steiner_exact(inst, s).weight;
      }
      write_json(g, doc);
    } else if (*lemma2) {
      ms::Stream stream({g.seed, ms::purpose_tag("check/lemma2"), 0});
      const double freq =
          ms::subset_intersection_empty_freq(n, subset_m, k, trials, stream);
      write_json(g, {{"n", n},
                     {"m", subset_m},
                     {"k", k},
                     {"trials", trials},
                     {"freq", freq},
                     {"bound", ms::lemma2_bound(n, subset_m, k)},
                     {"standard_error", ms::stats::binomial_se(freq, trials)}});
    } else if (*flemma) {
      ms::Stream law_stream({g.seed, ms::purpose_tag("check/flemma/law"), 0});
      ms::Stream tail_stream({g.seed, ms::purpose_tag("check/flemma/tail"), 0});
      const double ks =
          ms::check_f_conditional_law(ms::Mean{mu}, b, samples, law_stream);
      json doc = {{"mu", mu},
                  {"b", b},
                  {"samples", samples},
                  {"ks_statistic", ks},
                  {"dkw_bound", ms::stats::dkw_bound(samples, 0.01)}};
      if (b / mu >= ms::f_tail_threshold(alpha)) {
        doc["tail"] = ms::to_json(ms::check_f_tail_bound(
            ms::Mean{mu}, b, alpha, samples, tail_stream));
        doc["alpha"] = alpha;
      }
      write_json(g, doc);
    } else if (*coupling) {
      write_json(g, ms::to_json(ms::coupling_law_check(
                        law, {g.seed, ms::purpose_tag("check/coupling"), 0})));
    } else if (*mgf) {
      json doc = {{"n", n},
                  {"k", k},
                  {"t", t},
                  {"c_kn", ms::c_kn(n, k)},
                  {"mgf", ms::mgf_exact(n, k, t)}};
      if (mgf_trials > 0) {
        ms::Stream stream({g.seed, ms::purpose_tag("check/mgf"), 0});
        std::vector<double> values(mgf_trials);
        for (double& v : values) {
          const ms::StageTimes z = ms::simulate_stage_times(n, k, stream);
          v = std::exp(static_cast<double>(n) * t * (z.z1 + z.z2));
        }
        doc["simulated"] = ms::stats::summarize(values).mean;
        doc["trials"] = mgf_trials;
      }
      write_json(g, doc);
    } else if (*experiment) {
      ms::parse_quantity(quantity, config);
      config.seed = g.seed;
      config.threads = g.threads;
      const ms::ExperimentReport report = ms::run_experiment(config);
      ms::emit_report(report,
                      g.format == "csv" ? ms::ReportFormat::csv
                                        : ms::ReportFormat::json,
                      g.out, timing);
      if (2 * report.total_failures() > report.total_trials()) {
        std::cerr << "error: " << report.total_failures() << " of "
                  << report.total_trials() << " trials failed\n";
        return kExitSystemic;
      }
    }
  } catch (const ms::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ms::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ms::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ms::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}
