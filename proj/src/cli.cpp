#include "wclique/cli.hpp"

#include "wclique/clique_count.hpp"
#include "wclique/density.hpp"
#include "wclique/experiments.hpp"
#include "wclique/io.hpp"
#include "wclique/limit.hpp"
#include "wclique/multigraph.hpp"
#include "wclique/oracle.hpp"
#include "wclique/rng.hpp"
#include "wclique/sampler.hpp"
#include "wclique/spectral.hpp"
#include "wclique/types.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace wclique {

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int default_threads() {
  if (const char* env = std::getenv("WCLIQUE_THREADS")) {
    char* end = nullptr;
    const long k = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && k >= 1 && k <= 1024) return static_cast<int>(k);
  }
  return 1;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text(path, text);
  }
}

std::filesystem::path sibling(const std::string& path, const char* ext) {
  std::filesystem::path p(path);
  p.replace_extension(ext);
  return p;
}

StepGraphon random_graphon(RngStream& rng, int blocks) {
  StepGraphon::Vector mu(blocks);
  for (int i = 0; i < blocks; ++i) mu(i) = 0.2 + rng.uniform();
  mu /= mu.sum();
  StepGraphon::Matrix values(blocks, blocks);
  for (int i = 0; i < blocks; ++i)
    for (int j = i; j < blocks; ++j) values(i, j) = values(j, i) = rng.uniform();
  return StepGraphon::derived(mu, values);
}

}  // namespace

bool run_selftest(std::ostream& out) {
  bool all = true;
  const auto check = [&](const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception& e) {
      out << "FAIL " << name << ": " << e.what() << '\n';
      all = false;
      return;
    }
    out << (ok ? "PASS " : "FAIL ") << name << '\n';
    all = all && ok;
  };

  RngStream rng = split_stream(20240601, 0);
  std::vector<StepGraphon> corpus;
  for (int k = 0; k < 8; ++k) corpus.push_back(random_graphon(rng, 1 + k % 4));
  const StepGraphon toy = StepGraphon::validate(Eigen::Vector2d(0.5, 0.5), Eigen::Matrix2d::Identity());

  check("densities agree with plain enumeration", [&] {
    for (const auto& w : corpus)
      for (const auto& h : {complete_graph(4), cycle_graph(5), build_glued_cliques(3, 2, true), build_loose_cycle_graph(3, 3)})
        if (std::abs(hom_density(h, w) - oracle::naive_hom_density(h, w)) > 1e-12) return false;
    return true;
  });
  check("cycle densities equal eigenvalue power sums", [&] {
    for (const auto& w : corpus) {
      const Spectrum s = spectrum(w);
      for (int ell = 2; ell <= 6; ++ell)
        if (std::abs(s.sum_of_powers(ell) - hom_density(cycle_graph(ell), w)) > 1e-8) return false;
    }
    return true;
  });
  check("loose cycles are cycles of V_W(r)", [&] {
    for (const auto& w : corpus)
      for (int r = 2; r <= 4; ++r) {
        const StepGraphon v = build_vwr(w, r);
        for (int ell = 3; ell <= 4; ++ell)
          if (std::abs(hom_density(build_loose_cycle_graph(ell, r), w) - hom_density(cycle_graph(ell), v)) > 1e-8)
            return false;
        if (std::abs(hom_density(build_glued_cliques(r, 2, true), w) - hom_density(cycle_graph(2), v)) > 1e-8)
          return false;
      }
    return true;
  });
  check("tuple counts match the closed form", [&] {
    for (auto [n, r, m] : {std::tuple{5, 2, 2}, {6, 2, 3}, {6, 3, 2}}) {
      const oracle::TupleCounts counts = oracle::count_tuples_by_type(n, r, m);
      for (const auto& [type, count] : counts.by_type)
        if (std::abs(static_cast<double>(count) - oracle::a_formula(n, r, type)) > 0.5) return false;
    }
    return true;
  });
  check("bitset clique counts match brute force", [&] {
    for (int k = 0; k < 60; ++k) {
      RngStream s = split_stream(77, static_cast<std::uint64_t>(k));
      const SampledGraph g = sample_graph(corpus[static_cast<std::size_t>(k) % corpus.size()], 4 + k % 13, s);
      for (int r = 2; r <= 5; ++r)
        if (count_cliques(g, r) != count_cliques_reference(g, r)) return false;
    }
    return true;
  });
  check("two-clique moments", [&] {
    const MomentSeries series = moment_series(toy, 2, 6);
    return std::abs(theoretical_moment(series, 2) - 0.125) < 1e-12 &&
           std::abs(theoretical_moment(series, 3) - 0.125) < 1e-12;
  });
  check("exact law has mean C(n,r) t_r", [&] {
    for (const auto& w : corpus) {
      if (w.blocks() > 4) continue;
      double mean = 0.0;
      for (const auto& [count, p] : oracle::exact_distribution(w, 4, 3)) mean += static_cast<double>(count) * p;
      if (std::abs(mean - 4.0 * hom_density(complete_graph(3), w)) > 1e-12) return false;
    }
    return true;
  });
  return all;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clique-count fluctuations in W-random graphs over step graphons", "wclique"};
  app.require_subcommand(1);

  std::string graphon_path;
  int r = 2;
  double tol = 1e-10;
  std::string out_path;

  auto* analyze = app.add_subcommand("analyze", "Classify the limit law of the r-clique count");
  analyze->add_option("graphon", graphon_path, "Graphon file")->required();
  analyze->add_option("--r", r, "Clique size")->required()->check(CLI::Range(2, kMaxCliqueSize));
  analyze->add_option("--tol", tol, "Regularity and degeneracy tolerance")->check(CLI::PositiveNumber);
  analyze->add_option("--out", out_path, "Write the report here instead of stdout");

  int max_m = 6;
  auto* moments = app.add_subcommand("moments", "Theoretical moments of the case (c) limit");
  moments->add_option("graphon", graphon_path, "Graphon file")->required();
  moments->add_option("--r", r, "Clique size")->required()->check(CLI::Range(2, kMaxCliqueSize));
  moments->add_option("--max-m", max_m, "Highest moment")->check(CLI::Range(1, 40));

  int n = 0;
  std::uint64_t seed = 1;
  auto* sample = app.add_subcommand("sample", "Draw one G(n, W) as an edge list");
  sample->add_option("graphon", graphon_path, "Graphon file")->required();
  sample->add_option("--n", n, "Number of vertices")->required()->check(CLI::Range(1, kDefaultMaxVertices));
  sample->add_option("--seed", seed, "Master seed");
  sample->add_option("--out", out_path, "Write the edge list here instead of stdout");

  ExperimentConfig cfg;
  std::string csv_path, svg_path;
  cfg.threads = default_threads();
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo check of the limit law");
  experiment->add_option("graphon", graphon_path, "Graphon file")->required();
  experiment->add_option("--r", cfg.r, "Clique size")->required()->check(CLI::Range(2, kMaxCliqueSize));
  experiment->add_option("--n", cfg.n, "Number of vertices")->required()->check(CLI::Range(2, kDefaultMaxVertices));
  experiment->add_option("--trials", cfg.trials, "Number of trials")->required()->check(CLI::Range(2, 100000000));
  experiment->add_option("--seed", cfg.seed, "Master seed")->required();
  experiment->add_option("--out", out_path, "Report file (JSON)")->required();
  experiment->add_option("--csv", csv_path, "Per-trial CSV (default: report path with .csv)");
  experiment->add_option("--svg", svg_path, "Histogram of standardized counts vs limit sample");
  experiment->add_option("--threads", cfg.threads, "Worker threads (default $WCLIQUE_THREADS or 1)")
      ->check(CLI::Range(1, 1024));
  experiment->add_option("--order", cfg.order, "Moment series truncation order")->check(CLI::Range(4, 40));
  experiment->add_option("--limit-samples", cfg.limit_samples, "Limit-law sample size (default: trials)")
      ->check(CLI::NonNegativeNumber);
  experiment->add_option("--ks-threshold", cfg.ks_threshold, "KS acceptance threshold");
  experiment->add_option("--variance-tol", cfg.variance_tolerance, "Relative variance tolerance");
  experiment->add_option("--tol", cfg.classify_tol, "Regularity and degeneracy tolerance")->check(CLI::PositiveNumber);

  auto* selftest = app.add_subcommand("selftest", "Run the oracle-backed invariant suite");
  selftest->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "wclique: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (selftest->parsed()) {
      return run_selftest(out) ? kExitOk : kExitSelftest;
    }
    const StepGraphon w = read_graphon(graphon_path);
    if (analyze->parsed()) {
      emit(analysis_report(w, r, tol).dump(2) + "\n", out_path, out);
    } else if (moments->parsed()) {
      const MomentSeries series = moment_series(w, r, std::max(max_m, 2));
      std::ostringstream table;
      table << "m,moment\n";
      for (int m = 1; m <= max_m; ++m) table << m << ',' << fmt17(theoretical_moment(series, m)) << '\n';
      out << table.str();
    } else if (sample->parsed()) {
      RngStream stream = split_stream(seed, 0);
      const SampledGraph g = sample_graph(w, n, stream);
      std::ostringstream text;
      write_edge_list(g, text);
      emit(text.str(), out_path, out);
    } else if (experiment->parsed()) {
      cfg.graphon = w;
      const ExperimentReport rep = run_experiment(cfg);
      write_text(out_path, experiment_report_to_json(rep).dump(2) + "\n");
      std::ostringstream csv;
      write_trials_csv(rep, csv);
      write_text(csv_path.empty() ? sibling(out_path, ".csv") : std::filesystem::path(csv_path), csv.str());
      if (!svg_path.empty()) {
        std::ostringstream svg;
        const int samples = cfg.limit_samples > 0 ? cfg.limit_samples : cfg.trials;
        const std::vector<double> ys =
            rep.law.is_degenerate() ? std::vector<double>{} : limit_sample(rep.law, cfg.seed, samples);
        write_histogram_svg(rep.standardized, ys, svg);
        write_text(svg_path, svg.str());
      }
      out << "case " << rep.law.theorem_case() << ", " << rep.trials << " trials\n";
      for (const auto& c : rep.checks) out << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    }
  } catch (const IoError& e) {
    err << "wclique: " << e.what() << '\n';
    return kExitIo;
  } catch (const InputError& e) {
    err << "wclique: invalid input: " << e.what() << '\n';
    return kExitInput;
  } catch (const BudgetError& e) {
    err << "wclique: invalid input: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    err << "wclique: numerical inconsistency: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace wclique
