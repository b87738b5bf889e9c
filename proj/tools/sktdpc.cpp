// Command-line front end: cluster, bench, plot, sweep.
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sktdpc/commands.hpp"
#include "sktdpc/dataset.hpp"
#include "sktdpc/registry.hpp"

namespace cli = sktdpc::cli;

namespace {

// Shared input flags.
void add_data_flags(CLI::App& cmd, cli::DataOptions& data, std::string& normalize) {
  cmd.add_option("--normalize", normalize, "min-max normalize features")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  cmd.add_option("--label-col", data.label_col,
                 "column holding ground-truth labels (negative counts from the end)");
  cmd.add_option("--pca", data.pca, "project onto this many principal axes")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--seed", data.seed, "seed for generated fixtures (blobs:ss2, blobs:s1)");
  cmd.add_option("--data-dir", data.data_dir, "directory with registered datasets");
}

void add_algorithm_flags(CLI::App& cmd, cli::AlgorithmParams& p, bool with_k = true) {
  cmd.add_option("--algorithm", p.algorithm, "sktdpc, sktdpc-ref or dpc")
      ->check(CLI::IsMember({"sktdpc", "sktdpc-ref", "dpc"}))
      ->capture_default_str();
  if (with_k) cmd.add_option("--k", p.k, "neighbours per point")->check(CLI::PositiveNumber);
  cmd.add_option("--dc", p.dc, "cut-off distance (dpc)");
  cmd.add_option("--dc-percent", p.dc_percent, "cut-off as a percentage of pairs (dpc)");
  cmd.add_option("--n-centers", p.n_centers, "number of centers (dpc)")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--workers", p.workers, "threads for the k-NN search")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density peaks clustering with sparse k-d tree search"};
  app.require_subcommand(1);

  cli::ClusterOptions cluster;
  std::string cluster_normalize = "on";
  auto* c = app.add_subcommand("cluster", "cluster one input and write labels");
  c->add_option("input", cluster.data.input, "file, registered name or blobs:ss2 / blobs:s1")
      ->required();
  add_data_flags(*c, cluster.data, cluster_normalize);
  add_algorithm_flags(*c, cluster.params);
  c->add_option("--repeats", cluster.repeats, "runs to average")->check(CLI::PositiveNumber);
  c->add_option("--output", cluster.output, "labels file (default stdout)");
  c->add_option("--report", cluster.report, "report file");

  cli::BenchOptions bench;
  std::string bench_normalize = "on";
  auto* b = app.add_subcommand("bench", "run a suite of (dataset, algorithm, params) cells");
  b->add_option("suite", bench.suite, "suite file")->required();
  b->add_option("--repeats", bench.repeats, "runs per cell")->check(CLI::PositiveNumber);
  b->add_option("--normalize", bench_normalize, "default normalization for cells")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  b->add_option("--label-col", bench.label_col, "label column for plain files");
  b->add_option("--seed", bench.seed, "seed for generated fixtures");
  b->add_option("--data-dir", bench.data_dir, "directory with registered datasets");
  b->add_option("--jobs", bench.jobs, "cells run in parallel")->check(CLI::PositiveNumber);
  b->add_option("--report", bench.report, "report file (default stdout)");

  cli::PlotOptions plot;
  std::string plot_kind;
  std::string plot_normalize = "on";
  auto* p = app.add_subcommand("plot", "write an SVG plot");
  p->add_option("kind", plot_kind, "decision-graph, gamma or scatter")
      ->required()
      ->check(CLI::IsMember({"decision-graph", "gamma", "scatter"}));
  p->add_option("input", plot.data.input, "file, registered name or fixture")->required();
  add_data_flags(*p, plot.data, plot_normalize);
  add_algorithm_flags(*p, plot.params);
  p->add_option("--ranks", plot.max_ranks, "gamma ranks to draw (0 = automatic)");
  p->add_option("--output", plot.output, "SVG file (default stdout)");

  cli::SweepOptions sweep;
  std::string sweep_normalize = "on";
  auto* s = app.add_subcommand("sweep", "cluster for every k in a range");
  s->add_option("input", sweep.data.input, "file, registered name or fixture")->required();
  add_data_flags(*s, sweep.data, sweep_normalize);
  add_algorithm_flags(*s, sweep.params, false);
  s->add_option("--k-min", sweep.k_min, "first k")->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--k-max", sweep.k_max, "last k")->check(CLI::PositiveNumber)->capture_default_str();
  s->add_option("--output", sweep.output, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c->parsed()) {
      cluster.data.normalize = cluster_normalize == "on";
      const auto report = cli::cmd_cluster(cluster, std::cout);
      if (report.scores)
        std::cerr << report.dataset << ": " << report.clusters << " clusters, acc "
                  << report.scores->acc << '\n';
    } else if (b->parsed()) {
      bench.normalize = bench_normalize == "on";
      const auto reports = cli::cmd_bench(bench, std::cout);
      for (const auto& r : reports)
        if (!r.error.empty()) return 1;
    } else if (p->parsed()) {
      plot.kind = cli::parse_plot_kind(plot_kind);
      plot.data.normalize = plot_normalize == "on";
      cli::cmd_plot(plot, std::cout);
    } else if (s->parsed()) {
      sweep.data.normalize = sweep_normalize == "on";
      cli::cmd_sweep(sweep, std::cout);
    }
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const sktdpc::InputNotFound& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
