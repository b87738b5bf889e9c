#include "sktdpc/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "sktdpc/baseline.hpp"
#include "sktdpc/kdtree.hpp"
#include "sktdpc/metrics.hpp"
#include "sktdpc/registry.hpp"
#include "sktdpc/svg.hpp"

namespace sktdpc::cli {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  return f;
}

std::string number(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

std::vector<std::pair<std::string, std::string>> describe(const AlgorithmParams& p) {
  std::vector<std::pair<std::string, std::string>> out;
  if (p.k) out.emplace_back("k", std::to_string(*p.k));
  if (p.dc) out.emplace_back("dc", number(*p.dc));
  if (p.dc_percent) out.emplace_back("dc_percent", number(*p.dc_percent));
  if (p.n_centers) out.emplace_back("n_centers", std::to_string(*p.n_centers));
  return out;
}

void add(PhaseTimings& sum, const PhaseTimings& t) {
  sum.build_tree += t.build_tree;
  sum.knn += t.knn;
  sum.density += t.density;
  sum.separation += t.separation;
  sum.centers += t.centers;
  sum.assign += t.assign;
  sum.total += t.total;
}

void scale(PhaseTimings& t, double f) {
  for (double* v : {&t.build_tree, &t.knn, &t.density, &t.separation, &t.centers, &t.assign,
                    &t.total})
    *v *= f;
}

std::size_t parse_size(const std::string& key, const std::string& value, std::size_t line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || v < 0)
    throw UsageError("suite line " + std::to_string(line) + ": bad " + key + " '" + value + "'");
  return static_cast<std::size_t>(v);
}

double parse_double(const std::string& key, const std::string& value, std::size_t line) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size())
    throw UsageError("suite line " + std::to_string(line) + ": bad " + key + " '" + value + "'");
  return v;
}

}  // namespace

Dataset prepare(const DataOptions& options) {
  LoadOptions load;
  load.label_column = options.label_col;
  const auto dir = options.data_dir.empty() ? default_data_dir() : options.data_dir;
  Dataset d = resolve_dataset(options.input, dir, load, options.seed);
  if (d.empty()) throw std::runtime_error("'" + options.input + "' holds no points");
  if (options.normalize) d = normalize(d, Normalization::kMinMax);
  if (options.pca) {
    if (*options.pca == 0 || *options.pca > d.dim())
      throw UsageError("--pca must be between 1 and " + std::to_string(d.dim()));
    d = pca_reduce(d, *options.pca);
  }
  return d;
}

void validate(const AlgorithmParams& p, std::size_t n) {
  if (p.algorithm == "sktdpc" || p.algorithm == "sktdpc-ref") {
    if (!p.k) throw UsageError(p.algorithm + " needs --k");
    if (*p.k < 1 || n < 2 || *p.k > n - 1)
      throw UsageError("--k must be between 1 and n-1 = " + std::to_string(n == 0 ? 0 : n - 1) +
                       ", got " + std::to_string(*p.k));
  } else if (p.algorithm == "dpc") {
    if (p.dc.has_value() == p.dc_percent.has_value())
      throw UsageError("dpc needs exactly one of --dc and --dc-percent");
    if (p.dc && !(*p.dc > 0.0)) throw UsageError("--dc must be positive");
    if (p.dc_percent && !(*p.dc_percent > 0.0 && *p.dc_percent <= 100.0))
      throw UsageError("--dc-percent must be in (0, 100]");
    if (!p.n_centers || *p.n_centers < 1 || *p.n_centers > n)
      throw UsageError("dpc needs --n-centers between 1 and n");
  } else {
    throw UsageError("unknown algorithm '" + p.algorithm + "' (sktdpc, sktdpc-ref, dpc)");
  }
}

ClusteringResult run_algorithm(const Dataset& data, const AlgorithmParams& p) {
  validate(p, data.size());
  if (p.algorithm == "sktdpc") {
    RunOptions options;
    options.workers = p.workers;
    return run_sktdpc(data, *p.k, options);
  }
  if (p.algorithm == "sktdpc-ref") return baseline::sktdpc_reference(data, *p.k);
  double dc = p.dc.value_or(0.0);
  if (p.dc_percent) dc = baseline::dc_from_percent(baseline::full_matrix(data), *p.dc_percent);
  return baseline::dpc_original(data, dc, *p.n_centers);
}

RunReport run_cell(const Dataset& data, const AlgorithmParams& params, std::size_t repeats,
                   bool normalized, ClusteringResult* last) {
  if (repeats < 1) throw UsageError("--repeats must be at least 1");
  RunReport report;
  report.dataset = data.name();
  report.algorithm = params.algorithm;
  report.params = describe(params);
  report.n = data.size();
  report.dim = data.dim();
  report.normalized = normalized;
  report.repeats = repeats;

  ClusteringResult first;
  PhaseTimings sum;
  for (std::size_t r = 0; r < repeats; ++r) {
    ClusteringResult result = run_algorithm(data, params);
    add(sum, result.timings);
    report.repeat_times.push_back(result.timings.total);
    if (r == 0) {
      first = std::move(result);
      continue;
    }
    if (result.labels != first.labels || result.centers != first.centers ||
        result.m_p != first.m_p)
      report.deterministic = false;
  }
  scale(sum, 1.0 / static_cast<double>(repeats));
  report.mean_timings = sum;
  fill_report(report, first);
  if (data.has_labels()) report.scores = metrics::score_all(data.labels(), first.labels);
  if (!report.deterministic)
    report.error = "repeats produced different clusterings";
  if (last) *last = std::move(first);
  return report;
}

RunReport cmd_cluster(const ClusterOptions& options, std::ostream& out) {
  const Dataset data = prepare(options.data);
  validate(options.params, data.size());
  ClusteringResult result;
  RunReport report = run_cell(data, options.params, options.repeats, options.data.normalize,
                              &result);
  if (options.output.empty()) {
    for (int label : result.labels) out << label << '\n';
  } else {
    auto f = open_output(options.output);
    for (int label : result.labels) f << label << '\n';
    if (!f) throw std::runtime_error("failed writing '" + options.output + "'");
  }
  if (!options.report.empty()) {
    auto f = open_output(options.report);
    write_report(f, report);
    if (!f) throw std::runtime_error("failed writing '" + options.report + "'");
  }
  if (!report.error.empty()) throw std::runtime_error(report.error);
  return report;
}

std::vector<SuiteCell> parse_suite(std::istream& in) {
  std::vector<SuiteCell> cells;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    SuiteCell cell;
    cell.line = line_no;
    if (!(words >> cell.dataset)) continue;
    if (!(words >> cell.params.algorithm))
      throw UsageError("suite line " + std::to_string(line_no) + ": missing algorithm");
    std::string item;
    while (words >> item) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw UsageError("suite line " + std::to_string(line_no) + ": expected key=value, got '" +
                         item + "'");
      const std::string key = item.substr(0, eq);
      const std::string value = item.substr(eq + 1);
      if (key == "k")
        cell.params.k = parse_size(key, value, line_no);
      else if (key == "dc")
        cell.params.dc = parse_double(key, value, line_no);
      else if (key == "dc_percent")
        cell.params.dc_percent = parse_double(key, value, line_no);
      else if (key == "n_centers")
        cell.params.n_centers = parse_size(key, value, line_no);
      else if (key == "normalize" && (value == "on" || value == "off"))
        cell.normalize = value == "on";
      else
        throw UsageError("suite line " + std::to_string(line_no) + ": unknown setting '" + item +
                         "'");
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::vector<RunReport> cmd_bench(const BenchOptions& options, std::ostream& out) {
  std::ifstream suite_file(options.suite);
  if (!std::filesystem::exists(options.suite)) throw InputNotFound(options.suite);
  if (!suite_file) throw std::runtime_error("cannot open '" + options.suite + "'");
  const std::vector<SuiteCell> cells = parse_suite(suite_file);
  if (cells.empty()) throw UsageError("suite '" + options.suite + "' has no cells");
  if (options.repeats < 1) throw UsageError("--repeats must be at least 1");

  std::vector<RunReport> reports(cells.size());
  auto run = [&](std::size_t c) {
    const SuiteCell& cell = cells[c];
    DataOptions data;
    data.input = cell.dataset;
    data.data_dir = options.data_dir;
    data.normalize = cell.normalize.value_or(options.normalize);
    data.label_col = options.label_col;
    data.seed = options.seed;
    RunReport& report = reports[c];
    try {
      const Dataset d = prepare(data);
      report = run_cell(d, cell.params, options.repeats, data.normalize);
      report.dataset = cell.dataset;
    } catch (const std::exception& e) {
      report = RunReport{};
      report.dataset = cell.dataset;
      report.algorithm = cell.params.algorithm;
      report.params = describe(cell.params);
      report.normalized = data.normalize;
      report.repeats = options.repeats;
      report.error = e.what();
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs,
                                                        static_cast<unsigned>(cells.size())));
  if (jobs == 1) {
    for (std::size_t c = 0; c < cells.size(); ++c) run(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < cells.size(); c = next++) run(c);
      });
  }

  if (options.report.empty()) {
    for (const auto& r : reports) write_report(out, r);
  } else {
    auto f = open_output(options.report);
    for (const auto& r : reports) write_report(f, r);
    if (!f) throw std::runtime_error("failed writing '" + options.report + "'");
    for (const auto& r : reports) {
      out << r.dataset << ' ' << r.algorithm;
      for (const auto& [key, value] : r.params) out << ' ' << key << '=' << value;
      if (!r.error.empty()) {
        out << " error: " << r.error << '\n';
        continue;
      }
      out << " clusters=" << r.clusters;
      if (r.scores) out << " acc=" << std::fixed << std::setprecision(3) << r.scores->acc;
      out << std::defaultfloat << " ratio=" << std::setprecision(4) << r.ratio()
          << " seconds=" << r.mean_timings.total << '\n';
    }
  }
  return reports;
}

PlotKind parse_plot_kind(const std::string& kind) {
  if (kind == "decision-graph") return PlotKind::kDecisionGraph;
  if (kind == "gamma") return PlotKind::kGamma;
  if (kind == "scatter") return PlotKind::kScatter;
  throw UsageError("unknown plot kind '" + kind + "' (decision-graph, gamma, scatter)");
}

void cmd_plot(const PlotOptions& options, std::ostream& out) {
  const Dataset data = prepare(options.data);
  if (options.kind == PlotKind::kScatter && data.dim() != 2)
    throw std::invalid_argument("scatter needs 2-D data, '" + options.data.input + "' has " +
                                std::to_string(data.dim()) + " features");
  const ClusteringResult result = run_algorithm(data, options.params);
  std::ostringstream svg;
  const std::string title = data.name() + " (" + options.params.algorithm + ")";
  switch (options.kind) {
    case PlotKind::kDecisionGraph: svg::decision_graph(svg, result, title); break;
    case PlotKind::kGamma: {
      // Default to the ranks that matter: a little past the search window.
      std::size_t ranks = options.max_ranks;
      if (ranks == 0)
        ranks = std::max<std::size_t>(
            10, 2 * static_cast<std::size_t>(std::sqrt(static_cast<double>(data.size()))));
      svg::gamma_ranks(svg, result, title, ranks);
      break;
    }
    case PlotKind::kScatter: svg::scatter(svg, data, result.labels, result.centers, title); break;
  }
  if (options.output.empty()) {
    out << svg.str();
  } else {
    auto f = open_output(options.output);
    f << svg.str();
    if (!f) throw std::runtime_error("failed writing '" + options.output + "'");
  }
}

std::vector<SweepRow> cmd_sweep(const SweepOptions& options, std::ostream& out) {
  if (options.k_min < 1 || options.k_min > options.k_max)
    throw UsageError("bad k range " + std::to_string(options.k_min) + ".." +
                     std::to_string(options.k_max));
  if (options.params.algorithm == "dpc") throw UsageError("sweep varies k; use sktdpc or sktdpc-ref");
  const Dataset data = prepare(options.data);
  AlgorithmParams params = options.params;
  params.k = options.k_max;
  validate(params, data.size());

  std::vector<SweepRow> rows;
  for (std::size_t k = options.k_min; k <= options.k_max; ++k) {
    params.k = k;
    rows.push_back({k, run_cell(data, params, 1, options.data.normalize)});
  }

  std::ostringstream table;
  table << "k,clusters,m_p,acc,ami,ari,nmi,fmi,evaluations,ratio,seconds\n";
  for (const auto& row : rows) {
    const RunReport& r = row.report;
    table << row.k << ',' << r.clusters << ',' << r.m_p << ',';
    if (r.scores)
      table << number(r.scores->acc) << ',' << number(r.scores->ami) << ','
            << number(r.scores->ari) << ',' << number(r.scores->nmi) << ','
            << number(r.scores->fmi) << ',';
    else
      table << ",,,,,";
    table << r.distance_evaluations << ',' << number(r.ratio()) << ','
          << number(r.mean_timings.total) << '\n';
  }
  if (options.output.empty()) {
    out << table.str();
  } else {
    auto f = open_output(options.output);
    f << table.str();
    if (!f) throw std::runtime_error("failed writing '" + options.output + "'");
  }
  return rows;
}

}  // namespace sktdpc::cli
