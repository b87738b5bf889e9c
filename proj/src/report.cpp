#include "sktdpc/report.hpp"

#include <iomanip>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sktdpc {

namespace {

template <typename Range>
std::string join(const Range& items) {
  std::ostringstream s;
  bool first = true;
  for (const auto& item : items) {
    if (!first) s << ' ';
    s << item;
    first = false;
  }
  return s.str();
}

std::string number(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

std::string_view trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string labels_digest(std::span<const int> labels) {
  std::uint64_t h = 14695981039346656037ull;
  for (int label : labels) {
    auto v = static_cast<std::uint32_t>(label);
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

void fill_report(RunReport& report, const ClusteringResult& result) {
  report.clusters = result.cluster_count();
  report.centers = result.centers;
  report.m_p = result.m_p;
  report.flags = result.flags;
  report.labels_digest = labels_digest(result.labels);
  report.distance_evaluations = result.counters.total_evaluations;
  report.full_pairs = result.counters.full_pairs;
  report.stored_pairs = result.counters.stored_pairs;
  report.intersection_hits = result.counters.intersection_hits;
  report.fallback_points = result.counters.fallback_points;
}

void write_report(std::ostream& out, const RunReport& r) {
  out << "[run]\n";
  out << "dataset = " << r.dataset << '\n';
  out << "algorithm = " << r.algorithm << '\n';
  for (const auto& [key, value] : r.params) out << key << " = " << value << '\n';
  out << "n = " << r.n << '\n';
  out << "dim = " << r.dim << '\n';
  out << "normalize = " << (r.normalized ? "on" : "off") << '\n';
  if (!r.error.empty()) {
    out << "status = error\n";
    out << "error = " << r.error << '\n';
    out << '\n';
    return;
  }
  out << "status = ok\n";
  out << "clusters = " << r.clusters << '\n';
  out << "centers = " << join(r.centers) << '\n';
  out << "m_p = " << r.m_p << '\n';
  out << "flags = " << join(r.flags) << '\n';
  out << "labels_digest = " << r.labels_digest << '\n';
  out << "distance_evaluations = " << r.distance_evaluations << '\n';
  out << "full_pairs = " << r.full_pairs << '\n';
  out << "evaluation_ratio = " << number(r.ratio()) << '\n';
  out << "stored_pairs = " << r.stored_pairs << '\n';
  out << "intersection_hits = " << r.intersection_hits << '\n';
  out << "fallback_points = " << r.fallback_points << '\n';
  out << "repeats = " << r.repeats << '\n';
  out << "deterministic = " << (r.deterministic ? "yes" : "no") << '\n';
  if (r.scores) {
    out << "[metrics]\n";
    out << "acc = " << number(r.scores->acc) << '\n';
    out << "ami = " << number(r.scores->ami) << '\n';
    out << "ari = " << number(r.scores->ari) << '\n';
    out << "nmi = " << number(r.scores->nmi) << '\n';
    out << "fmi = " << number(r.scores->fmi) << '\n';
  }
  out << "[timings]\n";
  const PhaseTimings& t = r.mean_timings;
  out << "build_tree = " << number(t.build_tree) << '\n';
  out << "knn = " << number(t.knn) << '\n';
  out << "density = " << number(t.density) << '\n';
  out << "separation = " << number(t.separation) << '\n';
  out << "centers = " << number(t.centers) << '\n';
  out << "assign = " << number(t.assign) << '\n';
  out << "total = " << number(t.total) << '\n';
  std::vector<std::string> times;
  for (double v : r.repeat_times) times.push_back(number(v));
  out << "repeat_times = " << join(times) << '\n';
  out << '\n';
}

std::vector<ReportDocument> parse_reports(std::istream& in) {
  std::vector<ReportDocument> docs;
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw std::runtime_error("report line " + std::to_string(line_no) + ": bad section");
      section = std::string(s.substr(1, s.size() - 2));
      if (section == "run") docs.emplace_back();
      if (docs.empty()) throw std::runtime_error("report: section before [run]");
      docs.back()[section];
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos || docs.empty())
      throw std::runtime_error("report line " + std::to_string(line_no) + ": expected key = value");
    docs.back()[section][std::string(trim(s.substr(0, eq)))] = std::string(trim(s.substr(eq + 1)));
  }
  return docs;
}

}  // namespace sktdpc
