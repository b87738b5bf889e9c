#include "sktdpc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sktdpc::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(4) << v;
  return s.str();
}

// Golden-angle hues beyond the fixed palette.
std::string color(int label) {
  if (label < 0) return "#000000";
  if (label < 10) return kPalette[label];
  std::ostringstream s;
  s << "hsl(" << std::fmod(label * 137.508, 360.0) << ",65%,45%)";
  return s.str();
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi == lo) lo -= 0.5, hi += 0.5;
    const double m = 0.04 * (hi - lo);
    lo -= m;
    hi += m;
  }
};

class Canvas {
 public:
  Canvas(std::ostream& out, Range x, Range y) : out_(out), x_(x), y_(y) {}

  double px(double v) const {
    return kLeft + (v - x_.lo) / (x_.hi - x_.lo) * (kWidth - kLeft - kRight);
  }
  double py(double v) const {
    return kHeight - kBottom - (v - y_.lo) / (y_.hi - y_.lo) * (kHeight - kTop - kBottom);
  }

  void open(const std::string& title, const std::string& xlabel, const std::string& ylabel) {
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
         << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
         << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
         << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
         << escape(title) << "</text>\n";
    const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
    out_ << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\""
         << y0 - y1 << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int t = 0; t <= 4; ++t) {
      const double xv = x_.lo + (x_.hi - x_.lo) * t / 4.0;
      const double yv = y_.lo + (y_.hi - y_.lo) * t / 4.0;
      out_ << "<text x=\"" << px(xv) << "\" y=\"" << y0 + 16
           << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
      out_ << "<text x=\"" << x0 - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
           << fmt(yv) << "</text>\n";
    }
    out_ << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 12
         << "\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n";
    out_ << "<text x=\"16\" y=\"" << (y0 + y1) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
         << (y0 + y1) / 2 << ")\">" << escape(ylabel) << "</text>\n";
  }

  void close() { out_ << "</svg>\n"; }

  std::ostream& out() { return out_; }

 private:
  std::ostream& out_;
  Range x_, y_;
};

// Infinite densities (duplicate points) are drawn at the right edge.
double finite_or(double v, double cap) { return std::isfinite(v) ? v : cap; }

void diamond(std::ostream& out, double x, double y, double r, const std::string& fill) {
  out << "<path d=\"M" << x << ' ' << y - r << " L" << x + r << ' ' << y << " L" << x << ' '
      << y + r << " L" << x - r << ' ' << y << " Z\" fill=\"" << fill
      << "\" stroke=\"black\" stroke-width=\"0.8\"/>\n";
}

}  // namespace

void decision_graph(std::ostream& out, const ClusteringResult& result, const std::string& title) {
  const auto& p = result.profile;
  if (p.rho.empty()) throw std::invalid_argument("decision graph: empty clustering");
  Range x, y;
  for (double v : p.rho) x.add(v);
  for (double v : p.delta) y.add(v);
  const double cap = std::isfinite(x.hi) ? x.hi : 1.0;
  x.add(0.0);
  y.add(0.0);
  x.pad();
  y.pad();
  Canvas c(out, x, y);
  c.open(title, "local density rho", "separation delta");
  std::vector<char> is_center(p.rho.size(), 0);
  for (std::size_t s : result.centers) is_center[s] = 1;
  for (std::size_t i = 0; i < p.rho.size(); ++i) {
    if (is_center[i]) continue;
    out << "<circle cx=\"" << c.px(finite_or(p.rho[i], cap)) << "\" cy=\""
        << c.py(finite_or(p.delta[i], y.hi)) << "\" r=\"2.5\" fill=\"#555\"/>\n";
  }
  for (std::size_t s : result.centers)
    diamond(out, c.px(finite_or(p.rho[s], cap)), c.py(finite_or(p.delta[s], y.hi)), 6.0,
            "#d62728");
  c.close();
}

void gamma_ranks(std::ostream& out, const ClusteringResult& result, const std::string& title,
                 std::size_t max_ranks) {
  const auto& p = result.profile;
  const std::size_t n = p.gamma_order.size();
  if (n == 0) throw std::invalid_argument("gamma plot: empty clustering");
  std::size_t shown = max_ranks == 0 ? n : std::min(n, max_ranks);
  Range x, y;
  x.lo = 0.5;
  x.hi = static_cast<double>(shown) + 0.5;
  y.add(0.0);
  for (std::size_t r = 0; r < shown; ++r) y.add(p.gamma[p.gamma_order[r]]);
  y.pad();
  y.lo = 0.0;
  const double cap = y.hi;
  Canvas c(out, x, y);
  c.open(title, "rank by gamma", "gamma = rho * delta");
  std::vector<char> is_center(p.gamma.size(), 0);
  for (std::size_t s : result.centers) is_center[s] = 1;
  const double bar = std::max(1.0, (c.px(2.0) - c.px(1.0)) * 0.8);
  for (std::size_t r = 0; r < shown; ++r) {
    const std::size_t i = p.gamma_order[r];
    const double v = finite_or(p.gamma[i], cap);
    const double cx = c.px(static_cast<double>(r + 1));
    out << "<rect x=\"" << cx - bar / 2 << "\" y=\"" << c.py(v) << "\" width=\"" << bar
        << "\" height=\"" << c.py(0.0) - c.py(v) << "\" fill=\""
        << (is_center[i] ? "#d62728" : "#1f77b4") << "\"/>\n";
  }
  if (result.m_p >= 1 && result.m_p <= shown) {
    const double mx = c.px(static_cast<double>(result.m_p) + 0.5);
    out << "<line x1=\"" << mx << "\" y1=\"" << kTop << "\" x2=\"" << mx << "\" y2=\""
        << kHeight - kBottom << "\" stroke=\"black\" stroke-dasharray=\"5,4\"/>\n";
    out << "<text x=\"" << mx + 4 << "\" y=\"" << kTop + 14 << "\">M_p = " << result.m_p
        << "</text>\n";
  }
  c.close();
}

void scatter(std::ostream& out, const Dataset& data, std::span<const int> labels,
             std::span<const std::size_t> centers, const std::string& title) {
  if (data.empty()) throw std::invalid_argument("scatter: empty dataset");
  if (data.dim() != 2)
    throw std::invalid_argument("scatter: needs 2-D data, got " + std::to_string(data.dim()) +
                                " features");
  if (!labels.empty() && labels.size() != data.size())
    throw std::invalid_argument("scatter: label count does not match point count");
  Range x, y;
  for (std::size_t i = 0; i < data.size(); ++i) {
    x.add(data.at(i, 0));
    y.add(data.at(i, 1));
  }
  x.pad();
  y.pad();
  Canvas c(out, x, y);
  c.open(title, "x1", "x2");
  for (std::size_t i = 0; i < data.size(); ++i)
    out << "<circle cx=\"" << c.px(data.at(i, 0)) << "\" cy=\"" << c.py(data.at(i, 1))
        << "\" r=\"2.5\" fill=\"" << color(labels.empty() ? 0 : labels[i]) << "\"/>\n";
  for (std::size_t s : centers)
    diamond(out, c.px(data.at(s, 0)), c.py(data.at(s, 1)), 6.0, "#000000");
  c.close();
}

}  // namespace sktdpc::svg
