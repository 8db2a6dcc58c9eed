#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

#include "nsbandit/harness.hpp"

namespace nsbandit::harness {

namespace {

constexpr double kWidth = 860, kHeight = 520;
constexpr double kLeft = 70, kRight = 20, kTop = 30, kBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

struct Series {
  std::string label;
  std::vector<double> mean, se;
};

}  // namespace

std::string emit_plot(const std::vector<RegretTrace>& traces) {
  // Group replications by (alg, env) in first-seen order.
  std::vector<Series> series;
  std::map<std::string, size_t> position;
  std::vector<std::vector<const RegretTrace*>> groups;
  for (const auto& t : traces) {
    const std::string key = t.alg_id + " | " + t.env_id;
    auto it = position.find(key);
    if (it == position.end()) {
      position.emplace(key, groups.size());
      groups.push_back({&t});
      series.push_back(Series{key, {}, {}});
    } else {
      groups[it->second].push_back(&t);
    }
  }

  Index horizon = 0;
  for (size_t g = 0; g < groups.size(); ++g) {
    const auto& reps = groups[g];
    const Index steps = reps.front()->cum.size();
    horizon = std::max(horizon, steps);
    series[g].mean.resize(static_cast<size_t>(steps));
    series[g].se.resize(static_cast<size_t>(steps));
    for (Index t = 0; t < steps; ++t) {
      double sum = 0.0;
      for (const auto* r : reps) sum += r->cum[t];
      const double mean = sum / static_cast<double>(reps.size());
      double ss = 0.0;
      for (const auto* r : reps) {
        const double d = r->cum[t] - mean;
        ss += d * d;
      }
      const double se =
          reps.size() > 1 ? std::sqrt(ss / static_cast<double>(reps.size() - 1) /
                                      static_cast<double>(reps.size()))
                          : 0.0;
      series[g].mean[static_cast<size_t>(t)] = mean;
      series[g].se[static_cast<size_t>(t)] = se;
    }
  }

  double ymax = 0.0;
  for (const auto& s : series)
    for (size_t t = 0; t < s.mean.size(); ++t)
      ymax = std::max(ymax, s.mean[t] + s.se[t]);
  if (ymax <= 0.0) ymax = 1.0;
  const double xmax = horizon > 0 ? static_cast<double>(horizon) : 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double step) { return kLeft + plot_w * step / xmax; };
  auto py = [&](double value) { return kTop + plot_h * (1.0 - value / ymax); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";

  // Axes with five ticks each.
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmax * i / 4.0, fy = ymax * i / 4.0;
    svg << "<line x1=\"" << fmt(px(fx)) << "\" y1=\"" << kTop + plot_h
        << "\" x2=\"" << fmt(px(fx)) << "\" y2=\"" << kTop + plot_h + 5
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt(px(fx)) << "\" y=\"" << kTop + plot_h + 20
        << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt(fx)
        << "</text>\n";
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(py(fy)) << "\" x2=\""
        << kLeft << "\" y2=\"" << fmt(py(fy)) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(py(fy) + 4)
        << "\" font-size=\"12\" text-anchor=\"end\">" << fmt(fy) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" font-size=\"13\" text-anchor=\"middle\">step</text>\n";
  svg << "<text x=\"16\" y=\"" << kTop + plot_h / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kTop + plot_h / 2 << ")\">cumulative regret</text>\n";

  for (size_t g = 0; g < series.size(); ++g) {
    const auto& s = series[g];
    const char* color = kPalette[g % (sizeof(kPalette) / sizeof(kPalette[0]))];
    const size_t steps = s.mean.size();
    const size_t stride = std::max<size_t>(1, steps / 800);

    bool has_band = false;
    for (size_t t = 0; t < steps; ++t)
      if (s.se[t] > 0.0) has_band = true;
    if (has_band) {
      svg << "<path fill=\"" << color << "\" fill-opacity=\"0.15\" stroke=\"none\" d=\"";
      for (size_t t = 0; t < steps; t += stride)
        svg << (t == 0 ? 'M' : 'L') << fmt(px(static_cast<double>(t + 1))) << ' '
            << fmt(py(s.mean[t] + s.se[t]));
      for (size_t t = steps; t-- > 0;)
        if (t % stride == 0)
          svg << 'L' << fmt(px(static_cast<double>(t + 1))) << ' '
              << fmt(py(std::max(0.0, s.mean[t] - s.se[t])));
      svg << "Z\"/>\n";
    }

    svg << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (size_t t = 0; t < steps; t += stride)
      svg << fmt(px(static_cast<double>(t + 1))) << ',' << fmt(py(s.mean[t])) << ' ';
    if (steps > 0 && (steps - 1) % stride != 0)
      svg << fmt(px(static_cast<double>(steps))) << ','
          << fmt(py(s.mean[steps - 1]));
    svg << "\"/>\n";

    const double ly = kTop + 16 + 18 * static_cast<double>(g);
    svg << "<line x1=\"" << kLeft + 10 << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
        << kLeft + 34 << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kLeft + 40 << "\" y=\"" << fmt(ly)
        << "\" font-size=\"12\">" << s.label << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace nsbandit::harness
