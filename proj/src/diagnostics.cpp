#include "nscp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nscp {

namespace {

void check_radii(const std::vector<double>& radii, std::size_t minimum) {
  if (radii.size() < minimum) throw std::invalid_argument("radius grid too short");
  double prev = 0.0;
  for (double r : radii) {
    if (!(r > prev)) throw std::invalid_argument("radii must be positive ascending");
    prev = r;
  }
}

// Derivative of the quadratic through (a,fa),(b,fb),(c,fc) at x.
double lagrange3_derivative(double x, double a, double b, double c, double fa, double fb,
                            double fc) {
  return fa * (2.0 * x - b - c) / ((a - b) * (a - c)) +
         fb * (2.0 * x - a - c) / ((b - a) * (b - c)) +
         fc * (2.0 * x - a - b) / ((c - a) * (c - b));
}

}  // namespace

std::vector<double> ripley_k(const PointPattern& pattern, const std::vector<double>& radii) {
  const std::size_t n = pattern.size();
  if (n < 2) throw std::invalid_argument("ripley_k: need at least 2 points");
  check_radii(radii, 1);

  const auto& pts = pattern.points();
  std::vector<double> dists;
  dists.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      dists.push_back(std::sqrt(squared_distance(pts[i], pts[j])));
  std::sort(dists.begin(), dists.end());

  const double scale = pattern.window().area() / (static_cast<double>(n) * n);
  std::vector<double> k(radii.size());
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    const auto count =
        std::upper_bound(dists.begin(), dists.end(), radii[ri]) - dists.begin();
    k[ri] = scale * 2.0 * static_cast<double>(count);  // ordered pairs
  }
  return k;
}

std::vector<double> ripley_k_translation(const PointPattern& pattern,
                                         const std::vector<double>& radii) {
  const std::size_t n = pattern.size();
  if (n < 2) throw std::invalid_argument("ripley_k_translation: need at least 2 points");
  if (pattern.window().shape() != Window::Shape::Rectangle)
    throw std::invalid_argument(
        "ripley_k_translation: implemented for rectangular windows only");
  check_radii(radii, 1);

  const auto& pts = pattern.points();
  const BoundingBox& bb = pattern.window().bounding_box();
  const double a = bb.width(), b = bb.height();
  const double area = pattern.window().area();
  const double lambda_sq =
      (static_cast<double>(n) * n) / (area * area);

  std::vector<double> k(radii.size(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = std::abs(pts[i].x - pts[j].x);
      const double dy = std::abs(pts[i].y - pts[j].y);
      const double d = std::sqrt(dx * dx + dy * dy);
      const double weight = 1.0 / ((a - dx) * (b - dy));
      for (std::size_t ri = 0; ri < radii.size(); ++ri)
        if (d <= radii[ri]) k[ri] += 2.0 * weight;
    }
  }
  for (double& v : k) v /= lambda_sq;
  return k;
}

std::vector<double> pcf_from_k(const std::vector<double>& radii,
                               const std::vector<double>& k_values) {
  check_radii(radii, 3);
  if (k_values.size() != radii.size())
    throw std::invalid_argument("pcf_from_k: K grid size mismatch");
  const std::size_t nr = radii.size();
  std::vector<double> j(nr);
  for (std::size_t i = 0; i < nr; ++i) {
    const std::size_t mid = std::clamp<std::size_t>(i, 1, nr - 2);
    const double dk = lagrange3_derivative(radii[i], radii[mid - 1], radii[mid],
                                           radii[mid + 1], k_values[mid - 1], k_values[mid],
                                           k_values[mid + 1]);
    j[i] = dk / (2.0 * M_PI * radii[i]);
  }
  return j;
}

PcfResult pcf(const PointPattern& pattern, const std::vector<double>& radii,
              double smooth_bandwidth) {
  check_radii(radii, 3);
  PcfResult result;
  result.radii = radii;
  result.k_values = ripley_k(pattern, radii);
  if (smooth_bandwidth > 0.0) {
    std::vector<double> smoothed(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
      double acc = 0.0;
      std::size_t count = 0;
      for (std::size_t k = 0; k < radii.size(); ++k) {
        if (std::abs(radii[k] - radii[i]) <= smooth_bandwidth) {
          acc += result.k_values[k];
          ++count;
        }
      }
      smoothed[i] = acc / static_cast<double>(count);
    }
    result.j_values = pcf_from_k(radii, smoothed);
  } else {
    result.j_values = pcf_from_k(radii, result.k_values);
  }
  return result;
}

std::pair<double, double> hpd(std::vector<double> samples, double level) {
  if (samples.size() < 100) throw std::invalid_argument("hpd: need at least 100 samples");
  if (!(level > 0.0) || !(level < 1.0))
    throw std::invalid_argument("hpd: level must be in (0,1)");
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  const std::size_t k = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::ceil(level * static_cast<double>(n))));
  std::size_t best = 0;
  double best_width = samples[k - 1] - samples[0];
  for (std::size_t i = 1; i + k <= n; ++i) {
    const double width = samples[i + k - 1] - samples[i];
    if (width < best_width) {
      best_width = width;
      best = i;
    }
  }
  return {samples[best], samples[best + k - 1]};
}

TraceSummary trace_summary(const ChainOutput& output, double level) {
  if (output.samples.empty()) throw std::invalid_argument("trace_summary: empty samples");
  TraceSummary summary;
  summary.acceptance = output.acceptance;

  const std::size_t n = output.samples.size();
  const char* names[5] = {"alpha", "omega", "kappa", "theta1", "theta2"};
  for (int p = 0; p < 5; ++p) {
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
      const ParamSample& s = output.samples[i];
      values[i] = (p == 0 ? s.alpha : p == 1 ? s.omega : p == 2 ? s.kappa
                                          : p == 3 ? s.theta1 : s.theta2);
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    const auto interval = hpd(values, level);
    summary.parameters.push_back({names[p], mean, interval.first, interval.second});
  }
  summary.parent_count_trace.reserve(n);
  for (const ParamSample& s : output.samples) summary.parent_count_trace.push_back(s.m);
  return summary;
}

}  // namespace nscp
