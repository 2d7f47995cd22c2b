#include "nscp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nscp {

namespace {

double shoelace_area(const std::vector<Point>& v) {
  double twice = 0.0;
  const std::size_t k = v.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % k];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * std::abs(twice);
}

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Point& p, const Point& a, const Point& b, double eps) {
  if (std::abs(cross(a, b, p)) > eps) return false;
  return p.x >= std::min(a.x, b.x) - eps && p.x <= std::max(a.x, b.x) + eps &&
         p.y >= std::min(a.y, b.y) - eps && p.y <= std::max(a.y, b.y) + eps;
}

// Proper or improper intersection of closed segments [a,b] and [c,d].
bool segments_intersect(const Point& a, const Point& b, const Point& c, const Point& d,
                        double eps) {
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  if (((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
      ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps)))
    return true;
  if (on_segment(a, c, d, eps) || on_segment(b, c, d, eps) || on_segment(c, a, b, eps) ||
      on_segment(d, a, b, eps))
    return true;
  return false;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

Window Window::rectangle(double x_min, double x_max, double y_min, double y_max) {
  if (!(x_min < x_max) || !(y_min < y_max))
    throw std::invalid_argument("Window::rectangle: bounds must be ordered with positive extent");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) ||
      !std::isfinite(y_max))
    throw std::invalid_argument("Window::rectangle: bounds must be finite");
  Window w;
  w.shape_ = Shape::Rectangle;
  w.bbox_ = {x_min, x_max, y_min, y_max};
  w.area_ = (x_max - x_min) * (y_max - y_min);
  return w;
}

Window Window::polygon(std::vector<Point> vertices) {
  const std::size_t k = vertices.size();
  if (k < 3) throw std::invalid_argument("Window::polygon: need at least 3 vertices");
  for (const Point& p : vertices)
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::invalid_argument("Window::polygon: vertices must be finite");

  double x_min = vertices[0].x, x_max = vertices[0].x;
  double y_min = vertices[0].y, y_max = vertices[0].y;
  for (const Point& p : vertices) {
    x_min = std::min(x_min, p.x);
    x_max = std::max(x_max, p.x);
    y_min = std::min(y_min, p.y);
    y_max = std::max(y_max, p.y);
  }
  const double scale = std::max({x_max - x_min, y_max - y_min, 1e-12});
  const double eps = 1e-12 * scale * scale;

  // Non-adjacent edge pairs must not intersect.
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == k - 1);
      if (adjacent) continue;
      if (segments_intersect(vertices[i], vertices[(i + 1) % k], vertices[j],
                             vertices[(j + 1) % k], eps))
        throw std::invalid_argument("Window::polygon: polygon is self-intersecting");
    }
  }

  const double area = shoelace_area(vertices);
  if (!(area > 0.0)) throw std::invalid_argument("Window::polygon: degenerate polygon, area 0");

  Window w;
  w.shape_ = Shape::Polygon;
  w.vertices_ = std::move(vertices);
  w.bbox_ = {x_min, x_max, y_min, y_max};
  w.area_ = area;
  return w;
}

bool Window::contains(const Point& p) const {
  if (p.x < bbox_.x_min || p.x > bbox_.x_max || p.y < bbox_.y_min || p.y > bbox_.y_max)
    return false;
  if (shape_ == Shape::Rectangle) return true;

  const std::size_t k = vertices_.size();
  const double scale = std::max(bbox_.width(), bbox_.height());
  const double eps = 1e-12 * scale * scale;
  for (std::size_t i = 0; i < k; ++i) {
    if (on_segment(p, vertices_[i], vertices_[(i + 1) % k], eps)) return true;
  }
  // Even-odd ray cast along +x.
  bool inside = false;
  for (std::size_t i = 0, j = k - 1; i < k; j = i++) {
    const Point& a = vertices_[i];
    const Point& b = vertices_[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

Point Window::sample_uniform(Rng& rng) const {
  if (shape_ == Shape::Rectangle)
    return {rng.uniform(bbox_.x_min, bbox_.x_max), rng.uniform(bbox_.y_min, bbox_.y_max)};
  while (true) {
    Point p{rng.uniform(bbox_.x_min, bbox_.x_max), rng.uniform(bbox_.y_min, bbox_.y_max)};
    if (contains(p)) return p;
  }
}

void Window::set_mass_resolution(int cells_per_axis) {
  if (cells_per_axis < 2)
    throw std::invalid_argument("Window::set_mass_resolution: need at least 2 cells per axis");
  mass_resolution_ = cells_per_axis;
}

double Window::gaussian_mass(const Point& center, double omega) const {
  if (!(omega > 0.0)) throw std::invalid_argument("Window::gaussian_mass: omega must be > 0");

  if (shape_ == Shape::Rectangle) {
    const double px = normal_cdf((bbox_.x_max - center.x) / omega) -
                      normal_cdf((bbox_.x_min - center.x) / omega);
    const double py = normal_cdf((bbox_.y_max - center.y) / omega) -
                      normal_cdf((bbox_.y_min - center.y) / omega);
    return std::clamp(px * py, 0.0, 1.0);
  }

  // Clip the quadrature region to +-8 omega around the center; the mass
  // beyond that is below 1e-14 and the tighter box sharpens the grid.
  const double reach = 8.0 * omega;
  const double x_lo = std::max(bbox_.x_min, center.x - reach);
  const double x_hi = std::min(bbox_.x_max, center.x + reach);
  const double y_lo = std::max(bbox_.y_min, center.y - reach);
  const double y_hi = std::min(bbox_.y_max, center.y + reach);
  if (!(x_lo < x_hi) || !(y_lo < y_hi)) return 0.0;

  const int n = mass_resolution_;
  const double hx = (x_hi - x_lo) / n;
  const double hy = (y_hi - y_lo) / n;
  const double inv_two_omega_sq = 1.0 / (2.0 * omega * omega);
  const double norm = hx * hy / (2.0 * M_PI * omega * omega);

  double sum = 0.0;
  for (int iy = 0; iy < n; ++iy) {
    const double y = y_lo + (iy + 0.5) * hy;
    const double dy = y - center.y;
    double row = 0.0;
    for (int ix = 0; ix < n; ++ix) {
      const double x = x_lo + (ix + 0.5) * hx;
      const double dx = x - center.x;
      if (!contains({x, y})) continue;
      row += std::exp(-(dx * dx + dy * dy) * inv_two_omega_sq);
    }
    sum += row;
  }
  return std::clamp(sum * norm, 0.0, 1.0);
}

bool Window::operator==(const Window& other) const {
  if (shape_ != other.shape_) return false;
  if (shape_ == Shape::Rectangle)
    return bbox_.x_min == other.bbox_.x_min && bbox_.x_max == other.bbox_.x_max &&
           bbox_.y_min == other.bbox_.y_min && bbox_.y_max == other.bbox_.y_max;
  if (vertices_.size() != other.vertices_.size()) return false;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].x != other.vertices_[i].x || vertices_[i].y != other.vertices_[i].y)
      return false;
  return true;
}

PointPattern::PointPattern(std::vector<Point> points, Window window)
    : points_(std::move(points)), window_(std::move(window)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!window_.contains(points_[i]))
      throw std::invalid_argument("PointPattern: point " + std::to_string(i) +
                                  " lies outside the window");
  }
}

}  // namespace nscp
