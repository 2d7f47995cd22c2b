#pragma once

#include <vector>

#include "nscp/rng.hpp"

namespace nscp {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

struct BoundingBox {
  double x_min, x_max, y_min, y_max;
  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

/// Bounded observation domain S: an axis-aligned rectangle or a simple
/// polygon, in projected meters. Immutable after construction and safe to
/// share across threads.
class Window {
 public:
  enum class Shape { Rectangle, Polygon };

  static Window rectangle(double x_min, double x_max, double y_min, double y_max);

  /// Closed simple polygon; the last vertex must not repeat the first.
  static Window polygon(std::vector<Point> vertices);

  Shape shape() const { return shape_; }
  double area() const { return area_; }
  const BoundingBox& bounding_box() const { return bbox_; }
  const std::vector<Point>& vertices() const { return vertices_; }

  /// Closed-region membership; boundary points count as inside.
  bool contains(const Point& p) const;

  /// Exact uniform draw over the window (rejection from the bounding box
  /// for polygons).
  Point sample_uniform(Rng& rng) const;

  /// Mass of an isotropic Gaussian density N(center, omega^2 I) restricted
  /// to the window. Rectangles use the closed form; polygons use masked
  /// midpoint quadrature at `mass_resolution` cells per axis over the
  /// bounding box clipped to the kernel's effective support.
  double gaussian_mass(const Point& center, double omega) const;

  int mass_resolution() const { return mass_resolution_; }
  void set_mass_resolution(int cells_per_axis);

  bool operator==(const Window& other) const;

 private:
  Window() = default;

  Shape shape_ = Shape::Rectangle;
  BoundingBox bbox_{0, 0, 0, 0};
  std::vector<Point> vertices_;  // empty for rectangles
  double area_ = 0.0;
  int mass_resolution_ = 256;
};

/// A finite planar point set together with its observation window. Holds
/// both offspring patterns X and parent configurations C.
class PointPattern {
 public:
  PointPattern(std::vector<Point> points, Window window);

  const std::vector<Point>& points() const { return points_; }
  const Window& window() const { return window_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }

 private:
  std::vector<Point> points_;
  Window window_;
};

}  // namespace nscp
