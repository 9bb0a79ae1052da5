#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <variant>
#include <vector>

#include "tampkit/geometry/pose2.hpp"

namespace tampkit::geometry {

struct Circle {
  double radius = 0.0;
};

// Convex polygon, counter-clockwise vertex order, local frame.
struct ConvexPolygon {
  std::vector<Eigen::Vector2d> vertices;
};

struct Shape {
  std::variant<Circle, ConvexPolygon> geom;

  bool is_circle() const { return std::holds_alternative<Circle>(geom); }
  const Circle& circle() const { return std::get<Circle>(geom); }
  const ConvexPolygon& polygon() const { return std::get<ConvexPolygon>(geom); }

  static Shape make_circle(double radius);
  static Shape make_polygon(std::vector<Eigen::Vector2d> vertices);
  // Axis-aligned box of full extents (w, h) centered at the local origin.
  static Shape make_box(double w, double h);
  // Stadium along local +x from (0,0) to (length,0), approximated by a
  // convex 10-gon. Used for arm link collision geometry.
  static Shape make_capsule(double length, double halfwidth);
};

// Signed area * 2 (positive for CCW order).
double polygon_area2(const ConvexPolygon& poly);

// Throws std::invalid_argument if the shape violates its invariants
// (polygon must be convex, CCW, >= 3 vertices, non-degenerate).
void validate_shape(const Shape& shape);

// Conservative local-frame bounding radius around the origin.
double bounding_radius(const Shape& shape);

// Local axis-aligned bounds.
struct Aabb {
  double xmin, ymin, xmax, ymax;
};
Aabb local_aabb(const Shape& shape);
Aabb world_aabb(const Shape& shape, const Pose2& pose);

// True iff the shapes intersect or their boundaries come within the
// contact margin (1e-6 m). Separating-axis test for polygon pairs,
// closed form for circles.
bool collide(const Shape& a, const Pose2& pa, const Shape& b, const Pose2& pb);

inline constexpr double kContactMargin = 1e-6;

// Grasp ports: end-effector poses on the shape perimeter, expressed in the
// shape's local frame. The port's theta is the inward normal (the approach
// direction of the gripper). Ports sit at fixed perimeter fractions
// (k + 0.5)/count, so boxes get two ports per edge.
std::vector<Pose2> grasp_ports(const Shape& shape, int count = 8);

}  // namespace tampkit::geometry
