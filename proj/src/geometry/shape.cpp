#include "tampkit/geometry/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tampkit::geometry {

Shape Shape::make_circle(double radius) {
  Shape s{Circle{radius}};
  validate_shape(s);
  return s;
}

Shape Shape::make_polygon(std::vector<Eigen::Vector2d> vertices) {
  Shape s{ConvexPolygon{std::move(vertices)}};
  validate_shape(s);
  return s;
}

Shape Shape::make_box(double w, double h) {
  const double hw = w / 2.0, hh = h / 2.0;
  return make_polygon({{-hw, -hh}, {hw, -hh}, {hw, hh}, {-hw, hh}});
}

Shape Shape::make_capsule(double length, double halfwidth) {
  std::vector<Eigen::Vector2d> v;
  const double r = halfwidth;
  // Right cap around (length, 0), then left cap around (0, 0), CCW.
  for (int k = -2; k <= 2; ++k) {
    const double a = k * std::numbers::pi / 4.0;
    v.emplace_back(length + r * std::cos(a), r * std::sin(a));
  }
  for (int k = 2; k <= 6; ++k) {
    const double a = k * std::numbers::pi / 4.0;
    v.emplace_back(r * std::cos(a), r * std::sin(a));
  }
  return make_polygon(std::move(v));
}

double polygon_area2(const ConvexPolygon& poly) {
  double a = 0.0;
  const auto& v = poly.vertices;
  for (size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return a;
}

void validate_shape(const Shape& shape) {
  if (shape.is_circle()) {
    if (!(shape.circle().radius > 0.0))
      throw std::invalid_argument("circle radius must be positive");
    return;
  }
  const auto& v = shape.polygon().vertices;
  if (v.size() < 3) throw std::invalid_argument("polygon needs >= 3 vertices");
  if (v.size() > 16) throw std::invalid_argument("polygon limited to 16 vertices");
  if (polygon_area2(shape.polygon()) <= 1e-12)
    throw std::invalid_argument("polygon must be CCW with positive area");
  for (size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    const auto& c = v[(i + 2) % v.size()];
    const double cross = (b.x() - a.x()) * (c.y() - b.y()) - (b.y() - a.y()) * (c.x() - b.x());
    if (cross < -1e-12) throw std::invalid_argument("polygon must be convex");
  }
}

double bounding_radius(const Shape& shape) {
  if (shape.is_circle()) return shape.circle().radius;
  double r = 0.0;
  for (const auto& v : shape.polygon().vertices) r = std::max(r, v.norm());
  return r;
}

Aabb local_aabb(const Shape& shape) {
  if (shape.is_circle()) {
    const double r = shape.circle().radius;
    return {-r, -r, r, r};
  }
  Aabb b{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
         std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  for (const auto& v : shape.polygon().vertices) {
    b.xmin = std::min(b.xmin, v.x());
    b.ymin = std::min(b.ymin, v.y());
    b.xmax = std::max(b.xmax, v.x());
    b.ymax = std::max(b.ymax, v.y());
  }
  return b;
}

Aabb world_aabb(const Shape& shape, const Pose2& pose) {
  if (shape.is_circle()) {
    const double r = shape.circle().radius;
    return {pose.x - r, pose.y - r, pose.x + r, pose.y + r};
  }
  Aabb b{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
         std::numeric_limits<double>::lowest(), std::numeric_limits<double>::lowest()};
  for (const auto& v : shape.polygon().vertices) {
    const Eigen::Vector2d w = pose.apply(v);
    b.xmin = std::min(b.xmin, w.x());
    b.ymin = std::min(b.ymin, w.y());
    b.xmax = std::max(b.xmax, w.x());
    b.ymax = std::max(b.ymax, w.y());
  }
  return b;
}

namespace {

bool aabb_disjoint(const Aabb& a, const Aabb& b, double margin) {
  return a.xmax + margin < b.xmin || b.xmax + margin < a.xmin ||
         a.ymax + margin < b.ymin || b.ymax + margin < a.ymin;
}

// Stack-allocated world-frame polygon; collision checking is the planner's
// hot path and must not touch the heap.
struct WorldPoly {
  static constexpr size_t kMaxVerts = 16;
  Eigen::Vector2d v[kMaxVerts];
  size_t n = 0;
};

WorldPoly to_world(const ConvexPolygon& poly, const Pose2& pose) {
  WorldPoly w;
  w.n = std::min(poly.vertices.size(), WorldPoly::kMaxVerts);
  const double c = std::cos(pose.theta), s = std::sin(pose.theta);
  for (size_t i = 0; i < w.n; ++i) {
    const auto& p = poly.vertices[i];
    w.v[i] = {pose.x + c * p.x() - s * p.y(), pose.y + s * p.x() + c * p.y()};
  }
  return w;
}

void project(const WorldPoly& poly, const Eigen::Vector2d& axis, double& lo, double& hi) {
  lo = std::numeric_limits<double>::max();
  hi = std::numeric_limits<double>::lowest();
  for (size_t i = 0; i < poly.n; ++i) {
    const double d = axis.dot(poly.v[i]);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
}

// Largest separation over the edge normals of `a`; positive means a gap.
double max_separation(const WorldPoly& a, const WorldPoly& b) {
  double best = std::numeric_limits<double>::lowest();
  for (size_t i = 0; i < a.n; ++i) {
    const Eigen::Vector2d e = a.v[(i + 1) % a.n] - a.v[i];
    const Eigen::Vector2d axis = Eigen::Vector2d(e.y(), -e.x()).normalized();
    double alo, ahi, blo, bhi;
    project(a, axis, alo, ahi);
    project(b, axis, blo, bhi);
    best = std::max(best, std::max(blo - ahi, alo - bhi));
  }
  return best;
}

bool collide_circle_circle(const Circle& a, const Pose2& pa, const Circle& b, const Pose2& pb) {
  const double d = (pa.translation() - pb.translation()).norm();
  return d <= a.radius + b.radius + kContactMargin;
}

bool collide_circle_polygon(const Circle& c, const Pose2& pc, const ConvexPolygon& poly,
                            const Pose2& pp) {
  // Work in the polygon's local frame.
  const Eigen::Vector2d center = inverse(pp).apply(pc.translation());
  const auto& v = poly.vertices;
  double dist_outside = 0.0;
  bool inside = true;
  double min_edge_dist = std::numeric_limits<double>::max();
  for (size_t i = 0; i < v.size(); ++i) {
    const Eigen::Vector2d a = v[i];
    const Eigen::Vector2d b = v[(i + 1) % v.size()];
    const Eigen::Vector2d e = b - a;
    const Eigen::Vector2d n = Eigen::Vector2d(e.y(), -e.x()).normalized();
    const double side = n.dot(center - a);
    if (side > 0.0) inside = false;
    // Closest point on segment.
    const double t = std::clamp((center - a).dot(e) / e.squaredNorm(), 0.0, 1.0);
    min_edge_dist = std::min(min_edge_dist, (center - (a + t * e)).norm());
    dist_outside = std::max(dist_outside, side);
  }
  if (inside) return true;
  return min_edge_dist <= c.radius + kContactMargin;
}

}  // namespace

bool collide(const Shape& a, const Pose2& pa, const Shape& b, const Pose2& pb) {
  if (aabb_disjoint(world_aabb(a, pa), world_aabb(b, pb), kContactMargin)) return false;
  if (a.is_circle() && b.is_circle())
    return collide_circle_circle(a.circle(), pa, b.circle(), pb);
  if (a.is_circle()) return collide_circle_polygon(a.circle(), pa, b.polygon(), pb);
  if (b.is_circle()) return collide_circle_polygon(b.circle(), pb, a.polygon(), pa);
  const WorldPoly wa = to_world(a.polygon(), pa);
  const WorldPoly wb = to_world(b.polygon(), pb);
  const double sep = std::max(max_separation(wa, wb), max_separation(wb, wa));
  return sep <= kContactMargin;
}

std::vector<Pose2> grasp_ports(const Shape& shape, int count) {
  std::vector<Pose2> ports;
  ports.reserve(count);
  if (shape.is_circle()) {
    const double r = shape.circle().radius;
    for (int k = 0; k < count; ++k) {
      const double t = (k + 0.5) / count;
      const double a = 2.0 * std::numbers::pi * t;
      // Inward normal points toward the center.
      ports.push_back({r * std::cos(a), r * std::sin(a), wrap_angle(a + std::numbers::pi)});
    }
    return ports;
  }
  const auto& v = shape.polygon().vertices;
  const size_t n = v.size();
  std::vector<double> edge_len(n);
  double perimeter = 0.0;
  for (size_t i = 0; i < n; ++i) {
    edge_len[i] = (v[(i + 1) % n] - v[i]).norm();
    perimeter += edge_len[i];
  }
  for (int k = 0; k < count; ++k) {
    double s = (k + 0.5) / count * perimeter;
    size_t i = 0;
    while (s > edge_len[i] && i + 1 < n) {
      s -= edge_len[i];
      ++i;
    }
    const Eigen::Vector2d a = v[i];
    const Eigen::Vector2d b = v[(i + 1) % n];
    const Eigen::Vector2d e = (b - a) / edge_len[i];
    const Eigen::Vector2d p = a + std::min(s, edge_len[i]) * e;
    // Outward normal of a CCW edge is (e.y, -e.x); approach is the opposite.
    ports.push_back({p.x(), p.y(), std::atan2(e.x(), -e.y()) + 0.0});
  }
  for (auto& p : ports) p.theta = wrap_angle(p.theta);
  return ports;
}

}  // namespace tampkit::geometry
