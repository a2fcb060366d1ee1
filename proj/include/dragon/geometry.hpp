#pragma once

// Planar primitives over the complex plane: signed angles, directed lines and
// half-planes, segments, strictly convex polygons and a tolerance-aware
// segment intersection.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dragon {

using Point = std::complex<double>;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class ConvexityError : public GeometryError {
 public:
  ConvexityError(const std::string& what, std::size_t index)
      : GeometryError(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

namespace detail {
inline double& tolerance_slot() {
  static double tol = 1e-9;
  return tol;
}
}  // namespace detail

/// Relative tolerance used when callers do not pass one explicitly.
inline double default_tolerance() { return detail::tolerance_slot(); }

inline void set_default_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw std::invalid_argument("tolerance must be positive and finite");
  detail::tolerance_slot() = tol;
}

inline bool is_finite(Point z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline Point checked_point(Point z) {
  if (!is_finite(z)) throw GeometryError("non-finite coordinate");
  return z;
}

/// Im(conj(u) * v): twice the signed area of (0, u, v).
inline double cross(Point u, Point v) {
  return u.real() * v.imag() - u.imag() * v.real();
}

inline double dot(Point u, Point v) {
  return u.real() * v.real() + u.imag() * v.imag();
}

/// arg((c - b) / (a - b)) normalized to (-pi, pi].
///
/// Near-collinear triples (|sin| within tol) snap to exactly 0 or pi so that
/// "lies on the line" decisions are stable under rounding.
inline double angle(Point a, Point b, Point c, double tol = default_tolerance()) {
  const Point u = a - b;
  const Point v = c - b;
  const double nu = std::abs(u);
  const double nv = std::abs(v);
  const double scale = std::max(nu, nv);
  if (!(nu > tol * scale) || !(nv > tol * scale))
    throw DegenerateError("angle: coincident vertex");
  const double cr = cross(u, v);
  const double dt = dot(u, v);
  if (std::abs(cr) <= tol * nu * nv) return dt < 0.0 ? std::numbers::pi : 0.0;
  return std::atan2(cr, dt);
}

class DirectedLine {
 public:
  DirectedLine(Point a, Point b) : a_(checked_point(a)), b_(checked_point(b)) {
    if (a_ == b_) throw DegenerateError("directed line needs two distinct points");
  }
  Point a() const { return a_; }
  Point b() const { return b_; }
  Point direction() const { return b_ - a_; }

  /// Signed perpendicular distance; positive on the left.
  double signed_distance(Point z) const {
    return cross(b_ - a_, z - a_) / std::abs(b_ - a_);
  }

 private:
  Point a_;
  Point b_;
};

enum class Side { inside, boundary, outside };
enum class HalfPlaneSide { left, right };

struct HalfPlane {
  DirectedLine line;
  HalfPlaneSide side = HalfPlaneSide::left;
  bool closed = true;
};

inline Side side(const HalfPlane& hp, Point z, double tol = default_tolerance()) {
  const double scale = std::max(std::abs(hp.line.direction()), std::abs(z - hp.line.a()));
  double d = hp.line.signed_distance(z);
  if (hp.side == HalfPlaneSide::right) d = -d;
  if (std::abs(d) <= tol * scale) return Side::boundary;
  return d > 0.0 ? Side::inside : Side::outside;
}

inline bool contains(const HalfPlane& hp, Point z, double tol = default_tolerance()) {
  const Side s = side(hp, z, tol);
  return s == Side::inside || (hp.closed && s == Side::boundary);
}

inline double dist_point_line(Point p, const DirectedLine& l) {
  return std::abs(l.signed_distance(p));
}

/// Intersection point of two lines, or nullopt when they are parallel.
inline std::optional<Point> line_intersection(const DirectedLine& l1, const DirectedLine& l2) {
  const Point d1 = l1.direction();
  const Point d2 = l2.direction();
  const double denom = cross(d1, d2);
  if (denom == 0.0) return std::nullopt;
  const double u = cross(l2.a() - l1.a(), d2) / denom;
  return l1.a() + u * d1;
}

class Segment {
 public:
  Segment(Point a, Point b, double tol = default_tolerance())
      : a_(checked_point(a)), b_(checked_point(b)) {
    if (!(std::abs(b_ - a_) > tol * std::max(std::abs(a_), std::abs(b_))))
      throw DegenerateError("degenerate segment");
  }
  Point a() const { return a_; }
  Point b() const { return b_; }
  double length() const { return std::abs(b_ - a_); }

 private:
  Point a_;
  Point b_;
};

/// Closest point of segment [a, b] to p.
inline Point closest_on_segment(Point p, Point a, Point b) {
  const Point d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return a;
  const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
  return a + t * d;
}

inline double dist_point_segment(Point p, const Segment& s) {
  return std::abs(p - closest_on_segment(p, s.a(), s.b()));
}

namespace detail {
inline bool proper_or_touching_cross(Point a, Point b, Point c, Point d) {
  const double o1 = cross(b - a, c - a);
  const double o2 = cross(b - a, d - a);
  const double o3 = cross(d - c, a - c);
  const double o4 = cross(d - c, b - c);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) &&
      ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0)))
    return true;
  return false;
}
}  // namespace detail

/// Euclidean distance between two closed segments.
inline double segment_distance(const Segment& s, const Segment& t) {
  if (detail::proper_or_touching_cross(s.a(), s.b(), t.a(), t.b())) return 0.0;
  return std::min({dist_point_segment(s.a(), t), dist_point_segment(s.b(), t),
                   dist_point_segment(t.a(), s), dist_point_segment(t.b(), s)});
}

using SegmentIntersection = std::variant<std::monostate, Point, Segment>;

/// Two segments meet when their distance is at most tol * max(|s|, |t|).
/// Transversal crossings report the exact crossing point, collinear overlaps
/// longer than that band report the shared piece, and everything else inside
/// the band (endpoint touches, near misses) reports the midpoint of the
/// closest pair.
inline SegmentIntersection segment_intersection(const Segment& s, const Segment& t,
                                                double tol = default_tolerance()) {
  const double eps = tol * std::max(s.length(), t.length());
  {
    const auto [sx0, sx1] = std::minmax({s.a().real(), s.b().real()});
    const auto [tx0, tx1] = std::minmax({t.a().real(), t.b().real()});
    if (sx0 > tx1 + eps || tx0 > sx1 + eps) return std::monostate{};
    const auto [sy0, sy1] = std::minmax({s.a().imag(), s.b().imag()});
    const auto [ty0, ty1] = std::minmax({t.a().imag(), t.b().imag()});
    if (sy0 > ty1 + eps || ty0 > sy1 + eps) return std::monostate{};
  }

  const Point d1 = s.b() - s.a();
  const Point d2 = t.b() - t.a();
  const Point w = t.a() - s.a();
  const double denom = cross(d1, d2);
  const double n1 = std::abs(d1);
  const double n2 = std::abs(d2);

  if (std::abs(denom) > tol * n1 * n2) {
    const double u = cross(w, d2) / denom;
    const double v = cross(w, d1) / denom;
    if (u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0) return s.a() + u * d1;
  } else {
    const DirectedLine ls(s.a(), s.b());
    if (dist_point_line(t.a(), ls) <= eps && dist_point_line(t.b(), ls) <= eps) {
      const double n1sq = n1 * n1;
      const double ta = dot(t.a() - s.a(), d1) / n1sq;
      const double tb = dot(t.b() - s.a(), d1) / n1sq;
      const double lo = std::max(0.0, std::min(ta, tb));
      const double hi = std::min(1.0, std::max(ta, tb));
      if ((hi - lo) * n1 > eps) return Segment(s.a() + lo * d1, s.a() + hi * d1, 0.0);
    }
  }

  // Closest endpoint-to-segment pair.
  const std::array<std::pair<Point, Point>, 4> candidates{{
      {s.a(), closest_on_segment(s.a(), t.a(), t.b())},
      {s.b(), closest_on_segment(s.b(), t.a(), t.b())},
      {t.a(), closest_on_segment(t.a(), s.a(), s.b())},
      {t.b(), closest_on_segment(t.b(), s.a(), s.b())},
  }};
  double best = std::numeric_limits<double>::infinity();
  Point where{};
  for (const auto& [p, q] : candidates) {
    const double d = std::abs(p - q);
    if (d < best) {
      best = d;
      where = 0.5 * (p + q);
    }
  }
  if (best <= eps) return where;
  return std::monostate{};
}

enum class PolygonBuild { strict, collapse_close_vertices };

/// Strictly convex polygon P(v_1..v_N): the intersection of the closed left
/// half-planes of L(v_{n+1}, v_n). Valid vertex lists satisfy
/// 0 < angle(v_{n-1}, v_n, v_{n+1}) < pi at every vertex, which is clockwise
/// traversal in the usual y-up picture.
class ConvexPolygon {
 public:
  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Point operator[](std::size_t i) const { return vertices_[i]; }

  /// Largest pairwise vertex distance.
  double diameter() const { return diameter_; }

  /// Largest vertex modulus; sets the floor of representable detail.
  double coordinate_scale() const { return coord_scale_; }

  /// Interior angle at vertex i.
  double interior_angle(std::size_t i) const {
    const std::size_t n = vertices_.size();
    return angle(vertices_[(i + n - 1) % n], vertices_[i], vertices_[(i + 1) % n]);
  }

  /// min over edges of the signed distance to the edge line, positive inside.
  double depth(Point z) const {
    const std::size_t n = vertices_.size();
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = vertices_[(i + 1) % n];
      const Point b = vertices_[i];
      d = std::min(d, cross(b - a, z - a) / std::abs(b - a));
    }
    return d;
  }

  template <class F>
  ConvexPolygon mapped(F&& f) const {
    ConvexPolygon out;
    out.vertices_.reserve(vertices_.size());
    for (Point v : vertices_) out.vertices_.push_back(f(v));
    out.refresh();
    return out;
  }

  friend ConvexPolygon make_polygon(std::span<const Point> vertices, double tol,
                                    PolygonBuild mode);

 private:
  ConvexPolygon() = default;

  void refresh() {
    diameter_ = 0.0;
    coord_scale_ = 0.0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
      coord_scale_ = std::max(coord_scale_, std::abs(vertices_[i]));
      for (std::size_t j = i + 1; j < vertices_.size(); ++j)
        diameter_ = std::max(diameter_, std::abs(vertices_[i] - vertices_[j]));
    }
  }

  std::vector<Point> vertices_;
  double diameter_ = 0.0;
  double coord_scale_ = 0.0;
};

inline ConvexPolygon make_polygon(std::span<const Point> vertices,
                                  double tol = default_tolerance(),
                                  PolygonBuild mode = PolygonBuild::strict) {
  std::vector<Point> v;
  v.reserve(vertices.size());
  for (Point p : vertices) v.push_back(checked_point(p));

  if (mode == PolygonBuild::collapse_close_vertices && v.size() > 1) {
    double scale = 0.0;
    for (Point p : v)
      for (Point q : v) scale = std::max(scale, std::abs(p - q));
    std::vector<Point> merged;
    for (Point p : v)
      if (merged.empty() || std::abs(p - merged.back()) > tol * scale) merged.push_back(p);
    while (merged.size() > 1 && std::abs(merged.front() - merged.back()) <= tol * scale)
      merged.pop_back();
    v = std::move(merged);
  }

  const std::size_t n = v.size();
  if (n < 3) throw ConvexityError("polygon needs at least 3 vertices", 0);
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double a = 0.0;
    try {
      a = angle(v[(i + n - 1) % n], v[i], v[(i + 1) % n], tol);
    } catch (const DegenerateError&) {
      throw ConvexityError("coincident vertices at index " + std::to_string(i), i);
    }
    if (!(a > 0.0 && a < std::numbers::pi))
      throw ConvexityError("non-convex or misordered vertex at index " + std::to_string(i), i);
    turning += std::numbers::pi - a;
  }
  if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6)
    throw ConvexityError("vertex list winds more than once", 0);

  ConvexPolygon poly;
  poly.vertices_ = std::move(v);
  poly.refresh();
  return poly;
}

inline ConvexPolygon make_polygon(std::initializer_list<Point> vertices,
                                  double tol = default_tolerance(),
                                  PolygonBuild mode = PolygonBuild::strict) {
  return make_polygon(std::span<const Point>(vertices.begin(), vertices.size()), tol, mode);
}

/// Depth of z in p in units of p's diameter, shifted by tol; non-negative
/// means inside at that tolerance. A few ulps of the coordinates are added
/// to the depth so that rounding never decides membership for polygons much
/// smaller than their distance from the origin.
inline double membership_slack(const ConvexPolygon& p, Point z, double tol = default_tolerance()) {
  constexpr double kUlps = 64.0 * std::numeric_limits<double>::epsilon();
  const double floor = kUlps * std::max(p.coordinate_scale(), std::abs(z));
  return (p.depth(z) + floor) / p.diameter() + tol;
}

inline bool contains_point(const ConvexPolygon& p, Point z, double tol = default_tolerance()) {
  return membership_slack(p, z, tol) >= 0.0;
}

inline bool contains_polygon(const ConvexPolygon& outer, const ConvexPolygon& inner,
                             double tol = default_tolerance()) {
  return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                     [&](Point z) { return contains_point(outer, z, tol); });
}

/// Distance between two convex polygons; zero when they meet.
inline double polygon_distance(const ConvexPolygon& p, const ConvexPolygon& q) {
  for (Point z : p.vertices())
    if (q.depth(z) >= 0.0) return 0.0;
  for (Point z : q.vertices())
    if (p.depth(z) >= 0.0) return 0.0;
  const std::size_t np = p.size();
  const std::size_t nq = q.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < np; ++i) {
    const Point a = p[i], b = p[(i + 1) % np];
    for (std::size_t j = 0; j < nq; ++j) {
      const Point c = q[j], d = q[(j + 1) % nq];
      if (detail::proper_or_touching_cross(a, b, c, d)) return 0.0;
      best = std::min({best, std::abs(a - closest_on_segment(a, c, d)),
                       std::abs(c - closest_on_segment(c, a, b))});
    }
  }
  return best;
}

/// Distance from z to a convex polygon (zero inside).
inline double dist_point_polygon(Point z, const ConvexPolygon& p) {
  if (p.depth(z) >= 0.0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i)
    best = std::min(best, std::abs(z - closest_on_segment(z, p[i], p[(i + 1) % n])));
  return best;
}

}  // namespace dragon
