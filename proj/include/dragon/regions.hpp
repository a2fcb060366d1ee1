#pragma once

// Certificate regions: the anchor points z0, p1, p2, p3, q, the polygons
// A_m, A~_m, B, S, S', S'', W, T, T' and truncations of the infinite union C.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "dragon/geometry.hpp"
#include "dragon/ifs.hpp"

namespace dragon {

/// Raised when two independent computations of the same point disagree.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A polygon construction failed; the message carries the region name.
class RegionError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

namespace detail {
inline void require_region_range(double xi) {
  if (!(xi > 0.0 && xi <= std::numbers::pi / 4.0))
    throw RangeError("regions need 0 < xi <= pi/4, got " + std::to_string(xi));
}

inline double rel_gap(Point a, Point b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}
}  // namespace detail

struct AnchorPoints {
  Point z0;
  Point p1;
  Point p2;
  Point p3;
  Point q;
};

/// Closed forms, cross-checked against the line constructions.
inline AnchorPoints anchors(const ModelParams& p, double check_tol = 1e-10) {
  detail::require_region_range(p.xi);
  const Point a = p.alpha;
  const Point ab = std::conj(a);
  const double a2 = p.alpha_abs2();
  const double a4 = a2 * a2;

  AnchorPoints out;
  out.z0 = a / (1.0 - a4);
  out.q = -(ab / a) * out.z0;
  out.p1 = (a - ab * a2) * out.z0;
  out.p2 = -a2 * out.z0;
  out.p3 = (ab - a * a2) * out.z0;

  const Point z0 = out.z0;
  const Similarity m1 = f1(p);
  const Point f1z = m1(z0), f11z = m1(f1z), f111z = m1(f11z);
  const Point rot = std::polar(1.0, p.xi);

  auto meet = [](const DirectedLine& l1, const DirectedLine& l2, const char* what) {
    const auto hit = line_intersection(l1, l2);
    if (!hit) throw ConsistencyError(std::string("parallel construction lines for ") + what);
    return *hit;
  };
  const Point p1c = meet(DirectedLine(f1z, z0), DirectedLine(f111z, f11z), "p1");
  const Point p2c = meet(DirectedLine(f111z, f11z), DirectedLine(z0, 0.0), "p2");
  const Point p3c = meet(DirectedLine(p2c, p2c + rot * (z0 - p2c)),
                         DirectedLine(z0, z0 + std::conj(rot) * (p2c - z0)), "p3");
  const Point qc = meet(DirectedLine(0.0, std::polar(1.0, -p.theta) * z0),
                        DirectedLine(z0, z0 - rot * z0), "q");

  const struct {
    const char* name;
    Point closed, built;
  } checks[] = {{"p1", out.p1, p1c}, {"p2", out.p2, p2c}, {"p3", out.p3, p3c}, {"q", out.q, qc}};
  for (const auto& c : checks)
    if (detail::rel_gap(c.closed, c.built) > check_tol)
      throw ConsistencyError(std::string("anchor ") + c.name +
                             ": closed form and construction disagree");
  return out;
}

/// A polygon with its name and one symbolic label per vertex.
struct Region {
  std::string name;
  ConvexPolygon polygon;
  std::vector<std::string> labels;
};

inline Region make_region(std::string name, std::vector<Point> vertices,
                          std::vector<std::string> labels, double tol = default_tolerance()) {
  try {
    ConvexPolygon poly = make_polygon(vertices, tol);
    return Region{std::move(name), std::move(poly), std::move(labels)};
  } catch (const GeometryError& e) {
    throw RegionError("region " + name + ": " + e.what());
  }
}

/// Image of a region under a similarity; labels become "prefix(label)".
inline Region map_region(const Region& r, const Similarity& f, const std::string& prefix,
                         std::string name) {
  std::vector<std::string> labels;
  labels.reserve(r.labels.size());
  for (const auto& l : r.labels) labels.push_back(prefix + "(" + l + ")");
  return Region{std::move(name), r.polygon.mapped(f), std::move(labels)};
}

struct RegionSet {
  AnchorPoints anchors;
  Region A1;
  Region A1_tilde;
  Region B;
  Region S;
  Region Sp;
  Region Spp;
  Region W;
  Region T;
  Region Tp;

  std::vector<const Region*> all() const {
    return {&A1, &A1_tilde, &B, &S, &Sp, &Spp, &W, &T, &Tp};
  }
};

inline Region region_A1(const ModelParams& p, Point z0) {
  return make_region("A1",
                     {z0, f1(p)(z0), map_of_word(p, "112")(z0), map_of_word(p, "12")(z0)},
                     {"z0", "f1(z0)", "f112(z0)", "f12(z0)"});
}

inline Region region_B(const ModelParams& p, Point z0) {
  return make_region("B",
                     {z0, map_of_word(p, "12")(z0), f2(p)(z0), map_of_word(p, "212")(z0),
                      map_of_word(p, "221")(z0)},
                     {"z0", "f12(z0)", "f2(z0)", "f212(z0)", "f221(z0)"});
}

inline RegionSet build_regions(const ModelParams& p) {
  const AnchorPoints an = anchors(p);
  const Point z0 = an.z0;
  const Similarity m1 = f1(p);
  const Point f1z = m1(z0), f11z = m1(f1z);
  const AntiSimilarity r = reflect_r(p);
  const Similarity t = tau(p);
  const Similarity s = psi(p);

  return RegionSet{
      an,
      region_A1(p, z0),
      make_region("A1~", {0.0, z0, f1z}, {"0", "z0", "f1(z0)"}),
      region_B(p, z0),
      make_region("S", {z0, an.p1, an.p2, an.p3}, {"z0", "p1", "p2", "p3"}),
      make_region("S'", {z0, f1z, f11z, an.p2, an.p3}, {"z0", "f1(z0)", "f11(z0)", "p2", "p3"}),
      make_region("S''", {z0, f1z, f11z, an.p2, r(f11z), r(f1z)},
                  {"z0", "f1(z0)", "f11(z0)", "p2", "R(f11(z0))", "R(f1(z0))"}),
      make_region("W", {0.0, z0, an.q}, {"0", "z0", "q"}),
      make_region("T", {an.p1, an.p2, t(an.p3), t(z0)}, {"p1", "p2", "tau(p3)", "tau(z0)"}),
      make_region("T'", {an.p1, an.p2, s(an.p2), s(an.p3)}, {"p1", "p2", "psi(p2)", "psi(p3)"}),
  };
}

namespace detail {
inline std::string power_prefix(int e) {
  if (e == 1) return "f1";
  return "f1^" + std::to_string(e);
}
inline Region power_image(const ModelParams& p, const Region& base, int m, std::string name) {
  if (m == 1) {
    Region r = base;
    r.name = std::move(name);
    return r;
  }
  return map_region(base, f1_power(p, m - 1), power_prefix(m - 1), std::move(name));
}
}  // namespace detail

/// A_m = f1^{m-1}(A_1); m <= 0 goes through the inverse of f1.
inline Region region_A(const ModelParams& p, int m) {
  detail::require_region_range(p.xi);
  const Point z0 = fixed_point(p, "2211");
  return detail::power_image(p, region_A1(p, z0), m, "A" + std::to_string(m));
}

inline Region region_A_tilde(const ModelParams& p, int m) {
  detail::require_region_range(p.xi);
  const Point z0 = fixed_point(p, "2211");
  const Region base = make_region("A1~", {0.0, z0, f1(p)(z0)}, {"0", "z0", "f1(z0)"});
  return detail::power_image(p, base, m, "A" + std::to_string(m) + "~");
}

/// A finite sub-union of C, piece by piece.
struct TruncatedC {
  ModelParams params;
  int depth = 0;
  std::vector<Region> pieces;
};

namespace detail {
inline TruncatedC assemble(const ModelParams& p, int n_a, int n_f2a, int depth) {
  require_region_range(p.xi);
  const Point z0 = fixed_point(p, "2211");
  const Similarity m2 = f2(p);
  TruncatedC c{p, depth, {}};
  c.pieces.reserve(static_cast<std::size_t>(n_a + 1 + n_f2a));
  const Region a1 = region_A1(p, z0);
  std::vector<Region> as;
  for (int n = 1; n <= std::max(n_a, n_f2a); ++n)
    as.push_back(power_image(p, a1, n, "A" + std::to_string(n)));
  for (int n = 0; n < n_a; ++n) c.pieces.push_back(as[n]);
  c.pieces.push_back(region_B(p, z0));
  for (int n = 0; n < n_f2a; ++n)
    c.pieces.push_back(map_region(as[n], m2, "f2", "f2(A" + std::to_string(n + 1) + ")"));
  return c;
}
}  // namespace detail

/// A_1..A_{n_max}, B, f2(A_1)..f2(A_{n_max}).
inline TruncatedC build_truncation(const ModelParams& p, int n_max = 40) {
  if (n_max < 2) throw std::invalid_argument("truncation depth must be at least 2");
  return detail::assemble(p, n_max, n_max, n_max);
}

/// C_k = A_1..A_{k-1}, B, f2(A_1)..f2(A_{k-2}).
inline TruncatedC build_Ck(const ModelParams& p, int k) {
  if (k < 2) throw std::invalid_argument("C_k needs k >= 2, got " + std::to_string(k));
  return detail::assemble(p, k - 1, k - 2, k);
}

inline bool contains_point_union(const TruncatedC& c, Point z, double tol = default_tolerance()) {
  for (const auto& r : c.pieces)
    if (contains_point(r.polygon, z, tol)) return true;
  return false;
}

/// Every piece mapped by f, named "prefix(piece)".
inline std::vector<Region> map_pieces(const TruncatedC& c, const Similarity& f,
                                      const std::string& prefix) {
  std::vector<Region> out;
  out.reserve(c.pieces.size());
  for (const auto& r : c.pieces) out.push_back(map_region(r, f, prefix, prefix + "(" + r.name + ")"));
  return out;
}

}  // namespace dragon
