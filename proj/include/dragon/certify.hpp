#pragma once

// Open-set-condition certificate at a single fold angle: the inclusion
// f_i(C) in C, the two half-plane conditions near alpha, and a numeric check
// that f1(C) and f2(C) only approach each other at alpha.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "dragon/geometry.hpp"
#include "dragon/ifs.hpp"
#include "dragon/regions.hpp"
#include "dragon/roots.hpp"

namespace dragon {

namespace detail {
inline void require_certify_range(double xi) {
  if (!(xi > 0.0 && xi < std::numbers::pi / 4.0))
    throw RangeError("certification needs 0 < xi < pi/4, got " + std::to_string(xi));
}

/// f conjugated by the translation to alpha: w -> f(w + alpha) - alpha.
inline Similarity centred(const ModelParams& p, const Similarity& f) {
  return Similarity(f.coefficient(), f(p.alpha) - p.alpha);
}

inline Point alpha_pow(Point a, int n) {
  Point out = 1.0;
  for (int i = 0; i < n; ++i) out *= a;
  return out;
}
}  // namespace detail

/// The N >= 3 with pi/(N+2) <= xi < pi/(N+1).
inline int select_N(double xi) {
  detail::require_certify_range(xi);
  constexpr double pi = std::numbers::pi;
  int n = std::max(3, static_cast<int>(std::ceil(pi / xi)) - 2);
  while (pi / (n + 2) > xi) ++n;
  while (n > 3 && pi / (n + 1) <= xi) --n;
  return n;
}

/// Signed slack of a membership test, normalized by the size of the
/// container; non-negative means the point was accepted.
struct InclusionResult {
  bool pass = true;
  double margin = std::numeric_limits<double>::infinity();
  double worst_depth = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  std::string worst_label;
};

namespace detail {
inline double best_slack(const std::vector<const ConvexPolygon*>& targets, Point z, double tol,
                         double* depth) {
  double best = -std::numeric_limits<double>::infinity();
  double best_depth = -std::numeric_limits<double>::infinity();
  for (const ConvexPolygon* t : targets) {
    const double s = membership_slack(*t, z, tol);
    if (s > best) {
      best = s;
      best_depth = t->depth(z);
    }
    if (s >= tol) break;
  }
  if (depth) *depth = best_depth;
  return best;
}

inline void record(InclusionResult& r, double slack, double depth, const std::string& label) {
  if (slack < r.margin) {
    r.margin = slack;
    r.worst_label = label;
  }
  r.worst_depth = std::min(r.worst_depth, depth);
  if (slack < 0.0) {
    r.pass = false;
    ++r.violations;
  }
}

inline std::vector<Point> sample_boundary(const ConvexPolygon& poly, int samples) {
  std::vector<Point> pts(poly.vertices());
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i)
    for (int s = 1; s <= samples; ++s) {
      const double t = static_cast<double>(s) / (samples + 1);
      pts.push_back(poly[i] + t * (poly[(i + 1) % n] - poly[i]));
    }
  return pts;
}
}  // namespace detail

/// f1 and f2 map the depth-n_max truncation into itself, vertex by vertex
/// (plus `samples` points per edge). Points of the omitted tail are accepted
/// inside the balls of radius |a|^{n_max+1}/(1-|a|^4) around 0 and 1.
/// Margin: min over points of max over containers of depth/diameter + tol.
inline InclusionResult check_prop2(const ModelParams& p, int n_max = 40, int samples = 0,
                                   double tol = default_tolerance()) {
  const TruncatedC c = build_truncation(p, n_max);
  std::vector<const ConvexPolygon*> targets;
  targets.reserve(c.pieces.size());
  for (const auto& r : c.pieces) targets.push_back(&r.polygon);

  const double a2 = p.alpha_abs2();
  const double radius = std::pow(std::abs(p.alpha), n_max + 1) / (1.0 - a2 * a2);

  InclusionResult out;
  const std::pair<Similarity, const char*> maps[] = {{f1(p), "f1"}, {f2(p), "f2"}};
  for (const auto& [f, fname] : maps) {
    for (const auto& r : c.pieces) {
      for (Point v : detail::sample_boundary(r.polygon, samples)) {
        const Point z = f(v);
        double depth = 0.0;
        double slack = detail::best_slack(targets, z, tol, &depth);
        const double ball = std::max((radius - std::abs(z)) / radius,
                                     (radius - std::abs(z - 1.0)) / radius) + tol;
        if (ball > slack) {
          slack = ball;
          depth = std::max(radius - std::abs(z), radius - std::abs(z - 1.0));
        }
        detail::record(out, slack, depth, std::string(fname) + "(" + r.name + ")");
      }
    }
  }
  return out;
}

struct HalfPlaneCondition {
  bool pass = false;
  double margin = 0.0;  // Im((P - a) / (b - a)); positive means left of a -> b
};

struct HidarigawaResult {
  int N = 0;
  HalfPlaneCondition cond_i;
  HalfPlaneCondition cond_ii;
};

namespace detail {
/// Points of the two conditions in the alpha-centred frame.
struct HidarigawaPoints {
  Point gN_f12;     // (g^N o f12)(z0) - a
  Point g_f2212;    // (g o f2212)(z0) - a
  Point f2212;      // f2212(z0) - a
  Point gN4_f22;    // (g^{N+4} o f22)(z0) - a
  Point g_f1212;    // (g o f1212)(z0) - a
  Point f1212;      // f1212(z0) - a
};

inline HidarigawaPoints hidarigawa_points(const ModelParams& p, int n) {
  const Point a = p.alpha;
  const Point w0 = fixed_point(p, "2211") - a;
  auto at = [&](const char* word) { return centred(p, map_of_word(p, word))(w0); };
  HidarigawaPoints h;
  h.gN_f12 = alpha_pow(a, n) * at("12");
  h.f2212 = at("2212");
  h.g_f2212 = a * h.f2212;
  h.gN4_f22 = alpha_pow(a, n + 4) * at("22");
  h.f1212 = at("1212");
  h.g_f1212 = a * h.f1212;
  return h;
}

inline double left_margin(Point z, Point a, Point b) { return ((z - a) / (b - a)).imag(); }
}  // namespace detail

/// Both conditions evaluated directly through composed maps.
inline HidarigawaResult check_hidarigawa(const ModelParams& p) {
  HidarigawaResult r;
  r.N = select_N(p.xi);
  const auto h = detail::hidarigawa_points(p, r.N);
  r.cond_i.margin = detail::left_margin(h.gN_f12, h.g_f2212, h.f2212);
  r.cond_i.pass = r.cond_i.margin > 0.0;
  r.cond_ii.margin = detail::left_margin(h.gN4_f22, h.g_f1212, h.f1212);
  r.cond_ii.pass = r.cond_ii.margin > 0.0;
  return r;
}

struct RatioBounds {
  int N = 0;
  double ratio_N = 0.0;          // 1 / ((1 - x^-2 - x^-4) x^{N-1})
  double ratio_N4 = 0.0;         // x^{-(N+3)} / (1 - x^-2 - x^-4)
  double ratio_N_direct = 0.0;   // |g^N f12 z0 - a| / |g f2212 z0 - a|
  double ratio_N4_direct = 0.0;  // |g^{N+4} f22 z0 - a| / |g f1212 z0 - a|
};

inline RatioBounds ratio_bounds(const ModelParams& p) {
  RatioBounds r;
  r.N = select_N(p.xi);
  const double x = p.x;
  const double denom = 1.0 - std::pow(x, -2) - std::pow(x, -4);
  r.ratio_N = 1.0 / (denom * std::pow(x, r.N - 1));
  r.ratio_N4 = std::pow(x, -(r.N + 3)) / denom;
  const auto h = detail::hidarigawa_points(p, r.N);
  r.ratio_N_direct = std::abs(h.gN_f12) / std::abs(h.g_f2212);
  r.ratio_N4_direct = std::abs(h.gN4_f22) / std::abs(h.g_f1212);
  return r;
}

namespace detail {
inline void require_n3_band(double xi) {
  if (!(xi >= std::numbers::pi / 5.0 && xi < std::numbers::pi / 4.0))
    throw RangeError("n3_sign needs pi/5 <= xi < pi/4, got " + std::to_string(xi));
}
}  // namespace detail

/// sin(xi) * x / (x^4 - x^2 - 1) * (x^6 - 3x^4 + 2x^2 - 1).
inline double n3_sign(const ModelParams& p) {
  detail::require_n3_band(p.xi);
  const double x = p.x;
  const double x2 = x * x;
  return std::sin(p.xi) * x / (x2 * x2 - x2 - 1.0) * poly_P(x);
}

/// The same quantity as the imaginary part of the normalized difference
/// quotient with N = 3, evaluated through the maps.
inline double n3_sign_direct(const ModelParams& p) {
  detail::require_n3_band(p.xi);
  const auto h = detail::hidarigawa_points(p, 3);
  return detail::left_margin(h.gN_f12, h.g_f2212, h.f2212);
}

struct EndpointResult {
  bool pass = false;
  double min_distance = std::numeric_limits<double>::infinity();
  double threshold = 0.0;
  std::string closest_pair;
};

namespace detail {
struct Box {
  double x0, x1, y0, y1;
};
inline Box bbox(const ConvexPolygon& poly) {
  Box b{poly[0].real(), poly[0].real(), poly[0].imag(), poly[0].imag()};
  for (Point v : poly.vertices()) {
    b.x0 = std::min(b.x0, v.real());
    b.x1 = std::max(b.x1, v.real());
    b.y0 = std::min(b.y0, v.imag());
    b.y1 = std::max(b.y1, v.imag());
  }
  return b;
}
inline double box_gap(const Box& a, const Box& b) {
  const double dx = std::max({0.0, a.x0 - b.x1, b.x0 - a.x1});
  const double dy = std::max({0.0, a.y0 - b.y1, b.y0 - a.y1});
  return std::hypot(dx, dy);
}
}  // namespace detail

/// Minimum distance between pieces of f1(trunc) and f2(trunc), skipping
/// pairs that both lie within eps_rel * scale of alpha (scale = |1 - 0|).
/// Passes when that minimum exceeds tol * scale.
inline EndpointResult check_endpoint_condition(const ModelParams& p, int n_max = 40,
                                               double eps_rel = 1e-4,
                                               double tol = default_tolerance()) {
  const TruncatedC c = build_truncation(p, n_max);
  const auto left = map_pieces(c, f1(p), "f1");
  const auto right = map_pieces(c, f2(p), "f2");
  const double scale = 1.0;
  const double eps = eps_rel * scale;

  std::vector<detail::Box> lb, rb;
  std::vector<bool> lnear, rnear;
  for (const auto& r : left) {
    lb.push_back(detail::bbox(r.polygon));
    lnear.push_back(dist_point_polygon(p.alpha, r.polygon) <= eps);
  }
  for (const auto& r : right) {
    rb.push_back(detail::bbox(r.polygon));
    rnear.push_back(dist_point_polygon(p.alpha, r.polygon) <= eps);
  }

  EndpointResult out;
  out.threshold = tol * scale;
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (lnear[i] && rnear[j]) continue;
      if (detail::box_gap(lb[i], rb[j]) >= out.min_distance) continue;
      const double d = polygon_distance(left[i].polygon, right[j].polygon);
      if (d < out.min_distance) {
        out.min_distance = d;
        out.closest_pair = left[i].name + " / " + right[j].name;
      }
    }
  out.pass = out.min_distance > out.threshold;
  return out;
}

/// f1(C_k) in C_k + A_k and f2(C_k) in C_k + f2(A_{k-1}), vertex by vertex.
inline InclusionResult check_lemmaT1(const ModelParams& p, int k, double tol = default_tolerance()) {
  if (k < 2) throw std::invalid_argument("the truncated inclusion check needs k >= 2, got " + std::to_string(k));
  const TruncatedC ck = build_Ck(p, k);
  const Region ak = region_A(p, k);
  const Region f2ak1 = map_region(region_A(p, k - 1), f2(p), "f2", "f2(A" + std::to_string(k - 1) + ")");

  InclusionResult out;
  auto run = [&](const Similarity& f, const char* fname, const Region& extra) {
    std::vector<const ConvexPolygon*> targets;
    for (const auto& r : ck.pieces) targets.push_back(&r.polygon);
    targets.push_back(&extra.polygon);
    for (const auto& r : ck.pieces)
      for (Point v : r.polygon.vertices()) {
        double depth = 0.0;
        const double slack = detail::best_slack(targets, f(v), tol, &depth);
        detail::record(out, slack, depth, std::string(fname) + "(" + r.name + ")");
      }
  };
  run(f1(p), "f1", ak);
  run(f2(p), "f2", f2ak1);
  return out;
}

/// Least k in [0, k_max] with (g^k o f12)(z0) in Cone(f22(A1~)) minus the
/// half-line HL(a, (g o f22)(z0)), and the analogous least l for f22 / f12.
struct ConeSearch {
  std::optional<int> k1;
  std::optional<int> l1;
  bool matches_prescribed = false;
};

namespace detail {
/// z in closed V-(0, b), closed V+(0, gb), and not on HL(0, gb); all
/// coordinates relative to alpha.
inline bool in_cone(Point z, Point b, Point gb, double tol) {
  const double s1 = cross(b, z) / (std::abs(b) * std::abs(z));
  const double s2 = cross(gb, z) / (std::abs(gb) * std::abs(z));
  if (s1 > tol) return false;
  if (s2 < -tol) return false;
  if (std::abs(s2) <= tol && dot(gb, z) > 0.0) return false;
  return true;
}
}  // namespace detail

inline ConeSearch cone_search(const ModelParams& p, double tol = 1e-12) {
  const int n = select_N(p.xi);
  const Point a = p.alpha;
  const Point w0 = fixed_point(p, "2211") - a;
  const Point u12 = detail::centred(p, map_of_word(p, "12"))(w0);
  const Point u22 = detail::centred(p, map_of_word(p, "22"))(w0);
  ConeSearch out;
  Point gk = 1.0;
  for (int k = 0; k <= 4 * n + 4; ++k) {
    if (!out.k1 && k <= 4 * n && detail::in_cone(gk * u12, u22, a * u22, tol)) out.k1 = k;
    if (!out.l1 && detail::in_cone(gk * u22, u12, a * u12, tol)) out.l1 = k;
    gk *= a;
  }
  out.matches_prescribed = out.k1 == n && out.l1 == n + 4;
  return out;
}

enum class Verdict { certified_simple_arc, not_certified };

inline const char* to_string(Verdict v) {
  return v == Verdict::certified_simple_arc ? "certified_simple_arc" : "not_certified";
}

struct CertConfig {
  int depth = 40;
  int prop2_samples = 0;
  double tol = default_tolerance();
  double endpoint_eps = 1e-4;
  bool cone_search = false;
};

struct CertReport {
  double xi = 0.0;
  double theta_deg = 0.0;
  int N = 0;
  int depth = 0;
  InclusionResult prop2;
  HidarigawaResult hidarigawa;
  bool hidarigawa_pass = false;
  std::string hidarigawa_route;
  RatioBounds ratios;
  std::optional<double> n3_sign_value;
  std::optional<double> n3_sign_direct_value;
  EndpointResult endpoint;
  std::optional<ConeSearch> cone;
  Verdict overall = Verdict::not_certified;

  bool certified() const { return overall == Verdict::certified_simple_arc; }
};

/// N >= 4: both ratios below 1. N = 3: positive sign value and the N+4
/// ratio below 1. The directly evaluated half-plane margins are reported
/// alongside.
inline CertReport certify(double xi, const CertConfig& cfg = {}) {
  detail::require_certify_range(xi);
  const ModelParams p = make_params(xi);
  CertReport r;
  r.xi = xi;
  r.theta_deg = theta_deg_from_xi(xi);
  r.N = select_N(xi);
  r.depth = cfg.depth;
  r.prop2 = check_prop2(p, cfg.depth, cfg.prop2_samples, cfg.tol);
  r.hidarigawa = check_hidarigawa(p);
  r.ratios = ratio_bounds(p);
  if (r.N >= 4) {
    r.hidarigawa_route = "ratio";
    r.hidarigawa_pass = r.ratios.ratio_N < 1.0 && r.ratios.ratio_N4 < 1.0;
  } else {
    r.hidarigawa_route = "n3_sign";
    r.n3_sign_value = n3_sign(p);
    r.n3_sign_direct_value = n3_sign_direct(p);
    r.hidarigawa_pass = *r.n3_sign_value > 0.0 && r.ratios.ratio_N4 < 1.0;
  }
  r.endpoint = check_endpoint_condition(p, cfg.depth, cfg.endpoint_eps, cfg.tol);
  if (cfg.cone_search) r.cone = cone_search(p);
  r.overall = r.prop2.pass && r.hidarigawa_pass && r.endpoint.pass ? Verdict::certified_simple_arc
                                                                    : Verdict::not_certified;
  return r;
}

}  // namespace dragon
