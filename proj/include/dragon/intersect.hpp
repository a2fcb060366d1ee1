#pragma once

// Self-intersection of broken lines: an all-pairs oracle, a sweep over
// x-sorted segment boxes, and the search for the first self-intersecting
// order of D_k.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dragon/geometry.hpp"
#include "dragon/ifs.hpp"

namespace dragon {

class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

enum class EventKind { crossing, touch_at_vertex, overlap };

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::crossing: return "crossing";
    case EventKind::touch_at_vertex: return "touch_at_vertex";
    case EventKind::overlap: return "overlap";
  }
  return "?";
}

struct IntersectionEvent {
  std::size_t seg_i = 0;
  std::size_t seg_j = 0;
  Point location;
  EventKind kind = EventKind::crossing;
  double gap = 0.0;  // measured distance between the two segments

  friend bool operator==(const IntersectionEvent&, const IntersectionEvent&) = default;
};

struct IntersectionReport {
  int order = 0;
  double xi = 0.0;
  std::vector<IntersectionEvent> events;
  bool self_intersective = false;
};

inline constexpr std::size_t kBruteForceMaxSegments = std::size_t{1} << 14;

namespace detail {

inline Segment segment_of(const Polyline& poly, std::size_t i) {
  return Segment(poly.vertices[i], poly.vertices[i + 1], 0.0);
}

/// Contact between segments i < j, if any. Consecutive segments only count
/// when they share more than their common vertex.
inline std::optional<IntersectionEvent> classify(const Polyline& poly, std::size_t i,
                                                 std::size_t j, double tol) {
  const Segment s = segment_of(poly, i);
  const Segment t = segment_of(poly, j);
  const SegmentIntersection hit = segment_intersection(s, t, tol);
  if (std::holds_alternative<std::monostate>(hit)) return std::nullopt;

  IntersectionEvent e{i, j, {}, EventKind::overlap, 0.0};
  if (const auto* piece = std::get_if<Segment>(&hit)) {
    e.location = 0.5 * (piece->a() + piece->b());
    return e;
  }
  if (j == i + 1) return std::nullopt;

  e.location = std::get<Point>(hit);
  e.gap = segment_distance(s, t);
  const double eps = tol * std::max(s.length(), t.length());
  const bool near_end = std::min({std::abs(e.location - s.a()), std::abs(e.location - s.b()),
                                  std::abs(e.location - t.a()), std::abs(e.location - t.b())}) <= eps;
  e.kind = (!near_end && proper_or_touching_cross(s.a(), s.b(), t.a(), t.b()))
               ? EventKind::crossing
               : EventKind::touch_at_vertex;
  return e;
}

inline IntersectionReport make_report(const Polyline& poly, std::vector<IntersectionEvent> ev) {
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
    return a.seg_i != b.seg_i ? a.seg_i < b.seg_i : a.seg_j < b.seg_j;
  });
  IntersectionReport r{poly.order, poly.xi, std::move(ev), false};
  r.self_intersective = !r.events.empty();
  return r;
}

struct SegmentBox {
  double x0, x1, y0, y1, len;
};

inline std::vector<SegmentBox> boxes(const Polyline& poly) {
  const auto& v = poly.vertices;
  std::vector<SegmentBox> out(poly.segment_count());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto [x0, x1] = std::minmax({v[i].real(), v[i + 1].real()});
    const auto [y0, y1] = std::minmax({v[i].imag(), v[i + 1].imag()});
    out[i] = {x0, x1, y0, y1, std::abs(v[i + 1] - v[i])};
  }
  return out;
}

/// The box test segment_intersection starts with, done without building segments.
inline bool boxes_apart(const SegmentBox& a, const SegmentBox& b, double tol) {
  const double eps = tol * std::max(a.len, b.len);
  return a.x0 > b.x1 + eps || b.x0 > a.x1 + eps || a.y0 > b.y1 + eps || b.y0 > a.y1 + eps;
}

inline void require_segments(const Polyline& poly) {
  if (poly.vertices.size() < 2) throw std::invalid_argument("polyline needs at least one segment");
}

}  // namespace detail

/// Every pair of segments; the oracle for sweep.
inline IntersectionReport brute_force(const Polyline& poly, double tol = default_tolerance()) {
  detail::require_segments(poly);
  const std::size_t n = poly.segment_count();
  if (n > kBruteForceMaxSegments)
    throw SizeError("brute force is limited to " + std::to_string(kBruteForceMaxSegments) +
                    " segments, got " + std::to_string(n));
  const auto box = detail::boxes(poly);
  std::vector<IntersectionEvent> ev;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (detail::boxes_apart(box[i], box[j], tol)) continue;
      if (auto e = detail::classify(poly, i, j, tol)) ev.push_back(*e);
    }
  return detail::make_report(poly, std::move(ev));
}

/// Segments enter in order of their left box edge (ties by lower edge, then
/// index) and are tested against the active ones whose boxes still reach
/// them. Boxes are padded by the contact band, so every pair brute_force
/// would report is tested with the same classification.
inline IntersectionReport sweep(const Polyline& poly, double tol = default_tolerance()) {
  detail::require_segments(poly);
  const std::size_t n = poly.segment_count();
  const auto box = detail::boxes(poly);
  double max_len = 0.0;
  for (const auto& b : box) max_len = std::max(max_len, b.len);
  const double pad = tol * max_len;

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (box[a].x0 != box[b].x0) return box[a].x0 < box[b].x0;
    if (box[a].y0 != box[b].y0) return box[a].y0 < box[b].y0;
    return a < b;
  });

  std::vector<IntersectionEvent> ev;
  std::vector<std::size_t> active;
  for (std::size_t cur : order) {
    const detail::SegmentBox& b = box[cur];
    std::erase_if(active, [&](std::size_t a) { return box[a].x1 + pad < b.x0; });
    for (std::size_t a : active) {
      if (detail::boxes_apart(box[a], b, tol)) continue;
      const auto [i, j] = std::minmax(a, cur);
      if (auto e = detail::classify(poly, i, j, tol)) ev.push_back(*e);
    }
    active.push_back(cur);
  }
  return detail::make_report(poly, std::move(ev));
}

struct BadOrder {
  int k = 0;
  IntersectionReport report;
};

/// Smallest k <= k_max whose D_k has an event, using sweep.
inline std::optional<BadOrder> first_bad_order(const ModelParams& p, int k_max,
                                               double tol = default_tolerance(),
                                               int max_order = kDefaultMaxOrder) {
  if (k_max > max_order)
    throw RangeError("k_max exceeds the maximum order " + std::to_string(max_order));
  for (int k = 1; k <= k_max; ++k) {
    IntersectionReport r = sweep(curve(p, k, max_order), tol);
    if (r.self_intersective) return BadOrder{k, std::move(r)};
  }
  return std::nullopt;
}

inline std::optional<BadOrder> first_bad_order(double xi, int k_max, double tol = default_tolerance()) {
  return first_bad_order(make_params(xi), k_max, tol);
}

/// Events of D_{k+1} with one segment in each half, i.e. contacts between
/// f1(D_k) and f2(D_k). The halves split at segment 2^k.
inline std::vector<IntersectionEvent> cross_half_events(const IntersectionReport& r,
                                                        std::size_t half) {
  std::vector<IntersectionEvent> out;
  for (const auto& e : r.events)
    if (e.seg_i < half && e.seg_j >= half) out.push_back(e);
  return out;
}

}  // namespace dragon
