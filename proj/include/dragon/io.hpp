#pragma once

// JSON layouts for curves, regions, reports and constants. Points are
// [x, y] pairs; every top-level document carries "schema": 1.

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "dragon/certify.hpp"
#include "dragon/intersect.hpp"
#include "dragon/regions.hpp"
#include "dragon/roots.hpp"

namespace dragon {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline json point_json(Point z) { return json::array({z.real(), z.imag()}); }

inline json to_json_value(const Polyline& c) {
  json verts = json::array();
  for (Point v : c.vertices) verts.push_back(point_json(v));
  const double len = c.vertices.size() > 1 ? std::abs(c.vertices[1] - c.vertices[0]) : 0.0;
  return json{{"xi", c.xi},
              {"theta_deg", theta_deg_from_xi(c.xi)},
              {"order", c.order},
              {"segment_count", c.segment_count()},
              {"segment_length", len},
              {"vertices", std::move(verts)}};
}

inline json to_json_value(const IntersectionEvent& e) {
  return json{{"seg_i", e.seg_i},
              {"seg_j", e.seg_j},
              {"location", point_json(e.location)},
              {"kind", to_string(e.kind)},
              {"gap", e.gap}};
}

inline json to_json_value(const IntersectionReport& r) {
  json ev = json::array();
  for (const auto& e : r.events) ev.push_back(to_json_value(e));
  return json{{"order", r.order},
              {"xi", r.xi},
              {"theta_deg", theta_deg_from_xi(r.xi)},
              {"self_intersective", r.self_intersective},
              {"event_count", r.events.size()},
              {"events", std::move(ev)}};
}

inline json to_json_value(const InclusionResult& r) {
  return json{{"pass", r.pass},
              {"margin", r.margin},
              {"worst_depth", r.worst_depth},
              {"violations", r.violations},
              {"worst_label", r.worst_label}};
}

inline json to_json_value(const HalfPlaneCondition& c) {
  return json{{"pass", c.pass}, {"margin", c.margin}};
}

inline json to_json_value(const EndpointResult& r) {
  return json{{"pass", r.pass},
              {"min_distance", r.min_distance},
              {"threshold", r.threshold},
              {"closest_pair", r.closest_pair}};
}

inline json to_json_value(const CertReport& r) {
  json h{{"route", r.hidarigawa_route},
         {"pass", r.hidarigawa_pass},
         {"cond_i", to_json_value(r.hidarigawa.cond_i)},
         {"cond_ii", to_json_value(r.hidarigawa.cond_ii)},
         {"ratio_N", r.ratios.ratio_N},
         {"ratio_N4", r.ratios.ratio_N4},
         {"ratio_N_direct", r.ratios.ratio_N_direct},
         {"ratio_N4_direct", r.ratios.ratio_N4_direct}};
  if (r.n3_sign_value) {
    h["n3_sign"] = *r.n3_sign_value;
    h["n3_sign_direct"] = *r.n3_sign_direct_value;
  }
  json out{{"xi", r.xi},
           {"theta_deg", r.theta_deg},
           {"N", r.N},
           {"depth", r.depth},
           {"verdict", to_string(r.overall)},
           {"certified", r.certified()},
           {"prop2", to_json_value(r.prop2)},
           {"hidarigawa", std::move(h)},
           {"endpoint", to_json_value(r.endpoint)}};
  if (r.cone) {
    json c{{"matches_prescribed", r.cone->matches_prescribed}};
    c["k1"] = r.cone->k1 ? json(*r.cone->k1) : json(nullptr);
    c["l1"] = r.cone->l1 ? json(*r.cone->l1) : json(nullptr);
    out["cone_search"] = std::move(c);
  }
  return out;
}

inline json to_json_value(const CriticalConstants& c) {
  return json{{"x0", c.x0},
              {"xi0", c.xi0},
              {"theta0_rad", c.theta0_rad},
              {"theta0_deg", c.theta0_deg},
              {"residual", c.residual}};
}

/// Region name -> list of {label, point}.
inline json to_json_value(const Region& r) {
  json verts = json::array();
  for (std::size_t i = 0; i < r.polygon.size(); ++i)
    verts.push_back(json{{"label", r.labels[i]}, {"point", point_json(r.polygon[i])}});
  return verts;
}

inline json to_json_value(const RegionSet& rs) {
  json regions = json::object();
  for (const Region* r : rs.all()) regions[r->name] = to_json_value(*r);
  const auto& a = rs.anchors;
  return json{{"anchors",
               {{"z0", point_json(a.z0)},
                {"p1", point_json(a.p1)},
                {"p2", point_json(a.p2)},
                {"p3", point_json(a.p3)},
                {"q", point_json(a.q)}}},
              {"regions", std::move(regions)}};
}

inline json to_json_value(const TruncatedC& c) {
  json pieces = json::object();
  for (const auto& r : c.pieces) pieces[r.name] = to_json_value(r);
  return json{{"xi", c.params.xi}, {"depth", c.depth}, {"pieces", std::move(pieces)}};
}

/// A top-level document: {"schema": 1, ...body}.
template <typename T>
json document(const T& value) {
  json out{{"schema", kSchemaVersion}};
  out.update(to_json_value(value));
  return out;
}

/// Vertex list as "x,y" rows with round-trip precision.
inline void write_csv(std::ostream& os, const Polyline& c) {
  os << "x,y\n";
  char buf[64];
  for (Point v : c.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", v.real(), v.imag());
    os << buf;
  }
}

}  // namespace dragon
