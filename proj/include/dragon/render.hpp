#pragma once

// SVG 1.1 pictures of curves, regions and anchor points. The picture is
// fitted to the union of all layers and flipped so that y points up.

#include <algorithm>
#include <cstdio>
#include <limits>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dragon/ifs.hpp"
#include "dragon/regions.hpp"
#include "dragon/version.hpp"

namespace dragon {

class RenderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Layer {
  std::string name;
  std::string color;  // empty picks from the default palette
};

struct RenderSpec {
  double xi = 0.0;
  int order = 8;
  int width = 800;
  int height = 800;
  double margin = 0.05;
  double stroke_width = 1.0;
  bool labels = true;
  std::vector<Layer> layers;
};

/// Reads {"xi" | "theta_deg", "order", "width", "height", "margin",
/// "stroke_width", "labels", "layers": [name | {"name", "color"}]}.
inline RenderSpec parse_render_spec(const nlohmann::json& j) {
  RenderSpec s;
  const bool has_xi = j.contains("xi");
  const bool has_theta = j.contains("theta_deg");
  if (has_xi == has_theta) throw RenderError("render spec needs exactly one of xi, theta_deg");
  try {
    s.xi = has_xi ? j.at("xi").get<double>() : xi_from_theta_deg(j.at("theta_deg").get<double>());
    s.order = j.value("order", s.order);
    s.width = j.value("width", s.width);
    s.height = j.value("height", s.height);
    s.margin = j.value("margin", s.margin);
    s.stroke_width = j.value("stroke_width", s.stroke_width);
    s.labels = j.value("labels", s.labels);
    for (const auto& l : j.at("layers")) {
      if (l.is_string())
        s.layers.push_back({l.get<std::string>(), ""});
      else
        s.layers.push_back({l.at("name").get<std::string>(), l.value("color", std::string{})});
    }
  } catch (const nlohmann::json::exception& e) {
    throw RenderError(std::string("bad render spec: ") + e.what());
  }
  if (s.width <= 0 || s.height <= 0) throw RenderError("width and height must be positive");
  if (!(s.margin >= 0.0 && s.margin < 0.5)) throw RenderError("margin must be in [0, 0.5)");
  if (!(s.stroke_width > 0.0)) throw RenderError("stroke width must be positive");
  if (s.layers.empty()) throw RenderError("render spec has no layers");
  static const std::regex color_re("#[0-9a-fA-F]{3,8}|[a-zA-Z]+");
  for (const auto& l : s.layers)
    if (!l.color.empty() && !std::regex_match(l.color, color_re))
      throw RenderError("bad color '" + l.color + "'");
  return s;
}

namespace detail {

struct Shape {
  enum Kind { polyline, polygon, point } kind;
  std::string label;
  std::vector<Point> pts;
};

struct ResolvedLayer {
  std::string name;
  std::string color;
  std::vector<Shape> shapes;
};

inline const char* palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  return colors[i % std::size(colors)];
}

inline Shape polygon_shape(const Region& r) { return {Shape::polygon, r.name, r.polygon.vertices()}; }

/// Layer name to shapes. Accepts curve, curve:<k>, the named regions,
/// A<m>, A<m>~, f2(A<m>), A<m>..A<n>, f2(A<m>..A<n>), C<k>, f1(C<k>),
/// f2(C<k>) and the points z0, p1, p2, p3, q, alpha.
inline std::vector<Shape> resolve_layer(const ModelParams& p, const RenderSpec& s,
                                        const std::string& name) {
  static const std::regex curve_re(R"(curve(?::(\d+))?)");
  static const std::regex a_re(R"(A(-?\d+)(~?))");
  static const std::regex f2a_re(R"(f2\(A(-?\d+)\))");
  static const std::regex range_re(R"(A(-?\d+)\.\.A(-?\d+))");
  static const std::regex f2range_re(R"(f2\(A(-?\d+)\.\.A(-?\d+)\))");
  static const std::regex c_re(R"((?:(f[12])\()?C(\d+)\)?)");
  std::smatch m;

  if (std::regex_match(name, m, curve_re)) {
    const int k = m[1].matched ? std::stoi(m[1]) : s.order;
    return {{Shape::polyline, "D" + std::to_string(k), curve(p, k).vertices}};
  }
  for (const char* pt : {"z0", "p1", "p2", "p3", "q", "alpha"}) {
    if (name != pt) continue;
    if (name == "alpha") return {{Shape::point, "alpha", {p.alpha}}};
    const AnchorPoints a = anchors(p);
    const Point z = name == "z0" ? a.z0 : name == "p1" ? a.p1 : name == "p2" ? a.p2 : name == "p3" ? a.p3 : a.q;
    return {{Shape::point, name, {z}}};
  }
  {
    const RegionSet rs = build_regions(p);
    for (const Region* r : rs.all())
      if (r->name == name) return {polygon_shape(*r)};
  }
  if (std::regex_match(name, m, a_re)) {
    const int k = std::stoi(m[1]);
    return {polygon_shape(m[2].length() ? region_A_tilde(p, k) : region_A(p, k))};
  }
  if (std::regex_match(name, m, f2a_re)) {
    const int k = std::stoi(m[1]);
    return {polygon_shape(map_region(region_A(p, k), f2(p), "f2", name))};
  }
  const bool f2range = std::regex_match(name, m, f2range_re);
  if (f2range || std::regex_match(name, m, range_re)) {
    const int lo = std::stoi(m[1]), hi = std::stoi(m[2]);
    if (lo > hi || hi - lo > 200) throw RenderError("bad range in layer '" + name + "'");
    std::vector<Shape> out;
    for (int k = lo; k <= hi; ++k) {
      Region r = region_A(p, k);
      if (f2range) r = map_region(r, f2(p), "f2", "f2(A" + std::to_string(k) + ")");
      out.push_back(polygon_shape(r));
    }
    return out;
  }
  if (std::regex_match(name, m, c_re) && (m[1].matched == (name.back() == ')'))) {
    const TruncatedC c = build_Ck(p, std::stoi(m[2]));
    std::vector<Shape> out;
    if (!m[1].matched) {
      for (const auto& r : c.pieces) out.push_back(polygon_shape(r));
    } else {
      const Similarity f = m[1] == "f1" ? f1(p) : f2(p);
      for (const auto& r : map_pieces(c, f, m[1])) out.push_back(polygon_shape(r));
    }
    return out;
  }
  throw RenderError("unknown layer '" + name + "'");
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace detail

inline std::string render_svg(const RenderSpec& s) {
  const ModelParams p = make_params(s.xi);
  std::vector<detail::ResolvedLayer> layers;
  for (std::size_t i = 0; i < s.layers.size(); ++i) {
    const auto& l = s.layers[i];
    layers.push_back({l.name, l.color.empty() ? detail::palette(i) : l.color,
                      detail::resolve_layer(p, s, l.name)});
  }

  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& l : layers)
    for (const auto& sh : l.shapes)
      for (Point z : sh.pts) {
        x0 = std::min(x0, z.real());
        x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag());
        y1 = std::max(y1, z.imag());
      }
  const double bw = std::max(x1 - x0, 1e-12), bh = std::max(y1 - y0, 1e-12);
  const double scale = std::min(s.width * (1 - 2 * s.margin) / bw, s.height * (1 - 2 * s.margin) / bh);
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  auto X = [&](Point z) { return detail::num(0.5 * s.width + scale * (z.real() - cx)); };
  auto Y = [&](Point z) { return detail::num(0.5 * s.height - scale * (z.imag() - cy)); };
  auto points_attr = [&](const std::vector<Point>& pts) {
    std::string out;
    for (Point z : pts) out += (out.empty() ? "" : " ") + X(z) + "," + Y(z);
    return out;
  };

  const std::string sw = detail::num(s.stroke_width);
  const std::string font = detail::num(std::max(8.0, 0.02 * std::min(s.width, s.height)));
  std::string o;
  o += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  o += std::string("<!-- dragon ") + kVersion + " -->\n";
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(s.width) +
       "\" height=\"" + std::to_string(s.height) + "\" viewBox=\"0 0 " + std::to_string(s.width) + " " +
       std::to_string(s.height) + "\">\n";
  o += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(s.width) + "\" height=\"" +
       std::to_string(s.height) + "\" fill=\"white\"/>\n";
  for (const auto& l : layers) {
    const std::string c = detail::xml_escape(l.color);
    o += "<g id=\"" + detail::xml_escape(l.name) + "\">\n";
    for (const auto& sh : l.shapes) {
      const std::string label = detail::xml_escape(sh.label);
      switch (sh.kind) {
        case detail::Shape::polyline:
          o += "<polyline fill=\"none\" stroke=\"" + c + "\" stroke-width=\"" + sw +
               "\" stroke-linejoin=\"round\" points=\"" + points_attr(sh.pts) + "\"/>\n";
          break;
        case detail::Shape::polygon: {
          o += "<polygon fill=\"" + c + "\" fill-opacity=\"0.2\" stroke=\"" + c + "\" stroke-width=\"" +
               sw + "\" points=\"" + points_attr(sh.pts) + "\"><title>" + label + "</title></polygon>\n";
          if (s.labels) {
            Point mid = 0.0;
            for (Point z : sh.pts) mid += z;
            mid /= static_cast<double>(sh.pts.size());
            o += "<text x=\"" + X(mid) + "\" y=\"" + Y(mid) + "\" font-size=\"" + font +
                 "\" text-anchor=\"middle\" fill=\"" + c + "\">" + label + "</text>\n";
          }
          break;
        }
        case detail::Shape::point:
          o += "<circle cx=\"" + X(sh.pts[0]) + "\" cy=\"" + Y(sh.pts[0]) + "\" r=\"" +
               detail::num(2 * s.stroke_width + 1) + "\" fill=\"" + c + "\"/>\n";
          if (s.labels)
            o += "<text x=\"" + X(sh.pts[0]) + "\" y=\"" + Y(sh.pts[0]) + "\" dx=\"4\" dy=\"-4\" font-size=\"" +
                 font + "\" fill=\"" + c + "\">" + label + "</text>\n";
          break;
      }
    }
    o += "</g>\n";
  }
  o += "</svg>\n";
  return o;
}

}  // namespace dragon
