#pragma once

// The two-map IFS {f1, f2} of the folded strip, word-indexed compositions,
// fixed points of periodic addresses and the order-k broken line D_k.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dragon/geometry.hpp"

namespace dragon {

class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Fold parameter xi and the constants derived from it.
struct ModelParams {
  double xi = 0.0;
  double x = 2.0;         // 2 cos(xi)
  Point alpha{0.5, 0.0};  // e^{-i xi} / x
  double theta = std::numbers::pi;

  double alpha_abs2() const { return std::norm(alpha); }
};

inline ModelParams make_params(double xi) {
  if (!(xi >= 0.0 && xi < std::numbers::pi / 3.0))
    throw RangeError("xi must satisfy 0 <= xi < pi/3, got " + std::to_string(xi));
  ModelParams p;
  p.xi = xi;
  p.x = 2.0 * std::cos(xi);
  p.alpha = std::polar(1.0, -xi) / p.x;
  p.theta = std::numbers::pi - 2.0 * xi;
  return p;
}

inline double xi_from_theta_deg(double theta_deg) {
  return (std::numbers::pi - theta_deg * std::numbers::pi / 180.0) / 2.0;
}

inline double theta_deg_from_xi(double xi) {
  return (std::numbers::pi - 2.0 * xi) * 180.0 / std::numbers::pi;
}

/// z -> c z + d with c != 0.
class Similarity {
 public:
  Similarity() = default;
  Similarity(Point c, Point d) : c_(c), d_(d) {
    if (c_ == Point{} || !is_finite(c_) || !is_finite(d_))
      throw GeometryError("similarity needs a finite non-zero coefficient");
  }

  Point coefficient() const { return c_; }
  Point translation() const { return d_; }
  Point operator()(Point z) const { return c_ * z + d_; }

  Similarity inverse() const { return Similarity(1.0 / c_, -d_ / c_); }

  /// The unique fixed point; requires |c| < 1 so the map contracts.
  Point fixed_point() const {
    if (!(std::abs(c_) < 1.0)) throw GeometryError("fixed point of a non-contracting map");
    return d_ / (1.0 - c_);
  }

  /// (a * b)(z) == a(b(z)).
  friend Similarity operator*(const Similarity& a, const Similarity& b) {
    return Similarity(a.c_ * b.c_, a.c_ * b.d_ + a.d_);
  }

 private:
  Point c_{1.0, 0.0};
  Point d_{0.0, 0.0};
};

/// z -> c conj(z) + d; orientation-reversing.
class AntiSimilarity {
 public:
  AntiSimilarity(Point c, Point d) : c_(c), d_(d) {
    if (c_ == Point{} || !is_finite(c_) || !is_finite(d_))
      throw GeometryError("anti-similarity needs a finite non-zero coefficient");
  }
  Point coefficient() const { return c_; }
  Point translation() const { return d_; }
  Point operator()(Point z) const { return c_ * std::conj(z) + d_; }

  friend AntiSimilarity operator*(const Similarity& a, const AntiSimilarity& b) {
    return AntiSimilarity(a.coefficient() * b.c_, a.coefficient() * b.d_ + a.translation());
  }
  friend AntiSimilarity operator*(const AntiSimilarity& a, const Similarity& b) {
    return AntiSimilarity(a.c_ * std::conj(b.coefficient()),
                          a.c_ * std::conj(b.translation()) + a.d_);
  }
  friend Similarity operator*(const AntiSimilarity& a, const AntiSimilarity& b) {
    return Similarity(a.c_ * std::conj(b.c_), a.c_ * std::conj(b.d_) + a.d_);
  }

 private:
  Point c_;
  Point d_;
};

using PlaneMap = std::variant<Similarity, AntiSimilarity>;

inline Point apply_map(const PlaneMap& m, Point z) {
  return std::visit([z](const auto& f) { return f(z); }, m);
}

/// Address over {1, 2}: a finite prefix optionally followed by a repeating
/// block, written "12" or "12(1)" for 12(1)^inf. Letters are stored in the
/// order of composition f_{a1} o ... o f_{ak}.
class Word {
 public:
  Word() = default;
  explicit Word(std::string_view text) { *this = parse(text); }

  static Word parse(std::string_view text) {
    Word w;
    bool in_period = false;
    bool closed = false;
    for (char ch : text) {
      if (ch == '(') {
        if (in_period || closed) throw std::invalid_argument("malformed word: " + std::string(text));
        in_period = true;
      } else if (ch == ')') {
        if (!in_period) throw std::invalid_argument("malformed word: " + std::string(text));
        in_period = false;
        closed = true;
      } else if (ch == '1' || ch == '2') {
        if (closed) throw std::invalid_argument("letters after periodic block: " + std::string(text));
        (in_period ? w.period_ : w.prefix_).push_back(static_cast<std::uint8_t>(ch - '0'));
      } else {
        throw std::invalid_argument("invalid letter in word: " + std::string(text));
      }
    }
    if (in_period) throw std::invalid_argument("unterminated periodic block: " + std::string(text));
    if (closed && w.period_.empty()) throw std::invalid_argument("empty periodic block");
    return w;
  }

  const std::vector<std::uint8_t>& prefix() const { return prefix_; }
  const std::vector<std::uint8_t>& period() const { return period_; }
  bool is_finite() const { return period_.empty(); }

  std::string str() const {
    std::string s;
    for (auto l : prefix_) s.push_back(static_cast<char>('0' + l));
    if (!period_.empty()) {
      s.push_back('(');
      for (auto l : period_) s.push_back(static_cast<char>('0' + l));
      s.push_back(')');
    }
    return s;
  }

 private:
  std::vector<std::uint8_t> prefix_;
  std::vector<std::uint8_t> period_;
};

inline Similarity f1(const ModelParams& p) { return Similarity(p.alpha, 0.0); }
inline Similarity f2(const ModelParams& p) { return Similarity(-std::conj(p.alpha), 1.0); }

namespace detail {
inline Similarity compose_letters(const ModelParams& p, const std::vector<std::uint8_t>& letters) {
  const Similarity m1 = f1(p);
  const Similarity m2 = f2(p);
  Similarity out;
  for (auto l : letters) out = out * (l == 1 ? m1 : m2);
  return out;
}
}  // namespace detail

inline Similarity map_of_word(const ModelParams& p, const Word& w) {
  if (!w.is_finite()) throw std::invalid_argument("map_of_word needs a finite word");
  return detail::compose_letters(p, w.prefix());
}

inline Similarity map_of_word(const ModelParams& p, std::string_view letters) {
  return map_of_word(p, Word::parse(letters));
}

/// f_{(w)^inf}: the fixed point of f_w.
inline Point fixed_point(const ModelParams& p, const Word& w) {
  if (!w.is_finite() || w.prefix().empty())
    throw std::invalid_argument("fixed_point needs a non-empty finite word");
  return map_of_word(p, w).fixed_point();
}

inline Point fixed_point(const ModelParams& p, std::string_view letters) {
  return fixed_point(p, Word::parse(letters));
}

/// f_{u (v)^inf} = f_u(fixed point of f_v).
inline Point limit_point(const ModelParams& p, const Word& w) {
  if (w.is_finite()) throw std::invalid_argument("limit_point needs a periodic tail");
  const Point tail = detail::compose_letters(p, w.period()).fixed_point();
  return detail::compose_letters(p, w.prefix())(tail);
}

inline Point limit_point(const ModelParams& p, std::string_view text) {
  return limit_point(p, Word::parse(text));
}

/// psi(z) = -(conj(a)/a)(z - a) + a, so that f2 = psi o f1.
inline Similarity psi(const ModelParams& p) {
  const Point c = -std::conj(p.alpha) / p.alpha;
  return Similarity(c, p.alpha - c * p.alpha);
}

inline Similarity tau(const ModelParams&) { return Similarity(1.0, 1.0); }

/// g(z) = a(z - a) + a; fixes alpha.
inline Similarity g_map(const ModelParams& p) {
  return Similarity(p.alpha, p.alpha - p.alpha * p.alpha);
}

/// Reflection in L(z0, p2): R(z) = (a / conj(a)) conj(z).
inline AntiSimilarity reflect_r(const ModelParams& p) {
  return AntiSimilarity(p.alpha / std::conj(p.alpha), 0.0);
}

/// f_{(1)^m}; negative m gives the (expanding) inverse powers.
inline Similarity f1_power(const ModelParams& p, int m) {
  const Similarity base = m >= 0 ? f1(p) : f1(p).inverse();
  Similarity out;
  for (int i = 0; i < std::abs(m); ++i) out = out * base;
  return out;
}

/// g^m for any integer m.
inline Similarity g_power(const ModelParams& p, int m) {
  const Similarity base = m >= 0 ? g_map(p) : g_map(p).inverse();
  Similarity out;
  for (int i = 0; i < std::abs(m); ++i) out = out * base;
  return out;
}

enum class NamedMap { psi, tau, g, reflect_r, f1_power };

inline PlaneMap named_map(const ModelParams& p, NamedMap name, int m = 1) {
  switch (name) {
    case NamedMap::psi: return psi(p);
    case NamedMap::tau: return tau(p);
    case NamedMap::g: return g_map(p);
    case NamedMap::reflect_r: return reflect_r(p);
    case NamedMap::f1_power: return f1_power(p, m);
  }
  throw std::invalid_argument("unknown map");
}

/// Vertex list of the renormalized broken line D_k (2^k + 1 vertices).
struct Polyline {
  std::vector<Point> vertices;
  int order = 0;
  double xi = 0.0;

  std::size_t segment_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

inline constexpr int kDefaultMaxOrder = 24;

/// D_k = f1(D_{k-1}) followed by f2(D_{k-1}) traversed backwards; the two
/// halves share the joint alpha.
inline Polyline curve(const ModelParams& p, int k, int max_order = kDefaultMaxOrder) {
  if (k < 0 || k > max_order)
    throw RangeError("order must be in [0, " + std::to_string(max_order) + "], got " +
                     std::to_string(k));
  const Similarity m1 = f1(p);
  const Similarity m2 = f2(p);
  std::vector<Point> cur{Point{0.0, 0.0}, Point{1.0, 0.0}};
  cur.reserve((std::size_t{1} << k) + 1);
  std::vector<Point> next;
  next.reserve(cur.capacity());
  for (int level = 0; level < k; ++level) {
    next.clear();
    for (Point z : cur) next.push_back(m1(z));
    for (std::size_t i = cur.size() - 1; i-- > 0;) next.push_back(m2(cur[i]));
    std::swap(cur, next);
  }
  return Polyline{std::move(cur), k, p.xi};
}

}  // namespace dragon
