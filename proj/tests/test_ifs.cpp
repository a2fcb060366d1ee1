#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "dragon/ifs.hpp"
#include "support.hpp"

using namespace dragon;
using dragon::test::kPi;
using dragon::test::random_point;
using dragon::test::rel_err;
using dragon::test::uniform;

namespace {

double random_xi() { return uniform(1e-3, kPi / 3 - 1e-3); }

/// Independent curve construction from the folding turn sequence:
/// T_k = T_{k-1}, +2xi, -reverse(T_{k-1}), walked from 0 with step x^{-k}.
std::vector<Point> curve_by_turns(double xi, int k) {
  std::vector<double> turns;
  for (int level = 0; level < k; ++level) {
    std::vector<double> next = turns;
    next.push_back(2 * xi);
    for (auto it = turns.rbegin(); it != turns.rend(); ++it) next.push_back(-*it);
    turns = std::move(next);
  }
  const double step = std::pow(2 * std::cos(xi), -k);
  double heading = -k * xi;
  std::vector<Point> pts{0.0};
  pts.push_back(pts.back() + std::polar(step, heading));
  for (double t : turns) {
    heading += t;
    pts.push_back(pts.back() + std::polar(step, heading));
  }
  return pts;
}

/// Iterate f from z until it stops moving.
Point iterate_to_convergence(const Similarity& f, Point z) {
  for (int i = 0; i < 100000; ++i) {
    const Point next = f(z);
    if (std::abs(next - z) < 1e-16) return next;
    z = next;
  }
  return z;
}

}  // namespace

TEST(Params, StraightLineCase) {
  const auto p = make_params(0.0);
  EXPECT_DOUBLE_EQ(p.alpha.real(), 0.5);
  EXPECT_DOUBLE_EQ(p.alpha.imag(), 0.0);
  EXPECT_DOUBLE_EQ(p.theta, kPi);
  EXPECT_NEAR(std::abs(f2(p)(0.3) - (-0.15 + 1.0)), 0.0, 1e-16);
}

TEST(Params, Heighway) {
  const auto p = make_params(kPi / 4);
  EXPECT_NEAR(std::abs(p.alpha - Point(0.5, -0.5)), 0.0, 1e-15);
  EXPECT_NEAR(p.alpha_abs2(), 0.5, 1e-15);
}

TEST(Params, RangeIsHalfOpen) {
  EXPECT_THROW(make_params(kPi / 3), RangeError);
  EXPECT_THROW(make_params(-1e-9), RangeError);
  EXPECT_THROW(make_params(std::nan("")), RangeError);
  EXPECT_NO_THROW(make_params(std::nextafter(kPi / 3, 0.0)));
}

TEST(Params, Invariants) {
  for (int i = 0; i < 200; ++i) {
    const auto p = make_params(random_xi());
    EXPECT_NEAR(std::abs(p.alpha + std::conj(p.alpha) - 1.0), 0.0, 1e-14);
    EXPECT_GE(std::abs(p.alpha), 0.5 - 1e-15);
    EXPECT_LT(std::abs(p.alpha), 1.0);
    if (p.xi < kPi / 4) {
      EXPECT_LT(std::abs(p.alpha), 1 / std::sqrt(2.0));
      const double a2 = p.alpha_abs2();
      EXPECT_GT(1 - a2 - a2 * a2, 0.25);
    }
  }
}

TEST(Params, DegreeConversionRoundTrips) {
  EXPECT_NEAR(xi_from_theta_deg(90), kPi / 4, 1e-15);
  EXPECT_NEAR(theta_deg_from_xi(kPi / 6), 120, 1e-12);
}

TEST(Word, Parse) {
  const Word w = Word::parse("12(2211)");
  EXPECT_EQ(w.prefix(), (std::vector<std::uint8_t>{1, 2}));
  EXPECT_EQ(w.period(), (std::vector<std::uint8_t>{2, 2, 1, 1}));
  EXPECT_EQ(w.str(), "12(2211)");
  EXPECT_TRUE(Word::parse("").is_finite());
  EXPECT_THROW(Word::parse("13"), std::invalid_argument);
  EXPECT_THROW(Word::parse("1()"), std::invalid_argument);
  EXPECT_THROW(Word::parse("1(2"), std::invalid_argument);
  EXPECT_THROW(Word::parse("(1)2"), std::invalid_argument);
  EXPECT_THROW(Word::parse("(1)(2)"), std::invalid_argument);
}

TEST(MapOfWord, TwoLetterClosedForms) {
  for (int i = 0; i < 100; ++i) {
    const auto p = make_params(random_xi());
    const Point a = p.alpha;
    const double a2 = p.alpha_abs2();
    const Point z = random_point();
    EXPECT_LT(rel_err(map_of_word(p, "21")(z), -a2 * z + 1.0), 1e-14);
    EXPECT_LT(rel_err(map_of_word(p, "12")(z), -a2 * z + a), 1e-14);
    EXPECT_LT(rel_err(map_of_word(p, "22")(z), std::conj(a) * std::conj(a) * z + a), 1e-14);
  }
}

TEST(MapOfWord, EmptyWordIsIdentityAndOrderIsOutermostFirst) {
  const auto p = make_params(0.3);
  const Point z{0.3, -0.7};
  EXPECT_EQ(map_of_word(p, "")(z), z);
  EXPECT_LT(std::abs(map_of_word(p, "12")(z) - f1(p)(f2(p)(z))), 1e-15);
}

TEST(MapOfWord, CoefficientIsProductOfLetters) {
  for (int i = 0; i < 100; ++i) {
    const auto p = make_params(random_xi());
    std::string w;
    const int len = 1 + static_cast<int>(uniform(0, 8));
    Point prod = 1.0;
    for (int j = 0; j < len; ++j) {
      const bool one = uniform(0, 1) < 0.5;
      w.push_back(one ? '1' : '2');
      prod *= one ? p.alpha : -std::conj(p.alpha);
    }
    EXPECT_LT(std::abs(map_of_word(p, w).coefficient() - prod), 1e-15);
  }
}

TEST(FixedPoint, Examples) {
  for (int i = 0; i < 50; ++i) {
    const auto p = make_params(random_xi());
    EXPECT_LT(std::abs(fixed_point(p, "1")), 1e-300);
    const double a4 = p.alpha_abs2() * p.alpha_abs2();
    EXPECT_LT(rel_err(fixed_point(p, "2211"), p.alpha / (1 - a4)), 1e-14);
  }
  const auto h = make_params(kPi / 4);
  const Point iterated = iterate_to_convergence(map_of_word(h, "2211"), 0.0);
  EXPECT_LT(std::abs(iterated - Point(2.0 / 3, -2.0 / 3)), 1e-14);
  EXPECT_LT(std::abs(fixed_point(h, "2211") - iterated), 1e-14);
}

TEST(FixedPoint, Errors) {
  const auto p = make_params(0.4);
  EXPECT_THROW(fixed_point(p, ""), std::invalid_argument);
  EXPECT_THROW(fixed_point(p, Word::parse("(12)")), std::invalid_argument);
  EXPECT_THROW(f1_power(p, -2).fixed_point(), GeometryError);
}

TEST(FixedPoint, PeriodicLinearForm) {
  for (int i = 0; i < 200; ++i) {
    const auto p = make_params(random_xi());
    std::string w;
    const int len = 1 + static_cast<int>(uniform(0, 8));
    for (int j = 0; j < len; ++j) w.push_back(uniform(0, 1) < 0.5 ? '1' : '2');
    const Similarity f = map_of_word(p, w);
    const Point fp = fixed_point(p, w);
    EXPECT_LT(rel_err(f(fp), fp), 1e-12);
    const Point z = random_point();
    EXPECT_LT(rel_err(f(z), f.coefficient() * (z - fp) + fp), 1e-12);
  }
}

TEST(LimitPoint, JointAndEndpoints) {
  for (int i = 0; i < 50; ++i) {
    const auto p = make_params(random_xi());
    EXPECT_LT(std::abs(limit_point(p, "2(1)") - 1.0), 1e-15);
    EXPECT_LT(std::abs(limit_point(p, "12(1)") - p.alpha), 1e-15);
    EXPECT_LT(std::abs(limit_point(p, "22(1)") - p.alpha), 1e-15);
  }
  const auto h = make_params(kPi / 4);
  EXPECT_LT(std::abs(limit_point(h, "1(2211)") - f1(h)(fixed_point(h, "2211"))), 1e-15);
  EXPECT_THROW(limit_point(h, "12"), std::invalid_argument);
}

TEST(NamedMaps, Identities) {
  for (int i = 0; i < 200; ++i) {
    const auto p = make_params(random_xi());
    const Point z = random_point();
    EXPECT_LT(rel_err(f2(p)(z), psi(p)(f1(p)(z))), 1e-12);
    EXPECT_LT(rel_err(f2(p)(tau(p)(z)), f1(p)(psi(p)(z))), 1e-12);
    EXPECT_LT(std::abs(g_map(p)(p.alpha) - p.alpha), 1e-15);
    const Point w = reflect_r(p)(z);
    EXPECT_LT(rel_err(reflect_r(p)(w), z), 1e-12);
    EXPECT_NEAR(std::abs(w), std::abs(z), 1e-12);
  }
}

TEST(NamedMaps, ReflectionFixesItsAxis) {
  const auto p = make_params(0.6);
  const Point z0 = fixed_point(p, "2211");
  EXPECT_LT(std::abs(reflect_r(p)(z0) - z0), 1e-15);
  EXPECT_LT(std::abs(reflect_r(p)(-0.3 * z0) - (-0.3 * z0)), 1e-15);
}

TEST(NamedMaps, PowersAndVariant) {
  const auto p = make_params(0.5);
  const Point z{0.2, 0.9};
  EXPECT_LT(std::abs(f1_power(p, 3)(z) - map_of_word(p, "111")(z)), 1e-15);
  EXPECT_LT(std::abs(f1_power(p, -2)(map_of_word(p, "11")(z)) - z), 1e-14);
  EXPECT_EQ(f1_power(p, 0)(z), z);
  EXPECT_LT(std::abs(g_power(p, 2)(z) - g_map(p)(g_map(p)(z))), 1e-15);
  EXPECT_LT(std::abs(apply_map(named_map(p, NamedMap::f1_power, -1), z) - z / p.alpha), 1e-14);
  EXPECT_TRUE(std::holds_alternative<AntiSimilarity>(named_map(p, NamedMap::reflect_r)));
  EXPECT_LT(std::abs(apply_map(named_map(p, NamedMap::tau), z) - (z + 1.0)), 1e-15);
}

TEST(NamedMaps, MixedCompositions) {
  const auto p = make_params(0.5);
  const auto r = reflect_r(p);
  const auto s = psi(p);
  const Point z{0.4, -0.1};
  EXPECT_LT(std::abs((s * r)(z) - s(r(z))), 1e-15);
  EXPECT_LT(std::abs((r * s)(z) - r(s(z))), 1e-15);
  EXPECT_LT(std::abs((r * r)(z) - z), 1e-15);
}

TEST(Curve, SmallOrders) {
  const auto p = make_params(0.4);
  const auto d0 = curve(p, 0);
  ASSERT_EQ(d0.vertices.size(), 2u);
  EXPECT_EQ(d0.vertices[0], Point(0.0));
  EXPECT_EQ(d0.vertices[1], Point(1.0));
  const auto d1 = curve(p, 1);
  ASSERT_EQ(d1.vertices.size(), 3u);
  EXPECT_LT(std::abs(d1.vertices[1] - p.alpha), 1e-16);
  EXPECT_NEAR(std::abs(angle(d1.vertices[0], d1.vertices[1], d1.vertices[2])), p.theta, 1e-14);
}

TEST(Curve, HeighwayOrderThree) {
  const auto d3 = curve(make_params(kPi / 4), 3);
  ASSERT_EQ(d3.vertices.size(), 9u);
  for (std::size_t i = 0; i + 1 < d3.vertices.size(); ++i)
    EXPECT_NEAR(std::abs(d3.vertices[i + 1] - d3.vertices[i]), std::pow(2.0, -1.5), 1e-15);
}

TEST(Curve, MatchesTurnSequenceOracle) {
  for (int i = 0; i < 30; ++i) {
    const double xi = random_xi();
    const auto p = make_params(xi);
    for (int k : {0, 1, 2, 5, 9}) {
      const auto d = curve(p, k);
      const auto o = curve_by_turns(xi, k);
      ASSERT_EQ(d.vertices.size(), o.size());
      for (std::size_t j = 0; j < o.size(); ++j) EXPECT_LT(std::abs(d.vertices[j] - o[j]), 1e-12);
    }
  }
}

TEST(Curve, Invariants) {
  for (int i = 0; i < 30; ++i) {
    const auto p = make_params(random_xi());
    const int k = 10;
    const auto d = curve(p, k);
    ASSERT_EQ(d.vertices.size(), (1u << k) + 1);
    EXPECT_EQ(d.vertices.front(), Point(0.0));
    EXPECT_LT(std::abs(d.vertices.back() - 1.0), 1e-12);
    const double len = std::pow(p.x, -k);
    for (std::size_t j = 0; j + 1 < d.vertices.size(); ++j)
      ASSERT_NEAR(std::abs(d.vertices[j + 1] - d.vertices[j]) / len, 1.0, 1e-12);
    for (std::size_t j = 1; j + 1 < d.vertices.size(); ++j) {
      const double turn =
          std::arg((d.vertices[j + 1] - d.vertices[j]) / (d.vertices[j] - d.vertices[j - 1]));
      ASSERT_NEAR(std::abs(turn), 2 * p.xi, 1e-10);
    }
  }
}

TEST(Curve, RefinementGivesSegmentMultiset) {
  for (int i = 0; i < 10; ++i) {
    const auto p = make_params(random_xi());
    const auto prev = curve(p, 7).vertices;
    const auto cur = curve(p, 8).vertices;
    std::vector<std::pair<Point, Point>> mapped;
    for (std::size_t j = 0; j + 1 < prev.size(); ++j)
      for (const Similarity& f : {f1(p), f2(p)}) mapped.emplace_back(f(prev[j]), f(prev[j + 1]));
    ASSERT_EQ(mapped.size(), cur.size() - 1);
    std::vector<bool> used(mapped.size(), false);
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      bool found = false;
      for (std::size_t m = 0; m < mapped.size() && !found; ++m) {
        if (used[m]) continue;
        const auto [a, b] = mapped[m];
        const bool same = (std::abs(a - cur[j]) < 1e-12 && std::abs(b - cur[j + 1]) < 1e-12) ||
                          (std::abs(b - cur[j]) < 1e-12 && std::abs(a - cur[j + 1]) < 1e-12);
        if (same) used[m] = found = true;
      }
      EXPECT_TRUE(found) << "segment " << j;
    }
  }
}

TEST(Curve, NextOrderStaysClose) {
  for (int i = 0; i < 10; ++i) {
    const auto p = make_params(random_xi());
    const int k = 6;
    const auto dk = curve(p, k).vertices;
    const auto dk1 = curve(p, k + 1).vertices;
    const double bound = std::pow(p.x, -k);
    for (Point v : dk1) {
      double best = 1e300;
      for (std::size_t j = 0; j + 1 < dk.size(); ++j)
        best = std::min(best, std::abs(v - closest_on_segment(v, dk[j], dk[j + 1])));
      EXPECT_LE(best, bound);
    }
  }
}

TEST(Curve, StraightLineIsCollinear) {
  const auto d = curve(make_params(0.0), 5);
  for (Point v : d.vertices) EXPECT_EQ(v.imag(), 0.0);
}

TEST(Curve, OrderGuard) {
  const auto p = make_params(0.4);
  EXPECT_THROW(curve(p, -1), RangeError);
  EXPECT_THROW(curve(p, 25), RangeError);
  EXPECT_THROW(curve(p, 6, 5), RangeError);
}
