#include <doctest.h>

#include "tldp/geometry.hpp"

using namespace tldp;

TEST_CASE("linf_distance") {
  CHECK(linf_distance(Point{0, 0, 0}, Point{0, 0, 0}) == 0.0);
  CHECK(linf_distance(Point{0.1, 0.2, 0.3}, Point{0.4, 0.2, 0.3}) == doctest::Approx(0.3));
  CHECK(linf_distance(Point{0, 1}, Point{1, 0}) == 1.0);
  CHECK_THROWS_AS(linf_distance(Point{0, 1}, Point{1, 0, 0}), DimensionError);
}

TEST_CASE("contains is closed") {
  CHECK(contains(Ball{{0.5, 0.5}, 0.5}, Point{1.0, 0.0}));
  CHECK_FALSE(contains(Ball{{0.5, 0.5}, 0.25}, Point{0.8, 0.5}));
  const Ball b{{0.3, 0.7, 0.1}, 0.125};
  CHECK(contains(b, b.center));
}

TEST_CASE("contains agrees with linf_distance") {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    Ball b{{rng.uniform(), rng.uniform(), rng.uniform()}, 0.5 * rng.uniform() + 1e-3};
    Point z{rng.uniform(), rng.uniform(), rng.uniform()};
    CHECK(contains(b, z) == (linf_distance(b.center, z) <= b.radius));
  }
}

TEST_CASE("price_slice") {
  const auto full = price_slice(Ball{{0.5, 0.5}, 0.5}, Point{0.5});
  REQUIRE(full.intervals().size() == 1);
  CHECK(full.intervals()[0] == Interval{0.0, 1.0});

  CHECK(price_slice(Ball{{0.5, 0.5}, 0.1}, Point{0.7}).empty());

  const auto clipped = price_slice(Ball{{0.5, 0.9}, 0.2}, Point{0.5});
  REQUIRE(clipped.intervals().size() == 1);
  CHECK(clipped.intervals()[0].lo == doctest::Approx(0.7));
  CHECK(clipped.intervals()[0].hi == 1.0);

  CHECK_THROWS_AS(price_slice(Ball{{0.5, 0.5, 0.5}, 0.1}, Point{0.5}), DimensionError);
}

TEST_CASE("domain_slice") {
  const Ball root{{0.5, 0.5}, 1.0};

  SUBCASE("root alone keeps its slice") {
    const std::vector<Ball> active{root};
    const auto dom = domain_slice(root, active, Point{0.2});
    REQUIRE(dom.intervals().size() == 1);
    CHECK(dom.intervals()[0] == Interval{0.0, 1.0});
  }
  SUBCASE("a covering child removes everything") {
    const std::vector<Ball> active{root, Ball{{0.5, 0.5}, 0.5}};
    CHECK(domain_slice(root, active, Point{0.5}).length() == 0.0);
  }
  SUBCASE("a small child cuts a hole") {
    const std::vector<Ball> active{root, Ball{{0.3, 0.3}, 0.25}};
    const auto dom = domain_slice(root, active, Point{0.3});
    REQUIRE(dom.intervals().size() == 2);
    CHECK(dom.intervals()[0].lo == 0.0);
    CHECK(dom.intervals()[0].hi == doctest::Approx(0.05));
    CHECK(dom.intervals()[1].lo == doctest::Approx(0.55));
    CHECK(dom.intervals()[1].hi == 1.0);
    CHECK(dom.length() == doctest::Approx(0.5));
  }
  SUBCASE("equal-radius balls do not subtract each other") {
    const Ball a{{0.5, 0.3}, 0.25};
    const Ball b{{0.5, 0.6}, 0.25};
    const std::vector<Ball> active{root, a, b};
    CHECK(domain_slice(a, active, Point{0.5}).length() == doctest::Approx(0.5));
  }
}

TEST_CASE("domain_slice stays inside price_slice") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Ball> active{Ball::root(1)};
    double r = 0.5;
    for (int k = 0; k < 6; ++k) {
      active.push_back(Ball{{rng.uniform(), rng.uniform()}, r});
      if (rng.uniform() < 0.5) r /= 2.0;
    }
    const Point x{rng.uniform()};
    for (const auto& b : active) {
      const auto slice = price_slice(b, x);
      const auto dom = domain_slice(b, active, x);
      CHECK(dom.length() <= slice.length() + 1e-15);
      for (int s = 0; s < 50; ++s) {
        const double p = rng.uniform();
        if (dom.contains(p)) CHECK(slice.contains(p));
      }
    }
  }
}

TEST_CASE("IntervalUnion add and subtract") {
  IntervalUnion u;
  u.add({0.5, 0.6});
  u.add({0.1, 0.2});
  u.add({0.15, 0.55});
  REQUIRE(u.intervals().size() == 1);
  CHECK(u.intervals()[0] == Interval{0.1, 0.6});

  u.subtract(Interval{0.2, 0.3});
  REQUIRE(u.intervals().size() == 2);
  CHECK(u.intervals()[0] == Interval{0.1, 0.2});
  CHECK(u.intervals()[1] == Interval{0.3, 0.6});

  // Zero-length residues vanish.
  u.subtract(Interval{0.1, 0.2});
  REQUIRE(u.intervals().size() == 1);
  CHECK(u.length() == doctest::Approx(0.3));
}

TEST_CASE("sample_uniform") {
  CHECK(sample_uniform(IntervalUnion(Interval{0.0, 1.0}), 0.37) == doctest::Approx(0.37));

  IntervalUnion two(Interval{0.0, 0.2});
  two.add({0.8, 1.0});
  CHECK(sample_uniform(two, 0.6) == doctest::Approx(0.84));

  Rng rng(3);
  CHECK_THROWS_AS(sample_uniform(IntervalUnion{}, rng), DegenerateDomainError);
  CHECK_THROWS_AS(sample_uniform(IntervalUnion(Interval{0.3, 0.3}), rng), DegenerateDomainError);

  SUBCASE("draws land inside the union and follow Lebesgue measure") {
    int in_second = 0;
    constexpr int n = 100000;
    for (int i = 0; i < n; ++i) {
      const double p = sample_uniform(two, rng);
      CHECK(two.contains(p));
      if (p >= 0.8) ++in_second;
    }
    CHECK(static_cast<double>(in_second) / n == doctest::Approx(0.5).epsilon(0.02));
  }
}
