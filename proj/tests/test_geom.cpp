#include <random>

#include <catch_amalgamated.hpp>

#include "sslkit/geom.hpp"

using namespace sslkit;
using Catch::Approx;

TEST_CASE("wrap_angle lands in (-pi, pi]") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(kPi) == Approx(kPi));
  CHECK(wrap_angle(-kPi) == Approx(kPi));
  CHECK(wrap_angle(3.0 * kPi) == Approx(kPi));
  CHECK(wrap_angle(2.0 * kPi) == Approx(0.0).margin(1e-12));
  CHECK(wrap_angle(-0.5) == Approx(-0.5));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 1000; ++i) {
    double w = wrap_angle(u(rng));
    CHECK(w > -kPi);
    CHECK(w <= kPi);
  }
}

TEST_CASE("angle_between basic values") {
  CHECK(angle_between({1, 0}, {1, 0}) == Approx(0.0).margin(1e-12));
  CHECK(angle_between({1, 0}, {0, 1}) == Approx(kPi / 2));
  // acos of the normalized dot product: dot = -1, norms 1 and sqrt(2)
  CHECK(angle_between({1, 0}, {-1, 1}) == Approx(3.0 * kPi / 4));
}

TEST_CASE("angle_between rejects zero-length input") {
  CHECK_THROWS_AS(angle_between({0, 0}, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(angle_between({1, 0}, {0, 0}), std::invalid_argument);
}

TEST_CASE("angle_between is symmetric and scale invariant") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-1000.0, 1000.0);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    Vec2 a{u(rng), u(rng)}, b{u(rng), u(rng)};
    if (a.is_zero() || b.is_zero()) continue;
    ++checked;
    double ab = angle_between(a, b);
    REQUIRE(ab == Approx(angle_between(b, a)).margin(1e-12));
    REQUIRE(ab >= 0.0);
    REQUIRE(ab <= kPi);
    double k = scale(rng);
    REQUIRE(angle_between(a * k, b) == Approx(ab).margin(1e-9));
  }
  CHECK(checked > 9900);
}

TEST_CASE("ray_field_exit axis-aligned and diagonal") {
  FieldGeometry field;  // 12000 x 9000
  Vec2 e1 = ray_field_exit({0, 0}, {1, 0}, field);
  CHECK(e1.x == Approx(6000.0));
  CHECK(e1.y == Approx(0.0).margin(1e-12));

  Vec2 e2 = ray_field_exit({0, 0}, {0, -1}, field);
  CHECK(e2.x == Approx(0.0).margin(1e-12));
  CHECK(e2.y == Approx(-4500.0));

  // parametric intersection with both boundary lines, min positive parameter
  Vec2 e3 = ray_field_exit({3000, 2000}, {1, 1}, field);
  CHECK(e3.x == Approx(5500.0));
  CHECK(e3.y == Approx(4500.0));
}

TEST_CASE("ray_field_exit rejects bad input") {
  FieldGeometry field;
  CHECK_THROWS_AS(ray_field_exit({7000, 0}, {1, 0}, field),
                  std::invalid_argument);
  CHECK_THROWS_AS(ray_field_exit({0, 0}, {0, 0}, field),
                  std::invalid_argument);
}

TEST_CASE("ray_field_exit output lies on the boundary") {
  FieldGeometry field{10000.0, 7000.0};
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> px(-4999.0, 4999.0);
  std::uniform_real_distribution<double> py(-3499.0, 3499.0);
  std::uniform_real_distribution<double> dir(-kPi, kPi);
  for (int i = 0; i < 10000; ++i) {
    Vec2 origin{px(rng), py(rng)};
    double a = dir(rng);
    Vec2 exit = ray_field_exit(origin, {std::cos(a), std::sin(a)}, field);
    bool on_x = std::abs(std::abs(exit.x) - field.half_length()) <= 1e-6;
    bool on_y = std::abs(std::abs(exit.y) - field.half_width()) <= 1e-6;
    REQUIRE((on_x || on_y));
    REQUIRE(field.contains(exit, 1e-6));
  }
}

TEST_CASE("field containment is closed") {
  FieldGeometry field;
  CHECK(field.contains({6000, 4500}));
  CHECK(field.contains({-6000, 0}));
  CHECK_FALSE(field.contains({6000.001, 0}));
}
