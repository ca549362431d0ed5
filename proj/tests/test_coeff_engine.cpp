// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "stq/analytic.hpp"
#include "stq/coeff_engine.hpp"

using namespace stq;

TEST_CASE("depth-1 tables reproduce the closed-form law") {
  for (int q : {2, 3, 5})
    for (double gamma : {0.1, 0.22, 0.35, 0.5, 0.8})
      for (double beta : {0.3, 0.6, 0.785, 1.1, 1.4}) {
        auto tab = coeff_engine(1, q, {gamma}, {beta});
        auto law = sine_gaussian_law_p1(q, gamma, beta, 1.0);
        CHECK(std::abs(std::abs(tab.a[0]) - std::abs(law.a)) < 1e-12);
        CHECK(std::abs(tab.b[0] - law.b) < 1e-12);
      }
}

TEST_CASE("depth-2 coefficients at the symmetric point") {
  // frozen numerics for the symmetric angles gamma_r = 1/(2 sqrt q), beta_r = pi/4
  CHECK(p2_symmetric_a2(2) == doctest::Approx(0.713614278491).epsilon(1e-10));
  CHECK(p2_symmetric_b2(2) == doctest::Approx(1.21306131943).epsilon(1e-10));
  CHECK(p2_symmetric_a2(3) == doctest::Approx(0.393054992715).epsilon(1e-10));
  CHECK(p2_symmetric_b2(3) == doctest::Approx(1.91155764951).epsilon(1e-10));

  for (int q : {2, 3}) {
    double g = 1.0 / (2.0 * std::sqrt(double(q)));
    double b = std::numbers::pi / 4;
    auto tab = coeff_engine(2, q, {g, g}, {b, b});
    CHECK(std::abs(tab.a[1]) == doctest::Approx(p2_symmetric_a2(q)).epsilon(1e-10));
    CHECK(tab.b[1] == doctest::Approx(p2_symmetric_b2(q)).epsilon(1e-10));
  }
}

TEST_CASE("depth-2 coefficients at general angles") {
  struct Pt {
    int q;
    double g1, g2, b1, b2;
  };
  for (auto [q, g1, g2, b1, b2] : {Pt{2, 0.2, 0.3, 0.6, 0.9},
                                   Pt{3, 0.15, 0.28, 0.5, 1.1},
                                   Pt{3, 0.3, 0.12, 1.0, 0.4},
                                   Pt{4, 0.2, 0.2, 0.785, 0.785},
                                   Pt{5, 0.1, 0.25, 0.7, 1.3}}) {
    auto tab = coeff_engine(2, q, {g1, g2}, {b1, b2});
    auto a2 = p2_closed_form_a2(q, g1, g2, b1, b2);
    CHECK(std::abs(tab.a[1] + a2) < 1e-10);  // engine sign convention is -a2
    CHECK(tab.b[1] == doctest::Approx(p2_closed_form_b2(q, g1, g2, b1)).epsilon(1e-10));
  }
}

TEST_CASE("interaction matrices are symmetric and f sums to one") {
  auto tab = coeff_engine(3, 3, {0.2, 0.25, 0.3}, {0.7, 0.8, 0.9});
  int d = 2 * tab.p + 1;
  for (const auto& h : tab.H) {
    REQUIRE(int(h.size()) == d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        CHECK(std::abs(h[i * d + j] - h[j * d + i]) < 1e-12);
  }
  std::complex<double> total = 0;
  for (auto v : tab.f) total += v;
  CHECK(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("depth cap guards the exponential configuration sum") {
  std::vector<double> g(8, 0.2), b(8, 0.7);
  CHECK_THROWS_AS((void)coeff_engine(8, 3, g, b), CapacityError);
}

TEST_CASE("angle-count validation") {
  CHECK_THROWS_AS((void)coeff_engine(2, 3, {0.2}, {0.7, 0.8}), ValidationError);
  CHECK_THROWS_AS((void)coeff_engine(2, 3, {0.2, 0.3}, {0.7}), ValidationError);
}

TEST_CASE("depth-1 enhancement factor") {
  for (int q : {2, 3, 4, 6}) {
    double g = 1.0 / (2.0 * std::sqrt(double(q)));
    CHECK(enhancement_factor(1, q, {g}, {std::numbers::pi / 4}) ==
          doctest::Approx(std::sqrt(q / std::exp(1.0))).epsilon(1e-12));
    CHECK(enhancement_factor(1, q, {g}, {std::numbers::pi / 2}) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }
}
