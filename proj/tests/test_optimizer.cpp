// SPDX-License-Identifier: MIT
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "stq/coeff_engine.hpp"
#include "stq/optimizer.hpp"

using namespace stq;

TEST_CASE("depth-1 optimum matches the analytic maximum") {
  // max over angles is sqrt(q/e), attained at gamma = 1/(2 sqrt q), beta = pi/4
  for (int q : {2, 3}) {
    RngStream stream(11, "opt-p1", uint64_t(q));
    auto rep = optimize_enhancement(1, q, 100, stream);
    CHECK(rep.best_value == doctest::Approx(std::sqrt(q / std::exp(1.0))).epsilon(5e-4));
    CHECK(std::abs(rep.best_gammas[0]) ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(double(q)))).epsilon(1e-2));
    double beta = std::fmod(std::abs(rep.best_betas[0]), std::numbers::pi / 2);
    CHECK(std::min(beta, std::numbers::pi / 2 - beta) ==
          doctest::Approx(std::numbers::pi / 4).epsilon(1e-2));
  }
}

TEST_CASE("report is reproducible and internally consistent") {
  RngStream s1(21, "opt-rep");
  RngStream s2(21, "opt-rep");
  auto a = optimize_enhancement(1, 3, 40, s1);
  auto b = optimize_enhancement(1, 3, 40, s2);
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_gammas == b.best_gammas);
  CHECK(a.best_betas == b.best_betas);
  REQUIRE(a.per_start_values.size() == 40);

  double best = *std::max_element(a.per_start_values.begin(), a.per_start_values.end());
  CHECK(a.best_value == doctest::Approx(best).epsilon(1e-12));
  CHECK(a.best_value ==
        doctest::Approx(enhancement_factor(a.p, a.q, a.best_gammas, a.best_betas))
            .epsilon(1e-12));
}

TEST_CASE("more starts never hurt") {
  // start points are drawn up front, so a longer run extends the same sequence
  RngStream s1(33, "opt-mono");
  RngStream s2(33, "opt-mono");
  auto small = optimize_enhancement(1, 4, 10, s1);
  auto large = optimize_enhancement(1, 4, 30, s2);
  CHECK(large.best_value >= small.best_value - 1e-12);
  for (int i = 0; i < 10; ++i)
    CHECK(large.per_start_values[i] == doctest::Approx(small.per_start_values[i]));
}

TEST_CASE("objective symmetry under beta reflection at depth 1") {
  // |a_1 b_1| only sees |sin 2beta|, so beta and pi/2 - beta tie
  for (double g : {0.2, 0.4})
    for (double beta : {0.3, 0.6}) {
      double lhs = enhancement_factor(1, 3, {g}, {beta});
      double rhs = enhancement_factor(1, 3, {g}, {std::numbers::pi / 2 - beta});
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("depth-2 optimization clears the depth-1 ceiling at q=2") {
  RngStream stream(7, "opt-p2");
  auto rep = optimize_enhancement(2, 2, 40, stream);
  CHECK(rep.best_value > 0.96);  // depth-1 ceiling is sqrt(2/e) = 0.8578
}

TEST_CASE("json report carries the key fields") {
  RngStream stream(3, "opt-json");
  auto rep = optimize_enhancement(1, 2, 5, stream);
  auto text = report_to_json(rep);
  CHECK(text.find("\"best_value\"") != std::string::npos);
  CHECK(text.find("\"best_gammas\"") != std::string::npos);
  CHECK(text.find("\"starts\": 5") != std::string::npos);
}
