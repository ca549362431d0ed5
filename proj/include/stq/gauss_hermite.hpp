#pragma once

#include <functional>
#include <vector>

namespace stq {

// Nodes/weights for ∫ f(x) e^{-x^2} dx with `npoints` nodes. Roots located by
// Sturm-sequence bisection on the Jacobi matrix, polished by Newton on the
// orthonormal recurrence (long double); cached per node count.
struct GaussHermiteRule {
  std::vector<long double> x;
  std::vector<long double> w;
};

const GaussHermiteRule& gauss_hermite_rule(int npoints);

struct QuadResult {
  double value = 0.0;
  bool accurate = true;  // false when adaptive refinement still disagrees > 1e-8
};

// E[f(G)], G ~ N(0,1), adaptively refined over node counts
// 201 → 401 → 801 → 1601 → 3201 until successive estimates agree to 1e-9.
QuadResult gauss_expectation(const std::function<double(double)>& f);

}  // namespace stq
