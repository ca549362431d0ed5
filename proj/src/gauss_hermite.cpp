#include "stq/gauss_hermite.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace stq {

namespace {

// Orthonormal Hermite recurrence: returns p_m(x); sets pp = p_m'(x) via
// p_m' = √(2m)·p_{m-1}.
long double hermite_eval(int m, long double x, long double& pp) {
  const long double pim4 = 0.7511255444649424828587030047762276930510L;  // π^{-1/4}
  long double p1 = pim4, p2 = 0.0L;
  for (int j = 1; j <= m; ++j) {
    long double p3 = p2;
    p2 = p1;
    p1 = x * std::sqrt(2.0L / j) * p2 - std::sqrt((long double)(j - 1) / j) * p3;
  }
  pp = std::sqrt(2.0L * m) * p2;
  return p1;
}

// Number of eigenvalues of the m×m Hermite Jacobi matrix (diag 0, off-diag
// √(j/2)) strictly below x, via the Sturm sequence.
int sturm_count_less(int m, long double x) {
  int count = 0;
  long double qprev = -x;
  if (qprev < 0.0L) ++count;
  for (int j = 1; j < m; ++j) {
    long double b2 = 0.5L * j;  // e_j² = j/2
    long double denom = qprev;
    if (denom == 0.0L) denom = 1e-300L;
    long double qcur = -x - b2 / denom;
    if (qcur < 0.0L) ++count;
    qprev = qcur;
  }
  return count;
}

GaussHermiteRule build_rule(int m) {
  if (m < 2) throw std::invalid_argument("need at least 2 quadrature points");
  GaussHermiteRule rule;
  rule.x.assign(m, 0.0L);
  rule.w.assign(m, 0.0L);
  const long double bound = std::sqrt(2.0L * m + 1.0L) + 1.0L;
  const int half = m / 2;
  for (int i = 0; i < half; ++i) {
    // i-th largest root = (m-1-i)-th smallest eigenvalue; locate by bisection,
    // then polish with Newton on the recurrence.
    int target = m - 1 - i;
    long double lo = 0.0L, hi = bound;
    for (int it = 0; it < 60; ++it) {
      long double mid = 0.5L * (lo + hi);
      if (sturm_count_less(m, mid) <= target)
        lo = mid;
      else
        hi = mid;
    }
    long double z = 0.5L * (lo + hi);
    long double pp = 0.0L;
    for (int it = 0; it < 8; ++it) {
      long double p = hermite_eval(m, z, pp);
      long double dz = p / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-19L * std::max(1.0L, std::abs(z))) break;
    }
    hermite_eval(m, z, pp);
    rule.x[i] = z;
    rule.x[m - 1 - i] = -z;
    rule.w[i] = 2.0L / (pp * pp);
    rule.w[m - 1 - i] = rule.w[i];
  }
  if (m % 2 == 1) {
    long double pp = 0.0L;
    hermite_eval(m, 0.0L, pp);
    rule.x[half] = 0.0L;
    rule.w[half] = 2.0L / (pp * pp);
  }
  return rule;
}

std::map<int, GaussHermiteRule> g_cache;
std::mutex g_cache_mutex;

}  // namespace

const GaussHermiteRule& gauss_hermite_rule(int npoints) {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = g_cache.find(npoints);
  if (it == g_cache.end()) it = g_cache.emplace(npoints, build_rule(npoints)).first;
  return it->second;
}

QuadResult gauss_expectation(const std::function<double(double)>& f) {
  static const int counts[] = {201, 401, 801, 1601, 3201};
  const long double sqrt2 = 1.41421356237309504880168872420969807857L;
  const long double invsqrtpi = 0.5641895835477562869480794515607725858441L;
  double prev = 0.0, est = 0.0;
  bool have_prev = false;
  for (int m : counts) {
    const GaussHermiteRule& rule = gauss_hermite_rule(m);
    long double acc = 0.0L;
    for (int i = 0; i < m; ++i) acc += rule.w[i] * (long double)f(double(sqrt2 * rule.x[i]));
    prev = est;
    est = double(acc * invsqrtpi);
    if (have_prev && std::abs(est - prev) <= 1e-9 * std::max(1.0, std::abs(est)))
      return {est, true};
    have_prev = true;
  }
  bool ok = std::abs(est - prev) <= 1e-8 * std::max(1.0, std::abs(est));
  return {est, ok};
}

}  // namespace stq
