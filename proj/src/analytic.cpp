#include "stq/analytic.hpp"

#include <cmath>
#include <numbers>

namespace stq {

using c64 = std::complex<double>;

namespace {

double dpow_i(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

double lbinom(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

// e^w - 1 without cancellation for small |w|.
c64 cexpm1(c64 w) {
  if (std::abs(w) < 1e-3)
    return w * (1.0 + w / 2.0 * (1.0 + w / 3.0 * (1.0 + w / 4.0 * (1.0 + w / 5.0))));
  return std::exp(w) - 1.0;
}

// log cosh(y) stable for small |y|.
c64 clogcosh(c64 y) {
  if (std::abs(y) < 0.1) {
    c64 y2 = y * y;
    return y2 * (0.5 + y2 * (-1.0 / 12.0 + y2 * (1.0 / 45.0 - y2 * (17.0 / 2520.0))));
  }
  return std::log(0.5 * (std::exp(y) + std::exp(-y)));
}

// (n^q - (n-2t)^q)/n^{q-1} = n(1 - (1-2t/n)^q), the Gaussian damping exponent.
double damping_arg(int n, int q, int t) {
  return n * (1.0 - dpow_i(1.0 - 2.0 * double(t) / n, q));
}

// Phase argument λγ[(s+k)^q - (s-k)^q]/n^{q-1}.
double phase_arg(int n, int q, double gamma, double lambda, double s, int k) {
  return lambda * gamma * (dpow_i(s + k, q) - dpow_i(s - k, q)) / dpow_i(double(n), q - 1);
}

// Z_{n,t}(k): binomial sum over τ± with complex log-weights.
c64 z_sum(int n, int q, double gamma, double lambda, int t, int k, c64 logA, c64 logB) {
  const int nm = n - t;
  const double ln2 = std::numbers::ln2;
  c64 acc(0.0, 0.0);
  for (int tp = 0; tp <= nm; ++tp) {
    int tm = nm - tp;
    c64 lw = lbinom(nm, tp) - nm * ln2 + double(tp) * logA + double(tm) * logB;
    double ph = phase_arg(n, q, gamma, lambda, double(tp - tm), k);
    acc += std::exp(lw + c64(0.0, ph));
  }
  return acc;
}

// E_{n,t} via the (2t+1)-point DFT of Z_{n,t} and the sin^t weights.
c64 e_term(int n, int q, double gamma, double lambda, int t, c64 logA, c64 logB) {
  const int len = 2 * t + 1;
  std::vector<c64> Z(len);
  for (int k = -t; k <= t; ++k) Z[k + t] = z_sum(n, q, gamma, lambda, t, k, logA, logB);
  c64 acc(0.0, 0.0);
  for (int xi = -t; xi <= t; ++xi) {
    double s = std::sin(2.0 * std::numbers::pi * xi / len);
    double st = dpow_i(s, t);
    if (st == 0.0) continue;
    c64 zhat(0.0, 0.0);
    for (int k = -t; k <= t; ++k) {
      double ang = -2.0 * std::numbers::pi * xi * k / len;
      zhat += c64(std::cos(ang), std::sin(ang)) * Z[k + t];
    }
    acc += st * zhat;
  }
  return acc / double(len);
}

struct MgfSeries {
  c64 stable_t0_m1;  // cosh^n(ζ/n) - 1, evaluated cancellation-free
  c64 rest;          // Σ_{t≥1} terms
  bool converged;
  std::vector<MgfSeriesTerm> terms;
};

MgfSeries mgf_series(int n, int q, double gamma, double beta, double lambda, c64 zeta,
                     double tol) {
  if (std::abs(zeta) > double(n)) throw ValidationError("|zeta| must be <= n");
  MgfSeries out;
  const c64 y = zeta / double(n);
  const double c2 = std::cos(beta) * std::cos(beta);
  const double s2 = std::sin(beta) * std::sin(beta);
  const c64 A = std::exp(y) * c2 + std::exp(-y) * s2;
  const c64 B = std::exp(-y) * c2 + std::exp(y) * s2;
  const c64 logA = std::log(A), logB = std::log(B);
  const c64 shs = std::sinh(y) * std::sin(2.0 * beta);
  out.stable_t0_m1 = cexpm1(double(n) * clogcosh(y));

  // Generic t=0 record (identical value up to roundoff).
  {
    MgfSeriesTerm t0;
    t0.t = 0;
    t0.E = e_term(n, q, gamma, lambda, 0, logA, logB);
    t0.I = t0.E;
    t0.bound = std::exp(std::abs(zeta));
    out.terms.push_back(t0);
  }

  c64 rest(0.0, 0.0);
  out.converged = false;
  const double az = std::abs(zeta);
  double lfact = 0.0;  // log t!
  for (int t = 1; t <= n; ++t) {
    lfact += std::log(double(t));
    double bound = (az > 0.0 ? std::exp(t * std::log(6.0 * az) + az - lfact) : 0.0) * (2 * t + 1);
    c64 E = e_term(n, q, gamma, lambda, t, logA, logB);
    c64 pref = std::exp(lbinom(n, t) - gamma * gamma * damping_arg(n, q, t));
    c64 shp(1.0, 0.0);
    for (int i = 0; i < t; ++i) shp *= shs;
    c64 I = pref * shp * E;
    out.terms.push_back({t, E, I, bound});
    rest += I;
    double mag = std::abs(1.0 + out.stable_t0_m1 + rest);
    if (bound <= tol * std::max(1.0, mag)) {
      out.converged = true;
      break;
    }
  }
  out.rest = rest;
  return out;
}

}  // namespace

double epsilon_p(int p, int q) {
  if (p < 1) throw ValidationError("p must be >= 1");
  if (q < 2) throw ValidationError("q must be >= 2");
  if (q == 2) return 1.0 / p;
  return double(q - 2) / (dpow_i(double(q - 1), p) - 1.0);
}

double rho_ell(int p, int q, int ell) {
  if (ell < 0 || ell > p) throw ValidationError("ell must be in [0, p]");
  if (q == 2) return 0.5 + double(ell) / (2.0 * p);
  double qp = dpow_i(double(q - 1), p);
  double ql = dpow_i(double(q - 1), ell);
  return 0.5 * (qp + ql - 2.0) / (qp - 1.0);
}

double p1_q2_expected_sq_overlap(int n, double gamma, double beta, double lambda) {
  if (n < 2) throw ValidationError("n must be >= 2");
  const double nn = double(n);
  double term2 = (nn - 1.0) / (2.0 * nn) * std::exp(-8.0 * gamma * gamma * (nn - 2.0) / nn) *
                 dpow_i(std::sin(2.0 * beta), 2) *
                 (1.0 - dpow_i(std::cos(8.0 * lambda * gamma / nn), n - 2));
  double term1 = (nn - 1.0) / nn * std::exp(-4.0 * gamma * gamma * (nn - 1.0) / nn) *
                 std::sin(4.0 * beta) * std::sin(4.0 * lambda * gamma / nn) *
                 dpow_i(std::cos(4.0 * lambda * gamma / nn), n - 2);
  return term2 + term1 + 1.0 / nn;
}

MgfResult p1_expected_mgf(int n, int q, double gamma, double beta, double lambda,
                          c64 zeta, double tol) {
  MgfSeries s = mgf_series(n, q, gamma, beta, lambda, zeta, tol);
  MgfResult r;
  r.value = 1.0 + s.stable_t0_m1 + s.rest;
  r.converged = s.converged;
  r.terms = std::move(s.terms);
  return r;
}

c64 p1_expected_mgf_minus_one(int n, int q, double gamma, double beta, double lambda,
                              c64 zeta, double tol) {
  MgfSeries s = mgf_series(n, q, gamma, beta, lambda, zeta, tol);
  return s.stable_t0_m1 + s.rest;
}

double mgf_second_derivative(int n, int q, double gamma, double beta, double lambda,
                             double h) {
  auto central = [&](double hh) {
    c64 plus = p1_expected_mgf_minus_one(n, q, gamma, beta, lambda, c64(hh, 0.0), 1e-14);
    c64 minus = p1_expected_mgf_minus_one(n, q, gamma, beta, lambda, c64(-hh, 0.0), 1e-14);
    return (plus.real() + minus.real()) / (hh * hh);
  };
  double d1 = central(h);
  double d2 = central(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

double p1_expected_sq_overlap_general_q(int n, int q, double gamma, double beta,
                                        double lambda) {
  if (n < 3) throw ValidationError("n must be >= 3");
  const double ln2 = std::numbers::ln2;
  const double nn = double(n);

  // t=0: raw binomial sum of [(s²-n)cos4β + (s²+n)] / (2^{n+1} n²).
  double t0 = 0.0;
  {
    const double c4 = std::cos(4.0 * beta);
    for (int tp = 0; tp <= n; ++tp) {
      double s = 2.0 * tp - nn;
      double wgt = std::exp(lbinom(n, tp) - n * ln2);
      t0 += wgt * ((s * s - nn) * c4 + (s * s + nn));
    }
    t0 /= 2.0 * nn * nn;
  }

  // t=1: δ-bracket sin4β(τ+-τ-)/n² against the (2t+1)=3-point DFT structure.
  double t1 = 0.0;
  {
    c64 acc(0.0, 0.0);
    for (int xi : {-1, 1}) {
      double sw = std::sin(2.0 * std::numbers::pi * xi / 3.0);
      for (int k = -1; k <= 1; ++k) {
        double ang = -2.0 * std::numbers::pi * xi * k / 3.0;
        c64 tw = sw * c64(std::cos(ang), std::sin(ang));
        c64 inner(0.0, 0.0);
        for (int tp = 0; tp <= n - 1; ++tp) {
          double s = 2.0 * tp - (nn - 1.0);
          double wgt = std::exp(lbinom(n - 1, tp) - (n - 1) * ln2);
          double ph = phase_arg(n, q, gamma, lambda, s, k);
          inner += wgt * s * c64(std::cos(ph), std::sin(ph));
        }
        acc += tw * inner;
      }
    }
    t1 = std::sin(4.0 * beta) / (3.0 * nn) *
         std::exp(-gamma * gamma * damping_arg(n, q, 1)) * acc.real();
  }

  // t=2: δ-bracket t(t-1)sin²2β/n² against the 5-point DFT structure.
  double t2 = 0.0;
  {
    c64 acc(0.0, 0.0);
    for (int xi : {-2, -1, 1, 2}) {
      double sw = dpow_i(std::sin(2.0 * std::numbers::pi * xi / 5.0), 2);
      for (int k = -2; k <= 2; ++k) {
        double ang = -2.0 * std::numbers::pi * xi * k / 5.0;
        c64 tw = sw * c64(std::cos(ang), std::sin(ang));
        c64 inner(0.0, 0.0);
        for (int tp = 0; tp <= n - 2; ++tp) {
          double s = 2.0 * tp - (nn - 2.0);
          double wgt = std::exp(lbinom(n - 2, tp) - (n - 2) * ln2);
          double ph = phase_arg(n, q, gamma, lambda, s, k);
          inner += wgt * c64(std::cos(ph), std::sin(ph));
        }
        acc += tw * inner;
      }
    }
    t2 = (nn - 1.0) * dpow_i(std::sin(2.0 * beta), 2) / (5.0 * nn) *
         std::exp(-gamma * gamma * damping_arg(n, q, 2)) * acc.real();
  }

  return t0 + t1 + t2;
}

SineGaussianLaw sine_gaussian_law_p1(int q, double gamma, double beta, double Lambda) {
  SineGaussianLaw law;
  law.a = std::exp(-2.0 * q * gamma * gamma) * std::sin(2.0 * beta);
  law.b = 2.0 * q * gamma;
  law.gpow = q - 1;
  law.eps = 1.0;
  law.Lambda = Lambda;
  return law;
}

double sine_gaussian_sample(const SineGaussianLaw& law, double g) {
  double c = law.b * std::pow(law.Lambda, 1.0 / law.eps);
  return law.a * std::sin(c * dpow_i(g, law.gpow));
}

QuadResult law_moment(const SineGaussianLaw& law, int k) {
  if (law.a == 0.0) return {0.0, true};
  return gauss_expectation([&](double g) { return dpow_i(sine_gaussian_sample(law, g), k); });
}

PiLaw pi_asymptotic_law(int p, int q, double Lambda) {
  PiLaw law;
  law.c = std::pow(Lambda, 1.0 / epsilon_p(p, q));
  law.m = int(std::lround(dpow_i(double(q - 1), p)));
  return law;
}

double pi_law_sample(const PiLaw& law, double g) {
  double x = law.c * dpow_i(g, law.m);
  return x / std::sqrt(1.0 + x * x);
}

QuadResult pi_law_moment(const PiLaw& law, int k) {
  if (law.c == 0.0) return {0.0, true};
  return gauss_expectation([&](double g) { return dpow_i(pi_law_sample(law, g), k); });
}

double rounded_pi_sample(int q, double Lambda, double g) {
  double t = Lambda * dpow_i(g, q - 1);
  return std::erf(t / std::numbers::sqrt2);
}

QuadResult rounded_pi_law_moment(int q, double Lambda, int k) {
  if (Lambda == 0.0) return {0.0, true};
  return gauss_expectation([&](double g) { return dpow_i(rounded_pi_sample(q, Lambda, g), k); });
}

double qaoa_biased_limit(int q, double gamma, double beta, double delta, double Lambda) {
  if (delta < 0.0 || delta > std::numbers::pi / 4.0 + 1e-12)
    throw ValidationError("delta out of [0, pi/4]");
  return std::exp(-2.0 * q * gamma * gamma) * std::sin(2.0 * beta) *
         std::sin(2.0 * q * Lambda * gamma * dpow_i(std::sin(2.0 * delta), q - 1));
}

double pi_biased_limit(int q, double delta, double Lambda) {
  if (delta < 0.0 || delta > std::numbers::pi / 4.0 + 1e-12)
    throw ValidationError("delta out of [0, pi/4]");
  double x = Lambda * dpow_i(std::sin(2.0 * delta), q - 1);
  return x / std::sqrt(1.0 + x * x);
}

}  // namespace stq
