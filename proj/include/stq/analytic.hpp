#pragma once

#include <complex>
#include <vector>

#include "stq/errors.hpp"
#include "stq/gauss_hermite.hpp"

namespace stq {

// Depth-dependent weak-recovery exponent: (q-2)/((q-1)^p - 1), or 1/p at q=2.
double epsilon_p(int p, int q);

// Per-round SNR scaling exponents, nondecreasing from 1/2 (ell=0) to 1 (ell=p).
double rho_ell(int p, int q, int ell);

// Exact expected squared overlap of 1-step QAOA at q=2 (closed form).
double p1_q2_expected_sq_overlap(int n, double gamma, double beta, double lambda);

// One term of the expected-MGF series, kept for inspection and tail-bound tests.
struct MgfSeriesTerm {
  int t = 0;
  std::complex<double> E;  // E_{n,t}
  std::complex<double> I;  // full term: binom · damping · [sinh·sin2β]^t · E
  double bound = 0.0;      // s_t = (6|ζ|)^t (2t+1) e^{|ζ|} / t!
};

struct MgfResult {
  std::complex<double> value;
  bool converged = true;  // false when t reached n without meeting tol
  std::vector<MgfSeriesTerm> terms;
};

// Expected overlap moment-generating function E_Y<e^{ζ R̂}> at p=1, via the
// τ±-binomial sums, the (2t+1)-point DFT in k, and the sin^t(2πξ/(2t+1))
// weights; truncated once s_t ≤ tol·|running sum|. Requires |ζ| ≤ n.
MgfResult p1_expected_mgf(int n, int q, double gamma, double beta, double lambda,
                          std::complex<double> zeta, double tol = 1e-12);

// Same series minus 1, with the t=0 term evaluated through expm1 so that
// finite differences near ζ=0 are not destroyed by cancellation.
std::complex<double> p1_expected_mgf_minus_one(int n, int q, double gamma, double beta,
                                               double lambda, std::complex<double> zeta,
                                               double tol = 1e-12);

// Central second derivative of the MGF at ζ=0 with one Richardson step.
double mgf_second_derivative(int n, int q, double gamma, double beta, double lambda,
                             double h = 1e-3);

// E_Y<R²> at p=1 for general q: the exact t=0,1,2 pre-simplification sums.
double p1_expected_sq_overlap_general_q(int n, int q, double gamma, double beta,
                                        double lambda);

// Limiting overlap law a·sin(b·Λ^{1/eps}·G^{gpow}), G ~ N(0,1).
struct SineGaussianLaw {
  double a = 0.0;
  double b = 0.0;
  int gpow = 1;     // (q-1)^p
  double eps = 1.0; // ε_p
  double Lambda = 0.0;
};

SineGaussianLaw sine_gaussian_law_p1(int q, double gamma, double beta, double Lambda);

double sine_gaussian_sample(const SineGaussianLaw& law, double g);
QuadResult law_moment(const SineGaussianLaw& law, int k);

// Power-iteration limit law sin(arctan(c·G^m)) with c = Λ^{1/ε_p}, m = (q-1)^p.
struct PiLaw {
  double c = 0.0;
  int m = 1;
};

PiLaw pi_asymptotic_law(int p, int q, double Lambda);
double pi_law_sample(const PiLaw& law, double g);
QuadResult pi_law_moment(const PiLaw& law, int k);

// Rounded power iteration limit Φ(Λ·G^{q-1}), Φ(t) = 2P(Z ≤ t) - 1.
double rounded_pi_sample(int q, double Lambda, double g);
QuadResult rounded_pi_law_moment(int q, double Lambda, int k);

// Biased-initialization limits (deterministic).
double qaoa_biased_limit(int q, double gamma, double beta, double delta, double Lambda);
double pi_biased_limit(int q, double delta, double Lambda);

}  // namespace stq
