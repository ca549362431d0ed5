#pragma once

#include <complex>
#include <vector>

#include "stq/errors.hpp"

namespace stq {

// Coefficient tables for the depth-p overlap law a_p·sin(b_p·Λ^{1/ε_p}·G^{(q-1)^p}).
// Configuration strings carry 2p+1 spins ordered (z_1..z_p, z_0, z_{-p}..z_{-1});
// H^[m] are (2p+1)×(2p+1) matrices over the same index set.
struct CoeffTables {
  int p = 0;
  int q = 2;
  std::vector<std::complex<double>> f;                  // 2^{2p+1} entries
  std::vector<std::vector<std::complex<double>>> H;     // p+1 flattened matrices
  std::vector<std::complex<double>> a;                  // a_1..a_p
  std::vector<double> b;                                // b_1..b_p
};

inline constexpr int kDefaultDepthCap = 7;

CoeffTables coeff_engine(int p, int q, const std::vector<double>& gammas,
                         const std::vector<double>& betas, int p_cap = kDefaultDepthCap);

// |a_p b_p|^{ε_p}.
double enhancement_factor(int p, int q, const std::vector<double>& gammas,
                          const std::vector<double>& betas, int p_cap = kDefaultDepthCap);

// Closed-form p=2 coefficients at general angles (test oracle),
// with X = (cos2β_1 + i e^{-2qγ_1²} sin2β_1)^{q-1}.
std::complex<double> p2_closed_form_a2(int q, double g1, double g2, double b1, double b2);
double p2_closed_form_b2(int q, double g1, double g2, double b1);

// Closed-form p=2 coefficients at γ_r = 1/(2√q), β_r = π/4.
double p2_symmetric_a2(int q);
double p2_symmetric_b2(int q);

}  // namespace stq
