#include "stq/coeff_engine.hpp"

#include <cmath>
#include <numbers>

#include "stq/analytic.hpp"

namespace stq {

using c64 = std::complex<double>;

namespace {

double dpow_i(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

c64 cpow_i(c64 x, int k) {
  c64 r(1.0, 0.0);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Spin value at index j ∈ {1..p, 0, -p..-1}; array position: 1..p → 0..p-1,
// 0 → p, -r → p+r.
int pos_of(int j, int p) { return j > 0 ? j - 1 : (j == 0 ? p : p - j); }

inline double spin(unsigned z, int pos) { return (z >> pos) & 1u ? -1.0 : 1.0; }

// <z|e^{±iβX}|z'> = cosβ on the diagonal, ±i·sinβ off it.
c64 bracket(double z, double zp, double beta, int sgn) {
  if (z == zp) return c64(std::cos(beta), 0.0);
  return c64(0.0, sgn * std::sin(beta));
}

}  // namespace

CoeffTables coeff_engine(int p, int q, const std::vector<double>& gammas,
                         const std::vector<double>& betas, int p_cap) {
  if (p < 1) throw ValidationError("p must be >= 1");
  if (p > p_cap) throw CapacityError("depth p exceeds engine cap");
  if (int(gammas.size()) != p || int(betas.size()) != p)
    throw ValidationError("angle arrays must have length p");

  const int d = 2 * p + 1;
  const unsigned Z = 1u << d;
  CoeffTables tab;
  tab.p = p;
  tab.q = q;

  std::vector<double> gv(d, 0.0);
  for (int r = 1; r <= p; ++r) {
    gv[pos_of(r, p)] = gammas[r - 1];
    gv[pos_of(-r, p)] = -gammas[r - 1];
  }

  tab.f.resize(Z);
  for (unsigned z = 0; z < Z; ++z) {
    c64 val(0.5, 0.0);
    for (int r = 1; r < p; ++r)
      val *= bracket(spin(z, pos_of(r, p)), spin(z, pos_of(r + 1, p)), betas[r - 1], +1);
    val *= bracket(spin(z, pos_of(p, p)), spin(z, pos_of(0, p)), betas[p - 1], +1);
    val *= bracket(spin(z, pos_of(0, p)), spin(z, pos_of(-p, p)), betas[p - 1], -1);
    for (int r = p - 1; r >= 1; --r)
      val *= bracket(spin(z, pos_of(-(r + 1), p)), spin(z, pos_of(-r, p)), betas[r - 1], -1);
    tab.f[z] = val;
  }

  auto weighted_moment_matrix = [&](const std::vector<c64>& expw) {
    std::vector<c64> H(size_t(d) * d, c64(0.0, 0.0));
    for (unsigned z = 0; z < Z; ++z) {
      c64 fw = tab.f[z] * expw[z];
      for (int j = 0; j < d; ++j) {
        double zj = spin(z, j);
        for (int k = 0; k <= j; ++k) H[size_t(j) * d + k] += fw * zj * spin(z, k);
      }
    }
    for (int j = 0; j < d; ++j)
      for (int k = j + 1; k < d; ++k) H[size_t(j) * d + k] = H[size_t(k) * d + j];
    return H;
  };

  // Exponential weights e^{-(q/2) Σ M_{jk} γ_j γ_k z_j z_k} for M = (H)^{q-1}
  // applied elementwise.
  auto exp_weights = [&](const std::vector<c64>& H) {
    std::vector<c64> Mg(size_t(d) * d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        Mg[size_t(j) * d + k] = cpow_i(H[size_t(j) * d + k], q - 1) * gv[j] * gv[k];
    std::vector<c64> expw(Z);
    for (unsigned z = 0; z < Z; ++z) {
      c64 s(0.0, 0.0);
      for (int j = 0; j < d; ++j) {
        double zj = spin(z, j);
        if (gv[j] == 0.0) continue;
        for (int k = 0; k < d; ++k) {
          if (gv[k] == 0.0) continue;
          s += Mg[size_t(j) * d + k] * (zj * spin(z, k));
        }
      }
      expw[z] = std::exp(-0.5 * q * s);
    }
    return expw;
  };

  tab.H.resize(p + 1);
  {
    std::vector<c64> ones(Z, c64(1.0, 0.0));
    tab.H[0] = weighted_moment_matrix(ones);
  }
  for (int m = 1; m <= p; ++m) tab.H[m] = weighted_moment_matrix(exp_weights(tab.H[m - 1]));

  std::vector<c64> expw = exp_weights(tab.H[p]);
  tab.a.resize(p);
  tab.b.resize(p);
  for (int r = 1; r <= p; ++r) {
    int succ_f = (r < p) ? r + 1 : 0;    // index after z_r in the forward chain
    int succ_b = (r < p) ? -(r + 1) : 0; // index after z_{-r} in the backward chain
    c64 acc(0.0, 0.0);
    for (unsigned z = 0; z < Z; ++z) {
      double fwd = spin(z, pos_of(r, p)) * spin(z, pos_of(succ_f, p));
      double bwd = spin(z, pos_of(-r, p)) * spin(z, pos_of(succ_b, p));
      double sel = 0.5 * (fwd - bwd);
      if (sel == 0.0) continue;
      double proj = 1.0;
      for (int s = r + 1; s <= p; ++s)
        proj *= 0.5 * (1.0 + spin(z, pos_of(s, p)) * spin(z, pos_of(-s, p)));
      if (proj == 0.0) continue;
      acc += tab.f[z] * sel * proj * expw[z];
    }
    tab.a[r - 1] = c64(0.0, 1.0) * acc;
    if (r == 1)
      tab.b[0] = 2.0 * q * gammas[0];
    else
      tab.b[r - 1] = 2.0 * q * gammas[r - 1] * dpow_i(tab.a[r - 2].real() * tab.b[r - 2], q - 1);
  }
  return tab;
}

double enhancement_factor(int p, int q, const std::vector<double>& gammas,
                          const std::vector<double>& betas, int p_cap) {
  CoeffTables tab = coeff_engine(p, q, gammas, betas, p_cap);
  double ab = std::abs(tab.a[p - 1]) * std::abs(tab.b[p - 1]);
  return std::pow(ab, epsilon_p(p, q));
}

double p2_closed_form_b2(int q, double g1, double g2, double b1) {
  double a1b1 = std::exp(-2.0 * q * g1 * g1) * std::sin(2.0 * b1) * 2.0 * q * g1;
  return 2.0 * q * g2 * dpow_i(a1b1, q - 1);
}

c64 p2_closed_form_a2(int q, double g1, double g2, double b1, double b2) {
  c64 X = cpow_i(c64(std::cos(2.0 * b1), std::exp(-2.0 * q * g1 * g1) * std::sin(2.0 * b1)),
                 q - 1);
  double reX = X.real(), imX = X.imag();
  double c1 = std::cos(b1), s1 = std::sin(b1);
  double bracket = c1 * c1 + std::exp(8.0 * q * g1 * g2 * reX) * s1 * s1 +
                   std::exp(2.0 * q * (g1 * g1 + 2.0 * g1 * g2 * reX)) * std::sin(2.0 * b1) *
                       std::sin(4.0 * q * g1 * g2 * imX);
  return -std::exp(-2.0 * q * (g1 * g1 + g2 * g2 + 2.0 * reX * g1 * g2)) *
         std::sin(2.0 * b2) * bracket;
}

double p2_symmetric_b2(int q) {
  return std::exp(0.5 * (1.0 - q)) * std::pow(double(q), 0.5 * q);
}

double p2_symmetric_a2(int q) {
  double e = std::exp(0.5 * (1.0 - q));
  double arg = std::numbers::pi * q / 2.0;
  return std::exp(-1.0) * std::cosh(e * std::sin(arg)) -
         std::exp(-0.5) * std::sin(e * std::cos(arg));
}

}  // namespace stq
