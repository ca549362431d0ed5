#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "stq/instance.hpp"
#include "stq/rng.hpp"

namespace stq {

inline constexpr int kDefaultQubitCap = 26;

struct StateVector {
  int n = 0;
  std::vector<std::complex<double>> amp;  // 2^n amplitudes, unit norm
};

struct QaoaSchedule {
  std::vector<double> gamma;
  std::vector<double> beta;
  int p() const { return int(gamma.size()); }
};

// Per-qubit initial-state angles: θ_j = π/4 on unbiased qubits and π/4 - δ on
// the biased ones, giving the product state ⊗_j (cosθ_j|u_j> + sinθ_j|-u_j>).
struct BiasSpec {
  int k = 0;        // target biased-qubit count (positions drawn i.i.d. w.p. k/n)
  double delta = 0.0;
  std::vector<double> theta;
};

BiasSpec make_bias_spec(int n, int k, double delta, RngStream& stream);

struct OverlapDistribution {
  int n = 0;
  std::vector<double> mass;  // mass[m] = P(z agrees with u on m bits)
  double value(int m) const { return (2.0 * m - n) / n; }
};

StateVector prepare_uniform(int n, int cap = kDefaultQubitCap);
StateVector prepare_biased(const std::vector<int8_t>& u, const BiasSpec& bias,
                           int cap = kDefaultQubitCap);

void apply_cost_phase(StateVector& state, const std::vector<double>& diag, double gamma);
void apply_mixer(StateVector& state, double beta);

StateVector run_qaoa(const SpikedTensorInstance& inst, const QaoaSchedule& sched,
                     StateVector init, int cap = kDefaultQubitCap);

OverlapDistribution overlap_distribution(const StateVector& state,
                                         const std::vector<int8_t>& u);
double overlap_moment(const OverlapDistribution& dist, int k);

std::vector<std::vector<int8_t>> sample_bitstrings(const StateVector& state, int count,
                                                   RngStream& stream);

double state_norm(const StateVector& state);

// Test-only dump: 8-byte count header + interleaved (re, im) float64.
void save_state(const StateVector& state, const std::string& path);
StateVector load_state(const std::string& path);

}  // namespace stq
