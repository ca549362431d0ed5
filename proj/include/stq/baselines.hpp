#pragma once

#include <cstdint>
#include <vector>

#include "stq/instance.hpp"
#include "stq/rng.hpp"

namespace stq {

struct PowerIterTrace {
  std::vector<std::vector<double>> iterates;  // û_1..û_steps, each of norm √n
  std::vector<double> overlaps;               // u·û_k/n
  uint64_t seed = 0;
  bool degenerate = false;  // hit a zero contraction; trace truncated
};

// Y[v^{⊗(q-1)}]: contraction of the observation over its LAST q-1 slots.
std::vector<double> tensor_contract(const SpikedTensorInstance& inst,
                                    const std::vector<double>& v);

// û_k = √n · Y[û_{k-1}^{⊗(q-1)}] / ‖Y[û_{k-1}^{⊗(q-1)}]‖₂.
PowerIterTrace power_iteration(const SpikedTensorInstance& inst, int steps,
                               const std::vector<double>& init);

// Standard Gaussian vector rescaled to norm √n (uniform direction in law).
std::vector<double> random_init(int n, RngStream& stream);

// Entries ±u_j/√n, independently, with P(+) = ½[1 + (k/n)·sin2δ].
std::vector<double> biased_init(const std::vector<int8_t>& u, int k, double delta,
                                RngStream& stream);

// Entrywise sign with sign(0) = +1.
std::vector<int8_t> round_sign(const std::vector<double>& v);

// Even-q unfolded spectral method: power iteration on the n^{q/2} × n^{q/2}
// unfolding, then the top left singular vector of the n × n^{q/2-1} reshape,
// √n-normalized. Start vector drawn from the instance seed.
std::vector<double> unfold_spectral(const SpikedTensorInstance& inst, int steps);

// Power iteration for sizes where W cannot be materialized. The noise
// contractions h_k = W[v_k^{⊗(q-1)}] seen by an adapted query sequence form a
// Gaussian process with independent coordinates and kernel (x·y)^{q-1};
// sampling them by sequential conditioning reproduces the dense iteration
// exactly in distribution at O(k²·n) per step.
PowerIterTrace power_iteration_implicit(int n, int q, double lambda,
                                        const std::vector<int8_t>& u, int steps,
                                        const std::vector<double>& init,
                                        RngStream& noise_stream);

}  // namespace stq
