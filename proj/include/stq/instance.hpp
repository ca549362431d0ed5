#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stq/errors.hpp"
#include "stq/rng.hpp"

namespace stq {

// Spiked tensor observation Y = (lambda/n^{q/2}) u^{⊗q} + W/√n with u a
// Rademacher signal and W an i.i.d. standard-Gaussian order-q tensor (all n^q
// entries independent; no symmetrization). Y itself is never stored: every
// kernel fuses the rank-one signal part with the flat noise array.
struct SpikedTensorInstance {
  int n = 0;
  int q = 2;
  double lambda = 0.0;
  uint64_t seed = 0;
  std::vector<int8_t> u;  // planted signal, entries ±1
  std::vector<double> w;  // noise tensor, n^q entries, row-major (j_1,...,j_q)
};

inline constexpr uint64_t kDefaultTensorCap = uint64_t(1) << 31;

// n^q, throwing CapacityError beyond `cap`.
uint64_t tensor_entries(int n, int q, uint64_t cap = kDefaultTensorCap);

SpikedTensorInstance generate_instance(int n, int q, double lambda, uint64_t seed,
                                       uint64_t cap = kDefaultTensorCap);

// Cost C(z) = <Y, z^{⊗q}> / n^{(q-2)/2} for a ±1 bitstring z.
double cost(const SpikedTensorInstance& inst, const std::vector<int8_t>& z);

// All 2^n cost values, indexed by the rank convention
// |z| = 1 + Σ_j 2^{j-1}(1-z_j)/2 (array index |z|-1, i.e. qubit j on bit j-1
// with bit 0 ⇔ z_j = +1). Gray-code traversal, O(n^{q-1}) work per bit flip.
std::vector<double> cost_diagonal(const SpikedTensorInstance& inst, int n_cap = 26);

// O(2^n · n^q) per-bitstring reference used as a test oracle.
std::vector<double> cost_diagonal_naive(const SpikedTensorInstance& inst, int n_cap = 26);

// z·u/n.
double overlap(const std::vector<int8_t>& z, const std::vector<int8_t>& u);

// Rank-convention index (0-based) of a ±1 bitstring, and its inverse.
size_t bit_index(const std::vector<int8_t>& z);
std::vector<int8_t> index_bits(size_t idx, int n);

// Binary container (header + u bytes + w little-endian float64) plus a JSON
// metadata sidecar at path + ".json".
void save_instance(const SpikedTensorInstance& inst, const std::string& path);
SpikedTensorInstance load_instance(const std::string& path,
                                   uint64_t cap = kDefaultTensorCap);

}  // namespace stq
