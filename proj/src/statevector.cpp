#include "stq/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>

namespace stq {

using c64 = std::complex<double>;

BiasSpec make_bias_spec(int n, int k, double delta, RngStream& stream) {
  if (k < 0 || k > n) throw ValidationError("biased count k out of range");
  if (delta < 0.0 || delta > std::atan(1.0))  // π/4
    throw ValidationError("delta out of [0, pi/4]");
  BiasSpec spec;
  spec.k = k;
  spec.delta = delta;
  spec.theta.resize(n);
  const double base = std::atan(1.0);  // π/4
  const double pbias = double(k) / double(n);
  for (int j = 0; j < n; ++j)
    spec.theta[j] = (stream.uniform() < pbias) ? base - delta : base;
  return spec;
}

StateVector prepare_uniform(int n, int cap) {
  if (n < 1) throw ValidationError("n must be >= 1");
  if (n > cap) throw CapacityError("2^n amplitudes exceed qubit cap");
  StateVector sv;
  sv.n = n;
  sv.amp.assign(size_t(1) << n, c64(std::pow(2.0, -0.5 * n), 0.0));
  return sv;
}

StateVector prepare_biased(const std::vector<int8_t>& u, const BiasSpec& bias, int cap) {
  const int n = int(u.size());
  if (int(bias.theta.size()) != n) throw ValidationError("theta length mismatch");
  if (n > cap) throw CapacityError("2^n amplitudes exceed qubit cap");
  for (double t : bias.theta)
    if (t < 0.0 || t > 2.0 * std::atan(1.0))
      throw ValidationError("theta out of range");
  StateVector sv;
  sv.n = n;
  sv.amp.assign(size_t(1) << n, c64(0.0, 0.0));
  sv.amp[0] = c64(1.0, 0.0);
  // Grow the product state one qubit at a time; bit j-1 set means z_j = -1.
  for (int j = 0; j < n; ++j) {
    const double c = std::cos(bias.theta[j]);
    const double s = std::sin(bias.theta[j]);
    const double on_u = c, off_u = s;            // amplitude if z_j = u_j / z_j = -u_j
    const size_t half = size_t(1) << j;
    const double a_plus = (u[j] > 0) ? on_u : off_u;   // z_j = +1
    const double a_minus = (u[j] > 0) ? off_u : on_u;  // z_j = -1
    for (size_t i = 0; i < half; ++i) {
      c64 base = sv.amp[i];
      sv.amp[i] = base * a_plus;
      sv.amp[i + half] = base * a_minus;
    }
  }
  return sv;
}

void apply_cost_phase(StateVector& state, const std::vector<double>& diag, double gamma) {
  if (diag.size() != state.amp.size()) throw ValidationError("diagonal length mismatch");
  const size_t N = state.amp.size();
  for (size_t i = 0; i < N; ++i) {
    double ph = -gamma * diag[i];
    state.amp[i] *= c64(std::cos(ph), std::sin(ph));
  }
}

void apply_mixer(StateVector& state, double beta) {
  const size_t N = state.amp.size();
  const double c = std::cos(beta);
  const c64 ms(0.0, -std::sin(beta));
  for (int j = 0; j < state.n; ++j) {
    const size_t mask = size_t(1) << j;
    for (size_t i = 0; i < N; ++i) {
      if (i & mask) continue;
      const size_t k = i | mask;
      c64 a0 = state.amp[i];
      c64 a1 = state.amp[k];
      state.amp[i] = c * a0 + ms * a1;
      state.amp[k] = ms * a0 + c * a1;
    }
  }
}

StateVector run_qaoa(const SpikedTensorInstance& inst, const QaoaSchedule& sched,
                     StateVector init, int cap) {
  if (init.n != inst.n) throw ValidationError("state/instance size mismatch");
  if (sched.beta.size() != sched.gamma.size())
    throw ValidationError("schedule arrays must have equal length");
  if (sched.p() == 0) return init;
  std::vector<double> diag = cost_diagonal(inst, cap);
  for (int r = 0; r < sched.p(); ++r) {
    apply_cost_phase(init, diag, sched.gamma[r]);
    apply_mixer(init, sched.beta[r]);
  }
  return init;
}

OverlapDistribution overlap_distribution(const StateVector& state,
                                         const std::vector<int8_t>& u) {
  const int n = state.n;
  if (int(u.size()) != n) throw ValidationError("signal length mismatch");
  size_t bu = 0;
  for (int j = 0; j < n; ++j)
    if (u[j] < 0) bu |= size_t(1) << j;
  OverlapDistribution dist;
  dist.n = n;
  dist.mass.assign(n + 1, 0.0);
  const size_t N = state.amp.size();
  // Sequential accumulation in index order: deterministic across runs.
  for (size_t i = 0; i < N; ++i) {
    int agree = n - std::popcount(i ^ bu);
    dist.mass[agree] += std::norm(state.amp[i]);
  }
  return dist;
}

double overlap_moment(const OverlapDistribution& dist, int k) {
  double acc = 0.0;
  for (int m = 0; m <= dist.n; ++m) {
    double v = dist.value(m);
    double vk = 1.0;
    for (int i = 0; i < k; ++i) vk *= v;
    acc += dist.mass[m] * vk;
  }
  return acc;
}

std::vector<std::vector<int8_t>> sample_bitstrings(const StateVector& state, int count,
                                                   RngStream& stream) {
  const size_t N = state.amp.size();
  std::vector<double> cdf(N);
  double acc = 0.0;
  for (size_t i = 0; i < N; ++i) {
    acc += std::norm(state.amp[i]);
    cdf[i] = acc;
  }
  std::vector<std::vector<int8_t>> out;
  out.reserve(count);
  for (int s = 0; s < count; ++s) {
    double r = stream.uniform() * acc;
    size_t idx = size_t(std::lower_bound(cdf.begin(), cdf.end(), r) - cdf.begin());
    if (idx >= N) idx = N - 1;
    out.push_back(index_bits(idx, state.n));
  }
  return out;
}

double state_norm(const StateVector& state) {
  double acc = 0.0;
  for (const auto& a : state.amp) acc += std::norm(a);
  return std::sqrt(acc);
}

void save_state(const StateVector& state, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open " + path);
  uint64_t n = uint64_t(state.n);
  out.write(reinterpret_cast<const char*>(&n), 8);
  out.write(reinterpret_cast<const char*>(state.amp.data()),
            std::streamsize(state.amp.size() * sizeof(c64)));
  if (!out) throw ValidationError("short write to " + path);
}

StateVector load_state(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), 8);
  if (!in || n == 0 || n > 40) throw ValidationError("bad state file header: " + path);
  StateVector sv;
  sv.n = int(n);
  sv.amp.resize(size_t(1) << n);
  in.read(reinterpret_cast<char*>(sv.amp.data()),
          std::streamsize(sv.amp.size() * sizeof(c64)));
  if (!in) throw ValidationError("truncated state file: " + path);
  return sv;
}

}  // namespace stq
