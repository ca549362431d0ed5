#include "stq/instance.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "json.hpp"

namespace stq {

namespace {

double dpow_i(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Contraction of w with z over all slots not in pin_mask; pinned slots are
// fixed to index b. Used by the Gray-code incremental update.
struct PinnedContract {
  const double* w;
  const int8_t* z;
  const size_t* stride;
  int n, q;
  unsigned pin_mask;
  size_t b;

  double run(int s, size_t base) const {
    if (s == q) return w[base];
    if ((pin_mask >> s) & 1u) return run(s + 1, base + b * stride[s]);
    if (s == q - 1) {
      double acc = 0.0;
      const double* row = w + base;
      for (int j = 0; j < n; ++j) acc += z[j] * row[j];
      return acc;
    }
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      acc += z[j] * run(s + 1, base + size_t(j) * stride[s]);
    return acc;
  }
};

}  // namespace

uint64_t tensor_entries(int n, int q, uint64_t cap) {
  if (n < 1) throw ValidationError("n must be >= 1");
  if (q < 2) throw ValidationError("q must be >= 2");
  uint64_t total = 1;
  for (int i = 0; i < q; ++i) {
    if (total > cap / uint64_t(n))
      throw CapacityError("n^q exceeds tensor entry cap");
    total *= uint64_t(n);
  }
  return total;
}

SpikedTensorInstance generate_instance(int n, int q, double lambda, uint64_t seed,
                                       uint64_t cap) {
  uint64_t total = tensor_entries(n, q, cap);
  if (lambda < 0) throw ValidationError("lambda must be nonnegative");
  SpikedTensorInstance inst;
  inst.n = n;
  inst.q = q;
  inst.lambda = lambda;
  inst.seed = seed;
  inst.u.resize(n);
  RngStream su(seed, "signal", 0);
  for (int j = 0; j < n; ++j) inst.u[j] = (su.next_u64() & 1u) ? int8_t(1) : int8_t(-1);
  inst.w.resize(total);
  RngStream sw(seed, "noise", 0);
  for (uint64_t i = 0; i < total; ++i) inst.w[i] = sw.normal();
  return inst;
}

double cost(const SpikedTensorInstance& inst, const std::vector<int8_t>& z) {
  const int n = inst.n, q = inst.q;
  if (int(z.size()) != n) throw ValidationError("bitstring length mismatch");
  // Noise part: contract the last slot with z, q times.
  std::vector<double> buf(inst.w);
  size_t len = buf.size();
  for (int s = 0; s < q; ++s) {
    len /= size_t(n);
    for (size_t i = 0; i < len; ++i) {
      double acc = 0.0;
      const double* row = buf.data() + i * size_t(n);
      for (int j = 0; j < n; ++j) acc += row[j] * z[j];
      buf[i] = acc;
    }
  }
  double dot = 0.0;
  for (int j = 0; j < n; ++j) dot += double(inst.u[j]) * double(z[j]);
  return inst.lambda * dpow_i(dot, q) / dpow_i(double(n), q - 1) +
         buf[0] * std::pow(double(n), -0.5 * (q - 1));
}

std::vector<double> cost_diagonal(const SpikedTensorInstance& inst, int n_cap) {
  const int n = inst.n, q = inst.q;
  if (n > n_cap) throw CapacityError("2^n diagonal exceeds qubit cap");
  const size_t N = size_t(1) << n;
  std::vector<size_t> stride(q);
  {
    size_t s = 1;
    for (int i = q - 1; i >= 0; --i) {
      stride[i] = s;
      s *= size_t(n);
    }
  }
  std::vector<double> diag(N);
  std::vector<int8_t> z(n, int8_t(1));
  long double noise = 0.0L;
  for (double x : inst.w) noise += x;
  long double sig = 0.0L;
  for (int j = 0; j < n; ++j) sig += inst.u[j];
  const double noise_scale = std::pow(double(n), -0.5 * (q - 1));
  const double sig_scale = inst.lambda / dpow_i(double(n), q - 1);
  for (size_t i = 0; i < N; ++i) {
    size_t idx = i ^ (i >> 1);  // reflected Gray code: consecutive i differ in one bit
    diag[idx] = sig_scale * dpow_i(double(sig), q) + double(noise) * noise_scale;
    if (i + 1 == N) break;
    int b = std::countr_zero(i + 1);
    double zb = z[b];
    long double delta = 0.0L;
    for (unsigned pin = 1; pin < (1u << q); ++pin) {
      PinnedContract pc{inst.w.data(), z.data(), stride.data(), n, q, pin, size_t(b)};
      delta += dpow_i(-2.0 * zb, std::popcount(pin)) * pc.run(0, 0);
    }
    noise += delta;
    sig -= 2.0L * inst.u[b] * zb;
    z[b] = int8_t(-z[b]);
  }
  return diag;
}

std::vector<double> cost_diagonal_naive(const SpikedTensorInstance& inst, int n_cap) {
  if (inst.n > n_cap) throw CapacityError("2^n diagonal exceeds qubit cap");
  const size_t N = size_t(1) << inst.n;
  std::vector<double> diag(N);
  for (size_t idx = 0; idx < N; ++idx)
    diag[idx] = cost(inst, index_bits(idx, inst.n));
  return diag;
}

double overlap(const std::vector<int8_t>& z, const std::vector<int8_t>& u) {
  if (z.size() != u.size()) throw ValidationError("bitstring length mismatch");
  long long s = 0;
  for (size_t j = 0; j < z.size(); ++j) s += int(z[j]) * int(u[j]);
  return double(s) / double(z.size());
}

size_t bit_index(const std::vector<int8_t>& z) {
  size_t idx = 0;
  for (size_t j = 0; j < z.size(); ++j)
    if (z[j] < 0) idx |= size_t(1) << j;
  return idx;
}

std::vector<int8_t> index_bits(size_t idx, int n) {
  std::vector<int8_t> z(n);
  for (int j = 0; j < n; ++j) z[j] = ((idx >> j) & 1u) ? int8_t(-1) : int8_t(1);
  return z;
}

namespace {
struct InstanceHeader {
  char magic[8];
  uint32_t version;
  uint32_t q;
  uint64_t n;
  uint64_t seed;
  double lambda;
};
constexpr char kMagic[8] = {'S', 'T', 'Q', 'I', 'N', 'S', 'T', '1'};
}  // namespace

void save_instance(const SpikedTensorInstance& inst, const std::string& path) {
  InstanceHeader h{};
  std::memcpy(h.magic, kMagic, 8);
  h.version = 1;
  h.q = uint32_t(inst.q);
  h.n = uint64_t(inst.n);
  h.seed = inst.seed;
  h.lambda = inst.lambda;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open " + path);
  out.write(reinterpret_cast<const char*>(&h), sizeof h);
  out.write(reinterpret_cast<const char*>(inst.u.data()), std::streamsize(inst.u.size()));
  out.write(reinterpret_cast<const char*>(inst.w.data()),
            std::streamsize(inst.w.size() * sizeof(double)));
  if (!out) throw ValidationError("short write to " + path);

  nlohmann::json meta{{"format_version", 1},
                      {"n", inst.n},
                      {"q", inst.q},
                      {"lambda", inst.lambda},
                      {"seed", inst.seed},
                      {"noise_entries", inst.w.size()}};
  std::ofstream side(path + ".json");
  side << meta.dump(2) << "\n";
}

SpikedTensorInstance load_instance(const std::string& path, uint64_t cap) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  InstanceHeader h{};
  in.read(reinterpret_cast<char*>(&h), sizeof h);
  if (!in || std::memcmp(h.magic, kMagic, 8) != 0 || h.version != 1)
    throw ValidationError("bad instance file header: " + path);
  SpikedTensorInstance inst;
  inst.n = int(h.n);
  inst.q = int(h.q);
  inst.lambda = h.lambda;
  inst.seed = h.seed;
  uint64_t total = tensor_entries(inst.n, inst.q, cap);
  inst.u.resize(inst.n);
  inst.w.resize(total);
  in.read(reinterpret_cast<char*>(inst.u.data()), std::streamsize(inst.u.size()));
  in.read(reinterpret_cast<char*>(inst.w.data()),
          std::streamsize(inst.w.size() * sizeof(double)));
  if (!in) throw ValidationError("truncated instance file: " + path);
  for (auto b : inst.u)
    if (b != 1 && b != -1) throw ValidationError("corrupt signal entries in " + path);
  return inst;
}

}  // namespace stq
