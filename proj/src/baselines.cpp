#include "stq/baselines.hpp"

#include <cmath>

namespace stq {

namespace {

double dpow_i(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Normalize y to norm √n; false when y ≈ 0.
bool rescale_sqrt_n(std::vector<double>& y, int n) {
  double nm = norm2(y);
  if (!(nm > 0.0) || !std::isfinite(nm)) return false;
  double f = std::sqrt(double(n)) / nm;
  for (double& x : y) x *= f;
  return true;
}

}  // namespace

std::vector<double> tensor_contract(const SpikedTensorInstance& inst,
                                    const std::vector<double>& v) {
  const int n = inst.n, q = inst.q;
  if (int(v.size()) != n) throw ValidationError("vector length mismatch");
  // Noise part: fold the trailing dimension q-1 times.
  std::vector<double> buf(inst.w);
  size_t len = buf.size();
  for (int s = 0; s < q - 1; ++s) {
    len /= size_t(n);
    for (size_t i = 0; i < len; ++i) {
      double acc = 0.0;
      const double* row = buf.data() + i * size_t(n);
      for (int j = 0; j < n; ++j) acc += row[j] * v[j];
      buf[i] = acc;
    }
  }
  double uv = 0.0;
  for (int j = 0; j < n; ++j) uv += double(inst.u[j]) * v[j];
  const double sigc = inst.lambda / std::pow(double(n), 0.5 * q) * dpow_i(uv, q - 1);
  const double invsqrt = 1.0 / std::sqrt(double(n));
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = sigc * inst.u[i] + buf[i] * invsqrt;
  return out;
}

PowerIterTrace power_iteration(const SpikedTensorInstance& inst, int steps,
                               const std::vector<double>& init) {
  PowerIterTrace trace;
  trace.seed = inst.seed;
  if (!(norm2(init) > 0.0)) throw ValidationError("init must be nonzero");
  std::vector<double> v = init;
  for (int k = 0; k < steps; ++k) {
    std::vector<double> y = tensor_contract(inst, v);
    if (!rescale_sqrt_n(y, inst.n)) {
      trace.degenerate = true;
      break;
    }
    double ov = 0.0;
    for (int j = 0; j < inst.n; ++j) ov += double(inst.u[j]) * y[j];
    trace.iterates.push_back(y);
    trace.overlaps.push_back(ov / double(inst.n));
    v = std::move(y);
  }
  return trace;
}

std::vector<double> random_init(int n, RngStream& stream) {
  std::vector<double> v(n);
  for (int j = 0; j < n; ++j) v[j] = stream.normal();
  if (!rescale_sqrt_n(v, n)) v.assign(n, 1.0);  // astronomically unlikely
  return v;
}

std::vector<double> biased_init(const std::vector<int8_t>& u, int k, double delta,
                                RngStream& stream) {
  const int n = int(u.size());
  if (k < 0 || k > n) throw ValidationError("biased count k out of range");
  const double pplus = 0.5 * (1.0 + double(k) / n * std::sin(2.0 * delta));
  const double inv = 1.0 / std::sqrt(double(n));
  std::vector<double> v(n);
  for (int j = 0; j < n; ++j)
    v[j] = (stream.uniform() < pplus) ? u[j] * inv : -u[j] * inv;
  return v;
}

std::vector<int8_t> round_sign(const std::vector<double>& v) {
  std::vector<int8_t> z(v.size());
  for (size_t j = 0; j < v.size(); ++j) z[j] = (v[j] < 0.0) ? int8_t(-1) : int8_t(1);
  return z;
}

std::vector<double> unfold_spectral(const SpikedTensorInstance& inst, int steps) {
  const int n = inst.n, q = inst.q;
  if (q % 2 != 0) throw ValidationError("unfolding requires even q");
  size_t side = 1;
  for (int i = 0; i < q / 2; ++i) side *= size_t(n);
  // Row index packs (j_1..j_{q/2}); the flat w layout already factors as
  // side × side, and so does the rank-one signal part.
  std::vector<double> su(side, 1.0);  // u_{j_1}···u_{j_{q/2}} per packed index
  for (size_t r = 0; r < side; ++r) {
    size_t rem = r;
    double prod = 1.0;
    for (int i = 0; i < q / 2; ++i) {
      prod *= inst.u[rem % size_t(n)];
      rem /= size_t(n);
    }
    su[r] = prod;
  }
  const double sig = inst.lambda / std::pow(double(n), 0.5 * q);
  const double invsqrt = 1.0 / std::sqrt(double(n));
  auto apply = [&](const std::vector<double>& x) {
    double sux = dot(su, x);
    std::vector<double> y(side);
    for (size_t r = 0; r < side; ++r) {
      double acc = 0.0;
      const double* row = inst.w.data() + r * side;
      for (size_t c = 0; c < side; ++c) acc += row[c] * x[c];
      y[r] = sig * su[r] * sux + acc * invsqrt;
    }
    return y;
  };
  auto apply_t = [&](const std::vector<double>& x) {
    double sux = dot(su, x);
    std::vector<double> y(side);
    for (size_t c = 0; c < side; ++c) {
      double acc = 0.0;
      for (size_t r = 0; r < side; ++r) acc += inst.w[r * side + c] * x[r];
      y[c] = sig * su[c] * sux + acc * invsqrt;
    }
    return y;
  };
  RngStream stream(inst.seed, "unfold-init", 0);
  std::vector<double> x(side);
  for (size_t r = 0; r < side; ++r) x[r] = stream.normal();
  for (int it = 0; it < steps; ++it) {
    // One Ȳᵀ/Ȳ pair per step: converges to the top left singular direction.
    std::vector<double> y = apply(apply_t(x));
    double nm = norm2(y);
    if (!(nm > 0.0)) break;
    for (double& e : y) e /= nm;
    x = std::move(y);
  }
  // Reshape x (length n^{q/2}) to n × n^{q/2-1}: j_1 is the most significant
  // digit of the packed row index, so row i of the reshape is the slice
  // x[i·n^{q/2-1} .. ]. Top left singular vector via the n×n Gram matrix.
  size_t cols = side / size_t(n);
  std::vector<double> g(size_t(n) * n, 0.0);
  for (size_t c = 0; c < cols; ++c)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        g[size_t(i) * n + j] += x[size_t(i) * cols + c] * x[size_t(j) * cols + c];
  std::vector<double> v(n);
  for (int j = 0; j < n; ++j) v[j] = stream.normal();
  for (int it = 0; it < 200; ++it) {
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < n; ++j) acc += g[size_t(i) * n + j] * v[j];
      y[i] = acc;
    }
    double nm = norm2(y);
    if (!(nm > 0.0)) break;
    for (double& e : y) e /= nm;
    v = std::move(y);
  }
  rescale_sqrt_n(v, n);
  return v;
}

PowerIterTrace power_iteration_implicit(int n, int q, double lambda,
                                        const std::vector<int8_t>& u, int steps,
                                        const std::vector<double>& init,
                                        RngStream& noise_stream) {
  PowerIterTrace trace;
  if (!(norm2(init) > 0.0)) throw ValidationError("init must be nonzero");
  std::vector<std::vector<double>> qv;  // past queries
  std::vector<std::vector<double>> qh;  // their sampled noise contractions
  std::vector<double> K;                // kernel matrix, row-major, grows per step
  std::vector<double> v = init;
  const double invsqrt = 1.0 / std::sqrt(double(n));
  for (int step = 0; step < steps; ++step) {
    const size_t m = qv.size();
    std::vector<double> kvec(m);
    for (size_t a = 0; a < m; ++a) kvec[a] = dpow_i(dot(qv[a], v), q - 1);
    double kself = dpow_i(dot(v, v), q - 1);
    // Solve K α = kvec by Gaussian elimination with a tiny ridge for safety.
    std::vector<double> alpha(m, 0.0);
    if (m > 0) {
      std::vector<double> A(K.begin(), K.end());
      for (size_t a = 0; a < m; ++a) A[a * m + a] += 1e-10 * (std::abs(A[a * m + a]) + 1.0);
      std::vector<double> rhs = kvec;
      for (size_t col = 0; col < m; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < m; ++r)
          if (std::abs(A[r * m + col]) > std::abs(A[piv * m + col])) piv = r;
        if (piv != col) {
          for (size_t c = 0; c < m; ++c) std::swap(A[col * m + c], A[piv * m + c]);
          std::swap(rhs[col], rhs[piv]);
        }
        double d = A[col * m + col];
        if (d == 0.0) continue;
        for (size_t r = col + 1; r < m; ++r) {
          double f = A[r * m + col] / d;
          if (f == 0.0) continue;
          for (size_t c = col; c < m; ++c) A[r * m + c] -= f * A[col * m + c];
          rhs[r] -= f * rhs[col];
        }
      }
      for (size_t ri = m; ri-- > 0;) {
        double acc = rhs[ri];
        for (size_t c = ri + 1; c < m; ++c) acc -= A[ri * m + c] * alpha[c];
        double d = A[ri * m + ri];
        alpha[ri] = (d != 0.0) ? acc / d : 0.0;
      }
    }
    double var = kself;
    for (size_t a = 0; a < m; ++a) var -= alpha[a] * kvec[a];
    if (var < 0.0) var = 0.0;
    double sd = std::sqrt(var);
    std::vector<double> h(n);
    for (int i = 0; i < n; ++i) {
      double mean = 0.0;
      for (size_t a = 0; a < m; ++a) mean += alpha[a] * qh[a][i];
      h[i] = mean + sd * noise_stream.normal();
    }
    double uv = 0.0;
    for (int i = 0; i < n; ++i) uv += double(u[i]) * v[i];
    const double sigc = lambda / std::pow(double(n), 0.5 * q) * dpow_i(uv, q - 1);
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) y[i] = sigc * u[i] + h[i] * invsqrt;
    // Record the query/noise pair before normalizing, then extend K.
    size_t mm = m + 1;
    std::vector<double> Knew(mm * mm);
    for (size_t a = 0; a < m; ++a)
      for (size_t b = 0; b < m; ++b) Knew[a * mm + b] = K[a * m + b];
    for (size_t a = 0; a < m; ++a) {
      Knew[a * mm + m] = kvec[a];
      Knew[m * mm + a] = kvec[a];
    }
    Knew[m * mm + m] = kself;
    K = std::move(Knew);
    qv.push_back(v);
    qh.push_back(h);
    if (!rescale_sqrt_n(y, n)) {
      trace.degenerate = true;
      break;
    }
    double ov = 0.0;
    for (int i = 0; i < n; ++i) ov += double(u[i]) * y[i];
    trace.iterates.push_back(y);
    trace.overlaps.push_back(ov / double(n));
    v = trace.iterates.back();
  }
  return trace;
}

}  // namespace stq
