#include "stq/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <thread>

#include "json.hpp"
#include "stq/coeff_engine.hpp"

namespace stq {

namespace {

struct NmResult {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> x;
};

// Standard Nelder–Mead (reflection 1, expansion 2, contraction 0.5, shrink 0.5)
// maximizing f; stops when the simplex diameter drops below tol.
NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                     std::vector<double> x0, const std::vector<double>& step, double tol,
                     int max_iter = 4000) {
  const size_t d = x0.size();
  std::vector<std::vector<double>> pts(d + 1, x0);
  for (size_t i = 0; i < d; ++i) pts[i + 1][i] += step[i];
  std::vector<double> vals(d + 1);
  for (size_t i = 0; i <= d; ++i) vals[i] = f(pts[i]);

  auto order = [&]() {
    std::vector<size_t> idx(d + 1);
    for (size_t i = 0; i <= d; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return vals[a] > vals[b]; });
    std::vector<std::vector<double>> np(d + 1);
    std::vector<double> nv(d + 1);
    for (size_t i = 0; i <= d; ++i) {
      np[i] = pts[idx[i]];
      nv[i] = vals[idx[i]];
    }
    pts = std::move(np);
    vals = std::move(nv);
  };

  for (int it = 0; it < max_iter; ++it) {
    order();
    double diam = 0.0;
    for (size_t i = 1; i <= d; ++i)
      for (size_t j = 0; j < d; ++j) diam = std::max(diam, std::abs(pts[i][j] - pts[0][j]));
    if (diam < tol) break;

    std::vector<double> centroid(d, 0.0);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) centroid[j] += pts[i][j] / double(d);

    auto blend = [&](double t) {
      std::vector<double> x(d);
      for (size_t j = 0; j < d; ++j) x[j] = centroid[j] + t * (centroid[j] - pts[d][j]);
      return x;
    };

    std::vector<double> xr = blend(1.0);
    double fr = f(xr);
    if (fr > vals[0]) {
      std::vector<double> xe = blend(2.0);
      double fe = f(xe);
      if (fe > fr) {
        pts[d] = xe;
        vals[d] = fe;
      } else {
        pts[d] = xr;
        vals[d] = fr;
      }
      continue;
    }
    if (fr > vals[d - 1]) {
      pts[d] = xr;
      vals[d] = fr;
      continue;
    }
    std::vector<double> xc = blend(fr > vals[d] ? 0.5 : -0.5);
    double fc = f(xc);
    if (fc > std::max(fr, vals[d])) {
      pts[d] = xc;
      vals[d] = fc;
      continue;
    }
    for (size_t i = 1; i <= d; ++i) {
      for (size_t j = 0; j < d; ++j) pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
      vals[i] = f(pts[i]);
    }
  }
  order();
  return {vals[0], pts[0]};
}

}  // namespace

OptimizationReport optimize_enhancement(int p, int q, int starts, RngStream& stream,
                                        double tol, int threads) {
  OptimizationReport rep;
  rep.p = p;
  rep.q = q;
  rep.starts = starts;
  rep.tolerance = tol;
  rep.per_start_values.assign(starts, -std::numeric_limits<double>::infinity());

  auto objective = [p, q](const std::vector<double>& x) {
    std::vector<double> g(x.begin(), x.begin() + p);
    std::vector<double> b(x.begin() + p, x.end());
    double v;
    try {
      v = enhancement_factor(p, q, g, b);
    } catch (...) {
      return -std::numeric_limits<double>::infinity();
    }
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
  };

  // Draw every start point up front so results are scheduling-independent.
  const double gmax = 1.5 / std::sqrt(double(q));
  std::vector<std::vector<double>> start_pts(starts, std::vector<double>(2 * p));
  for (int s = 0; s < starts; ++s) {
    for (int r = 0; r < p; ++r) start_pts[s][r] = gmax * (1.0 - stream.uniform());
    for (int r = 0; r < p; ++r)
      start_pts[s][p + r] = std::numbers::pi * (1.0 - stream.uniform());
  }
  std::vector<double> step(2 * p);
  for (int r = 0; r < p; ++r) step[r] = 0.15 * gmax;
  for (int r = 0; r < p; ++r) step[p + r] = 0.15 * std::numbers::pi;

  std::vector<NmResult> results(starts);
  int nthreads = std::max(1, threads);
  auto worker = [&](int tid) {
    for (int s = tid; s < starts; s += nthreads)
      results[s] = nelder_mead(objective, start_pts[s], step, tol);
  };
  if (nthreads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  int best = 0;
  for (int s = 0; s < starts; ++s) {
    rep.per_start_values[s] = results[s].value;
    if (results[s].value > results[best].value) best = s;  // strict: lowest index wins ties
  }
  rep.best_value = results[best].value;
  rep.best_gammas.assign(results[best].x.begin(), results[best].x.begin() + p);
  rep.best_betas.assign(results[best].x.begin() + p, results[best].x.end());
  return rep;
}

std::string report_to_json(const OptimizationReport& rep) {
  nlohmann::json j{{"p", rep.p},
                   {"q", rep.q},
                   {"best_value", rep.best_value},
                   {"best_gammas", rep.best_gammas},
                   {"best_betas", rep.best_betas},
                   {"starts", rep.starts},
                   {"tolerance", rep.tolerance},
                   {"per_start_values", rep.per_start_values}};
  return j.dump(2);
}

}  // namespace stq
