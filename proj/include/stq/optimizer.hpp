#pragma once

#include <string>
#include <vector>

#include "stq/rng.hpp"

namespace stq {

struct OptimizationReport {
  int p = 0;
  int q = 2;
  double best_value = 0.0;
  std::vector<double> best_gammas;
  std::vector<double> best_betas;
  int starts = 0;
  double tolerance = 1e-9;
  std::vector<double> per_start_values;
};

// Multi-start Nelder–Mead maximization of the enhancement factor |a_p b_p|^{ε_p}
// over (γ, β). Start points: γ_r ∈ (0, 1.5/√q], β_r ∈ (0, π]. Deterministic for
// a fixed stream key; ties broken toward the lowest start index.
OptimizationReport optimize_enhancement(int p, int q, int starts, RngStream& stream,
                                        double tol = 1e-9, int threads = 1);

std::string report_to_json(const OptimizationReport& report);

}  // namespace stq
