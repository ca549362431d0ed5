#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stq/errors.hpp"

namespace stq {

// One experiment description, loadable from a JSON document. CLI flags
// override individual fields after parsing. Unknown kinds are rejected by
// validate_config.
struct ExperimentConfig {
  std::string kind;                // histogram | convergence | table1 | mgf-check |
                                   // boosting | baseline-compare
  std::vector<int> n_list{12};
  int q = 2;
  int p = 1;

  // SNR rule. "fixed": lambda used as-is for every n. "scaling":
  // lambda_n = Lambda * n^{(q-2+eps_p)/2}, or Lambda * n^{exponent} when an
  // explicit exponent is supplied.
  std::string lambda_rule = "scaling";
  double lambda = 1.0;
  double Lambda = 1.0;
  bool has_exponent = false;
  double exponent = 0.0;

  // Angles: explicit arrays, or "table1-optimal" to use 1/(2*sqrt(q)), pi/4
  // at p=1 and a multistart optimization at p>1.
  bool table1_angles = false;
  std::vector<double> gammas{0.25};
  std::vector<double> betas{0.7853981633974483};

  int instances = 40;
  uint64_t seed = 1;
  std::string out_dir = ".";
  int threads = 1;
  int max_n = 20;

  // table1
  std::vector<int> p_list{1};
  std::vector<int> q_list{2, 3, 4, 5, 6, 7};
  int starts = 300;

  // boosting
  std::vector<double> delta_list{0.39269908169872414};  // pi/8
  std::vector<double> Lambda_list{1.0};
  double bias_exponent = 0.75;  // c in k = round(n^c)
  int pi_n = 4000;

  // convergence
  bool use_exact = false;  // q=2 closed form instead of Monte Carlo

  // baseline-compare
  int pi_steps = 1;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig config_from_json(const std::string& json_text);
std::string config_to_json(const ExperimentConfig& config);

// Throws ValidationError on inconsistent fields.
void validate_config(const ExperimentConfig& config);

// Dispatches on config.kind, writes CSV/SVG into config.out_dir and appends a
// timing record to <out_dir>/timing.jsonl. Returns the list of files written.
std::vector<std::string> run_experiment(const ExperimentConfig& config);

std::vector<std::string> run_histogram(const ExperimentConfig& config);
std::vector<std::string> run_convergence(const ExperimentConfig& config);
std::vector<std::string> run_table1(const ExperimentConfig& config);
std::vector<std::string> run_mgf_check(const ExperimentConfig& config);
std::vector<std::string> run_boosting(const ExperimentConfig& config);
std::vector<std::string> run_baseline_compare(const ExperimentConfig& config);

// Static strided schedule; worker i handles indices i, i+threads, ...  Results
// must be index-addressed by the callee so output is thread-count independent.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

// Canonical numeric formatting for CSV cells ("%.17g").
std::string csv_num(double v);

// lambda_n for one n under the config's SNR rule.
double resolve_lambda(const ExperimentConfig& config, int n);

// Effective rescaled SNR at finite n (inverts the scaling rule).
double resolve_Lambda(const ExperimentConfig& config, int n);

// Angles per config (runs the optimizer when table1_angles and p > 1).
void resolve_angles(const ExperimentConfig& config, std::vector<double>& gammas,
                    std::vector<double>& betas);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace stq
