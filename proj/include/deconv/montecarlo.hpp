#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "deconv/bandwidth.hpp"
#include "deconv/estimator.hpp"
#include "deconv/models.hpp"

namespace deconv {

enum class BandwidthRule { HSTAR, ADAPTIVE, ADAPTIVE_CRITICAL, FIXED };

struct ExperimentConfig {
  TargetDensity target;
  NoiseModel noise;
  SmoothnessClass cls;
  std::int64_t n = 1000;
  int replications = 100;
  BandwidthRule rule = BandwidthRule::HSTAR;
  double critical_A = 1.2;   // ADAPTIVE_CRITICAL only
  double alpha0 = 0.0;       // 0 means "use cls.alpha"
  double fixed_h = 0.0;      // FIXED only
  std::vector<double> eval_points{0.0};
  std::uint64_t master_seed = 1;
  int threads = 1;
};

struct PointRisk {
  double mse;
  double mc_se;
  double bias_sq;
  double var;
};

struct EmpiricalRisk {
  std::map<double, PointRisk> pointwise;  // keyed by eval point
  PointRisk l2{};                         // same decomposition for the l2 risk
  double h_used = 0.0;
  std::int64_t n = 0;
  int replications = 0;
};

/// Seeded replication loop. Replication k uses seeds derived from
/// (master_seed, k) only, results are stored per replication and reduced in
/// index order, so the output is bit-identical at any thread count.
EmpiricalRisk run_experiment(const ExperimentConfig& config);

struct SweepRow {
  std::int64_t n;
  double risk;   // empirical l2 risk
  double rate;   // phi_n^2 (l2)
  double ratio;  // risk / rate
  double mc_se;
};

std::vector<SweepRow> rate_sweep(const ExperimentConfig& config_base,
                                 const std::vector<std::int64_t>& n_list);

/// Same sweep but for a target strictly inside the class; throws ModelError
/// when the target's membership integral is not strictly below the budget.
std::vector<SweepRow> superefficiency_demo(const ExperimentConfig& config_base,
                                           const std::vector<std::int64_t>& n_list);

struct AdaptiveComparison {
  EmpiricalRisk hstar;
  EmpiricalRisk adaptive;
  double ratio_l2;         // adaptive / hstar
  double ratio_pointwise;  // at the first eval point
  bool has_critical;       // r = s/2 arm
  EmpiricalRisk critical;
  double critical_ratio_l2;
  double theoretical_inflation;  // exp(alpha A / beta - alpha^2 / beta)
};

/// Paired comparison: all arms rerun the same master seed, so every
/// replication sees identical Y vectors across bandwidth rules.
AdaptiveComparison adaptive_comparison(const ExperimentConfig& config_base,
                                       std::int64_t n);

}  // namespace deconv
