#include "deconv/montecarlo.hpp"

#include <cmath>
#include <exception>
#include <thread>

#include "deconv/rng.hpp"

namespace deconv {

namespace {

double resolve_bandwidth(const ExperimentConfig& c, std::int64_t n) {
  switch (c.rule) {
    case BandwidthRule::HSTAR:
      return solve_hstar(c.cls, c.noise, n).h;
    case BandwidthRule::ADAPTIVE:
      return adaptive_bandwidth(c.noise, n).h;
    case BandwidthRule::ADAPTIVE_CRITICAL: {
      double a0 = c.alpha0 > 0 ? c.alpha0 : c.cls.alpha;
      return adaptive_bandwidth_critical(c.noise, n, c.critical_A, a0).h;
    }
    case BandwidthRule::FIXED:
      if (!(c.fixed_h > 0)) throw ValidationError("fixed_h", "fixed_h must be positive");
      return c.fixed_h;
  }
  throw ValidationError("bandwidth_rule", "unknown bandwidth rule");
}

std::size_t grid_index_of(const Grid& grid, double x) {
  double j = (x + grid.x_max) / grid.spacing();
  auto idx = static_cast<std::ptrdiff_t>(std::llround(j));
  if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(grid.n_points) ||
      std::fabs(grid.x(static_cast<std::size_t>(idx)) - x) > 1e-9)
    throw ValidationError("eval_points", "evaluation point off the grid");
  return static_cast<std::size_t>(idx);
}

PointRisk reduce_point(const std::vector<double>& per_rep, double truth_gap_mean) {
  // per_rep holds squared errors; truth_gap_mean is (mean estimate - truth)^2
  PointRisk out{};
  const int R = static_cast<int>(per_rep.size());
  double m = 0.0;
  for (double e : per_rep) m += e;
  m /= R;
  double v = 0.0;
  for (double e : per_rep) v += (e - m) * (e - m);
  out.mse = m;
  out.mc_se = R > 1 ? std::sqrt(v / (R - 1.0) / R) : 0.0;
  out.bias_sq = truth_gap_mean;
  out.var = m - truth_gap_mean;
  return out;
}

}  // namespace

EmpiricalRisk run_experiment(const ExperimentConfig& config) {
  if (config.replications < 1)
    throw ValidationError("replications", "need replications >= 1");
  if (config.n < 3) throw ValidationError("n", "need n >= 3");

  const double h = resolve_bandwidth(config, config.n);
  const Grid grid = config.target.density_grid.grid;
  const std::size_t N = grid.n_points;
  const int R = config.replications;
  const int T = std::max(1, config.threads);

  std::vector<std::vector<double>> fhat(R);
  std::vector<std::exception_ptr> errors(T);

  auto worker = [&](int t) {
    try {
      for (int k = t; k < R; k += T) {
        std::uint64_t seed_x = derive_seed(config.master_seed, 2 * k);
        std::uint64_t seed_e = derive_seed(config.master_seed, 2 * k + 1);
        std::vector<double> y =
            config.target.sampler(static_cast<std::size_t>(config.n), seed_x);
        std::vector<double> eps =
            config.noise.sampler(static_cast<std::size_t>(config.n), seed_e);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += eps[i];
        DensityEstimate est = estimate_density(y, config.noise, h, grid);
        std::vector<double> vals(N);
        for (std::size_t j = 0; j < N; ++j) vals[j] = est.values.values[j].real();
        fhat[k] = std::move(vals);
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };

  if (T == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < T; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  const double dx = grid.spacing();
  std::vector<double> truth(N), mean(N, 0.0);
  for (std::size_t j = 0; j < N; ++j)
    truth[j] = config.target.density_grid.values[j].real();
  for (int k = 0; k < R; ++k)
    for (std::size_t j = 0; j < N; ++j) mean[j] += fhat[k][j];
  for (auto& m : mean) m /= R;

  EmpiricalRisk out;
  out.h_used = h;
  out.n = config.n;
  out.replications = R;

  std::vector<double> l2_errs(R, 0.0);
  for (int k = 0; k < R; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      double d = fhat[k][j] - truth[j];
      s += d * d;
    }
    l2_errs[k] = s * dx;
  }
  double l2_bias = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    double d = mean[j] - truth[j];
    l2_bias += d * d;
  }
  out.l2 = reduce_point(l2_errs, l2_bias * dx);

  for (double x : config.eval_points) {
    std::size_t j = grid_index_of(grid, x);
    std::vector<double> errs(R);
    for (int k = 0; k < R; ++k) {
      double d = fhat[k][j] - truth[j];
      errs[k] = d * d;
    }
    double bias = mean[j] - truth[j];
    out.pointwise[x] = reduce_point(errs, bias * bias);
  }
  return out;
}

std::vector<SweepRow> rate_sweep(const ExperimentConfig& config_base,
                                 const std::vector<std::int64_t>& n_list) {
  std::vector<SweepRow> rows;
  for (std::int64_t n : n_list) {
    ExperimentConfig c = config_base;
    c.n = n;
    EmpiricalRisk risk = run_experiment(c);
    double rate = rates(c.cls, c.noise, n).l2;
    rows.push_back(SweepRow{n, risk.l2.mse, rate, risk.l2.mse / rate, risk.l2.mc_se});
  }
  return rows;
}

std::vector<SweepRow> superefficiency_demo(const ExperimentConfig& config_base,
                                           const std::vector<std::int64_t>& n_list) {
  MembershipReport mem =
      class_membership(config_base.target.cf, config_base.cls);
  // the margin keeps quadrature noise from letting a boundary target slip in
  if (!mem.pass || !(mem.integral < mem.bound * (1.0 - 1e-6)))
    throw ModelError("superefficiency demo requires a strictly interior target");
  return rate_sweep(config_base, n_list);
}

AdaptiveComparison adaptive_comparison(const ExperimentConfig& config_base,
                                       std::int64_t n) {
  const double r = config_base.cls.r, s = config_base.noise.s;
  bool critical_regime = std::fabs(r - 0.5 * s) < 1e-12;
  if (!(r < 0.5 * s) && !critical_regime)
    throw ValidationError("class.r", "adaptive comparison requires r <= s/2");

  ExperimentConfig c = config_base;
  c.n = n;

  AdaptiveComparison out;
  c.rule = BandwidthRule::HSTAR;
  out.hstar = run_experiment(c);
  c.rule = BandwidthRule::ADAPTIVE;
  out.adaptive = run_experiment(c);
  out.ratio_l2 = out.adaptive.l2.mse / out.hstar.l2.mse;
  double x0 = config_base.eval_points.front();
  out.ratio_pointwise =
      out.adaptive.pointwise.at(x0).mse / out.hstar.pointwise.at(x0).mse;

  out.has_critical = critical_regime;
  out.critical_ratio_l2 = 0.0;
  out.theoretical_inflation = 0.0;
  if (critical_regime) {
    c.rule = BandwidthRule::ADAPTIVE_CRITICAL;
    out.critical = run_experiment(c);
    out.critical_ratio_l2 = out.critical.l2.mse / out.hstar.l2.mse;
    out.theoretical_inflation =
        critical_inflation(config_base.cls.alpha, c.critical_A,
                           config_base.noise.beta);
  }
  return out;
}

}  // namespace deconv
