#include <cmath>
#include <numbers>

#include "deconv/montecarlo.hpp"
#include "deconv/risk_bounds.hpp"
#include "doctest.h"

using namespace deconv;
using std::numbers::pi;

namespace {

ExperimentConfig small_config() {
  SmoothnessClass cls{0.5, 1.0, 1.0 / pi};
  ExperimentConfig c{make_cauchy_target(1.0, cls), gaussian_noise(1.0), cls};
  c.n = 500;
  c.replications = 12;
  c.rule = BandwidthRule::HSTAR;
  c.master_seed = 20240601;
  return c;
}

bool identical(const EmpiricalRisk& a, const EmpiricalRisk& b) {
  if (a.h_used != b.h_used || a.n != b.n || a.replications != b.replications)
    return false;
  if (a.l2.mse != b.l2.mse || a.l2.mc_se != b.l2.mc_se ||
      a.l2.bias_sq != b.l2.bias_sq || a.l2.var != b.l2.var)
    return false;
  if (a.pointwise.size() != b.pointwise.size()) return false;
  for (const auto& [x, pr] : a.pointwise) {
    auto it = b.pointwise.find(x);
    if (it == b.pointwise.end()) return false;
    if (pr.mse != it->second.mse || pr.bias_sq != it->second.bias_sq ||
        pr.var != it->second.var || pr.mc_se != it->second.mc_se)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("experiments are reproducible bit for bit") {
  ExperimentConfig c = small_config();
  EmpiricalRisk a = run_experiment(c);
  EmpiricalRisk b = run_experiment(c);
  CHECK(identical(a, b));

  // a different master seed moves the numbers
  ExperimentConfig c2 = c;
  c2.master_seed = 7;
  CHECK_FALSE(identical(a, run_experiment(c2)));
}

TEST_CASE("thread count never changes the result") {
  ExperimentConfig c = small_config();
  c.replications = 9;  // deliberately not a multiple of the thread counts
  EmpiricalRisk serial = run_experiment(c);
  for (int t : {2, 3, 4}) {
    ExperimentConfig ct = c;
    ct.threads = t;
    CHECK(identical(serial, run_experiment(ct)));
  }
}

TEST_CASE("bias-variance decomposition is exact") {
  ExperimentConfig c = small_config();
  c.eval_points = {0.0, 1.0};
  EmpiricalRisk risk = run_experiment(c);
  CHECK(risk.l2.mse == doctest::Approx(risk.l2.bias_sq + risk.l2.var)
                           .epsilon(1e-12));
  CHECK(risk.l2.var >= 0.0);
  for (const auto& [x, pr] : risk.pointwise) {
    CHECK(pr.mse == doctest::Approx(pr.bias_sq + pr.var).epsilon(1e-12));
    CHECK(pr.var >= -1e-18);
  }
  CHECK(risk.pointwise.size() == 2);
  CHECK(risk.h_used == doctest::Approx(solve_hstar(c.cls, c.noise, c.n).h)
                           .epsilon(1e-15));

  ExperimentConfig bad = small_config();
  bad.eval_points = {0.00012345};  // not a grid point
  CHECK_THROWS_AS(run_experiment(bad), ValidationError);
}

TEST_CASE("degenerate noiseless run recovers the density") {
  SmoothnessClass cls{0.5, 1.0, 1.0 / pi};
  ExperimentConfig c{make_cauchy_target(1.0, cls), noiseless_model(), cls};
  c.n = 100000;
  c.replications = 2;
  c.rule = BandwidthRule::FIXED;
  c.fixed_h = 0.2;
  c.master_seed = 5;
  EmpiricalRisk risk = run_experiment(c);
  CHECK(risk.l2.mse < 1e-3);
}

TEST_CASE("empirical risk is consistent with the theoretical bound") {
  ExperimentConfig c = small_config();
  c.n = 2000;
  c.replications = 40;
  EmpiricalRisk risk = run_experiment(c);
  RiskReport rep = assemble_report(c.cls, c.noise, c.n, risk.h_used, Loss::L2);
  CHECK(risk.l2.mse <= rep.total_bound + 2.0 * risk.l2.mc_se);
  CHECK(risk.l2.bias_sq <= rep.bias_sq_bound * 1.05);
}

TEST_CASE("rate sweep reports risk against the sharp rate") {
  ExperimentConfig c = small_config();
  c.replications = 30;
  auto rows = rate_sweep(c, {1000, 10000});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 1000);
  CHECK(rows[1].rate < rows[0].rate);
  for (const auto& row : rows) {
    CHECK(row.ratio == doctest::Approx(row.risk / row.rate).epsilon(1e-15));
    CHECK(row.ratio < 2.0);
    CHECK(row.mc_se > 0.0);
  }
}

TEST_CASE("superefficiency demo rejects boundary targets") {
  // cauchy with L = 1/pi sits exactly on the budget: rejected
  ExperimentConfig boundary = small_config();
  CHECK_THROWS_AS(superefficiency_demo(boundary, {1000}), ModelError);

  // the same target declared inside a roomier class runs, and beats the
  // class-wide rate by an ever-growing factor
  SmoothnessClass roomy{0.5, 1.0, 4.0 / pi};
  ExperimentConfig interior{make_cauchy_target(1.0, roomy), gaussian_noise(1.0),
                            roomy};
  interior.n = 500;
  interior.replications = 30;
  interior.master_seed = 99;
  auto rows = superefficiency_demo(interior, {1000, 10000});
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].ratio < rows[0].ratio);
}

TEST_CASE("adaptive comparison shares samples across arms") {
  ExperimentConfig c = small_config();
  c.replications = 10;
  AdaptiveComparison cmp = adaptive_comparison(c, 2000);
  CHECK(cmp.hstar.n == 2000);
  CHECK(cmp.adaptive.n == 2000);
  CHECK(cmp.ratio_l2 ==
        doctest::Approx(cmp.adaptive.l2.mse / cmp.hstar.l2.mse).epsilon(1e-15));
  CHECK(cmp.ratio_l2 > 0.0);
  CHECK(cmp.ratio_pointwise > 0.0);
  // r = s/2 here, so the critical arm must be present
  CHECK(cmp.has_critical);
  CHECK(cmp.critical.replications == 10);
  CHECK(cmp.theoretical_inflation ==
        doctest::Approx(critical_inflation(0.5, c.critical_A, 0.5)).epsilon(1e-14));

  // r > s/2 has no adaptive guarantee
  SmoothnessClass super{0.5, 1.5, 2.0};
  ExperimentConfig bad = c;
  bad.cls = super;
  CHECK_THROWS_AS(adaptive_comparison(bad, 2000), ValidationError);
}
