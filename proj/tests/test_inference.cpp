#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "jcir/error.hpp"
#include "jcir/inference.hpp"
#include "jcir/rng.hpp"
#include "jcir/simulate.hpp"
#include "jcir/stats.hpp"
#include "jcir/summation.hpp"

using namespace jcir;

namespace {

const LevySpec kBajdLevy = CompoundPoisson{1.0, ExponentialJumps{2.0}};

Path constant_path(double value, double horizon, int steps) {
  std::vector<double> t;
  std::vector<double> y;
  for (int k = 0; k <= steps; ++k) {
    t.push_back(horizon * k / steps);
    y.push_back(value);
  }
  return Path(std::move(t), std::move(y), std::vector<std::uint8_t>(steps + 1, 0));
}

// 1 on [0, 1), jump +1 at t = 1, 2 on [1, 2].
Path one_jump_path() { return Path({0.0, 1.0, 1.0, 2.0}, {1.0, 1.0, 2.0, 2.0}, {0, 0, 1, 0}); }

}  // namespace

TEST_CASE("extract_jumps passes annotations through") {
  const auto train = extract_jumps(one_jump_path());
  REQUIRE(train.size() == 1);
  CHECK(train.times()[0] == 1.0);
  CHECK(train.sizes()[0] == 1.0);
}

TEST_CASE("threshold fallback") {
  const Path step = Path::unannotated({0.0, 1.0, 2.0}, {1.0, 2.0, 2.0});
  const auto train = extract_jumps_threshold(step, 0.5);
  REQUIRE(train.size() == 1);
  CHECK(train.times()[0] == 1.0);
  CHECK(train.sizes()[0] == 1.0);
  CHECK_THROWS_AS(extract_jumps_threshold(step, 0.0), Error);

  // no false jumps on diffusion paths at dt = 1e-3, sigma = 0.5
  Rng rng(1);
  const ModelParams p(1.0, 1.0, 0.5, ZeroLevy{}, 1.0);
  std::size_t false_jumps = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto path = simulate_jump_cir(p, 1.0, ExactBetweenJumps{1000}, rng);
    false_jumps += extract_jumps_threshold(Path::unannotated({path.times().begin(), path.times().end()},
                                                             {path.values().begin(), path.values().end()}),
                                           0.5)
                       .size();
  }
  CHECK(false_jumps == 0);
  CHECK(default_jump_threshold(0.5, 1e-4) == doctest::Approx(0.02));
}

TEST_CASE("sigma_sq_hat examples") {
  CHECK(sigma_sq_hat(constant_path(2.0, 3.0, 30)) == 0.0);
  CHECK(sigma_sq_hat(one_jump_path()) == 0.0);
  const Path zero = constant_path(0.0, 1.0, 10);
  try {
    sigma_sq_hat(zero);
    FAIL("expected DegeneratePath");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegeneratePath);
  }
}

TEST_CASE("sigma_sq_hat recovers sigma^2") {
  const ModelParams p(1.0, 1.0, 0.5, kBajdLevy, 1.0);
  Rng rng(2);
  std::vector<double> rel;
  for (int i = 0; i < 200; ++i) {
    const auto path = simulate_jump_cir(p, 10.0, ExactBetweenJumps{1000}, rng);
    rel.push_back(std::abs(sigma_sq_hat(path) - 0.25) / 0.25);
  }
  CHECK(median(rel) < 0.05);
}

TEST_CASE("mle_b examples") {
  const double horizon = 7.0;
  CHECK(mle_b(Observation{constant_path(2.0, horizon, 70), 1.0, {}}) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(mle_b(Observation{one_jump_path(), 0.0, {}}) == 0.0);
  const Observation zero{constant_path(0.0, 1.0, 10), 0.0, 0.5};
  CHECK_THROWS_AS(mle_b(zero), Error);
  CHECK_THROWS_AS(log_likelihood_ratio(zero, 1.0, 0.0), Error);
}

TEST_CASE("mle_b is consistent in the subcritical regime") {
  const ModelParams p(1.0, 1.0, 0.5, kBajdLevy, 1.0);
  Rng rng(3);
  std::vector<double> bs;
  for (int i = 0; i < 500; ++i) {
    bs.push_back(mle_b(Observation{simulate_jump_cir(p, 200.0, ExactBetweenJumps{100}, rng), 1.0, {}}));
  }
  CHECK(std::abs(moments(bs).mean - 1.0) < 0.05);
}

TEST_CASE("mle_b invariances") {
  // grid refinement of a piecewise-constant path changes nothing
  const Path coarse({0.0, 1.0, 1.0, 2.0}, {1.0, 1.0, 2.0, 2.0}, {0, 0, 1, 0});
  const Path fine({0.0, 0.25, 0.5, 0.75, 1.0, 1.0, 1.5, 2.0}, {1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0},
                  {0, 0, 0, 0, 0, 1, 0, 0});
  CHECK(mle_b(Observation{coarse, 0.3, {}}) == mle_b(Observation{fine, 0.3, {}}));

  // sigma and Levy metadata do not enter
  Rng rng(4);
  const auto path = simulate_jump_cir(ModelParams(1.0, 1.0, 0.5, kBajdLevy, 1.0), 20.0, ExactBetweenJumps{100}, rng);
  const double b0 = mle_b(Observation{path, 1.0, {}});
  for (double s : {0.1, 0.5, 3.0}) CHECK(mle_b(Observation{path, 1.0, s}) == b0);
  CHECK(mle_b(path_statistics(path, extract_jumps(path)), 1.0) == b0);
}

TEST_CASE("log likelihood ratio") {
  Rng rng(5);
  const ModelParams p(1.0, 0.0, 0.5, kBajdLevy, 1.0);
  for (int i = 0; i < 20; ++i) {
    const Observation obs{simulate_jump_cir(p, 10.0, ExactBetweenJumps{100}, rng), 1.0, 0.5};
    CHECK(log_likelihood_ratio(obs, 0.7, 0.7) == 0.0);
    CHECK(log_likelihood_ratio(obs, 0.3, -0.2) == doctest::Approx(-log_likelihood_ratio(obs, -0.2, 0.3)).epsilon(1e-12));
    // downward parabola with vertex at mle_b
    const double bh = mle_b(obs);
    const double h = 0.01;
    const double l0 = log_likelihood_ratio(obs, bh, 0.0);
    CHECK(log_likelihood_ratio(obs, bh + h, 0.0) < l0);
    CHECK(log_likelihood_ratio(obs, bh - h, 0.0) < l0);
    const double integral = integral_of_path(obs.path);
    const double second = (log_likelihood_ratio(obs, bh + h, 0.0) - 2.0 * l0 + log_likelihood_ratio(obs, bh - h, 0.0)) / (h * h);
    CHECK(second == doctest::Approx(-integral / 0.25).epsilon(1e-6));
  }
  const Observation no_sigma{one_jump_path(), 0.0, {}};
  try {
    log_likelihood_ratio(no_sigma, 1.0, 0.0);
    FAIL("expected InvalidParameter");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParameter);
  }
}

TEST_CASE("random_scaled_error") {
  Rng rng(6);
  const Observation obs{simulate_jump_cir(ModelParams(1.0, 1.0, 0.5, kBajdLevy, 1.0), 10.0, ExactBetweenJumps{100}, rng),
                        1.0, 0.5};
  CHECK(random_scaled_error(obs, mle_b(obs)) == 0.0);
  const double expected = std::sqrt(integral_of_path(obs.path)) * (mle_b(obs) - 1.0) / 0.5;
  CHECK(random_scaled_error(obs, 1.0) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("MLE error identity on Euler paths with known noise") {
  // b_hat - b = -sigma sum sqrt(Y) dW / sum Y dt, exact for Euler unless the floor binds
  const ModelParams p(1.0, 1.0, 0.5, kBajdLevy, 1.0);
  Rng rng(7);
  std::vector<double> gaps;
  for (int i = 0; i < 100; ++i) {
    const auto rec = simulate_euler_recording_noise(p, 10.0, 1e-3, rng);
    const auto y = rec.path.values();
    const auto t = rec.path.times();
    CompensatedSum noise;
    for (std::size_t k = 0; k + 1 < y.size(); ++k) noise.add(std::sqrt(y[k]) * rec.dw[k]);
    const double integral = integral_of_path(rec.path);
    const double lhs = mle_b(Observation{rec.path, 1.0, {}}) - 1.0;
    const double rhs = -0.5 * noise.value() / integral;
    gaps.push_back(std::abs(lhs - rhs) / std::abs(rhs));
  }
  CHECK(median(gaps) < 0.01);
}
