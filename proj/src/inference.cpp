#include "jcir/inference.hpp"

#include <cmath>

#include "jcir/error.hpp"
#include "jcir/summation.hpp"

namespace jcir {
namespace {

double require_sigma(const Observation& obs) {
  if (!obs.sigma_known || !(*obs.sigma_known > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "observation needs a known sigma > 0");
  }
  return *obs.sigma_known;
}

double require_integral(double integral) {
  if (!(integral > 0.0)) throw Error(ErrorKind::DegeneratePath, "integral of the path is zero");
  return integral;
}

}  // namespace

JumpTrain extract_jumps(const Path& path) { return path.jumps(); }

JumpTrain extract_jumps_threshold(const Path& path, double threshold) {
  if (!(threshold > 0.0)) throw Error(ErrorKind::InvalidParameter, "jump threshold must be > 0");
  const auto t = path.times();
  const auto y = path.values();
  std::vector<double> times;
  std::vector<double> sizes;
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double dy = y[k] - y[k - 1];
    if (dy > threshold) {
      times.push_back(t[k]);
      sizes.push_back(dy);
    }
  }
  return JumpTrain(path.horizon(), std::move(times), std::move(sizes));
}

double default_jump_threshold(double sigma, double dt) { return 4.0 * sigma * std::sqrt(dt); }

JumpTrain observed_jumps(const Path& path, std::optional<double> sigma) {
  if (path.annotated()) return extract_jumps(path);
  if (!sigma) throw Error(ErrorKind::InvalidParameter, "unannotated path needs sigma for the jump threshold");
  const auto t = path.times();
  const double dt = t.size() > 1 ? path.horizon() / static_cast<double>(t.size() - 1) : path.horizon();
  return extract_jumps_threshold(path, default_jump_threshold(*sigma, dt));
}

PathStatistics path_statistics(const Path& path, const JumpTrain& jumps) {
  const auto y = path.values();
  CompensatedSum qv;
  for (std::size_t k = 1; k < y.size(); ++k) {
    const double d = y[k] - y[k - 1];
    qv.add(d * d);
  }
  CompensatedSum sq;
  for (double z : jumps.sizes()) sq.add(z * z);
  return {path.initial(), path.terminal(), path.horizon(), jumps.total(), integral_of_path(path),
          qv.value(), sq.value()};
}

double sigma_sq_hat(const Path& path, const JumpTrain& jumps) {
  const auto s = path_statistics(path, jumps);
  return (s.quadratic_variation - s.jump_squares) / require_integral(s.integral);
}

double sigma_sq_hat(const Path& path) { return sigma_sq_hat(path, extract_jumps(path)); }

double mle_b(const PathStatistics& s, double a) {
  return -(s.y_terminal - s.y0 - a * s.horizon - s.jump_total) / require_integral(s.integral);
}

double mle_b(const Observation& obs) {
  return mle_b(path_statistics(obs.path, observed_jumps(obs.path, obs.sigma_known)), obs.a_known);
}

double log_likelihood_ratio(const Observation& obs, double b, double b_ref) {
  const double sigma = require_sigma(obs);
  const auto s = path_statistics(obs.path, observed_jumps(obs.path, obs.sigma_known));
  const double integral = require_integral(s.integral);
  const double increment = s.y_terminal - s.y0 - obs.a_known * s.horizon - s.jump_total;
  const double s2 = sigma * sigma;
  return -((b - b_ref) / s2) * increment - ((b * b - b_ref * b_ref) / (2.0 * s2)) * integral;
}

double random_scaled_error(const Observation& obs, double b_true) {
  const double sigma = require_sigma(obs);
  const auto s = path_statistics(obs.path, observed_jumps(obs.path, obs.sigma_known));
  return std::sqrt(require_integral(s.integral)) * (mle_b(s, obs.a_known) - b_true) / sigma;
}

}  // namespace jcir
