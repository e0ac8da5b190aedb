#include "jcir/subordinator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "jcir/detail/overloaded.hpp"
#include "jcir/error.hpp"

namespace jcir {

JumpTrain::JumpTrain(double horizon, std::vector<double> times, std::vector<double> sizes)
    : horizon_(horizon), times_(std::move(times)), sizes_(std::move(sizes)) {
  if (!(std::isfinite(horizon_) && horizon_ >= 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "jump train horizon must be >= 0");
  }
  if (times_.size() != sizes_.size()) {
    throw Error(ErrorKind::InvalidParameter, "jump times and sizes differ in length");
  }
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!(times_[i] > 0.0 && times_[i] <= horizon_)) {
      throw Error(ErrorKind::InvalidParameter, "jump time outside (0, horizon]");
    }
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw Error(ErrorKind::InvalidParameter, "jump times not strictly increasing");
    }
    if (!(sizes_[i] > 0.0 && std::isfinite(sizes_[i]))) {
      throw Error(ErrorKind::InvalidParameter, "jump size must be > 0");
    }
  }
}

double JumpTrain::total() const noexcept { return std::accumulate(sizes_.begin(), sizes_.end(), 0.0); }

double sample_jump_size(const JumpLaw& law, Rng& rng) {
  return std::visit(detail::overloaded{
                        [&](const ExponentialJumps& e) { return rng.exponential(e.rate); },
                        [](const ConstantJumps& c) { return c.size; },
                        [&](const GammaJumps& g) { return rng.gamma(g.shape, 1.0 / g.rate); },
                    },
                    law);
}

JumpTrain sample_jumps(const LevySpec& levy, double horizon, Rng& rng) {
  if (!(horizon > 0.0)) throw Error(ErrorKind::DomainError, "sample_jumps needs T > 0");
  const auto* cp = std::get_if<CompoundPoisson>(&levy);
  if (cp == nullptr) return JumpTrain(horizon);

  std::vector<double> times;
  std::vector<double> sizes;
  double t = rng.exponential(cp->rate);
  while (t <= horizon) {
    times.push_back(t);
    sizes.push_back(sample_jump_size(cp->jumps, rng));
    t += rng.exponential(cp->rate);
  }
  return JumpTrain(horizon, std::move(times), std::move(sizes));
}

double jt_at(const JumpTrain& train, double t) {
  if (t > train.horizon()) {
    throw Error(ErrorKind::OutOfHorizon, "t = " + std::to_string(t) + " beyond horizon");
  }
  const auto times = train.times();
  const auto end = std::upper_bound(times.begin(), times.end(), t);
  const auto n = static_cast<std::size_t>(end - times.begin());
  const auto sizes = train.sizes();
  return std::accumulate(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(n), 0.0);
}

}  // namespace jcir
