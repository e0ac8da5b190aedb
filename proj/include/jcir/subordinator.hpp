#pragma once

#include <span>
#include <vector>

#include "jcir/model.hpp"
#include "jcir/rng.hpp"

namespace jcir {

// Jumps of the subordinator on (0, horizon]: strictly increasing times,
// strictly positive sizes.
class JumpTrain {
 public:
  JumpTrain() = default;
  explicit JumpTrain(double horizon) : horizon_(horizon) {}
  // Validates the invariants; throws Error(InvalidParameter).
  JumpTrain(double horizon, std::vector<double> times, std::vector<double> sizes);

  double horizon() const noexcept { return horizon_; }
  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> sizes() const noexcept { return sizes_; }
  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }

  double total() const noexcept;

  friend bool operator==(const JumpTrain&, const JumpTrain&) = default;

 private:
  double horizon_ = 0.0;
  std::vector<double> times_;
  std::vector<double> sizes_;
};

double sample_jump_size(const JumpLaw& law, Rng& rng);

// Homogeneous Poisson arrivals by exponential inter-arrival accumulation,
// i.i.d. sizes from the jump law.
JumpTrain sample_jumps(const LevySpec& levy, double horizon, Rng& rng);

// J_t: sum of the sizes with time <= t. Throws OutOfHorizon for t > horizon.
double jt_at(const JumpTrain& train, double t);

}  // namespace jcir
