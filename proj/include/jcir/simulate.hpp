#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "jcir/model.hpp"
#include "jcir/rng.hpp"
#include "jcir/subordinator.hpp"

namespace jcir {

// A sampled trajectory on a time grid starting at 0.
//
// Grid times are nondecreasing. A time appears twice only at a jump: the
// first entry holds the pre-jump value Y(tau-), the second (flagged in
// is_jump) the post-jump value, and their difference equals the recorded jump
// size exactly. Paths read from external data may be unannotated, in which
// case times are strictly increasing and jumps() is empty.
class Path {
 public:
  Path(std::vector<double> times, std::vector<double> values, std::vector<std::uint8_t> is_jump);
  static Path unannotated(std::vector<double> times, std::vector<double> values);

  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const std::uint8_t> is_jump() const noexcept { return is_jump_; }
  const JumpTrain& jumps() const noexcept { return jumps_; }
  bool annotated() const noexcept { return annotated_; }

  std::size_t size() const noexcept { return times_.size(); }
  double horizon() const noexcept { return times_.back(); }
  double initial() const noexcept { return values_.front(); }
  double terminal() const noexcept { return values_.back(); }

  friend bool operator==(const Path&, const Path&) = default;

 private:
  Path() = default;
  void validate() const;

  std::vector<double> times_;
  std::vector<double> values_;
  std::vector<std::uint8_t> is_jump_;
  JumpTrain jumps_;
  bool annotated_ = true;
};

// Exact CIR transitions on a sub-grid of 1/steps_per_unit between jumps.
struct ExactBetweenJumps {
  int steps_per_unit;
};
// y += (a - b y) dt + sigma sqrt(y) dW + dJ, floored at 0 after every step.
struct FullTruncationEuler {
  double dt;
};
using Scheme = std::variant<ExactBetweenJumps, FullTruncationEuler>;

void validate(const Scheme& scheme);
// Grid spacing of the scheme (1/steps_per_unit or dt).
double grid_step(const Scheme& scheme);

// One draw from the exact transition law of dY = (a - bY)dt + sigma sqrt(Y) dW
// over dt, started at y: a scaled noncentral chi-square.
double cir_transition_sample(double y, double dt, double a, double b, double sigma, Rng& rng);

Path simulate_jump_cir(const ModelParams& params, double horizon, const Scheme& scheme, Rng& rng);

Path simulate_diffusion_cir(double a, double b, double sigma, double y0, double horizon,
                            const Scheme& scheme, Rng& rng);

// Euler path together with the Wiener increment used on each grid interval
// (dw[k] drives the step from point k to point k+1; zero across jump pairs).
struct EulerRecording {
  Path path;
  std::vector<double> dw;
};
EulerRecording simulate_euler_recording_noise(const ModelParams& params, double horizon, double dt,
                                              Rng& rng);

// Two Euler paths driven by the same Wiener increments: the first with the
// sampled subordinator jumps, the second without. Both share the grid, except
// that the jump path carries the extra post-jump point at each jump time.
std::pair<Path, Path> simulate_coupled_pair(const ModelParams& params, double horizon, double dt,
                                            Rng& rng);

// Y_T only, propagated exactly from jump to jump. No grid.
double sample_endpoint(const ModelParams& params, double horizon, Rng& rng);

// Left-Riemann sum of the path values against the grid.
double integral_of_path(const Path& path);

}  // namespace jcir
