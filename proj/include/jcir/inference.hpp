#pragma once

#include <optional>

#include "jcir/simulate.hpp"
#include "jcir/subordinator.hpp"

namespace jcir {

// A continuously observed path together with the known drift constant a and,
// for likelihood-based statistics, the known diffusion coefficient.
struct Observation {
  Path path;
  double a_known = 0.0;
  std::optional<double> sigma_known;
};

// Jump record of an annotated path, verbatim.
JumpTrain extract_jumps(const Path& path);

// Grid increments larger than threshold, reported as jumps at the right end
// of the grid interval. For paths without jump annotations.
JumpTrain extract_jumps_threshold(const Path& path, double threshold);

// Default threshold 4 sigma sqrt(dt) for a grid of spacing dt.
double default_jump_threshold(double sigma, double dt);

// Jumps of the path: the annotation when present, otherwise the threshold
// rule (needs sigma for the default threshold).
JumpTrain observed_jumps(const Path& path, std::optional<double> sigma);

// Sufficient statistics of the likelihood.
struct PathStatistics {
  double y0;
  double y_terminal;
  double horizon;
  double jump_total;     // J_T
  double integral;       // left-Riemann int_0^T Y ds
  double quadratic_variation;
  double jump_squares;   // sum of squared jump sizes
};

PathStatistics path_statistics(const Path& path, const JumpTrain& jumps);

// (realized QV - sum of squared jumps) / int Y. Throws DegeneratePath when
// the integral vanishes.
double sigma_sq_hat(const Path& path);
double sigma_sq_hat(const Path& path, const JumpTrain& jumps);

// -(Y_T - y0 - a T - J_T) / int_0^T Y ds. Independent of sigma and of the
// Levy measure.
double mle_b(const Observation& obs);
double mle_b(const PathStatistics& stats, double a);

// log dP_b / dP_{b_ref} evaluated on the observation. Needs sigma_known.
double log_likelihood_ratio(const Observation& obs, double b, double b_ref);

// (1/sigma) sqrt(int Y) (b_hat - b_true). Needs sigma_known.
double random_scaled_error(const Observation& obs, double b_true);

}  // namespace jcir
