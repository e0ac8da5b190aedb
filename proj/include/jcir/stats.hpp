#pragma once

#include <functional>
#include <span>
#include <vector>

namespace jcir {

double normal_cdf(double x);

// sup |F_n - F| of the sample against a continuous target CDF.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);
// sup |F_n - G_m| between two samples.
double ks_statistic(std::span<const double> samples, std::span<const double> reference);

// Asymptotic critical values c(alpha) / sqrt(n) (one sample) and
// c(alpha) sqrt((n + m) / (n m)) (two sample); c(5%) = 1.358, c(1%) = 1.628.
double ks_critical_one_sample(std::size_t n, double alpha);
double ks_critical_two_sample(std::size_t n, std::size_t m, double alpha);

struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased; 0 when n < 2
  double standard_error() const;
};

// Compensated two-pass mean and variance.
Moments moments(std::span<const double> xs);

double median(std::vector<double> xs);

}  // namespace jcir
