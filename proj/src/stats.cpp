#include "jcir/stats.hpp"

#include <algorithm>
#include <cmath>

#include "jcir/error.hpp"
#include "jcir/summation.hpp"

namespace jcir {
namespace {

double ks_coefficient(double alpha) {
  // c(alpha) = sqrt(-ln(alpha/2) / 2)
  return std::sqrt(-0.5 * std::log(0.5 * alpha));
}

void require_nonempty(std::span<const double> xs) {
  if (xs.empty()) throw Error(ErrorKind::EmptyInput, "KS statistic needs a nonempty sample");
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  require_nonempty(samples);
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    const auto di = static_cast<double>(i);
    d = std::max({d, (di + 1.0) / n - f, f - di / n});
  }
  return std::clamp(d, 0.0, 1.0);
}

double ks_statistic(std::span<const double> samples, std::span<const double> reference) {
  require_nonempty(samples);
  require_nonempty(reference);
  std::vector<double> x(samples.begin(), samples.end());
  std::vector<double> y(reference.begin(), reference.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const auto n = static_cast<double>(x.size());
  const auto m = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  return d;
}

double ks_critical_one_sample(std::size_t n, double alpha) {
  return ks_coefficient(alpha) / std::sqrt(static_cast<double>(n));
}

double ks_critical_two_sample(std::size_t n, std::size_t m, double alpha) {
  const auto dn = static_cast<double>(n);
  const auto dm = static_cast<double>(m);
  return ks_coefficient(alpha) * std::sqrt((dn + dm) / (dn * dm));
}

double Moments::standard_error() const {
  return n > 0 ? std::sqrt(variance / static_cast<double>(n)) : 0.0;
}

Moments moments(std::span<const double> xs) {
  Moments m;
  m.n = xs.size();
  if (xs.empty()) return m;
  m.mean = compensated_sum(xs) / static_cast<double>(xs.size());
  if (xs.size() < 2) return m;
  CompensatedSum sq;
  for (double x : xs) sq.add((x - m.mean) * (x - m.mean));
  m.variance = sq.value() / static_cast<double>(xs.size() - 1);
  return m;
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw Error(ErrorKind::EmptyInput, "median of an empty sample");
  const auto mid = xs.size() / 2;
  std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid), xs.end());
  const double upper = xs[mid];
  if (xs.size() % 2 == 1) return upper;
  const double lower = *std::max_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace jcir
