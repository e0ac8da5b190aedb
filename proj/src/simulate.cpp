#include "jcir/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "jcir/error.hpp"
#include "jcir/summation.hpp"

namespace jcir {

// ---------------------------------------------------------------------------
// Path

Path::Path(std::vector<double> times, std::vector<double> values, std::vector<std::uint8_t> is_jump)
    : times_(std::move(times)), values_(std::move(values)), is_jump_(std::move(is_jump)) {
  if (is_jump_.size() != times_.size()) {
    throw Error(ErrorKind::InvalidParameter, "is_jump length differs from grid length");
  }
  validate();
  std::vector<double> jt;
  std::vector<double> jz;
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (is_jump_[k]) {
      jt.push_back(times_[k]);
      jz.push_back(values_[k] - values_[k - 1]);
    }
  }
  jumps_ = JumpTrain(times_.back(), std::move(jt), std::move(jz));
}

Path Path::unannotated(std::vector<double> times, std::vector<double> values) {
  Path p;
  p.is_jump_.assign(times.size(), 0);
  p.times_ = std::move(times);
  p.values_ = std::move(values);
  p.annotated_ = false;
  p.validate();
  p.jumps_ = JumpTrain(p.times_.back());
  return p;
}

void Path::validate() const {
  if (times_.empty()) throw Error(ErrorKind::InvalidParameter, "path needs at least one point");
  if (values_.size() != times_.size()) {
    throw Error(ErrorKind::InvalidParameter, "path values and times differ in length");
  }
  if (times_.front() != 0.0) throw Error(ErrorKind::InvalidParameter, "path must start at time 0");
  if (is_jump_.front()) throw Error(ErrorKind::InvalidParameter, "no jump at time 0");
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (!(std::isfinite(values_[k]) && values_[k] >= 0.0)) {
      throw Error(ErrorKind::InvalidParameter, "path values must be finite and >= 0");
    }
    if (k == 0) continue;
    if (is_jump_[k]) {
      if (times_[k] != times_[k - 1] || !(values_[k] > values_[k - 1])) {
        throw Error(ErrorKind::InvalidParameter, "jump point must repeat the time with a positive increment");
      }
      if (k >= 2 && times_[k - 1] == times_[k - 2]) {
        throw Error(ErrorKind::InvalidParameter, "two jumps at the same time");
      }
    } else if (!(times_[k] > times_[k - 1])) {
      throw Error(ErrorKind::InvalidParameter, "grid times must increase except at jumps");
    }
  }
}

// ---------------------------------------------------------------------------
// Schemes

void validate(const Scheme& scheme) {
  if (const auto* e = std::get_if<ExactBetweenJumps>(&scheme)) {
    if (e->steps_per_unit <= 0) throw Error(ErrorKind::InvalidParameter, "steps_per_unit must be > 0");
  } else if (const auto* f = std::get_if<FullTruncationEuler>(&scheme)) {
    if (!(f->dt > 0.0 && std::isfinite(f->dt))) throw Error(ErrorKind::InvalidParameter, "dt must be > 0");
  }
}

double grid_step(const Scheme& scheme) {
  if (const auto* e = std::get_if<ExactBetweenJumps>(&scheme)) return 1.0 / e->steps_per_unit;
  return std::get<FullTruncationEuler>(scheme).dt;
}

double cir_transition_sample(double y, double dt, double a, double b, double sigma, Rng& rng) {
  if (dt <= 0.0) return y;
  const double s2 = sigma * sigma;
  // Y_{t+dt} = scale * chi'^2(df, nc).
  const double scale =
      std::abs(b) < kCriticalThreshold ? 0.25 * s2 * dt : -0.25 * s2 * std::expm1(-b * dt) / b;
  const double df = 4.0 * a / s2;
  const double nc = y * std::exp(-b * dt) / scale;
  if (df > 1.0) {
    // chi'^2(df, nc) = (Z + sqrt(nc))^2 + chi^2(df - 1)
    const double z = rng.normal() + std::sqrt(nc);
    return scale * (z * z + rng.gamma(0.5 * (df - 1.0), 2.0));
  }
  // Poisson mixture of central chi-squares; df = 0 and N = 0 gives the atom at 0.
  const double n = rng.poisson(0.5 * nc);
  return scale * rng.gamma(0.5 * df + n, 2.0);
}

namespace {

// Grid instant; jump > 0 marks a jump of that size right after arriving.
struct Event {
  double t;
  double jump;
};

std::vector<Event> build_events(double horizon, double step, const JumpTrain& jumps) {
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(horizon / step - 1e-9)));
  std::vector<Event> events;
  events.reserve(n + jumps.size() + 1);
  const auto jt = jumps.times();
  const auto jz = jumps.sizes();
  std::size_t j = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double t_grid = k == n ? horizon : std::min(horizon, static_cast<double>(k) * step);
    while (j < jt.size() && jt[j] <= t_grid) {
      events.push_back({jt[j], jz[j]});
      ++j;
    }
    if (events.empty() || events.back().t < t_grid) events.push_back({t_grid, 0.0});
  }
  return events;
}

class PathBuilder {
 public:
  explicit PathBuilder(std::size_t reserve) {
    times_.reserve(reserve);
    values_.reserve(reserve);
    flags_.reserve(reserve);
  }
  void point(double t, double y) { push(t, y, 0); }
  // Returns the post-jump value; a size lost to rounding leaves no jump.
  double jump(double t, double y, double z) {
    const double post = y + z;
    if (post > y) push(t, post, 1);
    return post;
  }
  Path build() && { return Path(std::move(times_), std::move(values_), std::move(flags_)); }

 private:
  void push(double t, double y, std::uint8_t f) {
    times_.push_back(t);
    values_.push_back(y);
    flags_.push_back(f);
  }
  std::vector<double> times_;
  std::vector<double> values_;
  std::vector<std::uint8_t> flags_;
};

template <class Step>
Path propagate(double y0, const std::vector<Event>& events, Step&& step) {
  PathBuilder out(events.size() + events.size() / 8 + 2);
  double t = 0.0;
  double y = y0;
  out.point(t, y);
  for (const auto& ev : events) {
    if (ev.t > t) {
      y = step(y, ev.t - t);
      t = ev.t;
      out.point(t, y);
    }
    if (ev.jump > 0.0) y = out.jump(t, y, ev.jump);
  }
  return std::move(out).build();
}

double euler_step(double y, double dt, double dw, double a, double b, double sigma) {
  const double next = y + (a - b * y) * dt + sigma * std::sqrt(y) * dw;
  return std::max(next, 0.0);
}

void require_horizon(double horizon) {
  if (!(horizon > 0.0 && std::isfinite(horizon))) throw Error(ErrorKind::DomainError, "horizon must be > 0");
}

}  // namespace

Path simulate_jump_cir(const ModelParams& params, double horizon, const Scheme& scheme, Rng& rng) {
  require_horizon(horizon);
  validate(scheme);
  // Every LevySpec alternative is finite-activity, so UnsupportedLevy cannot arise here.
  const JumpTrain jumps = sample_jumps(params.levy(), horizon, rng);
  const auto events = build_events(horizon, grid_step(scheme), jumps);
  const double a = params.a();
  const double b = params.b();
  const double sigma = params.sigma();
  if (std::holds_alternative<ExactBetweenJumps>(scheme)) {
    return propagate(params.y0(), events,
                     [&](double y, double dt) { return cir_transition_sample(y, dt, a, b, sigma, rng); });
  }
  return propagate(params.y0(), events, [&](double y, double dt) {
    return euler_step(y, dt, std::sqrt(dt) * rng.normal(), a, b, sigma);
  });
}

Path simulate_diffusion_cir(double a, double b, double sigma, double y0, double horizon,
                            const Scheme& scheme, Rng& rng) {
  return simulate_jump_cir(ModelParams(a, b, sigma, ZeroLevy{}, y0), horizon, scheme, rng);
}

EulerRecording simulate_euler_recording_noise(const ModelParams& params, double horizon, double dt,
                                              Rng& rng) {
  require_horizon(horizon);
  validate(Scheme{FullTruncationEuler{dt}});
  const JumpTrain jumps = sample_jumps(params.levy(), horizon, rng);
  const auto events = build_events(horizon, dt, jumps);
  std::vector<double> dw;
  dw.reserve(events.size() + jumps.size());
  const double a = params.a();
  const double b = params.b();
  const double sigma = params.sigma();

  PathBuilder out(events.size() + jumps.size() + 1);
  double t = 0.0;
  double y = params.y0();
  out.point(t, y);
  for (const auto& ev : events) {
    if (ev.t > t) {
      const double w = std::sqrt(ev.t - t) * rng.normal();
      dw.push_back(w);
      y = euler_step(y, ev.t - t, w, a, b, sigma);
      t = ev.t;
      out.point(t, y);
    }
    if (ev.jump > 0.0) {
      const double post = out.jump(t, y, ev.jump);
      if (post > y) dw.push_back(0.0);
      y = post;
    }
  }
  return {std::move(out).build(), std::move(dw)};
}

std::pair<Path, Path> simulate_coupled_pair(const ModelParams& params, double horizon, double dt,
                                            Rng& rng) {
  require_horizon(horizon);
  validate(Scheme{FullTruncationEuler{dt}});
  const JumpTrain jumps = sample_jumps(params.levy(), horizon, rng);
  const auto events = build_events(horizon, dt, jumps);
  const double a = params.a();
  const double b = params.b();
  const double sigma = params.sigma();

  PathBuilder with(events.size() + jumps.size() + 1);
  PathBuilder without(events.size() + 1);
  double t = 0.0;
  double y = params.y0();
  double y_free = params.y0();
  with.point(t, y);
  without.point(t, y_free);
  for (const auto& ev : events) {
    if (ev.t > t) {
      const double step = ev.t - t;
      const double w = std::sqrt(step) * rng.normal();
      y = euler_step(y, step, w, a, b, sigma);
      y_free = euler_step(y_free, step, w, a, b, sigma);
      t = ev.t;
      with.point(t, y);
      without.point(t, y_free);
    }
    if (ev.jump > 0.0) y = with.jump(t, y, ev.jump);
  }
  return {std::move(with).build(), std::move(without).build()};
}

double sample_endpoint(const ModelParams& params, double horizon, Rng& rng) {
  require_horizon(horizon);
  const double a = params.a();
  const double b = params.b();
  const double sigma = params.sigma();
  double y = params.y0();
  double t = 0.0;
  if (const auto* cp = std::get_if<CompoundPoisson>(&params.levy())) {
    double next = rng.exponential(cp->rate);
    while (next <= horizon) {
      y = cir_transition_sample(y, next - t, a, b, sigma, rng);
      y += sample_jump_size(cp->jumps, rng);
      t = next;
      next += rng.exponential(cp->rate);
    }
  }
  return cir_transition_sample(y, horizon - t, a, b, sigma, rng);
}

double integral_of_path(const Path& path) {
  const auto t = path.times();
  const auto y = path.values();
  CompensatedSum sum;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) sum.add(y[k] * (t[k + 1] - t[k]));
  return sum.value();
}

}  // namespace jcir
