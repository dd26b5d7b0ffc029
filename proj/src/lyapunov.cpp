#include <cmath>
#include <limits>
#include <string>

#include "cga/chaos_maps.hpp"
#include "cga/error.hpp"
#include "mackey_glass.hpp"

namespace cga {

namespace {

template <std::size_t N>
double distance(const std::array<double, N>& a, const std::array<double, N>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += (b[i] - a[i]) * (b[i] - a[i]);
  return std::sqrt(s);
}

// Separation that collapsed to exactly zero is booked as a contraction to
// machine resolution and the shadow orbit is re-seeded.
double log_ratio(double d, double delta0) {
  if (d == 0.0) return std::log(std::numeric_limits<double>::epsilon());
  return std::log(d / delta0);
}

template <std::size_t N, class Step>
double two_trajectory(std::array<double, N> x, Step step, std::size_t burn_in, std::size_t steps,
                      double delta0, double time_per_step) {
  for (std::size_t i = 0; i < burn_in; ++i) x = step(x);
  std::array<double, N> y = x;
  y[0] += delta0;
  double sum = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    x = step(x);
    y = step(y);
    const double d = distance(x, y);
    sum += log_ratio(d, delta0);
    if (d == 0.0) {
      y = x;
      y[0] += delta0;
    } else {
      for (std::size_t j = 0; j < N; ++j) y[j] = x[j] + (y[j] - x[j]) * (delta0 / d);
    }
  }
  return sum / (static_cast<double>(steps) * time_per_step);
}

double mackey_glass_exponent(const MapParams& params, std::size_t steps, double delta0) {
  const auto& p = params.mackey_glass;
  detail::MackeyGlassIntegrator base(p, default_initial_state(MapId::MackeyGlass)[0]);
  for (std::size_t i = 0; i < params.burn_in; ++i) base.advance_sample();
  detail::MackeyGlassIntegrator shadow = base;
  shadow.history()[shadow.newest_index()] += delta0;

  double sum = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    base.advance_sample();
    shadow.advance_sample();
    auto& hb = base.history();
    auto& hs = shadow.history();
    double s = 0.0;
    for (std::size_t j = 0; j < hb.size(); ++j) s += (hs[j] - hb[j]) * (hs[j] - hb[j]);
    const double d = std::sqrt(s);
    sum += log_ratio(d, delta0);
    if (d == 0.0) {
      hs = hb;
      hs[shadow.newest_index()] += delta0;
    } else {
      for (std::size_t j = 0; j < hb.size(); ++j) hs[j] = hb[j] + (hs[j] - hb[j]) * (delta0 / d);
    }
  }
  const double sample_time = p.dt * static_cast<double>(p.steps_per_sample);
  return sum / (static_cast<double>(steps) * sample_time);
}

}  // namespace

double estimate_lyapunov(MapId map, const MapParams& params, std::size_t steps, double delta0) {
  params.validate();
  if (steps < 1000) throw Error(ErrorKind::InvalidRequest, "lyapunov estimation needs at least 1000 steps");
  if (!(delta0 > 0.0 && delta0 <= 1e-6)) {
    throw Error(ErrorKind::InvalidRequest, "delta0 must lie in (0, 1e-6]");
  }

  switch (map) {
    case MapId::Random:
      throw Error(ErrorKind::InvalidRequest, "random has no deterministic dynamics; exponent not applicable");
    case MapId::Phaseran:
    case MapId::Logistic: {
      const auto& p = params.logistic;
      auto step = [&p](const std::array<double, 1>& s) {
        const double next = iterate_logistic(s[0], p);
        if (next == 0.0 || next == 1.0) {
          throw Error(ErrorKind::DegenerateOrbit, "logistic orbit reached an absorbing point");
        }
        return std::array<double, 1>{next};
      };
      const double x0 = default_initial_state(MapId::Logistic)[0];
      return two_trajectory<1>({x0}, step, params.burn_in, steps, delta0, 1.0);
    }
    case MapId::Quadratic: {
      auto step = [&](const std::array<double, 1>& s) {
        return std::array<double, 1>{iterate_quadratic(s[0], params.quadratic)};
      };
      const double x0 = default_initial_state(MapId::Quadratic)[0];
      return two_trajectory<1>({x0}, step, params.burn_in, steps, delta0, 1.0);
    }
    case MapId::Henon:
    case MapId::Ikeda: {
      const auto init = default_initial_state(map);
      const Vec2 s0{init[0], init[1]};
      if (map == MapId::Henon) {
        return two_trajectory<2>(s0, [&](const Vec2& s) { return iterate_henon(s, params.henon); },
                                 params.burn_in, steps, delta0, 1.0);
      }
      return two_trajectory<2>(s0, [&](const Vec2& s) { return iterate_ikeda(s, params.ikeda); },
                               params.burn_in, steps, delta0, 1.0);
    }
    case MapId::Lorenz:
    case MapId::Rossler: {
      const auto init = default_initial_state(map);
      const double dt = map == MapId::Lorenz ? params.lorenz.dt : params.rossler.dt;
      return two_trajectory<3>(Vec3{init[0], init[1], init[2]},
                               [&](const Vec3& s) { return step_flow(map, s, params); }, params.burn_in, steps,
                               delta0, dt);
    }
    case MapId::MackeyGlass:
      return mackey_glass_exponent(params, steps, delta0);
  }
  throw Error(ErrorKind::InvalidRequest, "unknown generator");
}

}  // namespace cga
