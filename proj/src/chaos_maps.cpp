#include "cga/chaos_maps.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <string>

#include "cga/error.hpp"
#include "cga/random.hpp"
#include "mackey_glass.hpp"

namespace cga {

std::string_view to_string(MapId id) noexcept {
  switch (id) {
    case MapId::Lorenz: return "lorenz";
    case MapId::Rossler: return "rossler";
    case MapId::Random: return "random";
    case MapId::Phaseran: return "phaseran";
    case MapId::MackeyGlass: return "mackeyglass";
    case MapId::Ikeda: return "ikeda";
    case MapId::Henon: return "henon";
    case MapId::Quadratic: return "quadratic";
    case MapId::Logistic: return "logistic";
  }
  return "unknown";
}

std::optional<MapId> parse_map_id(std::string_view name) noexcept {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == '_' || c == ' ') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "phaseram") return MapId::Phaseran;
  if (key == "mackey" || key == "mackeyglas") return MapId::MackeyGlass;
  for (MapId id : kAllMaps) {
    if (key == to_string(id)) return id;
  }
  return std::nullopt;
}

namespace {

void require(bool ok, ErrorKind kind, const std::string& what) {
  if (!ok) throw Error(kind, what);
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

template <std::size_t N>
void check_finite(const std::array<double, N>& s, std::string_view who) {
  if (!all_finite(s)) throw Error(ErrorKind::DivergedOrbit, std::string(who) + " orbit left the finite range");
}

double quadratic_escape_bound(double a) {
  // Invariant interval [-r, r] of x' = a - x^2, r the repelling fixed point.
  return 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * a));
}

Vec3 lorenz_field(const Vec3& s, const LorenzParams& p) {
  return {p.sigma * (s[1] - s[0]), s[0] * (p.rho - s[2]) - s[1], s[0] * s[1] - p.beta * s[2]};
}

Vec3 rossler_field(const Vec3& s, const RosslerParams& p) {
  return {-s[1] - s[2], s[0] + p.a * s[1], p.b + s[2] * (s[0] - p.c)};
}

template <class Field>
Vec3 rk4(const Vec3& s, double dt, Field&& field) {
  auto axpy = [](const Vec3& x, double h, const Vec3& k) {
    return Vec3{x[0] + h * k[0], x[1] + h * k[1], x[2] + h * k[2]};
  };
  const Vec3 k1 = field(s);
  const Vec3 k2 = field(axpy(s, 0.5 * dt, k1));
  const Vec3 k3 = field(axpy(s, 0.5 * dt, k2));
  const Vec3 k4 = field(axpy(s, dt, k3));
  Vec3 out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = s[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

void check_initial_state(MapId map, const MapParams& params, std::span<const double> init) {
  const std::size_t dim = state_dimension(map);
  require(init.size() == dim, ErrorKind::InvalidRequest,
          std::string(to_string(map)) + " needs an initial state of dimension " + std::to_string(dim));
  require(all_finite(init), ErrorKind::InvalidRequest, "initial state is not finite");
  switch (map) {
    case MapId::Logistic:
    case MapId::Phaseran:
      require(init[0] >= 0.0 && init[0] <= 1.0, ErrorKind::InvalidRequest,
              "logistic initial state must lie in [0, 1]");
      break;
    case MapId::Quadratic:
      require(std::abs(init[0]) <= quadratic_escape_bound(params.quadratic.a), ErrorKind::InvalidRequest,
              "quadratic initial state lies outside the invariant interval");
      break;
    case MapId::MackeyGlass:
      require(init[0] > 0.0, ErrorKind::InvalidRequest, "mackey-glass history must be positive");
      break;
    default:
      break;
  }
}

void check_logistic_state(double x) {
  if (x == 0.0 || x == 1.0) throw Error(ErrorKind::DegenerateOrbit, "logistic orbit reached an absorbing point");
}

// Runs burn_in discarded iterations, then records `length` samples, each taken
// before the state is advanced.
template <class State, class Step, class Emit>
void drive(State state, std::size_t burn_in, std::size_t length, Step&& step, Emit&& emit) {
  for (std::size_t i = 0; i < burn_in; ++i) state = step(state);
  for (std::size_t i = 0; i < length; ++i) {
    emit(state);
    if (i + 1 < length) state = step(state);
  }
}

template <class State, class Step>
auto fixed_point_guard(Step step, std::string_view who) {
  return [step, who](const State& s) {
    State next = step(s);
    if (next == s) throw Error(ErrorKind::DegenerateOrbit, std::string(who) + " orbit sits on a fixed point");
    return next;
  };
}

}  // namespace

void MapParams::validate() const {
  const bool finite = std::isfinite(lorenz.sigma) && std::isfinite(lorenz.rho) && std::isfinite(lorenz.beta) &&
                      std::isfinite(rossler.a) && std::isfinite(rossler.b) && std::isfinite(rossler.c) &&
                      std::isfinite(random.a) && std::isfinite(random.b) && std::isfinite(mackey_glass.a) &&
                      std::isfinite(mackey_glass.b) && std::isfinite(mackey_glass.n) &&
                      std::isfinite(ikeda.u) && std::isfinite(henon.a) && std::isfinite(henon.b) &&
                      std::isfinite(quadratic.a) && std::isfinite(logistic.a);
  require(finite, ErrorKind::InvalidRequest, "map parameters must be finite");
  require(lorenz.dt > 0.0 && rossler.dt > 0.0 && mackey_glass.dt > 0.0, ErrorKind::InvalidRequest,
          "flow time steps must be positive");
  require(mackey_glass.tau >= mackey_glass.dt, ErrorKind::InvalidRequest, "mackey-glass delay must be >= dt");
  require(mackey_glass.steps_per_sample >= 1, ErrorKind::InvalidRequest, "steps_per_sample must be >= 1");
  require(quadratic.a >= -0.25, ErrorKind::InvalidRequest, "quadratic parameter must be >= -1/4");
  if (random.distribution == RandomDistribution::Uniform) {
    require(random.a < random.b, ErrorKind::InvalidRequest, "uniform baseline needs a < b");
  } else {
    require(random.b > 0.0, ErrorKind::InvalidRequest, "normal baseline needs a positive deviation");
  }
}

std::size_t sample_width(MapId id) noexcept {
  switch (id) {
    case MapId::Henon:
    case MapId::Ikeda:
    case MapId::Lorenz:
    case MapId::Rossler:
      return 2;
    default:
      return 1;
  }
}

std::size_t state_dimension(MapId id) noexcept {
  switch (id) {
    case MapId::Lorenz:
    case MapId::Rossler:
      return 3;
    case MapId::Henon:
    case MapId::Ikeda:
      return 2;
    case MapId::Random:
      return 0;
    default:
      return 1;
  }
}

std::vector<double> default_initial_state(MapId id) {
  switch (id) {
    case MapId::Lorenz: return {1.0, 1.0, 1.0};
    case MapId::Rossler: return {1.0, 1.0, 1.0};
    case MapId::Random: return {};
    case MapId::Phaseran: return {0.3};
    case MapId::MackeyGlass: return {1.2};
    case MapId::Ikeda: return {0.1, 0.1};
    case MapId::Henon: return {0.0, 0.0};
    case MapId::Quadratic: return {0.1};
    case MapId::Logistic: return {0.3};
  }
  return {};
}

Vec2 iterate_henon(const Vec2& s, const HenonParams& p) {
  Vec2 next{1.0 - p.a * s[0] * s[0] + s[1], p.b * s[0]};
  check_finite(next, "henon");
  return next;
}

Vec2 iterate_ikeda(const Vec2& s, const IkedaParams& p) {
  const double t = 0.4 - 6.0 / (1.0 + s[0] * s[0] + s[1] * s[1]);
  const double c = std::cos(t);
  const double sn = std::sin(t);
  Vec2 next{1.0 + p.u * (s[0] * c - s[1] * sn), p.u * (s[0] * sn + s[1] * c)};
  check_finite(next, "ikeda");
  return next;
}

double iterate_logistic(double x, const LogisticParams& p) {
  const double next = p.a * x * (1.0 - x);
  if (!std::isfinite(next)) throw Error(ErrorKind::DivergedOrbit, "logistic orbit left the finite range");
  return next;
}

double iterate_quadratic(double x, const QuadraticParams& p) {
  const double next = p.a - x * x;
  if (!std::isfinite(next)) throw Error(ErrorKind::DivergedOrbit, "quadratic orbit left the finite range");
  return next;
}

Vec3 step_flow(MapId map, const Vec3& state, const MapParams& params) {
  check_finite(state, "flow");
  Vec3 next;
  if (map == MapId::Lorenz) {
    next = rk4(state, params.lorenz.dt, [&](const Vec3& s) { return lorenz_field(s, params.lorenz); });
  } else if (map == MapId::Rossler) {
    next = rk4(state, params.rossler.dt, [&](const Vec3& s) { return rossler_field(s, params.rossler); });
  } else {
    throw Error(ErrorKind::InvalidRequest, std::string(to_string(map)) + " is not a flow");
  }
  check_finite(next, to_string(map));
  return next;
}

ChaoticSeries generate_series(MapId map, const MapParams& params, std::size_t length,
                              std::span<const double> initial_state, std::size_t burn_in,
                              std::uint64_t seed) {
  params.validate();
  require(length >= 1, ErrorKind::InvalidRequest, "series length must be >= 1");

  ChaoticSeries out;
  out.generator = map;
  out.width = sample_width(map);
  out.values.reserve(length * out.width);

  if (map == MapId::Random) {
    out.initial_state.assign(initial_state.begin(), initial_state.end());
    Rng rng(seed);
    const auto& rp = params.random;
    if (rp.distribution == RandomDistribution::Normal) {
      std::normal_distribution<double> dist(rp.a, rp.b);
      for (std::size_t i = 0; i < length; ++i) out.values.push_back(dist(rng));
    } else {
      std::uniform_real_distribution<double> dist(rp.a, rp.b);
      for (std::size_t i = 0; i < length; ++i) out.values.push_back(dist(rng));
    }
    return out;
  }

  check_initial_state(map, params, initial_state);
  out.initial_state.assign(initial_state.begin(), initial_state.end());

  switch (map) {
    case MapId::Phaseran: {
      require(length >= 2, ErrorKind::InvalidRequest, "phaseran needs at least two samples");
      ChaoticSeries base = generate_series(MapId::Logistic, params, length, initial_state, burn_in);
      ChaoticSeries surrogate = generate_phaseran(base, params.phaseran, seed);
      surrogate.initial_state = out.initial_state;
      return surrogate;
    }
    case MapId::Logistic: {
      const auto& p = params.logistic;
      check_logistic_state(initial_state[0]);
      auto step = fixed_point_guard<double>(
          [&p](double x) {
            const double next = iterate_logistic(x, p);
            check_logistic_state(next);
            return next;
          },
          "logistic");
      drive(initial_state[0], burn_in, length, step, [&](double x) { out.values.push_back(x); });
      break;
    }
    case MapId::Quadratic: {
      const auto& p = params.quadratic;
      auto step = fixed_point_guard<double>([&p](double x) { return iterate_quadratic(x, p); }, "quadratic");
      drive(initial_state[0], burn_in, length, step, [&](double x) { out.values.push_back(x); });
      break;
    }
    case MapId::Henon:
    case MapId::Ikeda: {
      const Vec2 s0{initial_state[0], initial_state[1]};
      auto emit = [&](const Vec2& s) { out.values.insert(out.values.end(), s.begin(), s.end()); };
      if (map == MapId::Henon) {
        auto step = fixed_point_guard<Vec2>([&](const Vec2& s) { return iterate_henon(s, params.henon); }, "henon");
        drive(s0, burn_in, length, step, emit);
      } else {
        auto step = fixed_point_guard<Vec2>([&](const Vec2& s) { return iterate_ikeda(s, params.ikeda); }, "ikeda");
        drive(s0, burn_in, length, step, emit);
      }
      break;
    }
    case MapId::Lorenz:
    case MapId::Rossler: {
      const Vec3 s0{initial_state[0], initial_state[1], initial_state[2]};
      auto step = fixed_point_guard<Vec3>([&](const Vec3& s) { return step_flow(map, s, params); },
                                          to_string(map));
      drive(s0, burn_in, length, step, [&](const Vec3& s) {
        out.values.push_back(s[0]);
        out.values.push_back(s[1]);
      });
      break;
    }
    case MapId::MackeyGlass: {
      detail::MackeyGlassIntegrator mg(params.mackey_glass, initial_state[0]);
      for (std::size_t i = 0; i < burn_in; ++i) mg.advance_sample();
      for (std::size_t i = 0; i < length; ++i) {
        out.values.push_back(mg.current());
        if (i + 1 < length) mg.advance_sample();
      }
      break;
    }
    case MapId::Random:
      break;
  }
  return out;
}

void write_series(const ChaoticSeries& series, std::ostream& out) {
  const auto old_precision = out.precision(17);
  for (std::size_t k = 0; k < series.length(); ++k) {
    auto s = series.sample(k);
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j) out << ' ';
      out << s[j];
    }
    out << '\n';
  }
  out.precision(old_precision);
  if (!out) throw Error(ErrorKind::IoError, "failed to write series");
}

}  // namespace cga
