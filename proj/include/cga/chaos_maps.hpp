#pragma once

// Chaotic series generators used as raw material for initial populations.
//
// Every generator is a pure function of (map, parameters, initial state,
// burn-in, seed). Samples are recorded *before* each iteration, after the
// burn-in iterations have been discarded, so with burn_in = 0 the first
// sample is the initial state itself.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cga {

enum class MapId {
  Lorenz,
  Rossler,
  Random,
  Phaseran,
  MackeyGlass,
  Ikeda,
  Henon,
  Quadratic,
  Logistic,
};

/// All generators, in the row order of the reference parameter table.
inline constexpr std::array<MapId, 9> kAllMaps = {
    MapId::Lorenz, MapId::Rossler, MapId::Random,    MapId::Phaseran, MapId::MackeyGlass,
    MapId::Ikeda,  MapId::Henon,   MapId::Quadratic, MapId::Logistic,
};

std::string_view to_string(MapId id) noexcept;
/// Case-insensitive; accepts a few historical spellings ("phaseram", "mackey-glass").
std::optional<MapId> parse_map_id(std::string_view name) noexcept;

struct LorenzParams {
  double sigma = 10.0;
  double rho = 28.0;
  double beta = 8.0 / 3.0;
  double dt = 0.01;
};

struct RosslerParams {
  double a = 0.2;
  double b = 0.2;
  double c = 5.7;
  double dt = 0.1;
};

enum class RandomDistribution { Normal, Uniform };

/// Pseudo-random baseline. Normal: mean a, standard deviation b.
/// Uniform: the half-open interval [a, b).
struct RandomParams {
  double a = 0.0;
  double b = 1.0;
  RandomDistribution distribution = RandomDistribution::Normal;
};

/// Phase-randomised surrogate of a logistic series. alpha is carried as a
/// recorded table value; the surrogate construction has no free parameter.
struct PhaseranParams {
  double alpha = 1.95;
};

/// dx/dt = a x(t - tau) / (1 + x(t - tau)^n) - b x(t), integrated with RK4 at
/// step dt and sampled every steps_per_sample steps.
struct MackeyGlassParams {
  double a = 0.2;
  double b = 0.1;
  double n = 10.0;
  double tau = 17.0;
  double dt = 0.1;
  std::size_t steps_per_sample = 10;
};

struct IkedaParams {
  double u = 0.9;
};

struct HenonParams {
  double a = 1.4;
  double b = 0.3;
};

/// x' = a - x^2
struct QuadraticParams {
  double a = 1.75;
};

/// x' = a x (1 - x)
struct LogisticParams {
  double a = 4.0;
};

struct MapParams {
  LorenzParams lorenz;
  RosslerParams rossler;
  RandomParams random;
  PhaseranParams phaseran;
  MackeyGlassParams mackey_glass;
  IkedaParams ikeda;
  HenonParams henon;
  QuadraticParams quadratic;
  LogisticParams logistic;
  std::size_t burn_in = 500;

  /// Throws Error(InvalidRequest) on non-positive steps or non-finite values.
  void validate() const;
};

/// A finite run of one generator. `values` holds length() samples of
/// `width` scalars each, flattened in sample order.
struct ChaoticSeries {
  MapId generator = MapId::Logistic;
  std::vector<double> initial_state;
  std::size_t width = 1;
  std::vector<double> values;

  std::size_t length() const noexcept { return width == 0 ? 0 : values.size() / width; }
  std::span<const double> sample(std::size_t k) const {
    return std::span<const double>(values).subspan(k * width, width);
  }

  friend bool operator==(const ChaoticSeries&, const ChaoticSeries&) = default;
};

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

/// Scalars emitted per sample: 2 for Henon, Ikeda and the flows (x, y), else 1.
std::size_t sample_width(MapId id) noexcept;
/// Number of state variables an initial condition must supply (0 for Random).
std::size_t state_dimension(MapId id) noexcept;
std::vector<double> default_initial_state(MapId id);

Vec2 iterate_henon(const Vec2& state, const HenonParams& params);
Vec2 iterate_ikeda(const Vec2& state, const IkedaParams& params);
double iterate_logistic(double x, const LogisticParams& params);
double iterate_quadratic(double x, const QuadraticParams& params);

/// One classical RK4 step of the Lorenz or Rossler vector field at the map's dt.
Vec3 step_flow(MapId map, const Vec3& state, const MapParams& params);

ChaoticSeries generate_series(MapId map, const MapParams& params, std::size_t length,
                              std::span<const double> initial_state, std::size_t burn_in,
                              std::uint64_t seed = 0);

/// Same amplitude spectrum as `base`, Fourier phases drawn uniformly from the
/// seeded stream. The zero-frequency and (even length) Nyquist terms keep their
/// original values so the result is real.
ChaoticSeries generate_phaseran(const ChaoticSeries& base, const PhaseranParams& params,
                                std::uint64_t seed);

/// Largest Lyapunov exponent by the two-trajectory method with renormalisation
/// after every sample step. Discrete maps report per iteration, flows and the
/// delay system per unit time. Phaseran reports the exponent of its logistic
/// base. Random has no dynamics and is rejected with InvalidRequest.
double estimate_lyapunov(MapId map, const MapParams& params, std::size_t steps, double delta0);

/// One sample per line, components separated by a space, full precision.
void write_series(const ChaoticSeries& series, std::ostream& out);

}  // namespace cga
