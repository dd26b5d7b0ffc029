#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "cga/chaos_maps.hpp"
#include "cga/error.hpp"

using namespace cga;
using Catch::Approx;

namespace {

Vec3 lorenz_field(const Vec3& s, const LorenzParams& p) {
  return {p.sigma * (s[1] - s[0]), s[0] * (p.rho - s[2]) - s[1], s[0] * s[1] - p.beta * s[2]};
}

Vec3 rossler_field(const Vec3& s, const RosslerParams& p) {
  return {-s[1] - s[2], s[0] + p.a * s[1], p.b + s[2] * (s[0] - p.c)};
}

template <class F>
Vec3 rk4_reference(F field, Vec3 s, double h) {
  auto add = [](const Vec3& a, const Vec3& b, double k) { return Vec3{a[0] + k * b[0], a[1] + k * b[1], a[2] + k * b[2]}; };
  const Vec3 k1 = field(s);
  const Vec3 k2 = field(add(s, k1, h / 2));
  const Vec3 k3 = field(add(s, k2, h / 2));
  const Vec3 k4 = field(add(s, k3, h));
  for (int i = 0; i < 3; ++i) s[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return s;
}

// Near-exact flow: many tiny steps.
template <class F>
Vec3 fine_reference(F field, Vec3 s, double h, int substeps = 2000) {
  for (int i = 0; i < substeps; ++i) s = rk4_reference(field, s, h / substeps);
  return s;
}

std::vector<double> dft_amplitudes(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> out(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) {
    std::complex<double> acc = 0;
    for (std::size_t t = 0; t < n; ++t) acc += x[t] * std::polar(1.0, -2 * M_PI * double(k * t % n) / double(n));
    out[k] = std::abs(acc);
  }
  return out;
}

}  // namespace

TEST_CASE("every generator has a name and defaults") {
  REQUIRE(kAllMaps.size() == 9);
  for (MapId m : kAllMaps) {
    REQUIRE(parse_map_id(to_string(m)) == m);
    REQUIRE(default_initial_state(m).size() == state_dimension(m));
  }
  REQUIRE(parse_map_id("Phaseram") == MapId::Phaseran);
  REQUIRE(parse_map_id("Mackey-Glass") == MapId::MackeyGlass);
  REQUIRE_FALSE(parse_map_id("tent").has_value());
}

TEST_CASE("parameter defaults") {
  const MapParams p;
  CHECK(p.lorenz.sigma == 10.0);
  CHECK(p.lorenz.rho == 28.0);
  CHECK(p.lorenz.beta == 8.0 / 3.0);
  CHECK(p.lorenz.dt == 0.01);
  CHECK(p.rossler.a == 0.2);
  CHECK(p.rossler.b == 0.2);
  CHECK(p.rossler.c == 5.7);
  CHECK(p.rossler.dt == 0.1);
  CHECK(p.random.a == 0.0);
  CHECK(p.random.b == 1.0);
  CHECK(p.phaseran.alpha == 1.95);
  CHECK(p.ikeda.u == 0.9);
  CHECK(p.henon.a == 1.4);
  CHECK(p.henon.b == 0.3);
  CHECK(p.quadratic.a == 1.75);
  CHECK(p.logistic.a == 4.0);
  CHECK(p.burn_in == 500);
}

TEST_CASE("henon iteration") {
  const HenonParams p;
  const Vec2 a = iterate_henon({0.0, 0.0}, p);
  CHECK(a[0] == 1.0);
  CHECK(a[1] == 0.0);
  const Vec2 b = iterate_henon({1.0, 0.0}, p);
  CHECK(b[0] == Approx(-0.4).margin(1e-15));
  CHECK(b[1] == Approx(0.3).margin(1e-15));

  // x = 1 - 1.4 x^2 + 0.3 x  =>  1.4 x^2 + 0.7 x - 1 = 0
  const double x = (-0.7 + std::sqrt(0.49 + 5.6)) / 2.8;
  CHECK(x == Approx(0.6313544770).margin(1e-9));
  const Vec2 f = iterate_henon({x, 0.3 * x}, p);
  CHECK(std::abs(f[0] - x) < 1e-9);
  CHECK(std::abs(f[1] - 0.3 * x) < 1e-9);
}

TEST_CASE("ikeda iteration matches the closed form") {
  const IkedaParams p;
  const double x = 0.3, y = -0.2;
  const double t = 0.4 - 6.0 / (1.0 + x * x + y * y);
  const Vec2 r = iterate_ikeda({x, y}, p);
  CHECK(r[0] == Approx(1.0 + 0.9 * (x * std::cos(t) - y * std::sin(t))).epsilon(1e-14));
  CHECK(r[1] == Approx(0.9 * (x * std::sin(t) + y * std::cos(t))).epsilon(1e-14));
}

TEST_CASE("scalar maps") {
  CHECK(iterate_logistic(0.3, {}) == Approx(0.84));
  CHECK(iterate_quadratic(0.5, {}) == Approx(1.5));
}

TEST_CASE("lorenz equilibrium is fixed") {
  const MapParams p;
  const Vec3 s = step_flow(MapId::Lorenz, {0.0, 0.0, 0.0}, p);
  CHECK(s == Vec3{0.0, 0.0, 0.0});
}

TEST_CASE("flow step is classical RK4") {
  const MapParams p;
  const Vec3 lor = step_flow(MapId::Lorenz, {1.0, 1.0, 1.0}, p);
  const Vec3 lor_ref = rk4_reference([&](const Vec3& s) { return lorenz_field(s, p.lorenz); }, {1.0, 1.0, 1.0}, 0.01);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(lor[i] - lor_ref[i]) < 1e-12);

  const Vec3 ros = step_flow(MapId::Rossler, {0.0, 0.0, 0.0}, p);
  const Vec3 ros_ref = rk4_reference([&](const Vec3& s) { return rossler_field(s, p.rossler); }, {0.0, 0.0, 0.0}, 0.1);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(ros[i] - ros_ref[i]) < 1e-12);
  CHECK(ros[2] > 0.0);
  CHECK(ros[2] == Approx(0.2 * 0.1).epsilon(0.5));

  CHECK_THROWS_AS(step_flow(MapId::Logistic, {0.0, 0.0, 0.0}, p), Error);
}

TEST_CASE("flow step tracks the exact flow to RK4 truncation order") {
  const MapParams p;
  auto field = [&](const Vec3& s) { return lorenz_field(s, p.lorenz); };
  const Vec3 exact = fine_reference(field, {1.0, 1.0, 1.0}, 0.01);
  const Vec3 step = step_flow(MapId::Lorenz, {1.0, 1.0, 1.0}, p);
  double err = 0.0;
  for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(step[i] - exact[i]));
  CHECK(err < 1e-5);

  // Local error must scale like h^5.
  const Vec3 exact_half = fine_reference(field, {1.0, 1.0, 1.0}, 0.005);
  const Vec3 half = rk4_reference(field, {1.0, 1.0, 1.0}, 0.005);
  double err_half = 0.0;
  for (int i = 0; i < 3; ++i) err_half = std::max(err_half, std::abs(half[i] - exact_half[i]));
  const double order = std::log2(err / err_half);
  CHECK(order > 4.5);
  CHECK(order < 5.5);
}

TEST_CASE("series sampling policy") {
  const MapParams p;
  SECTION("logistic after one discarded iteration") {
    const std::vector<double> x0{0.3};
    const auto s = generate_series(MapId::Logistic, p, 1, x0, 1);
    REQUIRE(s.length() == 1);
    CHECK(s.values[0] == Approx(0.84).margin(1e-15));
  }
  SECTION("logistic absorbing orbit") {
    const std::vector<double> x0{0.5};
    try {
      generate_series(MapId::Logistic, p, 10, x0, 0);
      FAIL("expected DegenerateOrbit");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateOrbit);
    }
  }
  SECTION("henon chain") {
    const std::vector<double> x0{0.0, 0.0};
    const auto s = generate_series(MapId::Henon, p, 40, x0, 0);
    REQUIRE(s.width == 2);
    REQUIRE(s.length() == 40);
    CHECK(s.values[0] == 0.0);
    CHECK(s.values[2] == 1.0);
    CHECK(s.values[4] == Approx(-0.4).margin(1e-15));
    Vec2 st{0.0, 0.0};
    for (std::size_t k = 0; k < s.length(); ++k) {
      REQUIRE(s.values[2 * k] == st[0]);
      REQUIRE(s.values[2 * k + 1] == st[1]);
      st = iterate_henon(st, p.henon);
    }
  }
  SECTION("zero length is rejected") {
    CHECK_THROWS_AS(generate_series(MapId::Henon, p, 0, std::vector<double>{0.0, 0.0}, 0), Error);
  }
  SECTION("initial state outside the valid region") {
    CHECK_THROWS_AS(generate_series(MapId::Logistic, p, 5, std::vector<double>{1.5}, 0), Error);
    CHECK_THROWS_AS(generate_series(MapId::Quadratic, p, 5, std::vector<double>{3.0}, 0), Error);
    CHECK_THROWS_AS(generate_series(MapId::Henon, p, 5, std::vector<double>{0.0}, 0), Error);
  }
}

TEST_CASE("every generator is finite and deterministic") {
  const MapParams p;
  for (MapId m : kAllMaps) {
    INFO(to_string(m));
    const auto init = default_initial_state(m);
    const auto a = generate_series(m, p, 300, init, p.burn_in, 42);
    const auto b = generate_series(m, p, 300, init, p.burn_in, 42);
    REQUIRE(a.length() == 300);
    REQUIRE(a.width == sample_width(m));
    for (double v : a.values) REQUIRE(std::isfinite(v));
    REQUIRE(a == b);
  }
}

TEST_CASE("random baseline") {
  MapParams p;
  const auto s = generate_series(MapId::Random, p, 20000, {}, 0, 7);
  double mean = 0.0, var = 0.0;
  for (double v : s.values) mean += v;
  mean /= double(s.values.size());
  for (double v : s.values) var += (v - mean) * (v - mean);
  var /= double(s.values.size() - 1);
  CHECK(std::abs(mean) < 0.05);
  CHECK(var == Approx(1.0).epsilon(0.05));
  CHECK(generate_series(MapId::Random, p, 50, {}, 0, 8) != generate_series(MapId::Random, p, 50, {}, 0, 9));

  p.random.distribution = RandomDistribution::Uniform;
  const auto u = generate_series(MapId::Random, p, 5000, {}, 0, 7);
  for (double v : u.values) REQUIRE((v >= 0.0 && v < 1.0));
}

TEST_CASE("mackey-glass settles on a bounded positive attractor") {
  const MapParams p;
  const auto s = generate_series(MapId::MackeyGlass, p, 2000, default_initial_state(MapId::MackeyGlass), 500);
  double lo = 1e9, hi = -1e9;
  for (double v : s.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo > 0.1);
  CHECK(hi < 1.6);
  CHECK(hi - lo > 0.5);
}

TEST_CASE("phase randomised surrogate") {
  const MapParams p;
  const auto base = generate_series(MapId::Logistic, p, 257, std::vector<double>{0.3}, 100);

  SECTION("amplitude spectrum preserved") {
    for (std::size_t n : {256u, 257u}) {
      ChaoticSeries b = base;
      b.values.resize(n);
      const auto s = generate_phaseran(b, p.phaseran, 11);
      REQUIRE(s.values.size() == n);
      const auto a0 = dft_amplitudes(b.values);
      const auto a1 = dft_amplitudes(s.values);
      for (std::size_t k = 0; k < a0.size(); ++k) {
        CHECK(std::abs(a1[k] - a0[k]) <= 1e-9 * std::max(1.0, a0[k]));
      }
      CHECK(s.values != b.values);
    }
  }
  SECTION("constant input stays constant") {
    ChaoticSeries c;
    c.generator = MapId::Logistic;
    c.values.assign(64, 0.25);
    const auto s = generate_phaseran(c, p.phaseran, 3);
    for (double v : s.values) CHECK(v == Approx(0.25).margin(1e-12));
  }
  SECTION("deterministic per seed") {
    CHECK(generate_phaseran(base, p.phaseran, 5) == generate_phaseran(base, p.phaseran, 5));
    CHECK(generate_phaseran(base, p.phaseran, 5) != generate_phaseran(base, p.phaseran, 6));
  }
  SECTION("too short") {
    ChaoticSeries one;
    one.values = {0.1};
    CHECK_THROWS_AS(generate_phaseran(one, p.phaseran, 1), Error);
  }
}

TEST_CASE("series dump") {
  const MapParams p;
  const auto s = generate_series(MapId::Henon, p, 3, std::vector<double>{0.0, 0.0}, 0);
  std::ostringstream out;
  write_series(s, out);
  CHECK(out.str() == "0 0\n1 0\n-0.39999999999999991 0.29999999999999999\n");
}
