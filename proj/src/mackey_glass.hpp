#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cga/chaos_maps.hpp"
#include "cga/error.hpp"

namespace cga::detail {

// Fixed-step RK4 for the Mackey-Glass delay equation. The history over
// [t - tau, t] lives in a ring buffer on the dt grid; the delayed value at a
// half step is the mean of its two grid neighbours.
class MackeyGlassIntegrator {
 public:
  MackeyGlassIntegrator(const MackeyGlassParams& params, double initial_value)
      : p_(params),
        lag_(static_cast<std::size_t>(std::llround(params.tau / params.dt))),
        ring_(lag_ + 1, initial_value) {}

  double current() const noexcept { return ring_[(head_ + lag_) % ring_.size()]; }

  void advance_sample() {
    for (std::size_t i = 0; i < p_.steps_per_sample; ++i) step();
  }

  std::size_t size() const noexcept { return ring_.size(); }
  /// History in ring order; two integrators advanced in lockstep share the layout.
  std::vector<double>& history() noexcept { return ring_; }
  const std::vector<double>& history() const noexcept { return ring_; }
  std::size_t newest_index() const noexcept { return (head_ + lag_) % ring_.size(); }

 private:
  double field(double x, double delayed) const {
    return p_.a * delayed / (1.0 + std::pow(delayed, p_.n)) - p_.b * x;
  }

  void step() {
    const double x = current();
    const double d0 = ring_[head_];
    const double d1 = ring_[(head_ + 1) % ring_.size()];
    const double dm = 0.5 * (d0 + d1);
    const double h = p_.dt;
    const double k1 = field(x, d0);
    const double k2 = field(x + 0.5 * h * k1, dm);
    const double k3 = field(x + 0.5 * h * k2, dm);
    const double k4 = field(x + h * k3, d1);
    const double next = x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(next)) throw Error(ErrorKind::DivergedOrbit, "mackey-glass orbit left the finite range");
    unchanged_steps_ = (next == x) ? unchanged_steps_ + 1 : 0;
    if (unchanged_steps_ > ring_.size()) {
      throw Error(ErrorKind::DegenerateOrbit, "mackey-glass orbit sits on its equilibrium");
    }
    // The oldest slot becomes the newest.
    ring_[head_] = next;
    head_ = (head_ + 1) % ring_.size();
  }

  MackeyGlassParams p_;
  std::size_t lag_;
  std::vector<double> ring_;
  std::size_t head_ = 0;
  std::size_t unchanged_steps_ = 0;
};

}  // namespace cga::detail
