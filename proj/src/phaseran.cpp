#include <fftw3.h>

#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>

#include "cga/chaos_maps.hpp"
#include "cga/error.hpp"
#include "cga/random.hpp"

namespace cga {

namespace {

// FFTW's planner is not re-entrant; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

struct PlanDeleter {
  void operator()(fftw_plan p) const noexcept {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;
using Plan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter>;

}  // namespace

ChaoticSeries generate_phaseran(const ChaoticSeries& base, const PhaseranParams& /*params*/,
                                std::uint64_t seed) {
  if (base.width != 1) throw Error(ErrorKind::InvalidRequest, "phaseran needs a scalar base series");
  const std::size_t n = base.values.size();
  if (n < 2) throw Error(ErrorKind::InvalidRequest, "phaseran needs a base series of length >= 2");
  const std::size_t bins = n / 2 + 1;

  RealBuffer real(fftw_alloc_real(n));
  ComplexBuffer spectrum(fftw_alloc_complex(bins));
  Plan forward, inverse;
  {
    std::lock_guard lock(planner_mutex());
    const int len = static_cast<int>(n);
    forward.reset(fftw_plan_dft_r2c_1d(len, real.get(), spectrum.get(), FFTW_ESTIMATE));
    inverse.reset(fftw_plan_dft_c2r_1d(len, spectrum.get(), real.get(), FFTW_ESTIMATE));
  }
  if (!forward || !inverse) throw Error(ErrorKind::InvalidRequest, "could not plan the Fourier transform");

  std::copy(base.values.begin(), base.values.end(), real.get());
  fftw_execute(forward.get());

  Rng rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  // Bin 0 and, for even n, bin n/2 are real and keep their values.
  const std::size_t last_free = (n % 2 == 0) ? bins - 2 : bins - 1;
  for (std::size_t k = 1; k <= last_free; ++k) {
    const double amplitude = std::hypot(spectrum[k][0], spectrum[k][1]);
    const double phi = phase(rng);
    spectrum[k][0] = amplitude * std::cos(phi);
    spectrum[k][1] = amplitude * std::sin(phi);
  }
  fftw_execute(inverse.get());

  ChaoticSeries out;
  out.generator = MapId::Phaseran;
  out.initial_state = base.initial_state;
  out.width = 1;
  out.values.resize(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = real[i] * scale;
  return out;
}

}  // namespace cga
