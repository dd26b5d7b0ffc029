#include "cga/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cga/error.hpp"

namespace cga {

namespace {

double log_in(double v, LogBase base) { return base == LogBase::Two ? std::log2(v) : std::log(v); }

std::size_t bin_of(double v, double lo, double hi, std::size_t bins) {
  const auto i = static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins));
  return std::min(i, bins - 1);
}

}  // namespace

void EntropyConfig::validate() const {
  if (bins_per_axis < 2) throw Error(ErrorKind::InvalidRequest, "bins_per_axis must be >= 2");
  if (!(k_constant > 0.0) || !std::isfinite(k_constant)) {
    throw Error(ErrorKind::InvalidRequest, "k_constant must be positive");
  }
}

JointHistogram build_histogram(std::span<const Chromosome> population, const SearchBox& box,
                               const EntropyConfig& cfg) {
  cfg.validate();
  if (!box.valid()) throw Error(ErrorKind::InvalidRequest, "search box is empty");
  if (population.empty()) throw Error(ErrorKind::InvalidRequest, "population is empty");

  const std::size_t b = cfg.bins_per_axis;
  JointHistogram hist{b, std::vector<std::size_t>(b * b, 0), 0};
  for (const Chromosome& c : population) {
    if (!box.contains(c.x, c.y)) {
      throw Error(ErrorKind::OutOfDomain,
                  "chromosome (" + std::to_string(c.x) + ", " + std::to_string(c.y) + ") lies outside the box");
    }
    const std::size_t i = bin_of(c.x, box.x_min, box.x_max, b);
    const std::size_t j = bin_of(c.y, box.y_min, box.y_max, b);
    ++hist.counts[i * b + j];
    ++hist.total;
  }
  return hist;
}

double shannon_entropy(const JointHistogram& hist, const EntropyConfig& cfg) {
  cfg.validate();
  if (hist.total == 0) throw Error(ErrorKind::InvalidRequest, "histogram is empty");
  const double total = static_cast<double>(hist.total);
  double h = 0.0;
  for (std::size_t c : hist.counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / total;
    h -= p * log_in(p, cfg.log_base);
  }
  // A single occupied cell yields -0.0.
  return h == 0.0 ? 0.0 : cfg.k_constant * h;
}

double population_entropy(std::span<const Chromosome> population, const SearchBox& box,
                          const EntropyConfig& cfg) {
  return shannon_entropy(build_histogram(population, box, cfg), cfg);
}

double max_entropy(const EntropyConfig& cfg) {
  const double cells = static_cast<double>(cfg.bins_per_axis * cfg.bins_per_axis);
  return cfg.k_constant * log_in(cells, cfg.log_base);
}

}  // namespace cga
