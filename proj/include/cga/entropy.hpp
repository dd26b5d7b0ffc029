#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cga/geometry.hpp"

namespace cga {

enum class LogBase { Two, E };

struct EntropyConfig {
  std::size_t bins_per_axis = 16;
  double k_constant = 1.0;
  LogBase log_base = LogBase::Two;

  void validate() const;
};

/// Row-major bins_per_axis x bins_per_axis occupancy grid; index (i, j) is
/// the i-th x bin and j-th y bin.
struct JointHistogram {
  std::size_t bins_per_axis = 0;
  std::vector<std::size_t> counts;
  std::size_t total = 0;

  std::size_t at(std::size_t i, std::size_t j) const { return counts[i * bins_per_axis + j]; }
};

/// Uniform binning of each axis of `box`. A coordinate on the upper edge
/// falls in the last bin. Throws OutOfDomain for points outside the box and
/// InvalidRequest for an empty population.
JointHistogram build_histogram(std::span<const Chromosome> population, const SearchBox& box,
                               const EntropyConfig& cfg);

/// -K * sum p log p over occupied cells.
double shannon_entropy(const JointHistogram& hist, const EntropyConfig& cfg);

double population_entropy(std::span<const Chromosome> population, const SearchBox& box,
                          const EntropyConfig& cfg);

/// K * log(bins_per_axis^2), the value of a uniform occupancy.
double max_entropy(const EntropyConfig& cfg);

}  // namespace cga
