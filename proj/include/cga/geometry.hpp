#pragma once

#include <vector>

namespace cga {

/// Axis-aligned search rectangle of a two-variable objective.
struct SearchBox {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;

  bool valid() const noexcept { return x_min < x_max && y_min < y_max; }
  bool contains(double x, double y) const noexcept {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }

  friend bool operator==(const SearchBox&, const SearchBox&) = default;
};

/// Real-coded two-gene individual.
struct Chromosome {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

using Population = std::vector<Chromosome>;

}  // namespace cga
