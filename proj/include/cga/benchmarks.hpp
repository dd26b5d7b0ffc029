#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cga/geometry.hpp"

namespace cga {

enum class FunctionId {
  Ackley,
  Beale,
  Bukin6,
  Leon,
  Levi13,
  Matyas,
  ModSchaffer2,
  Rastrigin,
  ThreeHumpCamel,
};

inline constexpr std::array<FunctionId, 9> kAllFunctions = {
    FunctionId::Ackley,  FunctionId::Beale,        FunctionId::Bukin6,
    FunctionId::Leon,    FunctionId::Levi13,       FunctionId::Matyas,
    FunctionId::ModSchaffer2, FunctionId::Rastrigin, FunctionId::ThreeHumpCamel,
};

/// Two-variable test objective with a known global minimum.
struct BenchmarkFunction {
  FunctionId id;
  std::string_view name;
  double (*objective)(double x, double y);
  SearchBox box;
  std::vector<Chromosome> optima;
  double optimum_value;

  double operator()(double x, double y) const { return objective(x, y); }
};

std::string_view to_string(FunctionId id) noexcept;
/// Case-insensitive; "treehupamel" and "threehump" resolve to ThreeHumpCamel.
std::optional<FunctionId> parse_function_id(std::string_view name) noexcept;

/// The nine functions in kAllFunctions order.
const std::vector<BenchmarkFunction>& registry();
const BenchmarkFunction& benchmark(FunctionId id);

/// Throws Error(InvalidRequest) for non-finite input. Points outside the box
/// are evaluated normally.
double evaluate(const BenchmarkFunction& fn, double x, double y);

namespace objectives {
double ackley(double x, double y);
double beale(double x, double y);
double bukin6(double x, double y);
double leon(double x, double y);
double levi13(double x, double y);
double matyas(double x, double y);
double mod_schaffer2(double x, double y);
double rastrigin(double x, double y);
double three_hump_camel(double x, double y);
}  // namespace objectives

}  // namespace cga
