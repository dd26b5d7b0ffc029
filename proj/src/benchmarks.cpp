#include "cga/benchmarks.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "cga/error.hpp"

namespace cga {

namespace objectives {

using std::numbers::e;
using std::numbers::pi;

double ackley(double x, double y) {
  return -20.0 * std::exp(-0.2 * std::sqrt(0.5 * (x * x + y * y))) -
         std::exp(0.5 * (std::cos(2.0 * pi * x) + std::cos(2.0 * pi * y))) + e + 20.0;
}

double beale(double x, double y) {
  const double a = 1.5 - x + x * y;
  const double b = 2.25 - x + x * y * y;
  const double c = 2.625 - x + x * y * y * y;
  return a * a + b * b + c * c;
}

double bukin6(double x, double y) {
  return 100.0 * std::sqrt(std::abs(y - 0.01 * x * x)) + 0.01 * std::abs(x + 10.0);
}

double leon(double x, double y) {
  const double a = y - x * x;
  const double b = 1.0 - x;
  return 100.0 * a * a + b * b;
}

double levi13(double x, double y) {
  const double s1 = std::sin(3.0 * pi * x);
  const double s2 = std::sin(3.0 * pi * y);
  const double s3 = std::sin(2.0 * pi * y);
  return s1 * s1 + (x - 1.0) * (x - 1.0) * (1.0 + s2 * s2) + (y - 1.0) * (y - 1.0) * (1.0 + s3 * s3);
}

double matyas(double x, double y) { return 0.26 * (x * x + y * y) - 0.48 * x * y; }

double mod_schaffer2(double x, double y) {
  const double s = std::sin(x * x - y * y);
  const double d = 1.0 + 0.001 * (x * x + y * y);
  return 0.5 + (s * s - 0.5) / (d * d);
}

double rastrigin(double x, double y) {
  return 20.0 + (x * x - 10.0 * std::cos(2.0 * pi * x)) + (y * y - 10.0 * std::cos(2.0 * pi * y));
}

double three_hump_camel(double x, double y) {
  const double x2 = x * x;
  return 2.0 * x2 - 1.05 * x2 * x2 + x2 * x2 * x2 / 6.0 + x * y + y * y;
}

}  // namespace objectives

std::string_view to_string(FunctionId id) noexcept {
  switch (id) {
    case FunctionId::Ackley: return "ackley";
    case FunctionId::Beale: return "beale";
    case FunctionId::Bukin6: return "bukin6";
    case FunctionId::Leon: return "leon";
    case FunctionId::Levi13: return "levi13";
    case FunctionId::Matyas: return "matyas";
    case FunctionId::ModSchaffer2: return "modschaffer2";
    case FunctionId::Rastrigin: return "rastrigin";
    case FunctionId::ThreeHumpCamel: return "threehumpcamel";
  }
  return "unknown";
}

std::optional<FunctionId> parse_function_id(std::string_view name) noexcept {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == '_' || c == ' ' || c == '.') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "treehupamel" || key == "threehump" || key == "camel3") return FunctionId::ThreeHumpCamel;
  if (key == "schaffer2" || key == "modifiedschaffer2") return FunctionId::ModSchaffer2;
  if (key == "levil3") return FunctionId::Levi13;
  for (FunctionId id : kAllFunctions) {
    if (key == to_string(id)) return id;
  }
  return std::nullopt;
}

const std::vector<BenchmarkFunction>& registry() {
  using namespace objectives;
  static const std::vector<BenchmarkFunction> functions = {
      {FunctionId::Ackley, "ackley", ackley, {-5.0, 5.0, -5.0, 5.0}, {{0.0, 0.0}}, 0.0},
      {FunctionId::Beale, "beale", beale, {-4.5, 4.5, -4.5, 4.5}, {{3.0, 0.5}}, 0.0},
      {FunctionId::Bukin6, "bukin6", bukin6, {-15.0, -5.0, -3.0, 3.0}, {{-10.0, 1.0}}, 0.0},
      {FunctionId::Leon, "leon", leon, {-1.2, 1.2, -1.2, 1.2}, {{1.0, 1.0}}, 0.0},
      {FunctionId::Levi13, "levi13", levi13, {-10.0, 10.0, -10.0, 10.0}, {{1.0, 1.0}}, 0.0},
      {FunctionId::Matyas, "matyas", matyas, {-10.0, 10.0, -10.0, 10.0}, {{0.0, 0.0}}, 0.0},
      {FunctionId::ModSchaffer2, "modschaffer2", mod_schaffer2, {-100.0, 100.0, -100.0, 100.0}, {{0.0, 0.0}}, 0.0},
      {FunctionId::Rastrigin, "rastrigin", rastrigin, {-5.12, 5.12, -5.12, 5.12}, {{0.0, 0.0}}, 0.0},
      {FunctionId::ThreeHumpCamel, "threehumpcamel", three_hump_camel, {-5.0, 5.0, -5.0, 5.0}, {{0.0, 0.0}}, 0.0},
  };
  return functions;
}

const BenchmarkFunction& benchmark(FunctionId id) { return registry()[static_cast<std::size_t>(id)]; }

double evaluate(const BenchmarkFunction& fn, double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw Error(ErrorKind::InvalidRequest, std::string(fn.name) + " evaluated at a non-finite point");
  }
  return fn.objective(x, y);
}

}  // namespace cga
