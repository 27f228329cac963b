#include "betti/api.hpp"

#include <algorithm>
#include <cctype>

#include "betti/errors.hpp"

namespace betti {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

GrayImage wrap(std::span<const double> values, std::size_t rows, std::size_t cols) {
  return GrayImage(rows, cols, std::vector<double>(values.begin(), values.end()));
}

}  // namespace

Filtration parse_filtration(std::string_view name) {
  const std::string n = lower(name);
  if (n == "sublevel") return Filtration::Sublevel;
  if (n == "superlevel") return Filtration::Superlevel;
  if (n == "bothlevel") return Filtration::Bothlevel;
  throw Error(ErrorCode::UnsupportedFormat, "unknown filtration '" + std::string(name) + "'");
}

Construction parse_construction(std::string_view name) {
  const std::string n = lower(name);
  if (n == "v") return Construction::V;
  if (n == "t") return Construction::T;
  throw Error(ErrorCode::UnsupportedFormat, "unknown construction '" + std::string(name) + "'");
}

LossAndGrad loss_and_grad(std::span<const double> pred, std::span<const double> gt,
                          std::size_t rows, std::size_t cols, const BindingOptions& options) {
  LossOptions lo;
  lo.filtration = parse_filtration(options.filtration);
  lo.construction = parse_construction(options.construction);
  lo.relative = options.relative;
  lo.with_gradient = true;
  LossReport report = betti_matching_loss(wrap(pred, rows, cols), wrap(gt, rows, cols), lo);
  return {report.loss, std::move(*report.gradient)};
}

std::map<std::string, double> metrics(std::span<const double> pred, std::span<const double> gt,
                                      std::size_t rows, std::size_t cols,
                                      const BindingOptions& options) {
  const GrayImage p = wrap(pred, rows, cols);
  const GrayImage g = wrap(gt, rows, cols);
  require_binary(p, "prediction");
  require_binary(g, "ground truth");
  MatchOptions mo;
  mo.construction = parse_construction(options.construction);
  mo.relative = options.relative;
  mo.direction = parse_filtration(options.filtration) == Filtration::Sublevel
                     ? Direction::Sublevel
                     : Direction::Superlevel;
  const TopologyErrors tau = betti_matching_error(p, g, mo);
  const TopologyErrors beta = betti_number_error(p, g);
  const auto [dp, dg] = diagrams_of(p, g, mo);
  return {
      {"tau_err_0", static_cast<double>(tau.per_dim[0])},
      {"tau_err_1", static_cast<double>(tau.per_dim[1])},
      {"tau_err", static_cast<double>(tau.total())},
      {"beta_err_0", static_cast<double>(beta.per_dim[0])},
      {"beta_err_1", static_cast<double>(beta.per_dim[1])},
      {"beta_err", static_cast<double>(beta.total())},
      {"wasserstein_loss", wasserstein_loss(dp, dg)},
      {"dice", dice(p, g)},
      {"accuracy", accuracy(p, g)},
  };
}

}  // namespace betti
