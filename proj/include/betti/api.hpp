#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "betti/baselines.hpp"
#include "betti/matching.hpp"

namespace betti {

// String spellings shared by the CLI and language bindings.
Filtration parse_filtration(std::string_view name);
Construction parse_construction(std::string_view name);

/// Options as a host language passes them: "sublevel" / "superlevel" /
/// "bothlevel" and "v" / "t".
struct BindingOptions {
  std::string filtration = "superlevel";
  bool relative = false;
  std::string construction = "v";
};

struct LossAndGrad {
  double loss = 0.0;
  std::vector<double> grad;  // row-major, shaped like the prediction
};

/// Entry points for thin language bindings over contiguous row-major
/// buffers. Results are identical to the CLI `loss` and `eval` outputs.
LossAndGrad loss_and_grad(std::span<const double> pred, std::span<const double> gt,
                          std::size_t rows, std::size_t cols, const BindingOptions& options = {});

/// Keys: tau_err_0, tau_err_1, tau_err, beta_err_0, beta_err_1, beta_err,
/// wasserstein_loss, dice, accuracy. Inputs must be binary.
std::map<std::string, double> metrics(std::span<const double> pred, std::span<const double> gt,
                                      std::size_t rows, std::size_t cols,
                                      const BindingOptions& options = {});

}  // namespace betti
