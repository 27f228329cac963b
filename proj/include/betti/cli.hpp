#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "betti/baselines.hpp"
#include "betti/matching.hpp"

namespace betti::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kMismatch = 3 };

struct EvalOptions {
  Filtration filtration = Filtration::Superlevel;
  Construction construction = Construction::V;
  bool relative = false;
  double threshold = 0.5;
};

/// Metrics of one prediction / ground-truth pair. Binary metrics use the
/// binarized likelihood (value >= threshold); the losses use the likelihood
/// itself against the binarized ground truth.
struct MetricReport {
  std::string name;
  double dice = 0.0;
  double accuracy = 0.0;
  TopologyErrors beta_err;
  TopologyErrors tau_err;
  double wasserstein_loss = 0.0;
  double betti_matching_loss = 0.0;
  double matching_precision = 0.0;
};

GrayImage binarize(const GrayImage& img, double threshold);

MetricReport evaluate_pair(std::string name, const GrayImage& likelihood, const GrayImage& gt,
                           const EvalOptions& options);

nlohmann::json metric_report_to_json(const MetricReport& r);
/// Arithmetic mean of every scalar metric over the reports.
nlohmann::json aggregate_to_json(const std::vector<MetricReport>& reports);

/// Entry point of the `betti-match` tool. Diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace betti::cli
