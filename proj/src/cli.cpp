#include "betti/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include <CLI11.hpp>

#include "betti/api.hpp"
#include "betti/errors.hpp"
#include "betti/io.hpp"
#include "betti/oracle.hpp"
#include "betti/report.hpp"
#include "betti/synthetic.hpp"

namespace betti::cli {

using nlohmann::json;
namespace fs = std::filesystem;

GrayImage binarize(const GrayImage& img, double threshold) {
  std::vector<double> v(img.values().begin(), img.values().end());
  for (auto& x : v) x = x >= threshold ? 1.0 : 0.0;
  return GrayImage(img.rows(), img.cols(), std::move(v));
}

namespace {

Direction single_direction(Filtration f) {
  return f == Filtration::Sublevel ? Direction::Sublevel : Direction::Superlevel;
}

std::vector<Direction> directions_of(Filtration f) {
  if (f == Filtration::Bothlevel) return {Direction::Superlevel, Direction::Sublevel};
  return {single_direction(f)};
}

}  // namespace

MetricReport evaluate_pair(std::string name, const GrayImage& likelihood, const GrayImage& gt,
                           const EvalOptions& options) {
  require_same_shape(likelihood, gt);
  MetricReport r;
  r.name = std::move(name);
  const GrayImage p = binarize(likelihood, options.threshold);
  const GrayImage g = binarize(gt, options.threshold);
  r.dice = dice(p, g);
  r.accuracy = accuracy(p, g);
  r.beta_err = betti_number_error(p, g);

  MatchOptions mo;
  mo.construction = options.construction;
  mo.relative = options.relative;
  mo.direction = single_direction(options.filtration);
  r.tau_err = betti_matching_error(p, g, mo);

  LossOptions lo;
  lo.filtration = options.filtration;
  lo.construction = options.construction;
  lo.relative = options.relative;
  r.betti_matching_loss = betti_matching_loss(likelihood, g, lo).loss;

  const BettiMatching tau = betti_matching(likelihood, g, mo);
  const auto [dl, dg] = diagrams_of(likelihood, g, mo);
  const WassersteinMatching gamma = wasserstein_matching(dl, dg);
  r.wasserstein_loss = gamma.total();
  r.matching_precision = matching_precision(tau, gamma);
  return r;
}

json metric_report_to_json(const MetricReport& r) {
  return {{"name", r.name},
          {"dice", r.dice},
          {"accuracy", r.accuracy},
          {"beta_err", report::errors_to_json(r.beta_err)},
          {"tau_err", report::errors_to_json(r.tau_err)},
          {"wasserstein_loss", r.wasserstein_loss},
          {"betti_matching_loss", r.betti_matching_loss},
          {"matching_precision", r.matching_precision}};
}

json aggregate_to_json(const std::vector<MetricReport>& reports) {
  const double n = reports.empty() ? 1.0 : static_cast<double>(reports.size());
  std::map<std::string, double> sums;
  for (const auto& r : reports) {
    sums["dice"] += r.dice;
    sums["accuracy"] += r.accuracy;
    sums["beta_err_dim0"] += static_cast<double>(r.beta_err.per_dim[0]);
    sums["beta_err_dim1"] += static_cast<double>(r.beta_err.per_dim[1]);
    sums["beta_err"] += static_cast<double>(r.beta_err.total());
    sums["tau_err_dim0"] += static_cast<double>(r.tau_err.per_dim[0]);
    sums["tau_err_dim1"] += static_cast<double>(r.tau_err.per_dim[1]);
    sums["tau_err"] += static_cast<double>(r.tau_err.total());
    sums["wasserstein_loss"] += r.wasserstein_loss;
    sums["betti_matching_loss"] += r.betti_matching_loss;
    sums["matching_precision"] += r.matching_precision;
  }
  json j = json::object();
  for (const auto& [k, v] : sums) j[k] = v / n;
  j["pairs"] = reports.size();
  return j;
}

namespace {

struct CommonFlags {
  std::string construction = "v";
  std::string filtration = "superlevel";
  bool relative = false;
  double threshold = 0.5;
  std::string format = "json";
  std::string image_format = "auto";
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--construction", f.construction, "Cubical construction")
      ->check(CLI::IsMember({"v", "t"}));
  cmd->add_option("--filtration", f.filtration, "Filtration direction")
      ->check(CLI::IsMember({"sublevel", "superlevel", "bothlevel"}));
  cmd->add_flag("--relative", f.relative, "Pad images with a frame (relative homology)");
  cmd->add_option("--threshold", f.threshold, "Binarization threshold");
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--image-format", f.image_format, "Input format")
      ->check(CLI::IsMember({"auto", "pgm", "csv", "npy"}));
}

json options_json(const CommonFlags& f) {
  return {{"construction", f.construction},
          {"filtration", f.filtration},
          {"relative", f.relative},
          {"threshold", f.threshold}};
}

json envelope(const std::string& command, const CommonFlags& f) {
  return {{"tool", report::kToolName},
          {"version", report::kVersion},
          {"command", command},
          {"options", options_json(f)}};
}

std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string pixel_csv(const CubicalGrid& grid, const std::optional<CellId>& cell) {
  if (!cell) return ",";
  const auto px = grid.critical_pixel(grid.key_of(*cell));
  if (!px) return "frame,frame";
  return std::to_string(px->row) + "," + std::to_string(px->col);
}

std::string interval_csv(const Interval& iv, const CubicalGrid& grid) {
  return num(iv.birth_value) + "," + (iv.essential() ? std::string("inf") : num(iv.death_value)) +
         "," + pixel_csv(grid, iv.birth_cell) + "," + pixel_csv(grid, iv.death_cell);
}

GrayImage load(const std::string& path, const CommonFlags& f) {
  return io::load_image(path, io::parse_format(f.image_format));
}

int cmd_barcode(const std::string& path, const CommonFlags& f, std::ostream& out) {
  const GrayImage img = load(path, f);
  json j = envelope("barcode", f);
  j["image"] = {{"path", path}, {"rows", img.rows()}, {"cols", img.cols()}};
  std::string csv = "filtration,dim,kind,birth,death,birth_row,birth_col,death_row,death_col\n";
  for (const Direction dir : directions_of(parse_filtration(f.filtration))) {
    GridOptions g;
    g.construction = parse_construction(f.construction);
    g.direction = dir;
    g.relative = f.relative;
    const CubicalGrid grid(img, g);
    const Barcode b = compute_barcode(grid);
    json bj = report::barcode_to_json(b, &grid);
    bj["frame_value"] = grid.frame_value() ? json(*grid.frame_value()) : json(nullptr);
    j["barcodes"][to_string(dir)] = std::move(bj);
    for (int d = 0; d < 2; ++d) {
      for (const auto& iv : b.finite[d]) {
        csv += std::string(to_string(dir)) + "," + std::to_string(d) + ",finite," +
               interval_csv(iv, grid) + "\n";
      }
      for (const auto& iv : b.essential[d]) {
        csv += std::string(to_string(dir)) + "," + std::to_string(d) + ",essential," +
               interval_csv(iv, grid) + "\n";
      }
    }
  }
  out << (f.format == "csv" ? csv : report::dump(j));
  return kOk;
}

int cmd_match(const std::string& pred_path, const std::string& gt_path, const CommonFlags& f,
              std::ostream& out) {
  const GrayImage pred = load(pred_path, f);
  const GrayImage gt = load(gt_path, f);
  json j = envelope("match", f);
  std::string csv = "filtration,dim,status,pred_birth,pred_death,gt_birth,gt_death\n";
  auto fmt = [](const Interval& iv, double clamp_free) {
    (void)clamp_free;
    return num(iv.birth_value) + "," + (iv.essential() ? std::string("inf") : num(iv.death_value));
  };
  for (const Direction dir : directions_of(parse_filtration(f.filtration))) {
    MatchOptions mo;
    mo.construction = parse_construction(f.construction);
    mo.direction = dir;
    mo.relative = f.relative;
    const BettiMatching m = betti_matching(pred, gt, mo);
    json mj = report::matching_to_json(m);
    mj["loss"] = report::loss_to_json(betti_matching_loss(m, false));
    mj["betti_matching_error"] = report::errors_to_json(betti_matching_error(m));
    j["matchings"][to_string(dir)] = std::move(mj);
    const std::string dn = to_string(dir);
    for (int d = 0; d < 2; ++d) {
      const std::string ds = std::to_string(d);
      for (const auto& im : m.matched[d]) {
        csv += dn + "," + ds + ",matched," + fmt(im.pred, 0) + "," + fmt(im.gt, 0) + "\n";
      }
      for (const auto& im : m.matched_essential[d]) {
        csv += dn + "," + ds + ",matched_essential," + fmt(im.pred, 0) + "," + fmt(im.gt, 0) + "\n";
      }
      for (const auto& iv : m.unmatched_pred[d]) {
        csv += dn + "," + ds + ",unmatched_pred," + fmt(iv, 0) + ",,\n";
      }
      for (const auto& iv : m.unmatched_gt[d]) {
        csv += dn + "," + ds + ",unmatched_gt,,," + fmt(iv, 0) + "\n";
      }
    }
  }
  out << (f.format == "csv" ? csv : report::dump(j));
  return kOk;
}

int cmd_loss(const std::string& pred_path, const std::string& gt_path,
             const std::string& grad_path, const CommonFlags& f, std::ostream& out) {
  const GrayImage pred = load(pred_path, f);
  const GrayImage gt = load(gt_path, f);
  LossOptions lo;
  lo.filtration = parse_filtration(f.filtration);
  lo.construction = parse_construction(f.construction);
  lo.relative = f.relative;
  lo.with_gradient = !grad_path.empty();
  const LossReport r = betti_matching_loss(pred, gt, lo);
  if (lo.with_gradient) io::save_npy(grad_path, r.rows, r.cols, *r.gradient);
  if (f.format == "csv") {
    out << "loss,dim0,dim1\n"
        << num(r.loss) << "," << num(r.per_dim[0].total()) << "," << num(r.per_dim[1].total())
        << "\n";
    return kOk;
  }
  json j = envelope("loss", f);
  j.update(report::loss_to_json(r));
  j["gradient"] = grad_path.empty() ? json(nullptr) : json(grad_path);
  out << report::dump(j);
  return kOk;
}

std::map<std::string, fs::path> images_in(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::MalformedFile, dir.string() + " is not a directory");
  }
  std::map<std::string, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (ext != ".pgm" && ext != ".csv" && ext != ".npy") continue;
    out.emplace(entry.path().stem().string(), entry.path());
  }
  return out;
}

std::size_t worker_count(std::size_t jobs) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BETTI_MATCH_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) n = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

int cmd_eval(const std::string& pred_dir, const std::string& gt_dir, const CommonFlags& f,
             std::ostream& out, std::ostream& err) {
  const auto preds = images_in(pred_dir);
  const auto gts = images_in(gt_dir);
  std::vector<std::pair<fs::path, fs::path>> pairs;
  for (const auto& [stem, path] : preds) {
    const auto it = gts.find(stem);
    if (it == gts.end()) {
      err << "warning: no ground truth for " << path.string() << "\n";
      continue;
    }
    pairs.emplace_back(path, it->second);
  }
  if (pairs.empty()) throw Error(ErrorCode::MalformedFile, "no matching image pairs");

  EvalOptions eo;
  eo.filtration = parse_filtration(f.filtration);
  eo.construction = parse_construction(f.construction);
  eo.relative = f.relative;
  eo.threshold = f.threshold;

  std::vector<MetricReport> reports(pairs.size());
  std::vector<std::string> failures(pairs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      try {
        const GrayImage pred = load(pairs[i].first.string(), f);
        const GrayImage gt = load(pairs[i].second.string(), f);
        reports[i] = evaluate_pair(pairs[i].first.stem().string(), pred, gt, eo);
      } catch (const std::exception& e) {
        failures[i] = pairs[i].first.string() + ": " + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t workers = worker_count(pairs.size());
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& msg : failures) {
    if (!msg.empty()) throw Error(ErrorCode::MalformedFile, msg);
  }

  if (f.format == "csv") {
    out << "name,dice,accuracy,beta_err_dim0,beta_err_dim1,beta_err,tau_err_dim0,tau_err_dim1,"
           "tau_err,wasserstein_loss,betti_matching_loss,matching_precision\n";
    for (const auto& r : reports) {
      out << r.name << "," << num(r.dice) << "," << num(r.accuracy) << "," << r.beta_err.per_dim[0]
          << "," << r.beta_err.per_dim[1] << "," << r.beta_err.total() << ","
          << r.tau_err.per_dim[0] << "," << r.tau_err.per_dim[1] << "," << r.tau_err.total() << ","
          << num(r.wasserstein_loss) << "," << num(r.betti_matching_loss) << ","
          << num(r.matching_precision) << "\n";
    }
    return kOk;
  }
  json j = envelope("eval", f);
  json per_pair = json::array();
  for (const auto& r : reports) per_pair.push_back(metric_report_to_json(r));
  j["pairs"] = std::move(per_pair);
  j["mean"] = aggregate_to_json(reports);
  out << report::dump(j);
  return kOk;
}

struct VerifyTally {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what, const std::string& why) {
    ++checks;
    if (!ok) failures.push_back(what + ": " + why);
  }
};

void verify_image(const GrayImage& img, const std::string& label, const CommonFlags& f,
                  VerifyTally& tally) {
  for (const Direction dir : directions_of(parse_filtration(f.filtration))) {
    GridOptions g;
    g.construction = parse_construction(f.construction);
    g.direction = dir;
    g.relative = f.relative;
    const CubicalGrid grid(img, g);
    std::string why;
    const bool ok =
        oracle::same_barcode(compute_barcode(grid), oracle::reduce_boundary_matrix(grid), &why);
    tally.check(ok, label + " barcode (" + to_string(dir) + ")", why);
  }
}

void verify_pair(const GrayImage& a, const GrayImage& b, const std::string& label,
                 const CommonFlags& f, VerifyTally& tally) {
  require_same_shape(a, b);
  for (const Direction dir : directions_of(parse_filtration(f.filtration))) {
    GridOptions g;
    g.construction = parse_construction(f.construction);
    g.direction = dir;
    g.relative = f.relative;
    if (f.relative) {
      g.frame_value = default_frame_value(dir, std::min(a.min_value(), b.min_value()),
                                          std::max(a.max_value(), b.max_value()));
    }
    const GrayImage c = dir == Direction::Superlevel ? entrywise_max(a, b) : entrywise_min(a, b);
    const CubicalGrid cg(c, g);
    const Barcode cb = compute_barcode(cg, false);
    const std::pair<const GrayImage*, const char*> sides[] = {{&a, "first"}, {&b, "second"}};
    for (const auto& [img, name] : sides) {
      const CubicalGrid dg(*img, g);
      const Barcode db = compute_barcode(dg, true);
      std::string why;
      const bool ok = oracle::same_image_barcode(compute_image_barcode(dg, cg, db, cb),
                                                 oracle::reduce_image_matrix(dg, cg), &why);
      tally.check(ok, label + " image barcode of " + name + " (" + to_string(dir) + ")", why);
    }
  }
}

int cmd_verify(const std::vector<std::string>& paths, std::size_t random, std::size_t size,
               std::uint64_t seed, const CommonFlags& f, std::ostream& out, std::ostream& err) {
  VerifyTally tally;
  if (!paths.empty()) {
    const GrayImage first = load(paths[0], f);
    verify_image(first, paths[0], f, tally);
    if (paths.size() > 1) {
      const GrayImage second = load(paths[1], f);
      verify_image(second, paths[1], f, tally);
      verify_pair(first, second, paths[0] + " / " + paths[1], f, tally);
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < random; ++i) {
    const GrayImage a = synthetic::permutation_image(size, size, rng);
    const GrayImage b = synthetic::permutation_image(size, size, rng);
    const std::string label = "random #" + std::to_string(i);
    verify_image(a, label, f, tally);
    verify_pair(a, b, label, f, tally);
  }
  if (paths.empty() && random == 0) {
    err << "verify: give one or two images, or --random N\n";
    return kUsage;
  }
  for (const auto& msg : tally.failures) err << "mismatch: " << msg << "\n";
  if (f.format == "csv") {
    out << "checks,mismatches\n" << tally.checks << "," << tally.failures.size() << "\n";
  } else {
    json j = envelope("verify", f);
    j["checks"] = tally.checks;
    j["mismatches"] = tally.failures.size();
    j["failures"] = tally.failures;
    out << report::dump(j);
  }
  return tally.failures.empty() ? kOk : kMismatch;
}

json bench_size(std::size_t size, std::size_t trials, std::mt19937_64& rng, const CommonFlags& f) {
  MatchOptions mo;
  mo.construction = parse_construction(f.construction);
  mo.direction = single_direction(parse_filtration(f.filtration));
  mo.relative = f.relative;
  std::vector<double> ms;
  ms.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const GrayImage pred = synthetic::uniform_image(size, size, rng);
    const GrayImage gt = synthetic::binary_image(size, size, rng);
    const auto start = std::chrono::steady_clock::now();
    const BettiMatching m = betti_matching(pred, gt, mo);
    const auto stop = std::chrono::steady_clock::now();
    (void)m;
    ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
  }
  std::vector<double> sorted = ms;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  double mean = 0.0;
  for (double x : ms) mean += x;
  mean /= static_cast<double>(n);
  return {{"size", size},     {"trials", trials},         {"median_ms", median},
          {"mean_ms", mean},  {"min_ms", sorted.front()}, {"max_ms", sorted.back()}};
}

int cmd_bench(std::size_t size, std::size_t trials, std::uint64_t seed, const CommonFlags& f,
              std::ostream& out) {
  std::mt19937_64 rng(seed);
  json results = json::array();
  if (size > 0) {
    results.push_back(bench_size(size, trials > 0 ? trials : 10, rng, f));
  } else {
    // Training patch size and evaluation size.
    results.push_back(bench_size(48, trials > 0 ? trials : 100, rng, f));
    results.push_back(bench_size(312, trials > 0 ? trials : 3, rng, f));
  }
  if (f.format == "csv") {
    out << "size,trials,median_ms,mean_ms,min_ms,max_ms\n";
    for (const auto& r : results) {
      out << r["size"].get<std::size_t>() << "," << r["trials"].get<std::size_t>() << ","
          << num(r["median_ms"].get<double>()) << "," << num(r["mean_ms"].get<double>()) << ","
          << num(r["min_ms"].get<double>()) << "," << num(r["max_ms"].get<double>()) << "\n";
    }
    return kOk;
  }
  json j = envelope("bench", f);
  j["seed"] = seed;
  j["results"] = std::move(results);
  out << report::dump(j);
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Betti matching of image barcodes: metrics, loss and gradient", "betti-match"};
  app.require_subcommand(1);
  app.set_version_flag("--version", report::kVersion);

  CommonFlags flags;

  std::string img_path;
  auto* barcode = app.add_subcommand("barcode", "Barcode of one image");
  barcode->add_option("image", img_path, "Image file")->required();
  add_common(barcode, flags);

  std::string pred_path, gt_path;
  auto* match = app.add_subcommand("match", "Betti matching between prediction and ground truth");
  match->add_option("pred", pred_path, "Prediction image")->required();
  match->add_option("gt", gt_path, "Ground-truth image")->required();
  add_common(match, flags);

  std::string grad_path;
  auto* loss = app.add_subcommand("loss", "Betti matching loss (and gradient)");
  loss->add_option("pred", pred_path, "Prediction image")->required();
  loss->add_option("gt", gt_path, "Ground-truth image")->required();
  loss->add_option("--grad", grad_path, "Write d loss / d pred as a float64 .npy");
  add_common(loss, flags);

  std::string pred_dir, gt_dir;
  auto* eval = app.add_subcommand("eval", "Metrics over two directories of images");
  eval->add_option("--pred-dir", pred_dir, "Directory of predictions")->required();
  eval->add_option("--gt-dir", gt_dir, "Directory of ground truths")->required();
  add_common(eval, flags);

  std::vector<std::string> verify_paths;
  std::size_t verify_random = 0, verify_size = 5;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "Check the fast path against the reference reduction");
  verify->add_option("images", verify_paths, "One or two images")->expected(0, 2);
  verify->add_option("--random", verify_random, "Number of seeded random image pairs");
  verify->add_option("--size", verify_size, "Side length of random images");
  verify->add_option("--seed", seed, "Random seed");
  add_common(verify, flags);

  std::size_t bench_size_opt = 0, bench_trials = 0;
  auto* bench = app.add_subcommand("bench", "Time betti_matching on random image pairs");
  bench->add_option("--size", bench_size_opt, "Side length (default: 48 and 312)");
  bench->add_option("--trials", bench_trials, "Trials per size");
  bench->add_option("--seed", seed, "Random seed");
  add_common(bench, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*barcode) return cmd_barcode(img_path, flags, out);
    if (*match) return cmd_match(pred_path, gt_path, flags, out);
    if (*loss) return cmd_loss(pred_path, gt_path, grad_path, flags, out);
    if (*eval) return cmd_eval(pred_dir, gt_dir, flags, out, err);
    if (*verify) return cmd_verify(verify_paths, verify_random, verify_size, seed, flags, out, err);
    if (*bench) return cmd_bench(bench_size_opt, bench_trials, seed, flags, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace betti::cli
