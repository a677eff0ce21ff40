// Copyright 2026 The sbmk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sbmk/experiment.h"

#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>
#include <utility>

#include "sbmk/baseline.h"
#include "sbmk/error.h"
#include "sbmk/generators.h"
#include "sbmk/hcd.h"
#include "sbmk/metrics.h"
#include "sbmk/parallel.h"
#include "sbmk/random.h"
#include "sbmk/smt.h"

namespace sbmk {
namespace {

using nlohmann::json;

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidGrid, what);
}

std::string Format(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string Format(int64_t x) { return std::to_string(x); }

std::optional<double> OptNumber(const json& cell, const char* key) {
  if (!cell.contains(key)) return std::nullopt;
  if (!cell[key].is_number()) Invalid(std::string("'") + key + "' must be a number");
  return cell[key].get<double>();
}

double Number(const json& cell, const char* key) {
  auto value = OptNumber(cell, key);
  if (!value) Invalid(std::string("cell is missing '") + key + "'");
  return *value;
}

int Integer(const json& cell, const char* key, std::optional<int> fallback = {}) {
  if (!cell.contains(key)) {
    if (!fallback) Invalid(std::string("cell is missing '") + key + "'");
    return *fallback;
  }
  if (!cell[key].is_number_integer()) {
    Invalid(std::string("'") + key + "' must be an integer");
  }
  return cell[key].get<int>();
}

std::string Text(const json& cell, const char* key, const std::string& fallback) {
  if (!cell.contains(key)) return fallback;
  if (!cell[key].is_string()) Invalid(std::string("'") + key + "' must be a string");
  return cell[key].get<std::string>();
}

struct Summary {
  double mean = 0.0;
  double sd = 0.0;
};

Summary Summarize(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

// Planted-partition parameters from either (degree, out_in_ratio) or
// (within, between).
struct Planted {
  int n = 0;
  int k = 1;
  double within = 0.0;
  double between = 0.0;
};

Planted PlantedFromCell(const json& cell, int n, int k) {
  Planted p;
  p.n = n;
  p.k = k;
  const auto within = OptNumber(cell, "within");
  const auto between = OptNumber(cell, "between");
  const auto degree = OptNumber(cell, "degree");
  const auto ratio = OptNumber(cell, "out_in_ratio");
  if (within && between) {
    p.within = *within;
    p.between = *between;
  } else if (degree && (ratio || k == 1)) {
    const auto pp =
        PlantedPartitionParams::FromDegree(n, k, *degree, ratio.value_or(0.0));
    p.within = pp.within();
    p.between = pp.between;
  } else {
    Invalid("cell needs within + between or degree + out_in_ratio");
  }
  if (k == 1) p.between = 0.0;
  return p;
}

SbmParams ToSbm(const Planted& p) {
  SbmParams params;
  params.n = p.n;
  params.probs = BlockProbabilityMatrix::Planted(p.k, p.within, p.between);
  params.Check();
  return params;
}

struct GridSettings {
  double alpha = 0.05;
  int n_min = 30;
  int reps = 100;
  json cells;
};

GridSettings ReadGrid(const json& grid, const ExperimentOptions& options) {
  if (!grid.is_object()) Invalid("grid must be a JSON object");
  if (!grid.contains("cells") || !grid["cells"].is_array()) {
    Invalid("grid needs a 'cells' array");
  }
  GridSettings s;
  s.alpha = OptNumber(grid, "alpha").value_or(0.05);
  s.n_min = Integer(grid, "n_min", 30);
  s.reps = options.reps > 0 ? options.reps : Integer(grid, "reps", 100);
  if (!(s.alpha > 0.0 && s.alpha < 1.0)) Invalid("alpha must lie in (0, 1)");
  if (s.reps < 1) Invalid("reps must be >= 1");
  for (const auto& cell : grid["cells"]) {
    if (!cell.is_object()) Invalid("every cell must be an object");
  }
  s.cells = grid["cells"];
  return s;
}

// Per-replicate seeds: one Philox stream for sampling, a mixed seed for the
// estimators.
struct RepSeeds {
  uint64_t stream;
  uint64_t analysis;
};

RepSeeds SeedsFor(uint64_t seed, int cell, int rep) {
  const uint64_t stream = MixStream(static_cast<uint64_t>(cell),
                                    static_cast<uint64_t>(rep));
  return {stream, MixStream(seed, stream)};
}

// Wraps grid errors raised deep in parameter checks.
template <typename F>
auto Guarded(int cell, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidGrid) throw;
    switch (e.code()) {
      case ErrorCode::kInvalidArgument:
      case ErrorCode::kInvalidProbability:
      case ErrorCode::kTooManyBlocks:
      case ErrorCode::kIndivisibleN:
      case ErrorCode::kProbabilityOverflow:
        Invalid("cell " + std::to_string(cell) + ": " + e.what());
      default:
        throw;
    }
  }
}

CsvTable SizePower(const GridSettings& grid, const ExperimentOptions& options) {
  CsvTable table;
  table.header = {"schema_version", "experiment", "cell", "model", "n", "k",
                  "test_k", "within", "between", "labels", "alpha", "reps",
                  "rejection_rate", "rejection_sd", "mean_t_stat",
                  "clipped_fraction"};
  for (int c = 0; c < static_cast<int>(grid.cells.size()); ++c) {
    const json& cell = grid.cells[c];
    const std::string model = Text(cell, "model", "sbm");
    if (model != "sbm" && model != "dcsbm" && model != "er") {
      Invalid("unknown model '" + model + "'");
    }
    const int n = Integer(cell, "n");
    const int k = model == "er" ? 1 : Integer(cell, "k");
    const int test_k = Integer(cell, "test_k", k);
    const std::string label_mode = Text(cell, "labels", "detector");
    if (label_mode != "detector" && label_mode != "truth") {
      Invalid("labels must be 'detector' or 'truth'");
    }
    if (label_mode == "truth" && test_k != k) {
      Invalid("labels = 'truth' requires test_k == k");
    }
    Planted planted;
    if (model == "er" && cell.contains("p")) {
      planted = {n, 1, Number(cell, "p"), 0.0};
    } else {
      planted = Guarded(c, [&] { return PlantedFromCell(cell, n, k); });
    }
    const SbmParams params = Guarded(c, [&] { return ToSbm(planted); });
    const double theta_low = OptNumber(cell, "theta_low").value_or(0.2);
    const double theta_high = OptNumber(cell, "theta_high").value_or(1.8);
    if (test_k < 1 || test_k > n) Invalid("test_k out of range");

    std::vector<double> rejected(grid.reps), t_stat(grid.reps, NAN);
    std::vector<int64_t> clipped(grid.reps, 0), pairs(grid.reps, 0);
    ParallelFor(grid.reps, options.jobs, [&](int64_t r) {
      const RepSeeds seeds = SeedsFor(options.seed, c, static_cast<int>(r));
      const LabelVector truth = params.ResolvedLabels();
      AdjacencyMatrix adjacency;
      if (model == "dcsbm") {
        DcsbmParams dc;
        dc.base = params;
        dc.theta = UniformPropensities(truth, theta_low, theta_high,
                                       options.seed, MixStream(seeds.stream, 1));
        DcsbmSample sample =
            SampleDcsbm(dc, options.seed, seeds.stream, OverflowPolicy::kClip);
        adjacency = std::move(sample.adjacency);
        clipped[r] = sample.clipped_pairs;
        pairs[r] = sample.total_pairs;
      } else {
        adjacency = SampleSbm(params, options.seed, seeds.stream);
      }
      LabelVector labels;
      if (label_mode == "truth") {
        labels = truth;
      } else {
        labels = RscCluster(adjacency, test_k, 0.1, seeds.analysis);
      }
      try {
        const CandidateReport row =
            MultipleTest(adjacency, labels, grid.alpha, grid.n_min);
        rejected[r] = row.decision == Decision::kReject;
        if (row.t_stat) t_stat[r] = *row.t_stat;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoUsableBlocks) throw;
        rejected[r] = 1.0;
      }
    });

    const Summary rej = Summarize(rejected);
    std::vector<double> finite;
    for (double t : t_stat) {
      if (!std::isnan(t)) finite.push_back(t);
    }
    int64_t total_clipped = 0, total_pairs = 0;
    for (int r = 0; r < grid.reps; ++r) {
      total_clipped += clipped[r];
      total_pairs += pairs[r];
    }
    const double clipped_fraction =
        total_pairs > 0 ? static_cast<double>(total_clipped) / total_pairs : 0.0;
    if (clipped_fraction > 1e-3) {
      table.warnings.push_back("cell " + std::to_string(c) + ": " +
                               Format(100.0 * clipped_fraction) +
                               "% of DCSBM pair probabilities clipped to 1");
    }
    table.rows.push_back(
        {Format(int64_t{kCsvSchemaVersion}), "size-power", Format(int64_t{c}),
         model, Format(int64_t{n}), Format(int64_t{k}), Format(int64_t{test_k}),
         Format(planted.within), Format(planted.between), label_mode,
         Format(grid.alpha), Format(int64_t{grid.reps}), Format(rej.mean),
         Format(rej.sd), Format(finite.empty() ? NAN : Summarize(finite).mean),
         Format(clipped_fraction)});
  }
  return table;
}

LabelVector SmtLabels(const SmtReport& report, int n) {
  if (report.k_hat) return report.candidates.back().labels;
  for (auto it = report.candidates.rbegin(); it != report.candidates.rend(); ++it) {
    if (it->labels.size() == n) return it->labels;
  }
  return LabelVector::Constant(n);
}

CsvTable NmiTable(const GridSettings& grid, const ExperimentOptions& options) {
  CsvTable table;
  table.header = {"schema_version", "experiment", "cell", "n", "k", "within",
                  "between", "alpha", "reps", "smt_mean_nmi", "smt_sd_nmi",
                  "smt_mean_k_hat", "smt_frac_k_correct", "smt_frac_k_max_exceeded"};
  if (options.bhmc_baseline) {
    for (const char* col : {"bhmc_mean_nmi", "bhmc_sd_nmi", "bhmc_mean_k_hat",
                            "bhmc_frac_k_correct"}) {
      table.header.push_back(col);
    }
  }
  for (int c = 0; c < static_cast<int>(grid.cells.size()); ++c) {
    const json& cell = grid.cells[c];
    const int n = Integer(cell, "n");
    const int k = Integer(cell, "k");
    const Planted planted = Guarded(c, [&] { return PlantedFromCell(cell, n, k); });
    const SbmParams params = Guarded(c, [&] { return ToSbm(planted); });
    SmtConfig config;
    config.alpha = grid.alpha;
    config.n_min = grid.n_min;
    if (cell.contains("k_max")) config.k_max = Integer(cell, "k_max");
    Guarded(c, [&] {
      config.Check();
      if (n < 2 * config.n_min) Invalid("n below 2 * n_min");
      return 0;
    });

    std::vector<double> nmi(grid.reps), k_hat(grid.reps), correct(grid.reps),
        exceeded(grid.reps);
    std::vector<double> b_nmi(grid.reps), b_k(grid.reps), b_correct(grid.reps);
    ParallelFor(grid.reps, options.jobs, [&](int64_t r) {
      const RepSeeds seeds = SeedsFor(options.seed, c, static_cast<int>(r));
      const LabelVector truth = params.ResolvedLabels();
      const AdjacencyMatrix adjacency = SampleSbm(params, options.seed, seeds.stream);
      SmtConfig local = config;
      local.seed = seeds.analysis;
      const SmtReport report = EstimateK(adjacency, local);
      const int estimate = report.k_hat.value_or(report.k_max);
      nmi[r] = Nmi(truth, SmtLabels(report, n));
      k_hat[r] = estimate;
      correct[r] = report.k_hat && *report.k_hat == k;
      exceeded[r] = report.k_max_exceeded();
      if (options.bhmc_baseline) {
        const BhmcResult b = Bhmc(adjacency, seeds.analysis);
        b_nmi[r] = Nmi(truth, b.labels);
        b_k[r] = b.k_hat;
        b_correct[r] = b.k_hat == k;
      }
    });

    const Summary s_nmi = Summarize(nmi);
    std::vector<std::string> row = {
        Format(int64_t{kCsvSchemaVersion}), "nmi-table", Format(int64_t{c}),
        Format(int64_t{n}), Format(int64_t{k}), Format(planted.within),
        Format(planted.between), Format(grid.alpha), Format(int64_t{grid.reps}),
        Format(s_nmi.mean), Format(s_nmi.sd), Format(Summarize(k_hat).mean),
        Format(Summarize(correct).mean), Format(Summarize(exceeded).mean)};
    if (options.bhmc_baseline) {
      const Summary b = Summarize(b_nmi);
      row.push_back(Format(b.mean));
      row.push_back(Format(b.sd));
      row.push_back(Format(Summarize(b_k).mean));
      row.push_back(Format(Summarize(b_correct).mean));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

CsvTable BtsbmTable(const GridSettings& grid, const ExperimentOptions& options) {
  CsvTable table;
  table.header = {"schema_version", "experiment", "cell", "n", "depth", "a",
                  "rho", "partitioner", "alpha", "reps", "mean_nmi", "sd_nmi",
                  "mean_k_hat", "frac_k_correct"};
  for (int c = 0; c < static_cast<int>(grid.cells.size()); ++c) {
    const json& cell = grid.cells[c];
    BtsbmParams params;
    params.n = Integer(cell, "n");
    params.depth = Integer(cell, "depth");
    params.a = Number(cell, "a");
    if (const auto rho = OptNumber(cell, "rho")) {
      params.rho = *rho;
    } else {
      const double degree = Number(cell, "degree");
      params.rho = Guarded(c, [&] {
        return BtsbmParams::RhoForDegree(params.n, params.depth, params.a, degree);
      });
    }
    Guarded(c, [&] {
      params.Check();
      return 0;
    });
    const std::string partitioner = Text(cell, "partitioner", "ses");
    HcdOptions hcd;
    if (partitioner == "ses") {
      hcd.partitioner = Partitioner::kSes;
    } else if (partitioner == "rsc") {
      hcd.partitioner = Partitioner::kRsc;
    } else {
      Invalid("partitioner must be 'ses' or 'rsc'");
    }
    hcd.alpha = grid.alpha;
    hcd.n_min = grid.n_min;
    hcd.max_depth = Integer(cell, "max_depth", 10);
    Guarded(c, [&] {
      hcd.Check();
      return 0;
    });

    std::vector<double> nmi(grid.reps), k_hat(grid.reps), correct(grid.reps);
    ParallelFor(grid.reps, options.jobs, [&](int64_t r) {
      const RepSeeds seeds = SeedsFor(options.seed, c, static_cast<int>(r));
      const auto [adjacency, truth] = SampleBtsbm(params, options.seed, seeds.stream);
      HcdOptions local = hcd;
      local.seed = seeds.analysis;
      const HcdResult result = HcdRecover(adjacency, local);
      nmi[r] = Nmi(truth, result.labels);
      k_hat[r] = result.labels.num_blocks();
      correct[r] = result.labels.num_blocks() == params.num_leaves();
    });
    const Summary s = Summarize(nmi);
    table.rows.push_back(
        {Format(int64_t{kCsvSchemaVersion}), "btsbm-table", Format(int64_t{c}),
         Format(int64_t{params.n}), Format(int64_t{params.depth}),
         Format(params.a), Format(params.rho), partitioner, Format(grid.alpha),
         Format(int64_t{grid.reps}), Format(s.mean), Format(s.sd),
         Format(Summarize(k_hat).mean), Format(Summarize(correct).mean)});
  }
  return table;
}

}  // namespace

ExperimentKind ParseExperimentKind(const std::string& name) {
  if (name == "size-power") return ExperimentKind::kSizePower;
  if (name == "nmi-table") return ExperimentKind::kNmiTable;
  if (name == "btsbm-table") return ExperimentKind::kBtsbmTable;
  throw Error(ErrorCode::kInvalidArgument, "unknown experiment '" + name + "'");
}

std::string ExperimentKindName(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSizePower:
      return "size-power";
    case ExperimentKind::kNmiTable:
      return "nmi-table";
    case ExperimentKind::kBtsbmTable:
      return "btsbm-table";
  }
  return "";
}

void CsvTable::Write(std::ostream& out) const {
  auto line = [&out](const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << '\n';
  };
  line(header);
  for (const auto& row : rows) line(row);
}

int CsvTable::Column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  throw Error(ErrorCode::kInvalidArgument, "no column '" + name + "'");
}

CsvTable RunExperiment(ExperimentKind kind, const nlohmann::json& grid,
                       const ExperimentOptions& options) {
  const GridSettings settings = ReadGrid(grid, options);
  switch (kind) {
    case ExperimentKind::kSizePower:
      return SizePower(settings, options);
    case ExperimentKind::kNmiTable:
      return NmiTable(settings, options);
    case ExperimentKind::kBtsbmTable:
      return BtsbmTable(settings, options);
  }
  Invalid("unknown experiment");
}

}  // namespace sbmk
