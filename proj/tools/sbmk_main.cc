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

// sbmk command-line tool.
//
// Exit codes: 0 success, 1 usage or I/O error, 2 when estimate-k finds no
// accepted K up to k_max.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "sbmk/error.h"
#include "sbmk/experiment.h"
#include "sbmk/generators.h"
#include "sbmk/hcd.h"
#include "sbmk/ingest.h"
#include "sbmk/metrics.h"
#include "sbmk/parallel.h"
#include "sbmk/serialize.h"
#include "sbmk/smt.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitKMaxExceeded = 2;

// Flag combinations CLI11 cannot express are reported like parse errors.
struct InvalidFlags : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void WriteJson(const json& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sbmk::Error(sbmk::ErrorCode::kIoError, "cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
  out.flush();
  if (!out) throw sbmk::Error(sbmk::ErrorCode::kIoError, "write to '" + path + "' failed");
}

// Edge list at `out`, labels and parameters in `out`.json.
void WriteGenerated(const sbmk::AdjacencyMatrix& adjacency, const std::string& model,
                    json params, const sbmk::LabelVector& labels, uint64_t seed,
                    const std::string& out) {
  sbmk::WriteEdgeList(adjacency, out);
  params.erase("labels");
  WriteJson({{"schema_version", sbmk::kJsonSchemaVersion},
             {"model", model},
             {"seed", seed},
             {"num_edges", adjacency.num_edges()},
             {"params", std::move(params)},
             {"labels", sbmk::LabelsToJson(labels)}},
            out + ".json");
}

struct GenerateFlags {
  int n = 0;
  int k = 2;
  int depth = 1;
  std::optional<double> within, between, degree, out_in_ratio;
  double a = 0.5;
  std::optional<double> rho;
  double theta_low = 0.2, theta_high = 1.8;
  std::string overflow = "error";
  uint64_t seed = 0;
  std::string out;
};

sbmk::SbmParams PlantedFromFlags(const GenerateFlags& f) {
  sbmk::SbmParams params;
  if (f.within && f.between) {
    params.n = f.n;
    params.probs = sbmk::BlockProbabilityMatrix::Planted(f.k, *f.within, *f.between);
  } else if (f.degree && f.out_in_ratio) {
    params = sbmk::PlantedPartitionParams::FromDegree(f.n, f.k, *f.degree,
                                                      *f.out_in_ratio)
                 .ToSbm();
  } else {
    throw InvalidFlags("need --within and --between, or --degree and --out-in-ratio");
  }
  if (f.rho) params.rho = *f.rho;
  params.Check();
  return params;
}

int RunGenerate(const std::string& model, const GenerateFlags& f) {
  if (model == "sbm") {
    const sbmk::SbmParams params = PlantedFromFlags(f);
    const auto adjacency = sbmk::SampleSbm(params, f.seed);
    WriteGenerated(adjacency, model, sbmk::ToJson(params), params.ResolvedLabels(),
                   f.seed, f.out);
  } else if (model == "btsbm") {
    sbmk::BtsbmParams params;
    params.n = f.n;
    params.depth = f.depth;
    params.a = f.a;
    if (f.rho) {
      params.rho = *f.rho;
    } else if (f.degree) {
      params.rho = sbmk::BtsbmParams::RhoForDegree(f.n, f.depth, f.a, *f.degree);
    } else {
      throw InvalidFlags("btsbm needs --rho or --degree");
    }
    params.Check();
    const auto [adjacency, labels] = sbmk::SampleBtsbm(params, f.seed);
    WriteGenerated(adjacency, model, sbmk::ToJson(params), labels, f.seed, f.out);
  } else {
    sbmk::DcsbmParams params;
    params.base = PlantedFromFlags(f);
    const sbmk::LabelVector labels = params.base.ResolvedLabels();
    params.theta = sbmk::UniformPropensities(labels, f.theta_low, f.theta_high,
                                             f.seed, 1);
    const auto policy = f.overflow == "clip" ? sbmk::OverflowPolicy::kClip
                                             : sbmk::OverflowPolicy::kError;
    const sbmk::DcsbmSample sample = sbmk::SampleDcsbm(params, f.seed, 0, policy);
    if (sample.clipped_pairs > 0) {
      std::cerr << "warning: " << sample.clipped_pairs << " of " << sample.total_pairs
                << " pair probabilities clipped to 1\n";
    }
    json doc = sbmk::ToJson(params);
    doc["base"].erase("labels");
    doc["theta_low"] = f.theta_low;
    doc["theta_high"] = f.theta_high;
    doc["clipped_pairs"] = sample.clipped_pairs;
    WriteGenerated(sample.adjacency, model, std::move(doc), labels, f.seed, f.out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Estimate the number of communities in stochastic block models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sbmk 0.1.0");

  // generate
  GenerateFlags gen;
  auto* generate = app.add_subcommand("generate", "Sample a random graph");
  generate->require_subcommand(1);
  std::string gen_model;
  for (const char* model : {"sbm", "btsbm", "dcsbm"}) {
    auto* sub = generate->add_subcommand(model, std::string("Sample a ") + model);
    sub->add_option("--n", gen.n, "Number of nodes")->required()->check(CLI::PositiveNumber);
    sub->add_option("--seed", gen.seed, "Random seed");
    sub->add_option("--out", gen.out, "Edge-list output path (sidecar: <out>.json)")
        ->required();
    sub->add_option("--degree", gen.degree, "Expected average degree")
        ->check(CLI::PositiveNumber);
    sub->add_option("--rho", gen.rho, "Sparsity scale")->check(CLI::Range(0.0, 1.0));
    if (std::string(model) == "btsbm") {
      sub->add_option("--depth", gen.depth, "Tree depth")->required()->check(CLI::Range(0, 20));
      sub->add_option("--a", gen.a, "Level decay")->required()->check(CLI::Range(0.0, 1.0));
    } else {
      sub->add_option("--k", gen.k, "Number of blocks")->required()->check(CLI::PositiveNumber);
      sub->add_option("--within", gen.within, "Within-block probability")
          ->check(CLI::Range(0.0, 1.0));
      sub->add_option("--between", gen.between, "Between-block probability")
          ->check(CLI::Range(0.0, 1.0));
      sub->add_option("--out-in-ratio", gen.out_in_ratio, "between / within")
          ->check(CLI::Range(0.0, 1.0));
    }
    if (std::string(model) == "dcsbm") {
      sub->add_option("--theta-low", gen.theta_low, "Propensity lower bound")
          ->check(CLI::NonNegativeNumber);
      sub->add_option("--theta-high", gen.theta_high, "Propensity upper bound")
          ->check(CLI::NonNegativeNumber);
      sub->add_option("--overflow", gen.overflow, "Pair probabilities above 1")
          ->check(CLI::IsMember({"error", "clip"}));
    }
    sub->callback([&gen_model, model] { gen_model = model; });
  }

  // estimate-k
  std::string ek_in, ek_report, ek_detector = "rsc";
  double ek_alpha = 0.05, ek_tau = 0.1;
  std::optional<int> ek_k_max;
  int ek_n_min = 30;
  uint64_t ek_seed = 0;
  auto* estimate = app.add_subcommand("estimate-k", "Sequential test for the number of blocks");
  estimate->add_option("--in", ek_in, "Edge-list input")->required();
  estimate->add_option("--alpha", ek_alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0));
  estimate->add_option("--k-max", ek_k_max, "Largest K tried")->check(CLI::PositiveNumber);
  estimate->add_option("--detector", ek_detector, "Community detector")
      ->check(CLI::IsMember({"rsc"}));
  estimate->add_option("--tau", ek_tau, "RSC regularization")->check(CLI::NonNegativeNumber);
  estimate->add_option("--n-min", ek_n_min, "Minimum usable block size")
      ->check(CLI::Range(2, 1 << 30));
  estimate->add_option("--seed", ek_seed, "Random seed");
  estimate->add_option("--report", ek_report, "Write the full report as JSON");

  // hcd
  std::string hcd_in, hcd_partitioner = "ses", hcd_labels, hcd_tree;
  sbmk::HcdOptions hcd_opts;
  auto* hcd = app.add_subcommand("hcd", "Hierarchical community detection");
  hcd->add_option("--in", hcd_in, "Edge-list input")->required();
  hcd->add_option("--partitioner", hcd_partitioner, "Bipartition method")
      ->check(CLI::IsMember({"ses", "rsc"}));
  hcd->add_option("--alpha", hcd_opts.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0));
  hcd->add_option("--max-depth", hcd_opts.max_depth, "Maximum tree depth")
      ->check(CLI::NonNegativeNumber);
  hcd->add_option("--n-min", hcd_opts.n_min, "Minimum usable block size")
      ->check(CLI::Range(2, 1 << 30));
  hcd->add_option("--tau", hcd_opts.tau, "RSC regularization")->check(CLI::NonNegativeNumber);
  hcd->add_option("--seed", hcd_opts.seed, "Random seed");
  hcd->add_option("--out-labels", hcd_labels, "Write labels CSV");
  hcd->add_option("--out-tree", hcd_tree, "Write the hierarchy as JSON");

  // eval
  std::string ev_truth, ev_estimate, ev_metric = "nmi";
  auto* eval = app.add_subcommand("eval", "Compare two label files");
  eval->add_option("--truth", ev_truth, "Reference labels CSV")->required();
  eval->add_option("--estimate", ev_estimate, "Estimated labels CSV")->required();
  eval->add_option("--metric", ev_metric, "nmi or ari")->check(CLI::IsMember({"nmi", "ari"}));

  // experiment
  std::string ex_kind, ex_grid, ex_out, ex_baseline;
  sbmk::ExperimentOptions ex_opts;
  ex_opts.jobs = 0;
  auto* experiment = app.add_subcommand("experiment", "Run a Monte-Carlo grid");
  experiment->add_option("kind", ex_kind, "size-power, nmi-table or btsbm-table")
      ->required()
      ->check(CLI::IsMember({"size-power", "nmi-table", "btsbm-table"}));
  experiment->add_option("--grid-file", ex_grid, "Grid JSON")->required();
  experiment->add_option("--reps", ex_opts.reps, "Replicates per cell (overrides grid)")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--seed", ex_opts.seed, "Random seed");
  experiment->add_option("--jobs", ex_opts.jobs, "Worker threads (0: all cores)")
      ->check(CLI::NonNegativeNumber);
  experiment->add_option("--out", ex_out, "CSV output path (default stdout)");
  experiment->add_option("--baseline", ex_baseline, "Add a baseline estimator")
      ->check(CLI::IsMember({"bhmc"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return kExitOk;
    std::cerr << "InvalidFlags: see --help for usage\n";
    return kExitError;
  }

  try {
    if (generate->parsed()) {
      return RunGenerate(gen_model, gen);
    }
    if (estimate->parsed()) {
      sbmk::SmtConfig config;
      config.alpha = ek_alpha;
      config.k_max = ek_k_max;
      config.n_min = ek_n_min;
      config.detector = ek_detector;
      config.tau = ek_tau;
      config.seed = ek_seed;
      const auto adjacency = sbmk::ReadEdgeList(ek_in);
      const sbmk::SmtReport report = sbmk::EstimateK(adjacency, config);
      if (!ek_report.empty()) WriteJson(sbmk::ToJson(report), ek_report);
      if (report.k_max_exceeded()) {
        std::cerr << "KMaxExceeded: no K up to " << report.k_max << " accepted\n";
        return kExitKMaxExceeded;
      }
      std::cout << *report.k_hat << '\n';
      return kExitOk;
    }
    if (hcd->parsed()) {
      hcd_opts.partitioner =
          hcd_partitioner == "rsc" ? sbmk::Partitioner::kRsc : sbmk::Partitioner::kSes;
      const auto adjacency = sbmk::ReadEdgeList(hcd_in);
      const sbmk::HcdResult result = sbmk::HcdRecover(adjacency, hcd_opts);
      if (!hcd_labels.empty()) sbmk::WriteLabels(result.labels, hcd_labels);
      if (!hcd_tree.empty()) WriteJson(sbmk::ToJson(result.tree), hcd_tree);
      std::cout << result.labels.num_blocks() << '\n';
      return kExitOk;
    }
    if (eval->parsed()) {
      const auto truth = sbmk::ReadLabels(ev_truth);
      const auto estimate_labels = sbmk::ReadLabels(ev_estimate);
      const double value = ev_metric == "ari" ? sbmk::Ari(truth, estimate_labels)
                                              : sbmk::Nmi(truth, estimate_labels);
      std::printf("%.6f\n", value);
      return kExitOk;
    }
    if (experiment->parsed()) {
      std::ifstream in(ex_grid);
      if (!in) {
        throw sbmk::Error(sbmk::ErrorCode::kIoError, "cannot open '" + ex_grid + "'");
      }
      json grid;
      try {
        grid = json::parse(in);
      } catch (const json::parse_error& e) {
        throw sbmk::Error(sbmk::ErrorCode::kInvalidGrid, e.what());
      }
      ex_opts.jobs = sbmk::ResolveJobs(ex_opts.jobs);
      ex_opts.bhmc_baseline = ex_baseline == "bhmc";
      const sbmk::CsvTable table =
          sbmk::RunExperiment(sbmk::ParseExperimentKind(ex_kind), grid, ex_opts);
      for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
      if (ex_out.empty()) {
        table.Write(std::cout);
      } else {
        std::ofstream out(ex_out, std::ios::binary);
        if (!out) {
          throw sbmk::Error(sbmk::ErrorCode::kIoError, "cannot write '" + ex_out + "'");
        }
        table.Write(out);
        out.flush();
        if (!out) throw sbmk::Error(sbmk::ErrorCode::kIoError, "write failed");
      }
      return kExitOk;
    }
  } catch (const InvalidFlags& e) {
    std::cerr << "InvalidFlags: " << e.what() << "\n\n" << app.help();
    return kExitError;
  } catch (const sbmk::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
