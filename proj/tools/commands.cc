// Copyright 2026 The ptnas Authors.
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

#include "commands.h"

#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>

#include "json.hpp"
#include "ptnas/bench.h"
#include "ptnas/costmodel.h"
#include "ptnas/error.h"
#include "ptnas/geometry.h"
#include "ptnas/network.h"
#include "ptnas/pointcloud.h"
#include "ptnas/predictor.h"
#include "ptnas/random.h"
#include "ptnas/search.h"
#include "ptnas/searchspace.h"
#include "ptnas/serialization.h"

namespace ptnas::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

fs::path OutDir(const RunConfig& c) {
  const fs::path dir = c.Get("out");
  std::error_code ec;
  fs::create_directories(dir, ec);
  Require(!ec, ErrorCode::kIo, "cannot create output directory " + dir.string());
  return dir;
}

Genotype LoadGenotype(const RunConfig& c) {
  const std::string& g = c.Get("genotype");
  if (g == "handcrafted") return HandCraftedGenotype(InteractionOrder::kFirst);
  if (g == "handcrafted_second") return HandCraftedGenotype(InteractionOrder::kSecond);
  return GenotypeFromJson(ReadFile(g));
}

SceneProfile Profile(const RunConfig& c) {
  ProfileOptions o;
  o.input_points = c.GetInt("profile.points");
  o.decay = c.GetDouble("profile.ratio");
  o.avg_neighbors = c.GetInt("profile.avg_neighbors");
  return DefaultProfile(o);
}

PointCloud LoadOrMakeCloud(const RunConfig& c) {
  const std::string& source = c.Get("cloud");
  const std::string prefix = "synthetic:";
  if (source.rfind(prefix, 0) == 0) {
    const std::string count = source.substr(prefix.size());
    int n = 0;
    try {
      n = std::stoi(count);
    } catch (const std::exception&) {
      Fail(ErrorCode::kInvalidArgument, "bad synthetic cloud size '" + count + "'");
    }
    Require(n >= 1, ErrorCode::kInvalidArgument, "synthetic cloud needs n >= 1");
    Rng rng(Rng::Mix(c.GetU64("seed"), 21));
    Points3 pts(n, 3);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < 3; ++j) pts(i, j) = rng.Uniform(0.0, 2.0);
    }
    return PointCloud(pts);
  }
  return LoadCloud(source, ParseCloudFormat(c.Get("cloud_format")));
}

OracleConfig MakeOracleConfig(const RunConfig& c) {
  OracleConfig o;
  o.seed = c.GetU64("seed");
  o.noise = c.GetDouble("oracle.noise");
  o.cross_fraction = c.GetDouble("oracle.cross_fraction");
  o.bonus_fraction = c.GetDouble("oracle.bonus_fraction");
  return o;
}

TrainConfig MakeTrainConfig(const RunConfig& c) {
  TrainConfig t;
  t.learning_rate = c.GetDouble("train.lr");
  t.epochs = c.GetInt("train.epochs");
  t.batch_size = c.GetInt("train.batch_size");
  t.margin = c.GetDouble("train.margin");
  t.rank_weight = c.GetDouble("train.rank_weight");
  t.pretrain_epochs = c.GetInt("train.pretrain_epochs");
  t.seed = c.GetU64("seed");
  t.Validate();
  return t;
}

ObjectiveConfig MakeObjective(const RunConfig& c) {
  ObjectiveConfig o;
  o.beta = c.GetDouble("search.beta");
  return o;
}

Json MetricsJson(const PredictorMetrics& m) {
  return Json{{"mse", m.mse}, {"kendall_tau", m.kendall_tau}};
}

Json Disposition(const RunConfig& c, const fs::path& out) {
  const KernelKind kind = ParseKernelKind(c.Get("kernel"));
  const KernelDisposition d = MakeDisposition(kind, c.GetDouble("radius"));
  std::string csv = "index,x,y,z\n";
  char line[128];
  for (int k = 0; k < d.k(); ++k) {
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g\n", k, d.points(k, 0),
                  d.points(k, 1), d.points(k, 2));
    csv += line;
  }
  const fs::path path = out / ("disposition_" + std::string(KernelKindName(kind)) + ".csv");
  WriteFile(path, csv);
  return Json{{"kernel", KernelKindName(kind)}, {"points", d.k()}, {"path", path.string()}};
}

Json Cost(const RunConfig& c, const fs::path& out) {
  const Genotype g = LoadGenotype(c);
  const CostReport report =
      NetworkCost(g, Profile(c), c.GetInt("in_features"), c.GetInt("n_classes"));
  const std::string json = CostReportJson(report);
  const fs::path path = out / "cost.json";
  WriteFile(path, json + "\n");
  Json summary = Json::parse(json);
  summary["path"] = path.string();
  return summary;
}

Json Forward(const RunConfig& c, const fs::path& out) {
  const Genotype g = LoadGenotype(c);
  const PointCloud cloud = LoadOrMakeCloud(c);
  NetworkConfig nc;
  nc.n_classes = c.GetInt("n_classes");
  nc.base_cell = c.GetDouble("network.base_cell");
  nc.max_neighbors = c.GetInt("network.max_neighbors");
  const NetworkPlan plan = PlanNetwork(g, static_cast<int>(cloud.d()), nc.n_classes, nc.stem_width);
  const NetworkWeights weights = c.Get("weights").empty()
                                     ? InitNetworkWeights(plan, c.GetU64("seed"))
                                     : LoadWeights(c.Get("weights"), plan);
  const PointCloud logits = NetworkForward(g, cloud, weights, nc);
  const fs::path path = out / "logits.bin";
  SaveCloud(logits, path, CloudFormat::kBinaryF32);
  return Json{{"points", logits.n()}, {"classes", logits.d()}, {"path", path.string()}};
}

Json GenDataset(const RunConfig& c, const fs::path& out) {
  const SearchSpace space = DefaultSpace();
  const OracleConfig oc = MakeOracleConfig(c);
  const SyntheticOracle oracle(oc, space);
  const auto samples =
      GenerateDataset(oracle, space, c.GetInt("n_samples"), c.GetU64("seed"), Profile(c));
  const fs::path path = out / "dataset.jsonl";
  WriteSamples(samples, path);
  WriteFile(out / "oracle.json", OracleConfigJson(oc) + "\n");
  return Json{{"samples", samples.size()}, {"path", path.string()}};
}

Json TrainPredictor(const RunConfig& c, const fs::path& out) {
  const SearchSpace space = DefaultSpace();
  const DatasetSplit split =
      SplitDataset(ReadSamples(c.Get("dataset")), c.GetDouble("train_fraction"));
  PredictorConfig pc;
  pc.mode = ParsePredictorMode(c.Get("predictor.mode"));
  pc.dim = c.GetInt("predictor.dim");
  pc.dropout = c.GetDouble("predictor.dropout");
  pc.vocab = VocabularySize(space);
  const TrainConfig tc = MakeTrainConfig(c);
  Predictor predictor(pc, c.GetU64("seed"));
  PretrainMacs(predictor, split.train, space, tc);
  const TrainResult result = Train(predictor, split.train, space, tc);
  const fs::path path = out / "predictor.ckpt";
  SaveCheckpoint(predictor, path);
  std::string curve = "epoch,loss\n";
  for (size_t i = 0; i < result.loss_curve.size(); ++i) {
    char line[64];
    std::snprintf(line, sizeof line, "%zu,%.17g\n", i + 1, result.loss_curve[i]);
    curve += line;
  }
  WriteFile(out / "loss_curve.csv", curve);
  Json summary{{"train", split.train.size()}, {"val", split.val.size()}};
  if (split.val.size() >= 2) summary["val_metrics"] = MetricsJson(Evaluate(predictor, split.val, space));
  summary["final_loss"] = result.loss_curve.empty() ? 0.0 : result.loss_curve.back();
  summary["checkpoint"] = path.string();
  return summary;
}

Json EvalPredictor(const RunConfig& c, const fs::path& out) {
  const Predictor predictor = LoadCheckpoint(c.Get("checkpoint"));
  const DatasetSplit split =
      SplitDataset(ReadSamples(c.Get("dataset")), c.GetDouble("train_fraction"));
  const std::vector<ArchSample>& eval = split.val.size() >= 2 ? split.val : split.train;
  Json summary = MetricsJson(Evaluate(predictor, eval, DefaultSpace()));
  summary["samples"] = eval.size();
  WriteFile(out / "metrics.json", summary.dump() + "\n");
  return summary;
}

Json SearchSummary(const SearchResult& result, const SceneProfile& profile,
                   const fs::path& out) {
  WriteHistory(result.history, out / "history.jsonl");
  const std::string best = GenotypeToJson(result.best().genotype);
  WriteFile(out / "best_genotype.json", best + "\n");
  std::string top;
  for (const SearchRecord& r : result.top) top += SearchRecordToJson(r) + "\n";
  WriteFile(out / "top.jsonl", top);
  Json summary;
  summary["evaluations"] = result.history.size();
  summary["best"] = {{"id", result.best().id},
                     {"predicted", result.best().predicted},
                     {"macs", result.best().macs},
                     {"objective", result.best().objective}};
  summary["genotype"] = Json::parse(best);
  summary["cost"] = Json::parse(CostReportJson(NetworkCost(result.best().genotype, profile)));
  summary["history"] = (out / "history.jsonl").string();
  return summary;
}

Json Search(const RunConfig& c, const fs::path& out) {
  const SearchSpace space = DefaultSpace();
  const Predictor predictor = LoadCheckpoint(c.Get("checkpoint"));
  const SceneProfile profile = Profile(c);
  EvolutionConfig ec;
  ec.population = c.GetInt("search.population");
  ec.sample_size = c.GetInt("search.sample_size");
  ec.rounds = c.GetInt("search.rounds");
  ec.top_k = c.GetInt("search.top_k");
  ec.objective = MakeObjective(c);
  ec.seed = c.GetU64("seed");
  return SearchSummary(Evolve(MakePredictorScorer(predictor, space, profile), space, ec),
                       profile, out);
}

Json RandomSearchCommand(const RunConfig& c, const fs::path& out) {
  const SearchSpace space = DefaultSpace();
  const Predictor predictor = LoadCheckpoint(c.Get("checkpoint"));
  const SceneProfile profile = Profile(c);
  RandomSearchConfig rc;
  rc.budget = c.GetInt("search.budget");
  rc.top_k = c.GetInt("search.top_k");
  rc.objective = MakeObjective(c);
  rc.seed = c.GetU64("seed");
  return SearchSummary(RandomSearch(MakePredictorScorer(predictor, space, profile), space, rc),
                       profile, out);
}

using Handler = std::function<Json(const RunConfig&, const fs::path&)>;

const std::map<std::string, Handler>& Handlers() {
  static const std::map<std::string, Handler> handlers = {
      {"disposition", Disposition},     {"cost", Cost},
      {"forward", Forward},             {"gen-dataset", GenDataset},
      {"train-predictor", TrainPredictor}, {"eval-predictor", EvalPredictor},
      {"search", Search},               {"random-search", RandomSearchCommand},
  };
  return handlers;
}

}  // namespace

const std::vector<std::string>& CommandNames() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, handler] : Handlers()) n.push_back(name);
    return n;
  }();
  return names;
}

std::string RunCommand(const std::string& name, const RunConfig& config) {
  const auto it = Handlers().find(name);
  Require(it != Handlers().end(), ErrorCode::kInvalidArgument,
          "unknown command '" + name + "'");
  const fs::path out = OutDir(config);
  WriteFile(out / (name + ".config"), config.Resolved());
  Json summary;
  summary["command"] = name;
  summary["seed"] = config.GetU64("seed");
  const Json result = it->second(config, out);
  for (const auto& item : result.items()) summary[item.key()] = item.value();
  return summary.dump();
}

}  // namespace ptnas::cli
