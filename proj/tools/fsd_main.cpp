#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "fsd/detector.hpp"
#include "fsd/errors.hpp"
#include "fsd/evaluation.hpp"
#include "fsd/lshindex.hpp"
#include "fsd/streamio.hpp"
#include "fsd/textprep.hpp"

namespace {

struct DetectArgs {
  std::string input;
  std::string output;
  std::string mode = "incremental";
  std::size_t train_prefix = 500;
  double threshold = 0.5;
  int k = 13;
  int tables = 0;  // 0 = plan from phi/pcoll
  double phi = 0.05;
  double pcoll = 0.9;
  int batch_size = 1;
  std::uint64_t seed = 0;
  std::string stopwords;
};

void add_common_detect_flags(CLI::App& cmd, DetectArgs& args) {
  cmd.add_option("--input", args.input, "stream file (JSON lines)")
      ->required();
  cmd.add_option("--output", args.output, "verdict file to write")->required();
  cmd.add_option("--mode", args.mode, "weighting mode")
      ->check(CLI::IsMember({"static", "incremental"}))
      ->capture_default_str();
  cmd.add_option("--train-prefix", args.train_prefix,
                 "static mode: documents that build the frozen model")
      ->capture_default_str();
  cmd.add_option("--threshold", args.threshold,
                 "cosine-distance novelty threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd.add_option("--batch-size", args.batch_size,
                 "incremental model-update batch size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd.add_option("--stopwords", args.stopwords,
                 "stopword file (one lowercase word per line)");
}

fsd::DetectorConfig make_config(const DetectArgs& args, bool exhaustive) {
  fsd::DetectorConfig config;
  config.threshold = args.threshold;
  config.mode = args.mode == "static" ? fsd::WeightingMode::kStatic
                                      : fsd::WeightingMode::kIncremental;
  config.batch_size = args.batch_size;
  config.train_prefix = args.train_prefix;
  config.exhaustive = exhaustive;
  config.lsh.bits_per_signature = args.k;
  config.lsh.seed = args.seed;
  config.lsh.num_tables =
      args.tables > 0 ? args.tables
                      : fsd::plan_tables(args.phi, args.pcoll, args.k);
  return config;
}

const fsd::StopwordList& load_stopwords(const std::string& path) {
  static fsd::StopwordList custom;
  if (path.empty()) return fsd::StopwordList::default_english();
  custom = fsd::StopwordList::from_file(path);
  return custom;
}

int run_detect(const DetectArgs& args, bool exhaustive) {
  const auto& stoplist = load_stopwords(args.stopwords);
  const auto config = make_config(args, exhaustive);
  const auto docs = fsd::read_stream(args.input);
  const auto verdicts = fsd::run_stream(docs, config, stoplist);
  fsd::write_verdicts(args.output, verdicts);

  std::size_t novel = 0;
  for (const auto& v : verdicts) novel += v.is_novel;
  std::printf("%zu documents, %zu novel, %zu redundant (k=%d, L=%d, t=%g)\n",
              verdicts.size(), novel, verdicts.size() - novel,
              config.lsh.bits_per_signature, config.lsh.num_tables,
              config.threshold);
  return 0;
}

int run_evaluate(const std::string& verdicts_path,
                 const std::string& truth_path, const std::string& det_out,
                 const fsd::CostParams& params, std::size_t skip) {
  const auto verdicts = fsd::read_verdicts(verdicts_path);
  const auto truth = fsd::read_stream(truth_path);

  std::unordered_map<std::string, const fsd::Document*> by_id;
  for (const auto& doc : truth) by_id[doc.id] = &doc;

  std::vector<fsd::ScoredTruth> scored;
  scored.reserve(verdicts.size());
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    if (i < skip) continue;
    const auto& v = verdicts[i];
    auto it = by_id.find(v.doc_id);
    if (it == by_id.end())
      throw fsd::ParseError(i + 1, "verdict id \"" + v.doc_id +
                                       "\" not present in truth stream");
    if (!it->second->label) continue;  // unannotated
    scored.push_back(
        {v.novelty_score, fsd::label_marks_new(*it->second)});
  }

  const auto curve = fsd::det_curve(scored, params);
  fsd::write_det_csv(det_out, curve);
  const auto& best = fsd::min_cost_point(curve);
  std::printf(
      "%zu scored documents, %zu DET points; min cost %.6f at threshold %g "
      "(p_miss=%.4f, p_fa=%.4f)\n",
      scored.size(), curve.size(), best.cost_norm, best.threshold, best.p_miss,
      best.p_fa);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming first-story detection over document streams"};
  app.require_subcommand(1);

  DetectArgs detect_args;
  auto* detect = app.add_subcommand(
      "detect", "label each stream document novel or redundant");
  add_common_detect_flags(*detect, detect_args);
  detect->add_option("--k", detect_args.k, "signature bits per table")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  auto* tables_opt =
      detect->add_option("--tables", detect_args.tables, "hash table count")
          ->check(CLI::PositiveNumber);
  detect->add_option("--phi", detect_args.phi,
                     "acceptable neighbor miss probability")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9))
      ->excludes(tables_opt)
      ->capture_default_str();
  detect->add_option("--pcoll", detect_args.pcoll,
                     "per-hyperplane collision probability of a neighbor")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9))
      ->excludes(tables_opt)
      ->capture_default_str();
  detect->add_option("--seed", detect_args.seed, "hyperplane hash seed")
      ->capture_default_str();

  DetectArgs oracle_args;
  auto* oracle = app.add_subcommand(
      "oracle", "exhaustive 1-NN detector (no approximation)");
  add_common_detect_flags(*oracle, oracle_args);

  std::string ev_verdicts, ev_truth, ev_out;
  fsd::CostParams cost_params;
  std::size_t ev_skip = 0;
  auto* evaluate = app.add_subcommand(
      "evaluate", "score verdicts against ground truth, write a DET curve");
  evaluate->add_option("--verdicts", ev_verdicts, "verdict file")->required();
  evaluate->add_option("--truth", ev_truth, "labelled stream file")
      ->required();
  evaluate->add_option("--det-out", ev_out, "DET curve CSV to write")
      ->required();
  evaluate->add_option("--c-miss", cost_params.c_miss, "cost of a miss")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evaluate->add_option("--c-fa", cost_params.c_fa, "cost of a false alarm")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evaluate
      ->add_option("--p-target", cost_params.p_target,
                   "prior probability of a new story")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9))
      ->capture_default_str();
  evaluate->add_option("--skip", ev_skip,
                       "ignore the first N verdicts (training prefix)");

  fsd::SynthConfig synth_cfg;
  std::string synth_out;
  auto* synth =
      app.add_subcommand("synth", "generate a labelled synthetic stream");
  synth->add_option("--out", synth_out, "stream file to write")->required();
  synth->add_option("--docs", synth_cfg.n_docs, "total documents")->required();
  synth->add_option("--events", synth_cfg.n_events, "first stories")
      ->required();
  synth->add_option("--vocab", synth_cfg.vocab_size, "background vocabulary")
      ->capture_default_str();
  synth->add_option("--drift", synth_cfg.drift_rate,
                    "fresh terms per copied token")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth->add_option("--noise", synth_cfg.duplicate_noise,
                    "per-token replacement probability in copies")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth->add_option("--seed", synth_cfg.seed, "generator seed")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors exit 1, help exits 0
  }

  try {
    if (detect->parsed()) return run_detect(detect_args, false);
    if (oracle->parsed()) return run_detect(oracle_args, true);
    if (evaluate->parsed())
      return run_evaluate(ev_verdicts, ev_truth, ev_out, cost_params, ev_skip);
    if (synth->parsed()) {
      if (synth_cfg.n_events > synth_cfg.n_docs ||
          (synth_cfg.n_docs > 0 && synth_cfg.n_events == 0)) {
        std::fprintf(stderr, "error: need 1 <= events <= docs\n");
        return 1;
      }
      const auto docs = fsd::generate_synthetic(synth_cfg);
      fsd::write_stream(synth_out, docs);
      std::printf("%zu documents (%zu events) written to %s\n", docs.size(),
                  synth_cfg.n_events, synth_out.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
