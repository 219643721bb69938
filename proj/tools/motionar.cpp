// motionar: synthetic data, ingestion checks, model banks, selection and the
// windowed evaluation protocol from the command line.
//
// Exit codes: 0 success, 1 validation error, 2 numerical degeneracy.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "motionar/bench/config.hpp"
#include "motionar/bench/ingest.hpp"
#include "motionar/bench/protocol.hpp"
#include "motionar/bench/report.hpp"
#include "motionar/bench/synth.hpp"
#include "motionar/error.hpp"
#include "motionar/forecast/ridge.hpp"
#include "motionar/personalize/classifier.hpp"
#include "motionar/personalize/model_bank.hpp"

namespace fs = std::filesystem;
using namespace motionar;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

std::string join(const std::vector<std::string>& items, const char* sep = ",") {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

std::string short_number(double v) {
  std::ostringstream out;
  out << std::setprecision(6) << v;
  return out.str();
}

std::vector<fs::path> to_paths(const std::vector<std::string>& items) { return {items.begin(), items.end()}; }

std::vector<std::string> subjects_of(const std::vector<bench::NamedSequence>& seqs) {
  std::set<std::string> ids;
  for (const auto& s : seqs) ids.insert(s.sequence.subject_id);
  return {ids.begin(), ids.end()};
}

std::vector<bench::NamedSequence> require_subjects(const std::vector<bench::NamedSequence>& all,
                                                   const std::vector<std::string>& ids, const std::string& role) {
  auto picked = bench::select_subjects(all, ids);
  if (picked.empty()) {
    throw ConfigError("no sequences for " + role + " subjects {" + join(ids) + "}; data has {" +
                      join(subjects_of(all)) + "}");
  }
  return picked;
}

/// Representation and fps shared by every sequence.
std::pair<pose::Representation, double> common_format(const std::vector<bench::NamedSequence>& seqs) {
  if (seqs.empty()) throw ConfigError("no sequences found");
  const auto& first = seqs.front().sequence;
  for (const auto& s : seqs) {
    if (s.sequence.representation != first.representation || s.sequence.fps != first.fps ||
        s.sequence.dims() != first.dims()) {
      throw ConfigError("sequences disagree on format: " + seqs.front().name + " is " +
                        std::string(pose::to_string(first.representation)) + " at " +
                        metrics::format_double(first.fps) + " fps with " + std::to_string(first.dims()) +
                        " dims, " + s.name + " is " + std::string(pose::to_string(s.sequence.representation)) +
                        " at " + metrics::format_double(s.sequence.fps) + " fps with " +
                        std::to_string(s.sequence.dims()) + " dims");
    }
  }
  return {first.representation, first.fps};
}

/// Values at the usual reporting horizons (80, 160, 320, 400, 560, 1000 ms)
/// that the curve reaches, otherwise first, middle and last.
std::vector<std::size_t> display_steps(const metrics::ErrorCurve& c) {
  std::vector<std::size_t> steps;
  for (const double ms : {80.0, 160.0, 320.0, 400.0, 560.0, 1000.0}) {
    const double h = ms * c.fps / 1000.0;
    if (std::abs(h - std::round(h)) < 1e-9 && h >= 1 && h <= static_cast<double>(c.horizon())) {
      steps.push_back(static_cast<std::size_t>(std::lround(h)) - 1);
    }
  }
  if (steps.empty() && c.horizon() > 0) steps = {0, (c.horizon() - 1) / 2, c.horizon() - 1};
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  return steps;
}

void print_summary(std::ostream& out, const nlohmann::json& report) {
  const auto curves = bench::curves_from_report(report);
  for (const auto& c : curves) {
    out << std::left << std::setw(10) << c.source << ' ' << metrics::to_string(c.metric);
    for (const auto h : display_steps(c)) {
      out << "  " << metrics::format_double(static_cast<double>(h + 1) * 1000.0 / c.fps) << "ms=";
      out << (c.counts[h] > 0 ? short_number(c.values[h]) : "n/a");
    }
    if (report.at("objective").contains(c.source)) {
      out << "  objective=" << short_number(report["objective"][c.source].get<double>());
    }
    out << '\n';
  }
}

// ---------------------------------------------------------------------------

struct SynthArgs {
  std::string spec;
  std::string out;
  std::optional<std::uint64_t> seed;
  int observe = 10;
  int predict = 25;
  bool allow_unstable = false;
};

int run_synth(const SynthArgs& a) {
  auto spec = bench::SyntheticSpec::load(a.spec);
  if (a.seed) spec.seed = *a.seed;
  if (a.allow_unstable) spec.allow_unstable = true;
  const auto set = bench::synth(spec);
  bench::write_synthetic_set(set, a.out, a.observe, a.predict);
  std::cout << "wrote " << set.sequences.size() << " sequences to " << a.out << '\n';
  return 0;
}

// ---------------------------------------------------------------------------

int run_ingest_check(const std::vector<std::string>& paths) {
  std::vector<fs::path> files;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file() && e.path().extension() == ".csv") found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.emplace_back(p);
    }
  }
  if (files.empty()) throw ConfigError("no CSV files under " + join(paths, " "));
  int code = 0;
  for (const auto& f : files) {
    try {
      const auto seq = bench::ingest(f);
      std::cout << "ok " << f.string() << ": " << seq.length() << " frames x " << seq.dims() << " dims, "
                << pose::to_string(seq.representation) << " at " << metrics::format_double(seq.fps)
                << " fps, subject " << (seq.subject_id.empty() ? "-" : seq.subject_id) << '\n';
    } catch (const NumericalError& e) {
      std::cerr << "error: " << f.string() << ": " << e.what() << '\n';
      code = kExitNumerical;
    } catch (const DegenerateInput& e) {
      std::cerr << "error: " << f.string() << ": " << e.what() << '\n';
      code = kExitNumerical;
    } catch (const Error& e) {
      std::cerr << "error: " << f.string() << ": " << e.what() << '\n';
      code = std::max(code, kExitValidation);
    }
  }
  return code;
}

// ---------------------------------------------------------------------------

struct FitBankArgs {
  std::vector<std::string> data;
  std::string out;
  std::vector<std::string> subjects;
  int bic_max = 10;
  double gamma = 1.0;
  int window = 10;
  int stride = 1;
  double lambda = 1e-3;
  int epochs = 30;
  std::uint64_t seed = 0;
};

int run_fit_bank(FitBankArgs a, const bench::Split& split) {
  if (a.subjects.empty()) a.subjects = split.train;
  if (a.bic_max < 0) throw ConfigError("--bic-max must be >= 0");
  if (a.window < 1 || a.stride < 1) throw ConfigError("--window and --stride must be >= 1");
  const auto all = bench::load_dataset(to_paths(a.data));
  const auto seqs = require_subjects(all, a.subjects, "training");
  const auto [representation, fps] = common_format(seqs);

  personalize::GroupedSequences grouped;
  for (const auto& s : seqs) grouped[s.sequence.subject_id].push_back(s.sequence.frames);
  const auto bank = personalize::train_bank(grouped, {a.bic_max, a.gamma, ar::kDefaultRidge}, fps, representation);
  bank.save(a.out);

  personalize::FeatureOptions features;
  features.window = a.window;
  std::vector<personalize::LabeledSample> samples;
  for (const auto& s : seqs) {
    auto more = personalize::windowed_samples(s.sequence.frames, s.sequence.subject_id, features, a.stride);
    std::move(more.begin(), more.end(), std::back_inserter(samples));
  }
  if (samples.empty()) throw ConfigError("no training window of " + std::to_string(a.window) + " frames");
  const auto classifier = personalize::classifier_train(samples, features, {a.lambda, a.epochs, a.seed});
  classifier.save(fs::path(a.out) / "classifier.json");

  std::cout << "bank: " << bank.size() << " individuals, " << bank.dims() << " dims, "
            << bank.parameter_count() << " coefficients, max order " << bank.max_order() << '\n';
  for (const auto& [id, models] : bank.individuals()) {
    std::map<int, int> orders;
    for (const auto& m : models) ++orders[m.order()];
    std::cout << "  " << id << " orders";
    for (const auto& [p, count] : orders) std::cout << ' ' << p << 'x' << count;
    std::cout << '\n';
  }
  std::cout << "classifier: " << samples.size() << " windows, " << classifier.classes().size() << " classes\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string bank;
  std::vector<std::string> data;
  std::vector<std::string> subjects;
  std::string selection = "one-step";
  int horizon = 25;
  int stride = 1;
  std::uint64_t seed = 0;
  std::string out;
};

int run_classify(const ClassifyArgs& a) {
  const auto bank = personalize::ModelBank::load(a.bank);
  if (bank.empty()) throw ConfigError("bank " + a.bank + " is empty");
  const auto all = bench::load_dataset(to_paths(a.data));
  const auto seqs = a.subjects.empty() ? all : require_subjects(all, a.subjects, "selection");
  if (seqs.empty()) throw ConfigError("no sequences found");

  personalize::SelectionOptions options;
  if (a.selection == "one-step") {
    options.kind = personalize::SelectionError::kOneStep;
  } else if (a.selection == "horizon") {
    options.kind = personalize::SelectionError::kHorizon;
  } else {
    throw ConfigError("--selection must be one-step or horizon");
  }
  options.horizon = a.horizon;
  options.stride = a.stride;

  std::optional<personalize::LinearClassifier> classifier;
  const auto classifier_path = fs::path(a.bank) / "classifier.json";
  if (fs::exists(classifier_path)) classifier = personalize::LinearClassifier::load(classifier_path);

  const auto ids = bank.ids();
  std::mt19937_64 rng(a.seed);
  std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);

  nlohmann::json results = nlohmann::json::array();
  std::size_t oracle_hits = 0;
  std::size_t linear_hits = 0;
  std::size_t linear_total = 0;
  std::cout << std::left << std::setw(16) << "sequence" << ' ' << std::setw(9) << "subject" << ' ' << std::setw(9)
            << "oracle" << ' ' << std::setw(13) << "oracle_err" << ' ' << std::setw(13) << "per_dim_err" << ' '
            << std::setw(13) << "random_err" << ' ' << "linear\n";
  for (const auto& s : seqs) {
    const auto& frames = s.sequence.frames;
    if (frames.cols() != bank.dims()) {
      throw InvalidInput(s.name + " has " + std::to_string(frames.cols()) + " dims, bank has " +
                         std::to_string(bank.dims()));
    }
    const auto errors = personalize::selection_errors(bank, frames, options);
    const auto person = personalize::oracle_classify(bank, frames, options);
    const auto per_dim = personalize::oracle_classify_per_dimension(bank, frames, options);
    const std::string random_id = ids[pick(rng)];
    const double random_error =
        personalize::selection_error(bank, errors, std::vector<std::string>(static_cast<std::size_t>(bank.dims()), random_id));
    if (person.ids.front() == s.sequence.subject_id) ++oracle_hits;

    nlohmann::json row{{"sequence", s.name},
                       {"subject", s.sequence.subject_id},
                       {"oracle", {{"id", person.ids.front()}, {"error", person.error}}},
                       {"per_dimension", {{"ids", per_dim.ids}, {"error", per_dim.error}}},
                       {"random", {{"id", random_id}, {"error", random_error}}}};
    std::string linear_id = "-";
    if (classifier) {
      const int window = classifier->feature_options().window;
      std::map<std::string, std::size_t> votes;
      for (Eigen::Index t = 0; t + window <= frames.rows(); t += a.stride) {
        ++votes[classifier->predict_window(frames.middleRows(t, window))];
      }
      if (!votes.empty()) {
        linear_id = std::max_element(votes.begin(), votes.end(), [](const auto& x, const auto& y) {
                      return x.second < y.second;
                    })->first;
        row["linear"] = {{"id", linear_id}, {"votes", votes}};
        ++linear_total;
        if (linear_id == s.sequence.subject_id) ++linear_hits;
      }
    }
    results.push_back(row);
    std::cout << std::setw(16) << s.name << ' ' << std::setw(9) << s.sequence.subject_id << ' ' << std::setw(9)
              << person.ids.front() << ' ' << std::setw(13) << short_number(person.error) << ' ' << std::setw(13)
              << short_number(per_dim.error) << ' ' << std::setw(13) << short_number(random_error) << ' '
              << linear_id << '\n';
  }
  std::cout << "oracle matches subject on " << oracle_hits << '/' << seqs.size() << " sequences";
  if (linear_total > 0) std::cout << ", linear on " << linear_hits << '/' << linear_total;
  std::cout << '\n';

  if (!a.out.empty()) {
    fs::create_directories(a.out);
    std::ofstream out(fs::path(a.out) / "classify.json");
    if (!out) throw ConfigError("cannot write " + (fs::path(a.out) / "classify.json").string());
    out << nlohmann::json{{"selection", a.selection}, {"bank", bank.ids()}, {"sequences", results}}.dump(2) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct EvaluateArgs {
  std::vector<std::string> data;
  std::string out;
  std::string base;
  std::string predictions;
  std::string mode = "streaming";
  std::string metric;
  std::optional<double> fps;
  double ridge_lambda = 1.0;
  bool no_correct = false;
};

int run_evaluate(const EvaluateArgs& a, bench::ProtocolConfig config) {
  const auto all = bench::load_dataset(to_paths(a.data));
  const auto test = require_subjects(all, config.split.test, "test");
  const auto [representation, fps] = common_format(test);
  config.representation = representation;
  config.fps = a.fps.value_or(fps);
  config.mode = bench::mode_from_string(a.mode);
  config.metric = !a.metric.empty() ? metrics::metric_from_string(a.metric)
                  : representation == pose::Representation::kExpmap ? metrics::Metric::kMea
                                                                     : metrics::Metric::kMpje;
  config.correct = !a.no_correct;
  config.validate();

  std::string base = a.base.empty() ? (a.predictions.empty() ? "zero-velocity" : "external") : a.base;
  bench::PredictorFactory factory;
  if (base == "zero-velocity") {
    factory = bench::zero_velocity_factory();
  } else if (base == "external") {
    if (a.predictions.empty()) throw ConfigError("--base external needs --predictions");
    factory = bench::external_factory(a.predictions);
  } else if (base == "ridge") {
    const auto train = require_subjects(all, config.split.train, "training");
    std::vector<forecast::TrainingPair> pairs;
    for (const auto& s : train) {
      if (s.sequence.representation != representation || s.sequence.dims() != test.front().sequence.dims()) {
        throw ConfigError("training sequence " + s.name + " does not match the test format");
      }
      auto more = forecast::make_training_pairs(s.sequence.frames, config.observe_frames, config.predict_frames,
                                                config.anchor_stride);
      std::move(more.begin(), more.end(), std::back_inserter(pairs));
    }
    if (pairs.empty()) throw ConfigError("no training window long enough for the ridge baseline");
    forecast::RidgeOptions options;
    options.lambda = a.ridge_lambda;
    factory = bench::ridge_factory(forecast::ridge_regression_fit(pairs, options));
  } else {
    throw ConfigError("--base must be zero-velocity, ridge or external");
  }
  if (base != "external" && !a.predictions.empty()) throw ConfigError("--predictions needs --base external");

  const auto result = bench::run_protocol(config, test, factory, &std::cerr);
  if (result.sequences.empty()) {
    throw ConfigError("every test sequence is shorter than " +
                      std::to_string(config.observe_frames + config.predict_frames) + " frames");
  }
  const auto report = bench::build_report(config, result, bench::utc_timestamp());
  bench::write_report(a.out, report);
  {
    std::ofstream log(fs::path(a.out) / "anchors.jsonl");
    if (!log) throw ConfigError("cannot write " + (fs::path(a.out) / "anchors.jsonl").string());
    result.write_anchor_log(log);
  }
  std::size_t anchors = 0;
  for (const auto& s : result.sequences) anchors += s.anchors;
  std::cout << result.sequences.size() << " sequences, " << anchors << " anchors, " << result.skipped.size()
            << " skipped; " << bench::to_string(config.mode) << " mode, base " << result.base_name << " ("
            << result.base_parameters << " parameters)";
  if (config.correct) std::cout << ", corrector " << result.corrector_parameters << " parameters";
  std::cout << '\n';
  print_summary(std::cout, report);
  return 0;
}

// ---------------------------------------------------------------------------

int run_report(const std::vector<std::string>& inputs, const std::string& out) {
  std::vector<nlohmann::json> reports;
  for (const auto& p : inputs) reports.push_back(bench::load_report(p));
  const auto merged = reports.size() == 1 ? reports.front() : bench::merge_reports(reports, bench::utc_timestamp());
  if (!out.empty()) bench::write_report(out, merged);
  print_summary(std::cout, merged);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual-corrected human motion forecasting benchmark"};
  app.set_config("--config", "", "TOML file with option values; [subcommand] sections apply to that subcommand");
  app.require_subcommand(1);

  bench::ProtocolConfig config;
  const auto add_split = [&config](CLI::App* cmd) {
    cmd->add_option("--train", config.split.train, "Training subject ids")->delimiter(',');
    cmd->add_option("--val", config.split.val, "Validation subject ids")->delimiter(',');
    cmd->add_option("--test", config.split.test, "Test subject ids")->delimiter(',');
  };

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate seeded synthetic AR sequences with a ground-truth manifest");
  synth->add_option("--spec", synth_args.spec, "Synthetic spec (JSON)")->required()->check(CLI::ExistingFile);
  synth->add_option("--out", synth_args.out, "Output directory")->required();
  synth->add_option("--seed", synth_args.seed, "Override the spec seed");
  synth->add_option("--observe", synth_args.observe, "M for the trend forecasts written next to each sequence")
      ->check(CLI::NonNegativeNumber);
  synth->add_option("--predict", synth_args.predict, "N for the trend forecasts; 0 writes none")
      ->check(CLI::NonNegativeNumber);
  synth->add_flag("--allow-unstable", synth_args.allow_unstable, "Accept AR polynomials with roots on or outside the unit circle");

  std::vector<std::string> ingest_paths;
  auto* ingest = app.add_subcommand("ingest-check", "Validate pose CSV files and their sidecars");
  ingest->add_option("paths", ingest_paths, "CSV files or directories")->required();

  FitBankArgs bank_args;
  auto* fit_bank = app.add_subcommand("fit-bank", "Fit per-individual AR models and the window classifier");
  fit_bank->add_option("--data", bank_args.data, "CSV files or directories")->required();
  fit_bank->add_option("--out", bank_args.out, "Bank directory")->required();
  fit_bank->add_option("--subjects", bank_args.subjects, "Individuals to fit (default: the training split)")
      ->delimiter(',');
  fit_bank->add_option("--bic-max", bank_args.bic_max, "Largest AR order considered by BIC");
  fit_bank->add_option("--gamma", bank_args.gamma, "Forgetting factor of the batch fit")->check(CLI::Range(0.0, 1.0));
  fit_bank->add_option("--window", bank_args.window, "Classifier window length in frames");
  fit_bank->add_option("--stride", bank_args.stride, "Stride between classifier training windows");
  fit_bank->add_option("--lambda", bank_args.lambda, "Classifier L2 strength")->check(CLI::PositiveNumber);
  fit_bank->add_option("--epochs", bank_args.epochs, "Classifier epochs")->check(CLI::PositiveNumber);
  fit_bank->add_option("--seed", bank_args.seed, "Classifier shuffling seed");
  add_split(fit_bank);

  ClassifyArgs classify_args;
  auto* classify = app.add_subcommand("classify", "Select bank models per sequence: oracle, per-dimension oracle, random and linear");
  classify->add_option("--bank", classify_args.bank, "Bank directory from fit-bank")->required()->check(CLI::ExistingDirectory);
  classify->add_option("--data", classify_args.data, "CSV files or directories")->required();
  classify->add_option("--subjects", classify_args.subjects, "Only these subjects")->delimiter(',');
  classify->add_option("--selection", classify_args.selection, "Selection error: one-step or horizon")
      ->check(CLI::IsMember({"one-step", "horizon"}));
  classify->add_option("--predict", classify_args.horizon, "Horizon for --selection horizon")->check(CLI::PositiveNumber);
  classify->add_option("--stride", classify_args.stride, "Anchor and window stride")->check(CLI::PositiveNumber);
  classify->add_option("--seed", classify_args.seed, "Seed of the random-selection baseline");
  classify->add_option("--out", classify_args.out, "Write classify.json here");

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "Run the windowed evaluation and write a report");
  evaluate->add_option("--data", eval_args.data, "CSV files or directories")->required();
  evaluate->add_option("--out", eval_args.out, "Report directory")->required();
  evaluate->add_option("--base", eval_args.base, "Base predictor")->check(CLI::IsMember({"zero-velocity", "ridge", "external"}));
  evaluate->add_option("--predictions", eval_args.predictions,
                       "External forecasts: a JSON-lines file (one sequence) or a directory of <name>.jsonl");
  evaluate->add_option("--mode", eval_args.mode, "streaming or legacy")->check(CLI::IsMember({"streaming", "legacy"}));
  evaluate->add_option("--metric", eval_args.metric, "mpje or mea (default from the representation)")
      ->check(CLI::IsMember({"mpje", "mea"}));
  evaluate->add_option("--gamma", config.corrector.forgetting, "Corrector forgetting factor");
  evaluate->add_option("--order", config.corrector.order, "Corrector AR order");
  evaluate->add_option("--delta", config.corrector.init_scale, "Corrector initial covariance scale");
  evaluate->add_option("--warmup", config.corrector.warmup, "Corrector RLS updates before corrections are applied");
  evaluate->add_option("--observe", config.observe_frames, "M, observed frames per anchor");
  evaluate->add_option("--predict", config.predict_frames, "N, predicted frames per anchor");
  evaluate->add_option("--stride", config.anchor_stride, "Evaluate every stride-th anchor");
  evaluate->add_option("--seed", config.seed, "Recorded in the report");
  evaluate->add_option("--fps", eval_args.fps, "Expected frame rate (default from the data)");
  evaluate->add_option("--ridge-lambda", eval_args.ridge_lambda, "Ridge strength for --base ridge")
      ->check(CLI::NonNegativeNumber);
  evaluate->add_flag("--no-correct", eval_args.no_correct, "Report the base predictor only");
  evaluate->add_option("--threads", config.threads, "Worker threads, 0 for one per core");
  add_split(evaluate);

  std::vector<std::string> report_inputs;
  std::string report_out;
  auto* report = app.add_subcommand("report", "Summarize or merge evaluation reports");
  report->add_option("reports", report_inputs, "report.json files or report directories")->required();
  report->add_option("--out", report_out, "Write the merged report and CSVs here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*synth) return run_synth(synth_args);
    if (*ingest) return run_ingest_check(ingest_paths);
    if (*fit_bank) return run_fit_bank(bank_args, config.split);
    if (*classify) return run_classify(classify_args);
    if (*evaluate) return run_evaluate(eval_args, config);
    if (*report) return run_report(report_inputs, report_out);
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DegenerateInput& e) {
    std::cerr << "degenerate input: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}
