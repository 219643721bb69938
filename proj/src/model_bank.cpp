#include "motionar/personalize/model_bank.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "motionar/error.hpp"

namespace motionar::personalize {
namespace {

bool usable_id(const std::string& id) {
  if (id.empty() || id == "." || id == "..") return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-' ||
           c == '.';
  });
}

bool is_constant(const std::vector<std::vector<double>>& columns) {
  const double first = columns.front().front();
  const double tol = 1e-12 * std::max(1.0, std::abs(first));
  for (const auto& c : columns) {
    for (double v : c) {
      if (std::abs(v - first) > tol) return false;
    }
  }
  return true;
}

double error_term(double e, bool absolute) { return absolute ? std::abs(e) : e * e; }

}  // namespace

ModelBank::ModelBank(int dims, BankOptions options, double fps, pose::Representation representation)
    : dims_(dims), options_(options), fps_(fps), representation_(representation) {
  if (dims < 1) throw InvalidInput("model bank: dims must be >= 1");
  if (!(fps > 0.0)) throw InvalidInput("model bank: fps must be > 0");
}

void ModelBank::add(const std::string& id, IndividualModels models) {
  if (!usable_id(id)) throw InvalidInput("model bank: id \"" + id + "\" must be [A-Za-z0-9_.-]+");
  if (static_cast<int>(models.size()) != dims_) {
    throw InvalidInput("model bank: individual " + id + " has " + std::to_string(models.size()) + " models, expected " +
                       std::to_string(dims_));
  }
  if (!individuals_.emplace(id, std::move(models)).second) throw InvalidInput("model bank: duplicate id " + id);
}

std::vector<std::string> ModelBank::ids() const {
  std::vector<std::string> out;
  out.reserve(individuals_.size());
  for (const auto& [id, _] : individuals_) out.push_back(id);
  return out;
}

const IndividualModels& ModelBank::at(const std::string& id) const {
  const auto it = individuals_.find(id);
  if (it == individuals_.end()) throw InvalidInput("model bank: no individual " + id);
  return it->second;
}

int ModelBank::max_order() const noexcept {
  int p = 0;
  for (const auto& [_, models] : individuals_) {
    for (const auto& m : models) p = std::max(p, m.order());
  }
  return p;
}

std::size_t ModelBank::parameter_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [_, models] : individuals_) {
    for (const auto& m : models) n += static_cast<std::size_t>(m.order());
  }
  return n;
}

void ModelBank::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest{{"dims", dims_},
                          {"fps", fps_},
                          {"representation", std::string(pose::to_string(representation_))},
                          {"max_order", options_.max_order},
                          {"forgetting", options_.forgetting},
                          {"ridge", options_.ridge},
                          {"individuals", ids()}};
  {
    std::ofstream out(dir / "manifest.json");
    if (!out) throw ConfigError("cannot write " + (dir / "manifest.json").string());
    out << manifest.dump(2) << '\n';
  }
  for (const auto& [id, models] : individuals_) {
    const auto sub = dir / id;
    std::filesystem::create_directories(sub);
    for (std::size_t k = 0; k < models.size(); ++k) models[k].save(sub / ("dim_" + std::to_string(k) + ".json"));
  }
}

ModelBank ModelBank::load(const std::filesystem::path& dir) {
  const auto path = dir / "manifest.json";
  std::ifstream in(path);
  if (!in) throw ConfigError("model bank manifest not found: " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
  try {
    BankOptions options;
    options.max_order = doc.at("max_order").get<int>();
    options.forgetting = doc.at("forgetting").get<double>();
    options.ridge = doc.at("ridge").get<double>();
    ModelBank bank(doc.at("dims").get<int>(), options, doc.at("fps").get<double>(),
                   pose::representation_from_string(doc.at("representation").get<std::string>()));
    for (const auto& id : doc.at("individuals").get<std::vector<std::string>>()) {
      IndividualModels models;
      for (int k = 0; k < bank.dims(); ++k) {
        models.push_back(ar::ArModel::load(dir / id / ("dim_" + std::to_string(k) + ".json")));
      }
      bank.add(id, std::move(models));
    }
    return bank;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

std::vector<double> column(const Eigen::Ref<const Frames>& frames, Eigen::Index d) {
  std::vector<double> out(static_cast<std::size_t>(frames.rows()));
  for (Eigen::Index t = 0; t < frames.rows(); ++t) out[static_cast<std::size_t>(t)] = frames(t, d);
  return out;
}

ModelBank train_bank(const GroupedSequences& training, const BankOptions& options, double fps,
                     pose::Representation representation) {
  if (training.empty()) throw InvalidInput("train_bank: no individuals");
  Eigen::Index dims = -1;
  for (const auto& [id, seqs] : training) {
    if (seqs.empty()) throw InvalidInput("train_bank: individual " + id + " has no sequences");
    for (const auto& s : seqs) {
      if (dims < 0) dims = s.cols();
      if (s.cols() != dims) throw InvalidInput("train_bank: sequences of " + id + " differ in dimension");
      if (s.rows() == 0) throw InvalidInput("train_bank: empty sequence for " + id);
    }
  }

  ModelBank bank(static_cast<int>(dims), options, fps, representation);
  for (const auto& [id, seqs] : training) {
    IndividualModels models;
    for (Eigen::Index d = 0; d < dims; ++d) {
      std::vector<std::vector<double>> columns;
      for (const auto& s : seqs) columns.push_back(column(s, d));
      if (is_constant(columns)) {
        models.push_back(ar::ArModel{Eigen::VectorXd(0), 0.0});
        continue;
      }
      std::vector<ar::LaggedSeries> segments;
      for (const auto& c : columns) segments.emplace_back(c);
      const auto bic = ar::bic_order_select(segments, options.max_order, options.forgetting, options.ridge);
      models.push_back(ar::fit_ar_batch(segments, bic.order, options.forgetting, options.ridge));
    }
    bank.add(id, std::move(models));
  }
  return bank;
}

Eigen::MatrixXd selection_errors(const ModelBank& bank, const Eigen::Ref<const Frames>& sequence,
                                 const SelectionOptions& options) {
  if (bank.empty()) throw InvalidInput("selection: empty model bank");
  if (sequence.cols() != bank.dims()) {
    throw InvalidInput("selection: sequence has D = " + std::to_string(sequence.cols()) + ", bank has D = " +
                       std::to_string(bank.dims()));
  }
  const auto start = static_cast<std::size_t>(bank.max_order());
  const auto length = static_cast<std::size_t>(sequence.rows());
  const bool horizon_mode = options.kind == SelectionError::kHorizon;
  if (horizon_mode && (options.horizon < 1 || options.stride < 1)) {
    throw InvalidInput("selection: horizon and stride must be >= 1");
  }
  const std::size_t needed = start + (horizon_mode ? static_cast<std::size_t>(options.horizon) : 1);
  if (length < needed) {
    throw InvalidInput("selection: sequence of " + std::to_string(length) + " frames, need at least " +
                       std::to_string(needed));
  }

  const auto ids = bank.ids();
  Eigen::MatrixXd errors(static_cast<Eigen::Index>(ids.size()), bank.dims());
  for (Eigen::Index d = 0; d < bank.dims(); ++d) {
    const auto y = column(sequence, d);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const auto& model = bank.at(ids[i])[static_cast<std::size_t>(d)];
      const auto p = static_cast<std::size_t>(model.order());
      double sum = 0.0;
      std::size_t count = 0;
      if (!horizon_mode) {
        for (std::size_t t = start; t < length; ++t) {
          double pred = 0.0;
          for (std::size_t k = 0; k < p; ++k) pred += model.coefficients[static_cast<Eigen::Index>(k)] * y[t - 1 - k];
          sum += error_term(y[t] - pred, options.absolute);
          ++count;
        }
      } else {
        const auto h = static_cast<std::size_t>(options.horizon);
        for (std::size_t t = start; t + h <= length; t += static_cast<std::size_t>(options.stride)) {
          const Eigen::VectorXd f = ar::ar_predict(model, std::span<const double>(y.data(), t), options.horizon);
          for (std::size_t k = 0; k < h; ++k) sum += error_term(y[t + k] - f[static_cast<Eigen::Index>(k)], options.absolute);
          count += h;
        }
      }
      errors(static_cast<Eigen::Index>(i), d) = sum / static_cast<double>(count);
    }
  }
  return errors;
}

double selection_error(const ModelBank& bank, const Eigen::MatrixXd& errors, const std::vector<std::string>& ids) {
  const auto all = bank.ids();
  if (ids.size() != 1 && ids.size() != static_cast<std::size_t>(bank.dims())) {
    throw InvalidInput("selection: expected 1 or D ids");
  }
  double total = 0.0;
  for (Eigen::Index d = 0; d < bank.dims(); ++d) {
    const auto& id = ids.size() == 1 ? ids.front() : ids[static_cast<std::size_t>(d)];
    const auto it = std::lower_bound(all.begin(), all.end(), id);
    if (it == all.end() || *it != id) throw InvalidInput("selection: no individual " + id);
    total += errors(it - all.begin(), d);
  }
  return total;
}

Selection oracle_classify(const ModelBank& bank, const Eigen::Ref<const Frames>& sequence,
                          const SelectionOptions& options) {
  const Eigen::MatrixXd errors = selection_errors(bank, sequence, options);
  const auto ids = bank.ids();
  Eigen::Index best = 0;
  double best_error = 0.0;
  for (Eigen::Index i = 0; i < errors.rows(); ++i) {
    double total = 0.0;
    for (Eigen::Index d = 0; d < errors.cols(); ++d) total += errors(i, d);
    if (i == 0 || total < best_error) {
      best = i;
      best_error = total;
    }
  }
  return {std::vector<std::string>(static_cast<std::size_t>(bank.dims()), ids[static_cast<std::size_t>(best)]),
          best_error};
}

Selection oracle_classify_per_dimension(const ModelBank& bank, const Eigen::Ref<const Frames>& sequence,
                                        const SelectionOptions& options) {
  const Eigen::MatrixXd errors = selection_errors(bank, sequence, options);
  const auto ids = bank.ids();
  Selection out;
  for (Eigen::Index d = 0; d < errors.cols(); ++d) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < errors.rows(); ++i) {
      if (errors(i, d) < errors(best, d)) best = i;
    }
    out.ids.push_back(ids[static_cast<std::size_t>(best)]);
    out.error += errors(best, d);
  }
  return out;
}

IndividualModels compose(const ModelBank& bank, const std::vector<std::string>& ids) {
  if (ids.size() != 1 && ids.size() != static_cast<std::size_t>(bank.dims())) {
    throw InvalidInput("compose: expected 1 or D ids");
  }
  IndividualModels out;
  for (int d = 0; d < bank.dims(); ++d) {
    const auto& id = ids.size() == 1 ? ids.front() : ids[static_cast<std::size_t>(d)];
    out.push_back(bank.at(id)[static_cast<std::size_t>(d)]);
  }
  return out;
}

IndividualModels oracle_refit(const ModelBank& bank, const std::vector<std::string>& ids,
                              const Eigen::Ref<const Frames>& sequence) {
  if (sequence.cols() != bank.dims()) {
    throw InvalidInput("oracle_refit: sequence has D = " + std::to_string(sequence.cols()) + ", bank has D = " +
                       std::to_string(bank.dims()));
  }
  const IndividualModels selected = compose(bank, ids);
  IndividualModels out;
  for (Eigen::Index d = 0; d < bank.dims(); ++d) {
    const int order = selected[static_cast<std::size_t>(d)].order();
    if (sequence.rows() <= order) {
      throw InvalidInput("oracle_refit: sequence of " + std::to_string(sequence.rows()) +
                         " frames is too short for order " + std::to_string(order));
    }
    const auto y = column(sequence, d);
    out.push_back(ar::fit_ar_batch(ar::LaggedSeries(y), order, bank.options().forgetting, bank.options().ridge));
  }
  return out;
}

}  // namespace motionar::personalize
