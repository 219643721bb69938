#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "motionar/ar/ar_model.hpp"
#include "motionar/pose/sequence.hpp"

namespace motionar::personalize {

using pose::Frames;

/// Per-dimension AR models of one individual.
using IndividualModels = std::vector<ar::ArModel>;

struct BankOptions {
  int max_order = 10;
  double forgetting = 1.0;
  double ridge = ar::kDefaultRidge;
};

/// Individual id -> one AR model per dimension. Ids iterate in lexicographic
/// order, which is also the tie-break order for selection.
///
/// On disk: <dir>/manifest.json plus <dir>/<id>/dim_<k>.json.
class ModelBank {
 public:
  ModelBank() = default;
  ModelBank(int dims, BankOptions options, double fps = 25.0,
            pose::Representation representation = pose::Representation::kExpmap);

  /// Throws InvalidInput on a duplicate or unusable id or a wrong model count.
  void add(const std::string& id, IndividualModels models);

  [[nodiscard]] int dims() const noexcept { return dims_; }
  [[nodiscard]] double fps() const noexcept { return fps_; }
  [[nodiscard]] pose::Representation representation() const noexcept { return representation_; }
  [[nodiscard]] const BankOptions& options() const noexcept { return options_; }
  [[nodiscard]] std::size_t size() const noexcept { return individuals_.size(); }
  [[nodiscard]] bool empty() const noexcept { return individuals_.empty(); }
  [[nodiscard]] std::vector<std::string> ids() const;
  [[nodiscard]] const IndividualModels& at(const std::string& id) const;
  [[nodiscard]] const std::map<std::string, IndividualModels>& individuals() const noexcept { return individuals_; }
  /// Largest order over all models.
  [[nodiscard]] int max_order() const noexcept;
  /// Sum of coefficient counts.
  [[nodiscard]] std::size_t parameter_count() const noexcept;

  void save(const std::filesystem::path& dir) const;
  [[nodiscard]] static ModelBank load(const std::filesystem::path& dir);

 private:
  int dims_ = 0;
  BankOptions options_;
  double fps_ = 25.0;
  pose::Representation representation_ = pose::Representation::kExpmap;
  std::map<std::string, IndividualModels> individuals_;
};

/// Copies column `d` into a contiguous series.
[[nodiscard]] std::vector<double> column(const Eigen::Ref<const Frames>& frames, Eigen::Index d);

/// Training sequences grouped by individual id.
using GroupedSequences = std::map<std::string, std::vector<Frames>>;

/// Per individual and dimension: BIC order over 0..max_order, then a batch
/// fit on all of that individual's sequences. A dimension that is constant
/// across the training data gets an order-0 model with zero variance.
[[nodiscard]] ModelBank train_bank(const GroupedSequences& training, const BankOptions& options = {},
                                   double fps = 25.0,
                                   pose::Representation representation = pose::Representation::kExpmap);

enum class SelectionError {
  kOneStep,  // one-step errors over the sequence
  kHorizon,  // multi-step forecasts from every stride-th anchor
};

struct SelectionOptions {
  SelectionError kind = SelectionError::kOneStep;
  int horizon = 25;
  int stride = 1;
  bool absolute = false;  // absolute instead of squared errors
};

/// Mean error of each candidate on each dimension (rows follow bank.ids()).
/// Every candidate is scored on the same targets, starting at the bank's
/// largest order, so the entries add across dimensions.
[[nodiscard]] Eigen::MatrixXd selection_errors(const ModelBank& bank, const Eigen::Ref<const Frames>& sequence,
                                               const SelectionOptions& options = {});

struct Selection {
  std::vector<std::string> ids;  // one per dimension
  double error = 0.0;            // sum over dimensions of the chosen entries
};

/// The individual with the lowest summed error; ties go to the smaller id.
[[nodiscard]] Selection oracle_classify(const ModelBank& bank, const Eigen::Ref<const Frames>& sequence,
                                        const SelectionOptions& options = {});
/// Independent argmin per dimension. Its error never exceeds oracle_classify's.
[[nodiscard]] Selection oracle_classify_per_dimension(const ModelBank& bank, const Eigen::Ref<const Frames>& sequence,
                                                      const SelectionOptions& options = {});
/// Error of a fixed choice of candidate per dimension.
[[nodiscard]] double selection_error(const ModelBank& bank, const Eigen::MatrixXd& errors,
                                     const std::vector<std::string>& ids);

/// Keeps the selected orders and refits the coefficients on `sequence` with
/// the bank's forgetting and ridge. `ids` holds one entry (whole person) or
/// one per dimension. Throws InvalidInput when the sequence is not longer
/// than a selected order.
[[nodiscard]] IndividualModels oracle_refit(const ModelBank& bank, const std::vector<std::string>& ids,
                                            const Eigen::Ref<const Frames>& sequence);

/// Dimension-wise models assembled from the chosen candidates.
[[nodiscard]] IndividualModels compose(const ModelBank& bank, const std::vector<std::string>& ids);

}  // namespace motionar::personalize
