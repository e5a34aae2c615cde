#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ppn/random.hpp"

namespace ppn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class DataKind { continuous, categorical_onehot };

/// An n x d block of observations with optional covariates (regression) or
/// one-hot categorical blocks. Immutable after construction.
class Dataset {
 public:
  /// Continuous observations, optionally with an n x p covariate matrix.
  static Dataset continuous(Matrix values, std::optional<Matrix> covariates = std::nullopt,
                            std::vector<std::string> column_names = {});
  /// One-hot categorical data; `values` has sum(level_sizes) columns.
  static Dataset categorical(Matrix onehot, std::vector<std::size_t> level_sizes,
                             std::vector<std::string> column_names = {});
  /// Expands 0-based integer level codes (n x J) into one-hot blocks.
  static Dataset from_codes(const std::vector<std::vector<std::size_t>>& codes,
                            std::vector<std::size_t> level_sizes, std::vector<std::string> column_names = {});

  [[nodiscard]] std::size_t rows() const { return static_cast<std::size_t>(values_.rows()); }
  [[nodiscard]] std::size_t cols() const { return static_cast<std::size_t>(values_.cols()); }
  [[nodiscard]] const Matrix& values() const { return values_; }
  [[nodiscard]] const std::optional<Matrix>& covariates() const { return covariates_; }
  [[nodiscard]] DataKind kind() const { return kind_; }
  [[nodiscard]] const std::vector<std::size_t>& level_sizes() const { return level_sizes_; }
  [[nodiscard]] const std::vector<std::string>& column_names() const { return names_; }

  /// Category index of row i in variable block j (categorical only).
  [[nodiscard]] std::size_t level(std::size_t i, std::size_t j) const;
  /// Offset of variable block j inside the one-hot columns.
  [[nodiscard]] std::size_t block_offset(std::size_t j) const;

  /// Rows selected by index, preserving column structure.
  [[nodiscard]] Dataset select_rows(const std::vector<std::size_t>& idx) const;
  /// Same structure with new values (and covariates when present).
  [[nodiscard]] Dataset with_values(Matrix values) const;
  /// Vertical concatenation with a structurally identical dataset.
  [[nodiscard]] Dataset concat(const Dataset& other) const;

 private:
  Dataset() = default;
  void validate() const;

  Matrix values_;
  std::optional<Matrix> covariates_;
  DataKind kind_ = DataKind::continuous;
  std::vector<std::size_t> level_sizes_;
  std::vector<std::string> names_;
};

struct DataSplit {
  Dataset x_in;
  Dataset x_out;
  Dataset x_val;
  /// Source-row indices of each part.
  std::array<std::vector<std::size_t>, 3> indices;
};

using SplitFractions = std::array<double, 3>;
inline constexpr SplitFractions kEqualThirds{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

/// Seeded three-way partition. Sizes are floor(n * f) with the remainder
/// assigned to x_in; rows are permuted before allocation.
DataSplit split_data(const Dataset& data, const SplitFractions& fractions, Seed seed);

/// Part sizes split_data would produce for n rows.
std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitFractions& fractions);

// CSV. The header row names columns. Categorical files hold 1-based level
// codes which are expanded to one-hot internally.
struct CsvOptions {
  DataKind kind = DataKind::continuous;
  /// Categorical only; inferred from the maximum code per column when empty.
  std::vector<std::size_t> level_sizes;
  /// Continuous only: when set, the first column is the response and the
  /// remaining columns are covariates.
  bool response_first = false;
};

Dataset read_csv(const std::filesystem::path& path, const CsvOptions& options = {});
void write_csv(const Dataset& data, const std::filesystem::path& path);

}  // namespace ppn
