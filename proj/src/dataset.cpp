#include "ppn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "ppn/error.hpp"

namespace ppn {

Dataset Dataset::continuous(Matrix values, std::optional<Matrix> covariates, std::vector<std::string> column_names) {
  Dataset d;
  d.values_ = std::move(values);
  d.covariates_ = std::move(covariates);
  d.kind_ = DataKind::continuous;
  d.names_ = std::move(column_names);
  d.validate();
  return d;
}

Dataset Dataset::categorical(Matrix onehot, std::vector<std::size_t> level_sizes,
                             std::vector<std::string> column_names) {
  Dataset d;
  d.values_ = std::move(onehot);
  d.kind_ = DataKind::categorical_onehot;
  d.level_sizes_ = std::move(level_sizes);
  d.names_ = std::move(column_names);
  d.validate();
  return d;
}

Dataset Dataset::from_codes(const std::vector<std::vector<std::size_t>>& codes, std::vector<std::size_t> level_sizes,
                            std::vector<std::string> column_names) {
  const std::size_t width = std::accumulate(level_sizes.begin(), level_sizes.end(), std::size_t{0});
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(codes.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (codes[i].size() != level_sizes.size()) throw DataError("from_codes: row " + std::to_string(i) + " has wrong arity");
    std::size_t offset = 0;
    for (std::size_t j = 0; j < level_sizes.size(); ++j) {
      if (codes[i][j] >= level_sizes[j]) {
        throw DataError("from_codes: row " + std::to_string(i) + " variable " + std::to_string(j) + " level out of range");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(offset + codes[i][j])) = 1.0;
      offset += level_sizes[j];
    }
  }
  return categorical(std::move(m), std::move(level_sizes), std::move(column_names));
}

void Dataset::validate() const {
  if (values_.rows() < 1 || values_.cols() < 1) throw DataError("dataset must have n >= 1 and d >= 1");
  if (!values_.allFinite()) throw DataError("dataset contains non-finite values");
  if (!names_.empty()) {
    const std::size_t expected = kind_ == DataKind::categorical_onehot ? level_sizes_.size()
                                 : cols() + (covariates_ ? static_cast<std::size_t>(covariates_->cols()) : 0);
    if (names_.size() != expected) throw DataError("column name count does not match dataset structure");
  }
  if (kind_ == DataKind::continuous) {
    if (!level_sizes_.empty()) throw DataError("continuous dataset cannot carry level sizes");
    if (covariates_) {
      if (covariates_->rows() != values_.rows()) throw DataError("covariate rows must match observation rows");
      if (!covariates_->allFinite()) throw DataError("covariates contain non-finite values");
    }
    return;
  }
  if (covariates_) throw DataError("covariates are only allowed on continuous datasets");
  if (level_sizes_.empty()) throw DataError("categorical dataset needs level sizes");
  const std::size_t width = std::accumulate(level_sizes_.begin(), level_sizes_.end(), std::size_t{0});
  if (width != cols()) throw DataError("one-hot width does not match level sizes");
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    std::size_t offset = 0;
    for (std::size_t j = 0; j < level_sizes_.size(); ++j) {
      int ones = 0;
      for (std::size_t c = 0; c < level_sizes_[j]; ++c) {
        const double v = values_(i, static_cast<Eigen::Index>(offset + c));
        if (v == 1.0) {
          ++ones;
        } else if (v != 0.0) {
          ones = -1;
          break;
        }
      }
      if (ones != 1) {
        throw DataError("malformed one-hot row " + std::to_string(i) + " in variable block " + std::to_string(j));
      }
      offset += level_sizes_[j];
    }
  }
}

std::size_t Dataset::block_offset(std::size_t j) const {
  return std::accumulate(level_sizes_.begin(), level_sizes_.begin() + static_cast<std::ptrdiff_t>(j), std::size_t{0});
}

std::size_t Dataset::level(std::size_t i, std::size_t j) const {
  const std::size_t offset = block_offset(j);
  for (std::size_t c = 0; c < level_sizes_[j]; ++c) {
    if (values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(offset + c)) == 1.0) return c;
  }
  throw DataError("row has no active level");
}

Dataset Dataset::select_rows(const std::vector<std::size_t>& idx) const {
  Dataset d;
  d.kind_ = kind_;
  d.level_sizes_ = level_sizes_;
  d.names_ = names_;
  d.values_.resize(static_cast<Eigen::Index>(idx.size()), values_.cols());
  for (std::size_t r = 0; r < idx.size(); ++r) d.values_.row(static_cast<Eigen::Index>(r)) = values_.row(static_cast<Eigen::Index>(idx[r]));
  if (covariates_) {
    Matrix c(static_cast<Eigen::Index>(idx.size()), covariates_->cols());
    for (std::size_t r = 0; r < idx.size(); ++r) c.row(static_cast<Eigen::Index>(r)) = covariates_->row(static_cast<Eigen::Index>(idx[r]));
    d.covariates_ = std::move(c);
  }
  if (d.values_.rows() < 1) throw DataError("row selection must be nonempty");
  return d;
}

Dataset Dataset::with_values(Matrix values) const {
  Dataset d = *this;
  d.values_ = std::move(values);
  if (d.covariates_ && d.covariates_->rows() != d.values_.rows()) throw DataError("with_values: row count mismatch");
  d.validate();
  return d;
}

Dataset Dataset::concat(const Dataset& other) const {
  if (other.kind_ != kind_ || other.cols() != cols() || other.level_sizes_ != level_sizes_ ||
      other.covariates_.has_value() != covariates_.has_value()) {
    throw DataError("concat: structures differ");
  }
  Dataset d = *this;
  d.values_.resize(values_.rows() + other.values_.rows(), values_.cols());
  d.values_ << values_, other.values_;
  if (covariates_) {
    Matrix c(covariates_->rows() + other.covariates_->rows(), covariates_->cols());
    c << *covariates_, *other.covariates_;
    d.covariates_ = std::move(c);
  }
  return d;
}

std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitFractions& fractions) {
  double total = 0.0;
  for (double f : fractions) {
    if (!(f > 0.0)) throw ParameterError("split fractions must be positive");
    total += f;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ParameterError("split fractions must sum to 1");
  if (n < 3) throw DataError("cannot form three nonempty parts");
  std::array<std::size_t, 3> sizes{};
  std::size_t used = 0;
  for (std::size_t p = 0; p < 3; ++p) {
    // Small epsilon so exact divisions such as 9 * (1/3) are not floored to 2.
    sizes[p] = static_cast<std::size_t>(std::floor(static_cast<double>(n) * fractions[p] + 1e-9));
    used += sizes[p];
  }
  sizes[0] += n - used;
  if (sizes[1] == 0 || sizes[2] == 0) throw DataError("cannot form three nonempty parts");
  return sizes;
}

DataSplit split_data(const Dataset& data, const SplitFractions& fractions, Seed seed) {
  const auto sizes = split_sizes(data.rows(), fractions);
  std::vector<std::size_t> perm(data.rows());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  VariateStream stream(seed.child("split"));
  // Fisher-Yates with our own stream so the permutation is platform-stable.
  for (std::size_t i = perm.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(stream.uniform() * static_cast<double>(i));
    std::swap(perm[i - 1], perm[std::min(j, i - 1)]);
  }
  std::array<std::vector<std::size_t>, 3> parts;
  std::size_t start = 0;
  for (std::size_t p = 0; p < 3; ++p) {
    parts[p].assign(perm.begin() + static_cast<std::ptrdiff_t>(start),
                    perm.begin() + static_cast<std::ptrdiff_t>(start + sizes[p]));
    start += sizes[p];
  }
  return DataSplit{data.select_rows(parts[0]), data.select_rows(parts[1]), data.select_rows(parts[2]),
                   std::move(parts)};
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

double parse_number(const std::string& s, std::size_t line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("csv line " + std::to_string(line) + ": cannot parse '" + s + "'");
  }
}

}  // namespace

Dataset read_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw DataError("csv is empty: " + path.string());
  const auto header = split_line(line);
  const std::size_t width = header.size();
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_line(line);
    if (cells.size() != width) throw DataError("csv line " + std::to_string(line_no) + ": wrong number of fields");
    std::vector<double> row(width);
    for (std::size_t c = 0; c < width; ++c) row[c] = parse_number(cells[c], line_no);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("csv has no data rows: " + path.string());

  if (options.kind == DataKind::categorical_onehot) {
    std::vector<std::size_t> levels = options.level_sizes;
    if (levels.empty()) {
      levels.assign(width, 0);
      for (const auto& r : rows)
        for (std::size_t c = 0; c < width; ++c) levels[c] = std::max(levels[c], static_cast<std::size_t>(std::max(r[c], 0.0)));
    }
    if (levels.size() != width) throw DataError("level_sizes does not match csv column count");
    std::vector<std::vector<std::size_t>> codes(rows.size(), std::vector<std::size_t>(width));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t c = 0; c < width; ++c) {
        const double v = rows[i][c];
        if (v < 1.0 || v != std::floor(v)) throw DataError("categorical codes must be integers >= 1");
        codes[i][c] = static_cast<std::size_t>(v) - 1;
      }
    }
    return Dataset::from_codes(codes, std::move(levels), header);
  }

  const auto n = static_cast<Eigen::Index>(rows.size());
  if (options.response_first) {
    if (width < 2) throw DataError("regression csv needs a response and at least one covariate");
    Matrix y(n, 1);
    Matrix x(n, static_cast<Eigen::Index>(width - 1));
    for (Eigen::Index i = 0; i < n; ++i) {
      y(i, 0) = rows[static_cast<std::size_t>(i)][0];
      for (std::size_t c = 1; c < width; ++c) x(i, static_cast<Eigen::Index>(c - 1)) = rows[static_cast<std::size_t>(i)][c];
    }
    return Dataset::continuous(std::move(y), std::move(x), header);
  }
  Matrix m(n, static_cast<Eigen::Index>(width));
  for (Eigen::Index i = 0; i < n; ++i)
    for (std::size_t c = 0; c < width; ++c) m(i, static_cast<Eigen::Index>(c)) = rows[static_cast<std::size_t>(i)][c];
  return Dataset::continuous(std::move(m), std::nullopt, header);
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out.precision(17);
  std::vector<std::string> names = data.column_names();
  if (names.empty()) {
    if (data.kind() == DataKind::categorical_onehot) {
      for (std::size_t j = 0; j < data.level_sizes().size(); ++j) names.push_back("v" + std::to_string(j + 1));
    } else {
      const std::size_t d = data.cols();
      for (std::size_t c = 0; c < d; ++c) names.push_back(data.covariates() && d == 1 ? "y" : "x" + std::to_string(c + 1));
      if (data.covariates())
        for (Eigen::Index c = 0; c < data.covariates()->cols(); ++c) names.push_back("z" + std::to_string(c + 1));
    }
  }
  for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
  out << '\n';
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    if (data.kind() == DataKind::categorical_onehot) {
      for (std::size_t j = 0; j < data.level_sizes().size(); ++j) out << (j ? "," : "") << data.level(i, j) + 1;
    } else {
      for (Eigen::Index c = 0; c < data.values().cols(); ++c) out << (c ? "," : "") << data.values()(ii, c);
      if (data.covariates())
        for (Eigen::Index c = 0; c < data.covariates()->cols(); ++c) out << ',' << (*data.covariates())(ii, c);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace ppn
