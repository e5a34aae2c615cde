#include "ppn/diagnostics.hpp"

namespace ppn {

std::string to_string(Reduction r) { return r == Reduction::map ? "map" : "average"; }

Reduction reduction_from_string(const std::string& s) {
  if (s == "average") return Reduction::average;
  if (s == "map") return Reduction::map;
  throw ParameterError("reduction must be 'average' or 'map', got '" + s + "'");
}

std::vector<std::size_t> thinned_indices(std::size_t available, std::size_t used) {
  std::vector<std::size_t> idx(used);
  for (std::size_t b = 0; b < used; ++b) idx[b] = (b * available) / used;
  return idx;
}

double chi2_overall_diagnostic(const Matrix& x, const Matrix& predictive_mean, const Matrix& predictive_var) {
  if (x.rows() != predictive_mean.rows() || x.cols() != predictive_mean.cols() ||
      x.rows() != predictive_var.rows() || x.cols() != predictive_var.cols()) {
    throw DimensionError("chi2_overall_diagnostic: shapes differ");
  }
  if (!(predictive_var.array() > 0.0).all()) throw DomainError("chi2_overall_diagnostic: variances must be positive");
  return ((x - predictive_mean).array().square() / predictive_var.array()).sum();
}

}  // namespace ppn
