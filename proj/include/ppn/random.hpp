#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ppn {

/// Root seed. Sub-streams are derived by folding labels into the key, so a
/// given (root, labels...) always yields the same variate sequence.
class Seed {
 public:
  constexpr explicit Seed(std::uint64_t root = 0) : key_(root) {}

  [[nodiscard]] Seed child(std::string_view label) const;
  [[nodiscard]] Seed child(std::uint64_t index) const;

  template <typename First, typename... Rest>
    requires(sizeof...(Rest) > 0)
  [[nodiscard]] Seed child(First first, Rest... rest) const {
    return child(first).child(rest...);
  }

  [[nodiscard]] constexpr std::uint64_t key() const { return key_; }

  friend constexpr bool operator==(Seed, Seed) = default;

 private:
  std::uint64_t key_;
};

/// SplitMix64 step; used for key derivation and for seeding streams.
std::uint64_t splitmix64(std::uint64_t& state);

/// xoshiro256** generator seeded from a Seed key. Single-owner: never share
/// one stream between threads, derive a child Seed instead.
class VariateStream {
 public:
  using result_type = std::uint64_t;

  explicit VariateStream(Seed seed);

  result_type operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double normal();
  double normal(double mean, double variance);
  /// Gamma(shape, rate=1).
  double gamma(double shape);
  /// Inverse-Gamma(shape, scale): reciprocal of Gamma(shape, rate=scale).
  double inverse_gamma(double shape, double scale);
  std::vector<double> dirichlet(std::span<const double> alpha);
  /// Categorical draw from a probability vector (must sum to 1).
  std::size_t categorical(std::span<const double> probs);
  /// Categorical draw from unnormalized log weights.
  std::size_t categorical_log(std::span<const double> log_weights);

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Declarative distribution description for bulk sampling.
struct DistributionSpec {
  enum class Kind { normal, diag_normal, inverse_gamma, dirichlet, categorical, multinomial };
  Kind kind = Kind::normal;
  /// normal: {mean, variance}; inverse_gamma: {shape, scale};
  /// diag_normal: means; dirichlet: concentrations; categorical/multinomial: probabilities.
  std::vector<double> params;
  /// diag_normal only: per-coordinate variances.
  std::vector<double> variances;

  static DistributionSpec Normal(double mean, double variance);
  static DistributionSpec DiagNormal(std::vector<double> means, std::vector<double> variances);
  static DistributionSpec InverseGamma(double shape, double scale);
  static DistributionSpec Dirichlet(std::vector<double> alpha);
  static DistributionSpec Categorical(std::vector<double> probs);
  static DistributionSpec Multinomial(std::vector<double> probs);

  /// Width of one variate: 1 for scalar kinds, vector length otherwise
  /// (multinomial with one trial is returned one-hot).
  [[nodiscard]] std::size_t width() const;
};

/// Draws `count` i.i.d. variates, flattened row-major (count x width()).
/// Categorical draws are returned as category indices.
std::vector<double> sample(const DistributionSpec& dist, std::size_t count, VariateStream& stream);

/// Throws ParameterError when `probs` is not a probability vector.
void validate_probabilities(std::span<const double> probs, std::string_view field);

}  // namespace ppn
