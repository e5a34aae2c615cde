#include "ppn/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ppn/error.hpp"

namespace ppn {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

// FNV-1a over the label bytes.
std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  state += kGolden;
  return mix64(state);
}

Seed Seed::child(std::string_view label) const {
  return Seed(mix64(key_ ^ mix64(hash_label(label) + 0x5851F42D4C957F2DULL)));
}

Seed Seed::child(std::uint64_t index) const {
  return Seed(mix64(key_ + kGolden * (index + 1) + 0x2545F4914F6CDD1DULL));
}

VariateStream::VariateStream(Seed seed) {
  std::uint64_t sm = seed.key();
  for (auto& s : s_) s = splitmix64(sm);
}

VariateStream::result_type VariateStream::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double VariateStream::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double VariateStream::uniform_open() {
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double VariateStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Marsaglia polar method.
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

double VariateStream::normal(double mean, double variance) { return mean + std::sqrt(variance) * normal(); }

double VariateStream::gamma(double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) throw ParameterError("gamma: shape must be positive");
  if (shape < 1.0) {
    // Boost to shape+1 and correct with U^(1/shape).
    const double g = gamma(shape + 1.0);
    return g * std::pow(uniform_open(), 1.0 / shape);
  }
  // Marsaglia & Tsang (2000).
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double VariateStream::inverse_gamma(double shape, double scale) {
  if (!(shape > 0.0)) throw ParameterError("inverse_gamma: shape must be positive");
  if (!(scale > 0.0)) throw ParameterError("inverse_gamma: scale must be positive");
  return scale / gamma(shape);
}

std::vector<double> VariateStream::dirichlet(std::span<const double> alpha) {
  if (alpha.empty()) throw ParameterError("dirichlet: alpha must be nonempty");
  std::vector<double> out(alpha.size());
  double total = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (!(alpha[i] > 0.0)) throw ParameterError("dirichlet: alpha[" + std::to_string(i) + "] must be positive");
    out[i] = gamma(alpha[i]);
    total += out[i];
  }
  if (!(total > 0.0)) {
    // All gamma draws underflowed (only possible for tiny alpha): pick one vertex.
    std::fill(out.begin(), out.end(), 0.0);
    out[static_cast<std::size_t>(uniform() * static_cast<double>(out.size()))] = 1.0;
    return out;
  }
  for (auto& v : out) v /= total;
  return out;
}

std::size_t VariateStream::categorical(std::span<const double> probs) {
  const double u = uniform();
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] > 0.0) last_positive = k;
    acc += probs[k];
    if (u < acc) return k;
  }
  return last_positive;  // rounding slack when the sum is just below 1
}

std::size_t VariateStream::categorical_log(std::span<const double> log_weights) {
  const double mx = *std::max_element(log_weights.begin(), log_weights.end());
  double total = 0.0;
  for (double lw : log_weights) total += std::exp(lw - mx);
  const double u = uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < log_weights.size(); ++k) {
    const double w = std::exp(log_weights[k] - mx);
    if (w > 0.0) last_positive = k;
    acc += w;
    if (u < acc) return k;
  }
  return last_positive;
}

void validate_probabilities(std::span<const double> probs, std::string_view field) {
  if (probs.empty()) throw ParameterError(std::string(field) + ": probability vector is empty");
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0) || !std::isfinite(probs[i])) {
      throw ParameterError(std::string(field) + "[" + std::to_string(i) + "] must be a nonnegative probability");
    }
    sum += probs[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ParameterError(std::string(field) + " must sum to 1");
}

DistributionSpec DistributionSpec::Normal(double mean, double variance) {
  return {Kind::normal, {mean, variance}, {}};
}
DistributionSpec DistributionSpec::DiagNormal(std::vector<double> means, std::vector<double> variances) {
  return {Kind::diag_normal, std::move(means), std::move(variances)};
}
DistributionSpec DistributionSpec::InverseGamma(double shape, double scale) {
  return {Kind::inverse_gamma, {shape, scale}, {}};
}
DistributionSpec DistributionSpec::Dirichlet(std::vector<double> alpha) {
  return {Kind::dirichlet, std::move(alpha), {}};
}
DistributionSpec DistributionSpec::Categorical(std::vector<double> probs) {
  return {Kind::categorical, std::move(probs), {}};
}
DistributionSpec DistributionSpec::Multinomial(std::vector<double> probs) {
  return {Kind::multinomial, std::move(probs), {}};
}

std::size_t DistributionSpec::width() const {
  switch (kind) {
    case Kind::normal:
    case Kind::inverse_gamma:
    case Kind::categorical:
      return 1;
    case Kind::diag_normal:
    case Kind::dirichlet:
    case Kind::multinomial:
      return params.size();
  }
  return 1;
}

std::vector<double> sample(const DistributionSpec& dist, std::size_t count, VariateStream& stream) {
  using Kind = DistributionSpec::Kind;
  switch (dist.kind) {
    case Kind::normal:
      if (dist.params.size() != 2) throw ParameterError("normal: expected {mean, variance}");
      if (!std::isfinite(dist.params[0])) throw ParameterError("normal: mean must be finite");
      if (!(dist.params[1] > 0.0)) throw ParameterError("normal: variance must be positive");
      break;
    case Kind::diag_normal:
      if (dist.params.empty() || dist.params.size() != dist.variances.size()) {
        throw ParameterError("diag_normal: means and variances must have equal nonzero length");
      }
      for (std::size_t i = 0; i < dist.variances.size(); ++i) {
        if (!(dist.variances[i] > 0.0)) {
          throw ParameterError("diag_normal: variances[" + std::to_string(i) + "] must be positive");
        }
      }
      break;
    case Kind::inverse_gamma:
      if (dist.params.size() != 2) throw ParameterError("inverse_gamma: expected {shape, scale}");
      if (!(dist.params[0] > 0.0)) throw ParameterError("inverse_gamma: shape must be positive");
      if (!(dist.params[1] > 0.0)) throw ParameterError("inverse_gamma: scale must be positive");
      break;
    case Kind::dirichlet:
      if (dist.params.empty()) throw ParameterError("dirichlet: alpha must be nonempty");
      for (std::size_t i = 0; i < dist.params.size(); ++i) {
        if (!(dist.params[i] > 0.0)) {
          throw ParameterError("dirichlet: alpha[" + std::to_string(i) + "] must be positive");
        }
      }
      break;
    case Kind::categorical:
      validate_probabilities(dist.params, "categorical: probs");
      break;
    case Kind::multinomial:
      validate_probabilities(dist.params, "multinomial: probs");
      break;
  }

  const std::size_t w = dist.width();
  std::vector<double> out;
  out.reserve(count * w);
  for (std::size_t c = 0; c < count; ++c) {
    switch (dist.kind) {
      case Kind::normal:
        out.push_back(stream.normal(dist.params[0], dist.params[1]));
        break;
      case Kind::diag_normal:
        for (std::size_t i = 0; i < w; ++i) out.push_back(stream.normal(dist.params[i], dist.variances[i]));
        break;
      case Kind::inverse_gamma:
        out.push_back(stream.inverse_gamma(dist.params[0], dist.params[1]));
        break;
      case Kind::dirichlet: {
        const auto d = stream.dirichlet(dist.params);
        out.insert(out.end(), d.begin(), d.end());
        break;
      }
      case Kind::categorical:
        out.push_back(static_cast<double>(stream.categorical(dist.params)));
        break;
      case Kind::multinomial: {
        const std::size_t k = stream.categorical(dist.params);
        for (std::size_t i = 0; i < w; ++i) out.push_back(i == k ? 1.0 : 0.0);
        break;
      }
    }
  }
  return out;
}

}  // namespace ppn
