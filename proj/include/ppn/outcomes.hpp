#pragma once

#include <span>
#include <string>
#include <vector>

namespace ppn {

/// Two-sided pass rule: min(p, 1 - p) >= alpha / 2.
bool pass_fail(double p, double alpha);

/// Fraction of `replicates` strictly greater than `observed`.
double exceedance_fraction(std::span<const double> replicates, double observed);

struct CheckOutcome {
  std::string model;
  double p_value = 0.0;
  bool pass = false;
  std::vector<double> diagnostic_replicates;
  double diagnostic_observed = 0.0;

  friend bool operator==(const CheckOutcome&, const CheckOutcome&) = default;
};

/// Builds a CheckOutcome, deriving p_value and pass from the replicates.
CheckOutcome make_check_outcome(std::string model, std::vector<double> replicates, double observed, double alpha);

struct PpnOutcome {
  std::string diagnostic_owner;
  std::string data_source;
  double sym_kl = 0.0;
  bool fools = false;
  /// Owner's diagnostic on owner-generated replicates.
  std::vector<double> samples_a;
  /// Owner's diagnostic on source-generated replicates.
  std::vector<double> samples_b;
  /// Set when the PPN ran without both models having passed their checks.
  bool unchecked = false;

  friend bool operator==(const PpnOutcome&, const PpnOutcome&) = default;
};

enum class Verdict { equivalent, a_dominates, b_dominates, complementary };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// Classification of an unordered pair from its two directed PPNs.
/// `b_fools_a`: B's data passes A's check; `a_fools_b`: the converse.
Verdict classify_pair(bool a_fools_b, bool b_fools_a);

struct PairVerdict {
  std::string a;
  std::string b;
  Verdict verdict = Verdict::complementary;

  friend bool operator==(const PairVerdict&, const PairVerdict&) = default;
};

enum class StudyMode { full, chain };

struct StudyReport {
  std::vector<std::string> models;
  double alpha = 0.1;
  double tau = 1.0;
  StudyMode mode = StudyMode::full;
  std::vector<CheckOutcome> diagonal;
  std::vector<PpnOutcome> off_diagonal;
  std::vector<PairVerdict> verdicts;

  [[nodiscard]] const CheckOutcome* check(const std::string& model) const;
  [[nodiscard]] const PpnOutcome* ppn(const std::string& owner, const std::string& source) const;

  friend bool operator==(const StudyReport&, const StudyReport&) = default;
};

}  // namespace ppn
