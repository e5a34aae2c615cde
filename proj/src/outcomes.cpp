#include "ppn/outcomes.hpp"

#include <algorithm>

#include "ppn/error.hpp"

namespace ppn {

bool pass_fail(double p, double alpha) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("pass_fail: p must lie in [0, 1]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("pass_fail: alpha must lie in (0, 1)");
  return std::min(p, 1.0 - p) >= alpha / 2.0;
}

double exceedance_fraction(std::span<const double> replicates, double observed) {
  if (replicates.empty()) throw DataError("exceedance_fraction: no replicates");
  const auto above = std::count_if(replicates.begin(), replicates.end(), [&](double d) { return d > observed; });
  return static_cast<double>(above) / static_cast<double>(replicates.size());
}

CheckOutcome make_check_outcome(std::string model, std::vector<double> replicates, double observed, double alpha) {
  CheckOutcome out;
  out.model = std::move(model);
  out.p_value = exceedance_fraction(replicates, observed);
  out.pass = pass_fail(out.p_value, alpha);
  out.diagnostic_replicates = std::move(replicates);
  out.diagnostic_observed = observed;
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::equivalent:
      return "equivalent";
    case Verdict::a_dominates:
      return "A-dominates";
    case Verdict::b_dominates:
      return "B-dominates";
    case Verdict::complementary:
      return "complementary";
  }
  return "complementary";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "equivalent") return Verdict::equivalent;
  if (s == "A-dominates") return Verdict::a_dominates;
  if (s == "B-dominates") return Verdict::b_dominates;
  if (s == "complementary") return Verdict::complementary;
  throw DataError("unknown verdict '" + s + "'");
}

Verdict classify_pair(bool a_fools_b, bool b_fools_a) {
  if (a_fools_b && b_fools_a) return Verdict::equivalent;
  // A's replicates pass B's check but not the converse: A captures what B
  // does and more.
  if (a_fools_b) return Verdict::a_dominates;
  if (b_fools_a) return Verdict::b_dominates;
  return Verdict::complementary;
}

const CheckOutcome* StudyReport::check(const std::string& model) const {
  for (const auto& c : diagonal)
    if (c.model == model) return &c;
  return nullptr;
}

const PpnOutcome* StudyReport::ppn(const std::string& owner, const std::string& source) const {
  for (const auto& p : off_diagonal)
    if (p.diagnostic_owner == owner && p.data_source == source) return &p;
  return nullptr;
}

}  // namespace ppn
