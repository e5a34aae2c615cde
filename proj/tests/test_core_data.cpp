#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <fstream>
#include <set>
#include <unistd.h>

#include "ppn/dataset.hpp"
#include "ppn/error.hpp"
#include "ppn/outcomes.hpp"

using namespace ppn;

namespace {

Dataset rows(std::size_t n, std::size_t d = 2) {
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = static_cast<double>(i * 10 + j);
  return Dataset::continuous(m);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ppn_core_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("split sizes divide exactly or give the remainder to x_in") {
  CHECK(split_sizes(9, kEqualThirds) == std::array<std::size_t, 3>{3, 3, 3});
  CHECK(split_sizes(10, kEqualThirds) == std::array<std::size_t, 3>{4, 3, 3});
  CHECK(split_sizes(1500, kEqualThirds) == std::array<std::size_t, 3>{500, 500, 500});
  CHECK(split_sizes(10, {0.5, 0.25, 0.25}) == std::array<std::size_t, 3>{6, 2, 2});
}

TEST_CASE("split rejects too few rows and bad fractions") {
  CHECK_THROWS_WITH_AS(split_data(rows(2), kEqualThirds, Seed(1)), "cannot form three nonempty parts", DataError);
  CHECK_THROWS_AS(split_sizes(10, {0.5, 0.5, 0.0}), ParameterError);
  CHECK_THROWS_AS(split_sizes(10, {0.5, 0.3, 0.3}), ParameterError);
  CHECK_THROWS_AS(split_sizes(3, {0.98, 0.01, 0.01}), DataError);
}

TEST_CASE("split is deterministic for a fixed seed") {
  const auto a = split_data(rows(37), kEqualThirds, Seed(5));
  const auto b = split_data(rows(37), kEqualThirds, Seed(5));
  CHECK(a.indices == b.indices);
  CHECK(a.x_in.values() == b.x_in.values());
  const auto c = split_data(rows(37), kEqualThirds, Seed(6));
  CHECK(a.indices != c.indices);
}

TEST_CASE("split is a partition for many seeds and sizes") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 3 + seed * 7;
    const auto s = split_data(rows(n), kEqualThirds, Seed(seed));
    std::set<std::size_t> all;
    std::size_t total = 0;
    for (const auto& part : s.indices) {
      total += part.size();
      all.insert(part.begin(), part.end());
    }
    CHECK(total == n);
    CHECK(all.size() == n);
    CHECK(*all.rbegin() == n - 1);
    CHECK(s.x_in.cols() == s.x_out.cols());
    CHECK(s.x_out.cols() == s.x_val.cols());
    // Each part holds exactly the rows its indices name.
    for (std::size_t r = 0; r < s.indices[1].size(); ++r)
      CHECK(s.x_out.values().row(static_cast<Eigen::Index>(r)) ==
            rows(n).values().row(static_cast<Eigen::Index>(s.indices[1][r])));
  }
}

TEST_CASE("part sizes do not depend on row order") {
  const Dataset d = rows(23);
  std::vector<std::size_t> rev(23);
  std::iota(rev.rbegin(), rev.rend(), std::size_t{0});
  const auto a = split_data(d, kEqualThirds, Seed(3));
  const auto b = split_data(d.select_rows(rev), kEqualThirds, Seed(3));
  for (std::size_t p = 0; p < 3; ++p) CHECK(a.indices[p].size() == b.indices[p].size());
}

TEST_CASE("split keeps covariates aligned with their responses") {
  Matrix y(12, 1);
  Matrix X(12, 2);
  for (int i = 0; i < 12; ++i) {
    y(i, 0) = i;
    X(i, 0) = 100 + i;
    X(i, 1) = 200 + i;
  }
  const auto s = split_data(Dataset::continuous(y, X), kEqualThirds, Seed(2));
  for (const Dataset* part : {&s.x_in, &s.x_out, &s.x_val}) {
    for (Eigen::Index i = 0; i < part->values().rows(); ++i) {
      CHECK((*part->covariates())(i, 0) == 100 + part->values()(i, 0));
      CHECK((*part->covariates())(i, 1) == 200 + part->values()(i, 0));
    }
  }
}

TEST_CASE("pass rule is two-sided at alpha / 2") {
  CHECK(pass_fail(0.42, 0.1));
  CHECK(pass_fail(0.45, 0.1));
  CHECK_FALSE(pass_fail(0.04, 0.1));
  CHECK_FALSE(pass_fail(0.96, 0.1));
  CHECK(pass_fail(0.05, 0.1));
  CHECK(pass_fail(0.95, 0.1));
  for (double a : {0.01, 0.1, 0.5, 0.99}) CHECK(pass_fail(0.5, a));
  CHECK_THROWS_AS(pass_fail(1.5, 0.1), DomainError);
  CHECK_THROWS_AS(pass_fail(0.5, 0.0), DomainError);
}

TEST_CASE("check outcome p-value is recomputable from its replicates") {
  const std::vector<double> reps{1.0, 2.0, 3.0, 4.0, 5.0};
  const auto c = make_check_outcome("m", reps, 3.0, 0.1);
  CHECK(c.p_value == doctest::Approx(0.4));
  CHECK(c.p_value == exceedance_fraction(c.diagnostic_replicates, c.diagnostic_observed));
  CHECK(c.pass);
  // Ties are not exceedances.
  CHECK(exceedance_fraction(std::vector<double>{2.0, 2.0}, 2.0) == 0.0);
}

TEST_CASE("verdict classification covers the four outcomes") {
  CHECK(classify_pair(true, true) == Verdict::equivalent);
  CHECK(classify_pair(true, false) == Verdict::a_dominates);
  CHECK(classify_pair(false, true) == Verdict::b_dominates);
  CHECK(classify_pair(false, false) == Verdict::complementary);
  for (auto v : {Verdict::equivalent, Verdict::a_dominates, Verdict::b_dominates, Verdict::complementary})
    CHECK(verdict_from_string(to_string(v)) == v);
}

TEST_CASE("dataset validation") {
  CHECK_THROWS_AS(Dataset::continuous(Matrix(0, 2)), DataError);
  Matrix bad(1, 1);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(Dataset::continuous(bad), DataError);
  Matrix onehot(1, 3);
  onehot << 1, 1, 0;
  CHECK_THROWS_AS(Dataset::categorical(onehot, {3}), DataError);
  onehot << 0, 0, 0;
  CHECK_THROWS_AS(Dataset::categorical(onehot, {3}), DataError);
  onehot << 0, 0.5, 0.5;
  CHECK_THROWS_AS(Dataset::categorical(onehot, {3}), DataError);
  onehot << 0, 1, 0;
  CHECK(Dataset::categorical(onehot, {3}).level(0, 0) == 1);
  CHECK_THROWS_AS(Dataset::from_codes({{3}}, {3}), DataError);
}

TEST_CASE("one-hot expansion from codes") {
  const auto d = Dataset::from_codes({{0, 2}, {3, 1}}, {4, 3});
  CHECK(d.cols() == 7);
  CHECK(d.level(0, 0) == 0);
  CHECK(d.level(0, 1) == 2);
  CHECK(d.level(1, 0) == 3);
  CHECK(d.level(1, 1) == 1);
  CHECK(d.values().row(1).sum() == 2.0);
}

TEST_CASE("continuous CSV round trip") {
  Matrix m(3, 2);
  m << 1.5, -2.25, 1e-300, 3.0, 0.1, 1.0 / 3.0;
  const auto path = temp_file("cont.csv");
  write_csv(Dataset::continuous(m, std::nullopt, {"a", "b"}), path);
  const auto back = read_csv(path);
  CHECK(back.values() == m);
  CHECK(back.column_names() == std::vector<std::string>{"a", "b"});
  std::filesystem::remove(path);
}

TEST_CASE("regression CSV round trip keeps the response first") {
  Matrix y(2, 1);
  y << 1, 2;
  Matrix X(2, 2);
  X << 3, 4, 5, 6;
  const auto path = temp_file("reg.csv");
  write_csv(Dataset::continuous(y, X), path);
  CsvOptions opt;
  opt.response_first = true;
  const auto back = read_csv(path, opt);
  CHECK(back.values() == y);
  CHECK(*back.covariates() == X);
  std::filesystem::remove(path);
}

TEST_CASE("categorical CSV uses 1-based codes") {
  const auto d = Dataset::from_codes({{0, 2, 1}, {3, 0, 0}}, {4, 3, 3});
  const auto path = temp_file("cat.csv");
  write_csv(d, path);
  CsvOptions opt;
  opt.kind = DataKind::categorical_onehot;
  opt.level_sizes = {4, 3, 3};
  const auto back = read_csv(path, opt);
  CHECK(back.values() == d.values());
  std::filesystem::remove(path);
}

TEST_CASE("CSV errors are reported") {
  CHECK_THROWS_AS(read_csv("/nonexistent/ppn.csv"), IoError);
  const auto path = temp_file("bad.csv");
  {
    std::ofstream out(path);
    out << "a,b\n1,x\n";
  }
  CHECK_THROWS_AS(read_csv(path), DataError);
  std::filesystem::remove(path);
}
