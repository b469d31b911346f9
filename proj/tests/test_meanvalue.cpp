#include <cmath>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "doctest.h"
#include "weylsums/meanvalue.hpp"

using namespace weylsums;

namespace {

// independent oracle: walk all N^{2s} tuples and test the power-sum system
u64 naive_vinogradov(int d, int s, i64 N) {
  std::vector<i64> t(static_cast<size_t>(2 * s), 1);
  u64 count = 0;
  for (;;) {
    bool ok = true;
    for (int j = 1; j <= d && ok; ++j) {
      i64 lhs = 0, rhs = 0;
      for (int i = 0; i < s; ++i) {
        i64 p = 1;
        for (int e = 0; e < j; ++e) p *= t[static_cast<size_t>(i)];
        lhs += p;
        p = 1;
        for (int e = 0; e < j; ++e) p *= t[static_cast<size_t>(s + i)];
        rhs += p;
      }
      ok = lhs == rhs;
    }
    if (ok) ++count;
    int pos = 2 * s - 1;
    while (pos >= 0 && t[static_cast<size_t>(pos)] == N) {
      t[static_cast<size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++t[static_cast<size_t>(pos)];
  }
  return count;
}

}  // namespace

TEST_CASE("s_of formula") {
  CHECK(s_of(2) == 3);
  CHECK(s_of(3) == 6);
  CHECK(s_of(10) == 55);
}

TEST_CASE("vinogradov small exact values") {
  CHECK(vinogradov_count(2, 3, 1).J == 1);
  CHECK(vinogradov_count(2, 3, 2).J == 20);   // sum_k C(3,k)^2
  CHECK(vinogradov_count(2, 3, 4).J == 256);  // frozen from exhaustive enumeration
  CHECK(vinogradov_count(2, 3, 8).J == 2744); // frozen from exhaustive enumeration
}

TEST_CASE("s = 1 forces the diagonal") {
  for (i64 N : {1, 5, 17, 100}) {
    CHECK(vinogradov_count(2, 1, N).J == static_cast<u64>(N));
    CHECK(vinogradov_count(3, 1, N).J == static_cast<u64>(N));
  }
}

TEST_CASE("meet-in-the-middle equals naive enumeration for N <= 6") {
  for (i64 N = 1; N <= 6; ++N) {
    CHECK(vinogradov_count(2, 3, N).J == naive_vinogradov(2, 3, N));
    CHECK(vinogradov_count(2, 2, N).J == naive_vinogradov(2, 2, N));
    CHECK(vinogradov_count(3, 2, N).J == naive_vinogradov(3, 2, N));
  }
}

TEST_CASE("count is invariant under swapping the two sides of the system") {
  // tuples (n_1..n_s, m_1..m_s) and (m_1..m_s, n_1..n_s) solve together;
  // J computed from half-tuple multiplicities must equal sum over keys of
  // (left multiplicity) * (right multiplicity) with the roles exchanged
  for (i64 N = 2; N <= 5; ++N) {
    std::map<std::pair<i64, i64>, u64> mult;
    for (i64 a = 1; a <= N; ++a)
      for (i64 b = 1; b <= N; ++b) mult[{a + b, a * a + b * b}]++;
    u64 lhs_first = 0, rhs_first = 0;
    for (const auto& [key, c] : mult) {
      lhs_first += c * c;
      rhs_first += mult.at(key) * c;
    }
    CHECK(vinogradov_count(2, 2, N).J == lhs_first);
    CHECK(lhs_first == rhs_first);
  }
}

TEST_CASE("diagonal lower bound J >= N^s") {
  for (i64 N : {2, 3, 5, 8}) {
    u64 Ns = static_cast<u64>(N) * static_cast<u64>(N) * static_cast<u64>(N);
    CHECK(vinogradov_count(2, 3, N).J >= Ns);
  }
}

TEST_CASE("vinogradov rejects oversized systems with an estimate") {
  try {
    vinogradov_count(2, 3, 100, 1e6);
    FAIL("expected cap_exceeded");
  } catch (const cap_exceeded& e) {
    CHECK(e.estimate() == doctest::Approx(1e12));
  }
}

TEST_CASE("mc_moment orthogonality: s = 1 mean is N") {
  for (i64 N : {10, 50}) {
    auto est = mc_moment(2, N, 1, std::nullopt, 40000, 1234);
    CHECK(std::abs(est.mean - static_cast<double>(N)) <= 4.0 * est.std_error);
    CHECK(est.std_error > 0);
  }
}

TEST_CASE("mc_moment matches the exact count at d=2, s=3, N=2") {
  auto est = mc_moment(2, 2, 3, std::nullopt, 60000, 99);
  CHECK(std::abs(est.mean - 20.0) <= 4.0 * est.std_error);
}

TEST_CASE("mc_moment is bitwise deterministic across thread counts") {
  McOptions one;
  one.threads = 1;
  McOptions four;
  four.threads = 4;
  auto a = mc_moment(2, 16, 3, std::nullopt, 30000, 777, one);
  auto b = mc_moment(2, 16, 3, std::nullopt, 30000, 777, four);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("mc_moment validates input") {
  CHECK_THROWS_AS(mc_moment(2, 10, 3, std::nullopt, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(mc_moment(2, 10, 0, std::nullopt, 100, 0), std::invalid_argument);
  CHECK_THROWS_AS(mc_moment(2, 10, 3, WeightSequence::ones(9), 100, 0), std::invalid_argument);
  // N^{2s} far beyond double range
  CHECK_THROWS_AS(mc_moment(2, 100000, 40, std::nullopt, 100, 0), std::domain_error);
}

TEST_CASE("weighted moment with random unimodular weights stays near N^s") {
  // weighted mean-value bound: moment <= C (log N)^c N^s; at N = 32 the ratio to N^3
  // should be a modest constant
  std::vector<cplx> w(32);
  for (size_t n = 0; n < 32; ++n) {
    double t = 2.0 * std::numbers::pi * static_cast<double>((7 * n * n + 3 * n) % 97) / 97.0;
    w[n] = cplx(std::cos(t), std::sin(t));
  }
  auto est = mc_moment(2, 32, 3, WeightSequence(w), 40000, 4321);
  double ratio = est.mean / std::pow(32.0, 3.0);
  CHECK(ratio > 0.1);
  CHECK(ratio < 50.0);
}

TEST_CASE("constant-functional sanity: N = 1 moment is exactly 1") {
  auto est = mc_moment(2, 1, 3, std::nullopt, 1000, 5);
  CHECK(est.mean == doctest::Approx(1.0).epsilon(1e-12));
  auto w = completed_moment(2, 1, 1000, 5, CompletionMode::Symmetrized);
  CHECK(w.mean == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("completed_moment determinism and desk-scale slope") {
  McOptions one;
  one.threads = 1;
  McOptions three;
  three.threads = 3;
  auto a = completed_moment(2, 16, 5000, 42, CompletionMode::Symmetrized, one);
  auto b = completed_moment(2, 16, 5000, 42, CompletionMode::Symmetrized, three);
  CHECK(a.mean == b.mean);

  // slope of log moment vs log N: s(2) = 3 plus the (2 log N)^{2s} weight-mass
  // factor, which adds ~6/ln N at these sizes; expect well above 3, below 5.5
  std::vector<std::pair<double, double>> pts;
  for (i64 N : {16, 32, 64, 128}) {
    auto est = completed_moment(2, N, 4000, 2024, CompletionMode::Symmetrized);
    pts.emplace_back(static_cast<double>(N), est.mean);
  }
  auto fit = moment_exponent_fit(pts);
  CHECK(fit.slope > 3.0);
  CHECK(fit.slope < 5.5);
  MESSAGE("completed_moment fitted slope: ", fit.slope);
}

TEST_CASE("moment_exponent_fit recovers exact power laws") {
  std::vector<std::pair<double, double>> cubic;
  for (double N : {2.0, 4.0, 8.0, 16.0}) cubic.emplace_back(N, N * N * N);
  auto fit = moment_exponent_fit(cubic);
  CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.residual < 1e-12);

  std::vector<std::pair<double, double>> scaled;
  for (double N : {2.0, 4.0, 8.0, 16.0}) scaled.emplace_back(N, 5.0 * N * N * N);
  fit = moment_exponent_fit(scaled);
  CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(5.0)).epsilon(1e-12));
}

TEST_CASE("moment_exponent_fit on exact counts decreases toward s(2) = 3") {
  std::vector<std::pair<double, double>> lo, hi;
  for (i64 N : {2, 4, 8, 16})
    lo.emplace_back(static_cast<double>(N), static_cast<double>(vinogradov_count(2, 3, N).J));
  for (i64 N : {4, 8, 16, 32})
    hi.emplace_back(static_cast<double>(N),
                    static_cast<double>(vinogradov_count(2, 3, N, 2e9).J));
  auto fit_lo = moment_exponent_fit(lo);
  auto fit_hi = moment_exponent_fit(hi);
  CHECK(fit_lo.slope >= 3.0);
  CHECK(fit_lo.slope <= 4.0);
  CHECK(fit_hi.slope < fit_lo.slope);
}

TEST_CASE("moment_exponent_fit rejects bad input") {
  CHECK_THROWS_AS(moment_exponent_fit({{2, 8}, {4, 64}}), std::invalid_argument);
  CHECK_THROWS_AS(moment_exponent_fit({{2, 8}, {4, 64}, {4, 100}}), std::invalid_argument);
  CHECK_THROWS_AS(moment_exponent_fit({{2, 8}, {4, -1}, {8, 100}}), std::invalid_argument);
}
