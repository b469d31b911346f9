#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "weylsums/completion.hpp"
#include "weylsums/core.hpp"
#include "weylsums/fft.hpp"
#include "weylsums/rng.hpp"

using namespace weylsums;

namespace {

PhasePoint random_point(int d, u64 seed, u64 tag) {
  std::vector<double> c(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) c[static_cast<size_t>(j)] = counter_uniform(seed, tag * 64 + static_cast<u64>(j));
  return PhasePoint(std::move(c));
}

// double-loop oracle: T_h = sum_n e(hn/N) e(f(n)) with exact integer phase
// reduction for the twist
std::vector<double> spectrum_oracle(const PhasePoint& x, i64 N) {
  std::vector<double> out(static_cast<size_t>(N));
  std::vector<cplx> g(static_cast<size_t>(N));
  for (i64 n = 1; n <= N; ++n) g[static_cast<size_t>(n - 1)] = eval_phase(x, n);
  for (i64 h = 1; h <= N; ++h) {
    cplx acc = 0;
    for (i64 n = 1; n <= N; ++n) {
      double t = 2.0 * std::numbers::pi * static_cast<double>((h * n) % N) / static_cast<double>(N);
      acc += cplx(std::cos(t), std::sin(t)) * g[static_cast<size_t>(n - 1)];
    }
    out[static_cast<size_t>(h - 1)] = std::abs(acc);
  }
  return out;
}

double completed_oracle(const PhasePoint& x, i64 N, CompletionMode mode) {
  auto spec = spectrum_oracle(x, N);
  double acc = 0;
  for (i64 h = 1; h <= N; ++h) acc += completion_weight(mode, h, N) * spec[static_cast<size_t>(h - 1)];
  return acc;
}

}  // namespace

TEST_CASE("fft matches a direct transform on assorted lengths") {
  for (std::size_t n : {1u, 2u, 8u, 12u, 31u, 64u, 100u, 257u, 2048u, 2310u}) {
    std::vector<cplx> data(n);
    for (std::size_t i = 0; i < n; ++i)
      data[i] = cplx(counter_uniform(5, i) - 0.5, counter_uniform(6, i) - 0.5);
    std::vector<cplx> want(n, cplx(0, 0));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t m = 0; m < n; ++m) {
        double t = -2.0 * std::numbers::pi * static_cast<double>((k * m) % n) / static_cast<double>(n);
        want[k] += data[m] * cplx(std::cos(t), std::sin(t));
      }
    Fft plan(n);
    plan.forward(data);
    for (std::size_t k = 0; k < n; ++k)
      CHECK(std::abs(data[k] - want[k]) < 1e-8 * static_cast<double>(n));
  }
}

TEST_CASE("inner_spectrum at x = 0 is a single spike at h = N") {
  auto spec = inner_spectrum(PhasePoint::zero(2), 16);
  REQUIRE(spec.size() == 16);
  CHECK(spec[15] == doctest::Approx(16.0).epsilon(1e-12));
  for (size_t h = 0; h + 1 < spec.size(); ++h) CHECK(spec[h] < 1e-9);
}

TEST_CASE("inner_spectrum matches the double-loop oracle") {
  PhasePoint x({0.3, 0.17});
  auto got = inner_spectrum(x, 128);
  auto want = spectrum_oracle(x, 128);
  for (size_t h = 0; h < got.size(); ++h) CHECK(got[h] == doctest::Approx(want[h]).epsilon(1e-8));
  for (double v : got) CHECK(v <= 128.0 + 1e-9);
}

TEST_CASE("spectral Parseval identity") {
  for (i64 N : {7, 64, 129, 4096}) {
    PhasePoint x = random_point(3, 17, static_cast<u64>(N));
    auto spec = inner_spectrum(x, N);
    double sum = 0;
    for (double v : spec) sum += v * v;
    double expect = static_cast<double>(N) * static_cast<double>(N);
    CHECK(sum == doctest::Approx(expect).epsilon(1e-6));
  }
}

TEST_CASE("completed_sum at x = 0: literal 1, symmetrized N") {
  auto lit = completed_sum(PhasePoint::zero(2), 16, CompletionMode::Literal);
  CHECK(lit.value == doctest::Approx(1.0).epsilon(1e-10));
  auto sym = completed_sum(PhasePoint::zero(2), 16, CompletionMode::Symmetrized);
  CHECK(sym.value == doctest::Approx(16.0).epsilon(1e-10));
}

TEST_CASE("completed_sum matches the double-loop oracle at N = 256") {
  PhasePoint x({0.3, 0.17});
  auto rep = completed_sum(x, 256, CompletionMode::Literal);
  CHECK(rep.value == doctest::Approx(completed_oracle(x, 256, CompletionMode::Literal)).epsilon(1e-8));
}

TEST_CASE("spectral path equals oracle across d and random points") {
  for (int d = 2; d <= 4; ++d) {
    for (u64 tag = 0; tag < 12; ++tag) {
      PhasePoint x = random_point(d, 100 + static_cast<u64>(d), tag);
      i64 N = 2 + static_cast<i64>(counter_hash(7, tag) % 200);
      double got = completed_value(x, N, CompletionMode::Symmetrized);
      double want = completed_oracle(x, N, CompletionMode::Symmetrized);
      CHECK(got == doctest::Approx(want).epsilon(1e-8));
    }
  }
}

TEST_CASE("report value recombines from the spectrum with the mode weights") {
  PhasePoint x = random_point(2, 303, 1);
  for (auto mode : {CompletionMode::Literal, CompletionMode::Symmetrized}) {
    auto rep = completed_sum(x, 100, mode);
    double acc = 0;
    for (i64 h = 1; h <= 100; ++h)
      acc += completion_weight(mode, h, 100) * rep.spectrum_norms[static_cast<size_t>(h - 1)];
    CHECK(rep.value == doctest::Approx(acc).epsilon(1e-10));
    for (double v : rep.spectrum_norms) CHECK(v <= 100.0 + 1e-9);
  }
}

TEST_CASE("symmetrized dominates literal pointwise") {
  for (u64 tag = 0; tag < 10; ++tag) {
    PhasePoint x = random_point(2, 404, tag);
    i64 N = 2 + static_cast<i64>(counter_hash(9, tag) % 300);
    double lit = completed_value(x, N, CompletionMode::Literal);
    double sym = completed_value(x, N, CompletionMode::Symmetrized);
    CHECK(sym >= lit - 1e-12);
  }
}

TEST_CASE("weight mass obeys the log bounds up to N = 1e6") {
  for (i64 N : {2, 16, 1024, 65536, 1000000}) {
    double lit = completion_weight_mass(CompletionMode::Literal, N);
    double sym = completion_weight_mass(CompletionMode::Symmetrized, N);
    double logN = std::log(static_cast<double>(N));
    CHECK(lit <= 1.0 + logN);
    CHECK(sym <= 2.0 * (1.0 + logN));
    CHECK(sym >= lit);
  }
}

TEST_CASE("domination_check at x = 0 exhibits the literal anomaly") {
  auto sym = domination_check(PhasePoint::zero(2), 32, CompletionMode::Symmetrized);
  CHECK(sym.ratio == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sym.argmax_M == 32);

  auto lit = domination_check(PhasePoint::zero(2), 32, CompletionMode::Literal);
  CHECK(lit.ratio == doctest::Approx(32.0).epsilon(1e-9));
  CHECK(lit.argmax_M == 32);
}

TEST_CASE("symmetrized domination ratio stays bounded on random points") {
  double worst = 0;
  for (u64 tag = 0; tag < 200; ++tag) {
    PhasePoint x = random_point(2, 505, tag);
    auto res = domination_check(x, 512, CompletionMode::Symmetrized);
    worst = std::max(worst, res.ratio);
  }
  // the symmetrized completion dominates partial sums up to a constant; log N here is ~6.2
  CHECK(worst < 10.0);
}
