#pragma once

#include <optional>
#include <utility>

#include "weylsums/common.hpp"
#include "weylsums/completion.hpp"

namespace weylsums {

// s(d) = d(d+1)/2, the critical moment half-order
constexpr i64 s_of(i64 d) { return d * (d + 1) / 2; }

struct MomentEstimate {
  double mean = 0;
  double std_error = 0;
  i64 samples = 0;
  int s = 0;
  i64 N = 0;
  int d = 0;
};

struct VinogradovCount {
  u64 J = 0;
  int s = 0;
  int d = 0;
  i64 N = 0;
};

struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // RMS residual of log(moment) about the fitted line
};

struct McOptions {
  int threads = 0;
};

// Monte Carlo estimate of the 2s-th moment of |sum a_n e(f(n))| over the
// torus. Coordinates are drawn by a counter-based generator keyed on
// (seed, sample index), and partial sums are combined in fixed blocks, so the
// estimate is bitwise deterministic for any thread count.
MomentEstimate mc_moment(int d, i64 N, int s, const std::optional<WeightSequence>& weights,
                         i64 samples, u64 seed, const McOptions& opt = {});

// same sampler for the completed-sum moment integral of W_d^{2s(d)}
MomentEstimate completed_moment(int d, i64 N, i64 samples, u64 seed, CompletionMode mode,
                                const McOptions& opt = {});

// Exact number of 2s-tuples in [1,N]^{2s} with matching power sums up to
// degree d, by meet-in-the-middle: enumerate the N^s half-tuples, key each by
// its exact integer power-sum vector, and sum squared multiplicities.
// tuple_cap bounds the naive system size N^{2s}.
VinogradovCount vinogradov_count(int d, int s, i64 N, double tuple_cap = kDefaultTupleCap);

// least-squares slope of log(moment) against log(N)
ExponentFit moment_exponent_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace weylsums
