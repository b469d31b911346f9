#pragma once

#include <memory>
#include <span>

#include "weylsums/common.hpp"
#include "weylsums/fft.hpp"

namespace weylsums {

// Weighting of the completed sum W_d(x; N) = sum_h weight(h) |T_h(x; N)|,
// T_h the h-twisted inner sum. Literal weighs 1/h; symmetrized weighs
// 1/min(h, N+1-h), which is the form that actually dominates S_d(x; M) for
// every M <= N (the literal weight degenerates at x = 0, where W = 1 while
// S_d(0; M) = M; domination_check exhibits this).
enum class CompletionMode { Literal, Symmetrized };

double completion_weight(CompletionMode mode, i64 h, i64 N);
double completion_weight_mass(CompletionMode mode, i64 N);  // sum_h weight(h)

struct CompletionReport {
  double value = 0;
  CompletionMode mode = CompletionMode::Symmetrized;
  std::vector<double> spectrum_norms;  // |T_h|, h = 1..N
};

// |T_h| for h = 1..N, computed as DFT magnitudes of the phase sequence
// (frequency h = N aliases to bin 0, i.e. T_N = S_d(x; N)).
std::vector<double> inner_spectrum(const PhasePoint& x, i64 N);

CompletionReport completed_sum(const PhasePoint& x, i64 N, CompletionMode mode);
double completed_value(const PhasePoint& x, i64 N, CompletionMode mode);

struct DominationResult {
  double ratio = 0;  // max over M <= N of |S_d(x; M)| / W_d(x; N)
  i64 argmax_M = 0;
  double w_value = 0;
};

DominationResult domination_check(const PhasePoint& x, i64 N, CompletionMode mode);

// Reusable plan + buffers for evaluating W at many points with the same (d, N).
// One instance per thread; value() does no allocation.
class CompletionEvaluator {
 public:
  CompletionEvaluator(int d, i64 N);

  double value(std::span<const double> coords, CompletionMode mode);
  double value(const PhasePoint& x, CompletionMode mode);

  // fills |T_h|, h = 1..N
  void spectrum(std::span<const double> coords, std::span<double> out);

  i64 N() const { return N_; }
  int d() const { return d_; }

 private:
  void load_sequence(std::span<const double> coords);

  int d_;
  i64 N_;
  Fft fft_;
  std::vector<cplx> buf_;
  std::vector<double> weight_literal_, weight_symmetrized_;
};

}  // namespace weylsums
