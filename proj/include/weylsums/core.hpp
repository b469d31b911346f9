#pragma once

#include <array>
#include <functional>
#include <span>

#include "weylsums/common.hpp"

namespace weylsums {

// Exact fractional part of f(n) = x_1 n + ... + x_d n^d, in [0, 1).
// Computed in 127-bit fixed point with wrapping arithmetic, so no precision is
// lost to the size of n^j (n^j itself is only ever needed mod 2^127).
double phase_fraction(const PhasePoint& x, i64 n);

// e(f(n)) = exp(2 pi i f(n)); n >= 1
cplx eval_phase(const PhasePoint& x, i64 n);

// Incremental evaluator for e(f(n)) along n = 1, 2, 3, ...
//
// Maintains the forward differences D^k f(n) mod 1, k = 0..d, as exact
// 127-bit fixed-point fractions (D^d f is constant for a degree-d phase), so
// one step is d wrapping 128-bit additions with zero drift at any N. The unit
// complex value is synthesized from the top fraction bits via small
// precomputed twiddle tables plus a first-order residual correction; no
// per-term trigonometry anywhere.
class PhaseRecurrence {
 public:
  explicit PhaseRecurrence(const PhasePoint& x);
  PhaseRecurrence(std::span<const double> coords);  // coords reduced into [0,1)

  cplx current() const { return value_; }  // e(f(n))
  void advance();                          // n -> n+1

 private:
  void init(std::span<const u128> fixed);

  std::array<u128, kMaxDegree + 1> diffs_{};
  cplx value_{1.0, 0.0};
  int d_ = 0;
};

// vector (e(f(1)), ..., e(f(N))) via the recurrence
std::vector<cplx> phase_sequence(const PhasePoint& x, i64 N);

// S_d(x; N) summed term by term through eval_phase (the slow, oracle path)
cplx weyl_sum_direct(const PhasePoint& x, i64 N);

// S_d(x; N) through the recurrence: O(dN) complex multiplications
cplx weyl_sum_fast(const PhasePoint& x, i64 N);

// sum_{n<=N} a_n e(f(n)); weight length must equal N
cplx weyl_sum_weighted(const WeightSequence& a, const PhasePoint& x, i64 N);

// ---- bulk grid evaluation ------------------------------------------------

enum class SweepFunctional { AbsWeylSum, CompletedLiteral, CompletedSymmetrized };

struct GridSweepOptions {
  u64 cap = kDefaultGridCap;
  int threads = 0;  // 0 = hardware
};

// checked product of per-dimension resolutions
u64 grid_size(const std::vector<i64>& resolution, u64 cap);

// Evaluates the chosen functional at every lattice point
// (m_1/res_1, ..., m_d/res_d), m_j = 0..res_j-1, streaming results to the
// sink in row-major index order regardless of thread count.
void grid_sweep(int d, i64 N, const std::vector<i64>& resolution, SweepFunctional f,
                const std::function<void(u64 index, double value)>& sink,
                const GridSweepOptions& opt = {});

// convenience form collecting the stream (grids small enough to materialize)
std::vector<double> grid_sweep_values(int d, i64 N, const std::vector<i64>& resolution,
                                      SweepFunctional f, const GridSweepOptions& opt = {});

// lattice point for a flat row-major index (shared by sweep and covering)
void unflatten_index(u64 index, const std::vector<i64>& resolution, std::span<i64> out);

}  // namespace weylsums
