#pragma once

#include "weylsums/common.hpp"
#include "weylsums/completion.hpp"

namespace weylsums {

// Grid of boxes dividing the torus, side lengths zeta_j = 1/ceil(N^{j+1+eps-alpha})
struct BoxSpec {
  int d = 0;
  i64 N = 0;
  double alpha = 0;
  double eps = 0;
  std::vector<i64> reciprocals;  // 1/zeta_j, exact integers

  std::vector<double> zetas() const;
  u128 total_boxes() const;  // U = prod reciprocals, exact
};

enum class BoxCriterion { CenterGeAlpha, CenterGeHalfAlpha };

struct BoxGrid {
  BoxSpec spec;
  u128 U = 0;
  u64 counted_lower = 0;  // centers with W >= N^alpha   (undercounts the box family)
  u64 counted_upper = 0;  // centers with W >= N^alpha/2 (overcounts: a superlevel point anywhere in a box drags its whole box above half-threshold)
  BoxCriterion criterion = BoxCriterion::CenterGeHalfAlpha;
  CompletionMode mode = CompletionMode::Literal;

  u64 counted() const {
    return criterion == BoxCriterion::CenterGeAlpha ? counted_lower : counted_upper;
  }
};

struct CoverOptions {
  u64 cap = kDefaultGridCap;
  int threads = 0;
};

BoxSpec box_side_lengths(int d, i64 N, double alpha, double eps);

// N_i = 2^i for i = i_min..i_max
std::vector<i64> dyadic_schedule(int i_min, int i_max);

// Streams over all box centers, evaluating W there; never materializes the grid.
BoxGrid count_superlevel_boxes(int d, i64 N, double alpha, double eps, CompletionMode mode,
                               BoxCriterion criterion, const CoverOptions& opt = {});

struct BoxBound {
  double count_bound = 0;   // U * N^{s(d)(1-2 alpha)}
  double exponent = 0;      // 2 s(d)(1-alpha) + d(1-alpha) + d eps
  bool up_to_No1 = true;    // both hold only up to a factor N^{o(1)}
  u128 U = 0;
};

BoxBound theoretical_box_bound(int d, i64 N, double alpha, double eps);

struct StabilityReport {
  std::vector<double> base;  // coordinates of x
  i64 N = 0;
  double alpha = 0;
  double eps = 0;
  i64 probes = 0;       // points evaluated (random draws + 2^d corners)
  i64 violations = 0;   // probes y with |W(y)| < N^alpha / 2
  bool vacuous = false; // base failed |W(x)| >= N^alpha
  double w_base = 0;
  CompletionMode mode = CompletionMode::Symmetrized;
};

// Probes the stability rectangle R(x, zeta), zeta_j = N^{alpha-j-1-eps}, with
// `probes` uniform draws plus the 2^d corners, counting threshold violations.
StabilityReport stability_check(const PhasePoint& x, i64 N, double alpha, double eps, i64 probes,
                                u64 seed, CompletionMode mode, int threads = 0);

}  // namespace weylsums
