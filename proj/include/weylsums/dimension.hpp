#pragma once

#include "weylsums/common.hpp"

namespace weylsums {

// rectangle side lengths sorted nonincreasing, r_1 >= ... >= r_d > 0
struct RectangleSides {
  std::vector<double> r;
  explicit RectangleSides(std::vector<double> sides);
  int dim() const { return static_cast<int>(r.size()); }
};

// singular value function phi_{k,t}(R) = r_1 ... r_k r_{k+1}^{t-k}
// (phi_{0,t} = r_1^t); 0 <= k <= d-1, 0 < t <= d
double singular_value_phi(const RectangleSides& r, int k, double t);

// number of radius-r_{k+1} balls covering R: prod_{j<=k} r_j / r_{k+1};
// satisfies ball_cover_count * r_{k+1}^t = singular_value_phi
double ball_cover_count(const RectangleSides& r, int k);

// N-exponent of the covering sum over the i-th box family:
// 2s(d)(1-a) + d(1-a) + d e + (t-k)(a-k-2-e) + k(a-1-e) - s(k)
double covering_sum_exponent(int d, double alpha, double eps, int k, double t);

// threshold t_k = (2s(d)(1-a) + d(1-a) + s(k)) / (k+2-a): the eps -> 0
// covering-sum exponent is negative exactly above it
double critical_t(int d, double alpha, int k);

struct DimBoundReport {
  int d = 0;
  double alpha = 0;
  std::vector<double> per_k;  // critical exponent for k = 0..d-1
  double u = 0;               // min over k
  int argmin_k = 0;
  double bound_k0 = 0;        // the k = 0 closed form
  double bound_kd1 = 0;       // the k = d-1 closed form
};

// u(d, alpha) = min_k ((2d^2+4d)(1-alpha) + k(k+1)) / (4 - 2 alpha + 2k),
// the dimension upper bound for the large-value set at level alpha
DimBoundReport dim_upper_bound(int d, double alpha);

enum class SimplifiedBound { K0, KD1 };

// K0:  (2d^2+4d)(1-alpha) / (4-2alpha)
// KD1: d - d(d+1)(2alpha-1) / (2(d+1-alpha))
double dim_bound_simplified(int d, double alpha, SimplifiedBound variant);

struct AsymptoticConstants {
  double c1 = 0;
  double c2 = 0;  // d^2 + 2d, the alpha -> 1 rate of u(d, alpha)/(1-alpha)
};

// c1(2) = 3; c1(d) = max_nu min(1/nu, 2/(2d-nu)) for d >= 3; c2(d) = d^2+2d
AsymptoticConstants asymptotic_constants(int d);

}  // namespace weylsums
