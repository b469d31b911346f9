#include "weylsums/dimension.hpp"

#include <algorithm>
#include <cmath>

#include "weylsums/meanvalue.hpp"

namespace weylsums {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
}

void check_degree(int d) {
  if (d < kMinDegree || d > kMaxDegree)
    throw std::invalid_argument("degree d must be in [2, 12]");
}

void check_k(int d, int k) {
  if (k < 0 || k >= d) throw std::invalid_argument("k must lie in [0, d-1]");
}

}  // namespace

RectangleSides::RectangleSides(std::vector<double> sides) : r(std::move(sides)) {
  if (r.empty()) throw std::invalid_argument("rectangle needs at least one side");
  for (size_t j = 0; j < r.size(); ++j) {
    if (!(r[j] > 0.0)) throw std::invalid_argument("side lengths must be positive");
    if (j > 0 && r[j] > r[j - 1])
      throw std::invalid_argument("side lengths must be sorted nonincreasing");
  }
}

double singular_value_phi(const RectangleSides& rect, int k, double t) {
  check_k(rect.dim(), k);
  if (!(t > 0.0 && t <= static_cast<double>(rect.dim())))
    throw std::invalid_argument("t must lie in (0, d]");
  double prod = 1.0;
  for (int j = 0; j < k; ++j) prod *= rect.r[static_cast<size_t>(j)];
  return prod * std::pow(rect.r[static_cast<size_t>(k)], t - static_cast<double>(k));
}

double ball_cover_count(const RectangleSides& rect, int k) {
  check_k(rect.dim(), k);
  double prod = 1.0;
  for (int j = 0; j < k; ++j) prod *= rect.r[static_cast<size_t>(j)] / rect.r[static_cast<size_t>(k)];
  return prod;
}

double covering_sum_exponent(int d, double alpha, double eps, int k, double t) {
  check_degree(d);
  check_k(d, k);
  double sd = static_cast<double>(s_of(d));
  double sk = static_cast<double>(s_of(k));
  return 2.0 * sd * (1.0 - alpha) + d * (1.0 - alpha) + d * eps +
         (t - k) * (alpha - k - 2.0 - eps) + k * (alpha - 1.0 - eps) - sk;
}

double critical_t(int d, double alpha, int k) {
  check_degree(d);
  check_alpha(alpha);
  check_k(d, k);
  double sd = static_cast<double>(s_of(d));
  double sk = static_cast<double>(s_of(k));
  return (2.0 * sd * (1.0 - alpha) + d * (1.0 - alpha) + sk) / (k + 2.0 - alpha);
}

DimBoundReport dim_upper_bound(int d, double alpha) {
  check_degree(d);
  check_alpha(alpha);
  DimBoundReport report;
  report.d = d;
  report.alpha = alpha;
  report.per_k.resize(static_cast<size_t>(d));
  double coeff = static_cast<double>(2 * d * d + 4 * d);
  for (int k = 0; k < d; ++k) {
    double num = coeff * (1.0 - alpha) + static_cast<double>(k) * (k + 1.0);
    double den = 4.0 - 2.0 * alpha + 2.0 * static_cast<double>(k);
    report.per_k[static_cast<size_t>(k)] = num / den;
  }
  auto it = std::min_element(report.per_k.begin(), report.per_k.end());
  report.argmin_k = static_cast<int>(it - report.per_k.begin());
  report.u = *it;
  report.bound_k0 = dim_bound_simplified(d, alpha, SimplifiedBound::K0);
  report.bound_kd1 = dim_bound_simplified(d, alpha, SimplifiedBound::KD1);
  return report;
}

double dim_bound_simplified(int d, double alpha, SimplifiedBound variant) {
  check_degree(d);
  check_alpha(alpha);
  if (variant == SimplifiedBound::K0)
    return static_cast<double>(2 * d * d + 4 * d) * (1.0 - alpha) / (4.0 - 2.0 * alpha);
  return static_cast<double>(d) -
         static_cast<double>(d) * (d + 1.0) * (2.0 * alpha - 1.0) /
             (2.0 * (d + 1.0 - alpha));
}

AsymptoticConstants asymptotic_constants(int d) {
  check_degree(d);
  AsymptoticConstants c;
  c.c2 = static_cast<double>(d * d + 2 * d);
  if (d == 2) {
    c.c1 = 3.0;  // the d = 2 value is stated separately; the max-min form below would give 2/3
    return c;
  }
  double best = 0.0;
  for (int nu = 1; nu <= d; ++nu)
    best = std::max(best, std::min(1.0 / nu, 2.0 / (2.0 * d - nu)));
  c.c1 = best;
  return c;
}

}  // namespace weylsums
