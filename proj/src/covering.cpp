#include "weylsums/covering.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "weylsums/core.hpp"
#include "weylsums/meanvalue.hpp"
#include "weylsums/parallel.hpp"
#include "weylsums/rng.hpp"

namespace weylsums {

std::vector<double> BoxSpec::zetas() const {
  std::vector<double> z(reciprocals.size());
  for (size_t j = 0; j < reciprocals.size(); ++j) z[j] = 1.0 / static_cast<double>(reciprocals[j]);
  return z;
}

u128 BoxSpec::total_boxes() const {
  u128 total = 1;
  for (i64 r : reciprocals) {
    u128 next = total * static_cast<u128>(static_cast<u64>(r));
    if (next / static_cast<u128>(static_cast<u64>(r)) != total)
      throw std::overflow_error("box count exceeds 128-bit range");
    total = next;
  }
  return total;
}

BoxSpec box_side_lengths(int d, i64 N, double alpha, double eps) {
  SumParams params(d, N);
  if (N < 2) throw std::invalid_argument("covering grids need N >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");

  BoxSpec spec;
  spec.d = d;
  spec.N = N;
  spec.alpha = alpha;
  spec.eps = eps;
  spec.reciprocals.resize(static_cast<size_t>(d));
  for (int j = 1; j <= d; ++j) {
    long double e = static_cast<long double>(j) + 1.0L + static_cast<long double>(eps) -
                    static_cast<long double>(alpha);
    long double p = std::pow(static_cast<long double>(N), e);
    // snap near-exact powers before the ceiling so e.g. 16^2.5 gives 1024, not 1025
    long double nearest = std::floor(p + 0.5L);
    long double r = (std::fabs(p - nearest) <= 1e-12L * p) ? nearest : std::ceil(p);
    if (r >= 4.6e18L) throw cap_exceeded("side-length reciprocal exceeds 64-bit range", static_cast<double>(r));
    spec.reciprocals[static_cast<size_t>(j - 1)] = static_cast<i64>(r);
  }
  return spec;
}

std::vector<i64> dyadic_schedule(int i_min, int i_max) {
  if (i_min < 1 || i_min > i_max) throw std::invalid_argument("need 1 <= i_min <= i_max");
  if (i_max > 62) throw std::invalid_argument("dyadic exponent too large for 64-bit N");
  std::vector<i64> out;
  out.reserve(static_cast<size_t>(i_max - i_min + 1));
  for (int i = i_min; i <= i_max; ++i) out.push_back(i64(1) << i);
  return out;
}

BoxGrid count_superlevel_boxes(int d, i64 N, double alpha, double eps, CompletionMode mode,
                               BoxCriterion criterion, const CoverOptions& opt) {
  BoxGrid grid;
  grid.spec = box_side_lengths(d, N, alpha, eps);
  grid.U = grid.spec.total_boxes();
  grid.criterion = criterion;
  grid.mode = mode;
  if (grid.U > static_cast<u128>(opt.cap))
    throw cap_exceeded("grid of " + u128_to_string(grid.U) + " boxes exceeds cap " +
                           std::to_string(opt.cap),
                       static_cast<double>(grid.U));

  const auto& recip = grid.spec.reciprocals;
  u64 strips = static_cast<u64>(recip[0]);
  u64 inner_total = 1;
  for (size_t j = 1; j < recip.size(); ++j) inner_total *= static_cast<u64>(recip[j]);

  double thr_full = std::pow(static_cast<double>(N), alpha);
  double thr_half = thr_full / 2.0;

  struct StripCounts {
    u64 lower = 0;
    u64 upper = 0;
  };
  std::vector<StripCounts> counts(static_cast<size_t>(strips));
  std::vector<i64> inner_recip(recip.begin() + 1, recip.end());

  run_blocks(strips, opt.threads, [&](u64 strip) {
    CompletionEvaluator eval(d, N);
    std::array<double, kMaxDegree> coords{};
    std::array<i64, kMaxDegree> lattice{};
    std::span<i64> lat(lattice.data(), inner_recip.size());
    coords[0] = (static_cast<double>(strip) + 0.5) / static_cast<double>(recip[0]);
    StripCounts st;
    for (u64 inner = 0; inner < inner_total; ++inner) {
      unflatten_index(inner, inner_recip, lat);
      for (size_t j = 0; j < inner_recip.size(); ++j)
        coords[j + 1] = (static_cast<double>(lat[j]) + 0.5) / static_cast<double>(inner_recip[j]);
      double w = eval.value(std::span<const double>(coords.data(), static_cast<size_t>(d)), mode);
      if (w >= thr_half) {
        ++st.upper;
        if (w >= thr_full) ++st.lower;
      }
    }
    counts[static_cast<size_t>(strip)] = st;
  });

  for (const StripCounts& st : counts) {
    grid.counted_lower += st.lower;
    grid.counted_upper += st.upper;
  }
  return grid;
}

BoxBound theoretical_box_bound(int d, i64 N, double alpha, double eps) {
  BoxSpec spec = box_side_lengths(d, N, alpha, eps);
  BoxBound bound;
  bound.U = spec.total_boxes();
  double sd = static_cast<double>(s_of(d));
  bound.count_bound =
      static_cast<double>(bound.U) * std::pow(static_cast<double>(N), sd * (1.0 - 2.0 * alpha));
  bound.exponent = 2.0 * sd * (1.0 - alpha) + d * (1.0 - alpha) + d * eps;
  bound.up_to_No1 = true;
  return bound;
}

StabilityReport stability_check(const PhasePoint& x, i64 N, double alpha, double eps, i64 probes,
                                u64 seed, CompletionMode mode, int threads) {
  SumParams params(x.dim(), N);
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (probes < 1) throw std::invalid_argument("need at least one probe");

  int d = x.dim();
  StabilityReport report;
  report.base = x.coords();
  report.N = N;
  report.alpha = alpha;
  report.eps = eps;
  report.mode = mode;

  double thr_full = std::pow(static_cast<double>(N), alpha);
  double thr_half = thr_full / 2.0;
  report.w_base = completed_value(x, N, mode);
  if (report.w_base < thr_full) {
    report.vacuous = true;
    report.probes = 0;
    report.violations = 0;
    return report;
  }

  std::vector<double> zeta(static_cast<size_t>(d));
  for (int j = 1; j <= d; ++j)
    zeta[static_cast<size_t>(j - 1)] =
        std::pow(static_cast<double>(N), alpha - static_cast<double>(j) - 1.0 - eps);

  i64 corners = i64(1) << d;
  i64 total = probes + corners;
  report.probes = total;

  constexpr i64 kProbeBlock = 256;
  i64 n_blocks = (total + kProbeBlock - 1) / kProbeBlock;
  std::vector<i64> violations(static_cast<size_t>(n_blocks), 0);

  run_blocks(static_cast<u64>(n_blocks), threads, [&](u64 b) {
    CompletionEvaluator eval(d, N);
    std::array<double, kMaxDegree> y{};
    i64 begin = static_cast<i64>(b) * kProbeBlock;
    i64 end = std::min(total, begin + kProbeBlock);
    i64 bad = 0;
    for (i64 i = begin; i < end; ++i) {
      if (i < corners) {
        for (int j = 0; j < d; ++j) {
          double off = (i >> j) & 1 ? zeta[static_cast<size_t>(j)] : -zeta[static_cast<size_t>(j)];
          y[static_cast<size_t>(j)] = reduce_mod1(x[j] + off);
        }
      } else {
        for (int j = 0; j < d; ++j) {
          double u = counter_uniform(seed, static_cast<u64>(i - corners) * static_cast<u64>(d) +
                                               static_cast<u64>(j));
          y[static_cast<size_t>(j)] =
              reduce_mod1(x[j] + (2.0 * u - 1.0) * zeta[static_cast<size_t>(j)]);
        }
      }
      double w = eval.value(std::span<const double>(y.data(), static_cast<size_t>(d)), mode);
      if (w < thr_half) ++bad;
    }
    violations[static_cast<size_t>(b)] = bad;
  });

  for (i64 v : violations) report.violations += v;
  return report;
}

}  // namespace weylsums
