#include "weylsums/meanvalue.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "weylsums/core.hpp"
#include "weylsums/parallel.hpp"
#include "weylsums/rng.hpp"

namespace weylsums {

namespace {

constexpr i64 kSampleBlock = 4096;

double ipow(double base, int e) {
  double r = 1;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

struct BlockStats {
  double sum = 0;
  double sumsq = 0;
};

// deterministic blocked Monte Carlo over the torus: per-sample values are a
// pure function of (seed, index), blocks have fixed boundaries, and block
// partials are merged in index order
template <class PerSample>
MomentEstimate run_mc(int d, i64 N, int s, i64 samples, u64 seed, int threads,
                      PerSample&& per_sample) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  if (s < 1) throw std::invalid_argument("moment half-order s must be >= 1");

  i64 n_blocks = (samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<BlockStats> blocks(static_cast<size_t>(n_blocks));
  run_blocks(static_cast<u64>(n_blocks), threads, [&](u64 b) {
    i64 begin = static_cast<i64>(b) * kSampleBlock;
    i64 end = std::min(samples, begin + kSampleBlock);
    auto ctx = per_sample.make_context();
    BlockStats st;
    std::array<double, kMaxDegree> coords{};
    for (i64 i = begin; i < end; ++i) {
      for (int j = 0; j < d; ++j)
        coords[static_cast<size_t>(j)] =
            counter_uniform(seed, static_cast<u64>(i) * static_cast<u64>(d) + static_cast<u64>(j));
      double v = per_sample(ctx, std::span<const double>(coords.data(), static_cast<size_t>(d)));
      st.sum += v;
      st.sumsq += v * v;
    }
    blocks[static_cast<size_t>(b)] = st;
  });

  double sum = 0, sumsq = 0;
  for (const BlockStats& st : blocks) {
    sum += st.sum;
    sumsq += st.sumsq;
  }
  double n = static_cast<double>(samples);
  double mean = sum / n;
  double var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1));
  MomentEstimate est;
  est.mean = mean;
  est.std_error = std::sqrt(var / n);
  est.samples = samples;
  est.s = s;
  est.N = N;
  est.d = d;
  return est;
}

void check_moment_range(double peak, int s, const char* what) {
  // |sum| <= peak, so the 2s-th power stays finite iff 2s log(peak) is in range
  if (2.0 * s * std::log(std::max(peak, 1.0)) > 700.0)
    throw std::domain_error(std::string(what) + " would overflow double range at this (N, s)");
}

}  // namespace

MomentEstimate mc_moment(int d, i64 N, int s, const std::optional<WeightSequence>& weights,
                         i64 samples, u64 seed, const McOptions& opt) {
  SumParams params(d, N);
  if (weights && weights->size() != N)
    throw std::invalid_argument("weight length does not match N");
  double peak = static_cast<double>(N);
  if (weights) {
    peak = 0;
    for (const cplx& a : weights->values) peak += std::abs(a);
  }
  check_moment_range(peak, s, "moment of |S|");

  const std::vector<cplx>* w = weights ? &weights->values : nullptr;
  struct Ctx {};
  struct Sampler {
    i64 N;
    int s;
    const std::vector<cplx>* w;
    Ctx make_context() const { return {}; }
    double operator()(Ctx&, std::span<const double> coords) const {
      PhaseRecurrence rec(coords);
      cplx sum = 0;
      for (i64 n = 0; n < N; ++n) {
        sum += w ? (*w)[static_cast<size_t>(n)] * rec.current() : rec.current();
        rec.advance();
      }
      return ipow(std::norm(sum), s);
    }
  } sampler{N, s, w};
  return run_mc(d, N, s, samples, seed, opt.threads, sampler);
}

MomentEstimate completed_moment(int d, i64 N, i64 samples, u64 seed, CompletionMode mode,
                                const McOptions& opt) {
  SumParams params(d, N);
  int s = static_cast<int>(s_of(d));
  check_moment_range(completion_weight_mass(mode, N) * static_cast<double>(N), s,
                     "moment of W");
  struct Sampler {
    int d;
    i64 N;
    int s;
    CompletionMode mode;
    CompletionEvaluator make_context() const { return CompletionEvaluator(d, N); }
    double operator()(CompletionEvaluator& eval, std::span<const double> coords) const {
      double w = eval.value(coords, mode);
      return ipow(w * w, s);
    }
  } sampler{d, N, s, mode};
  return run_mc(d, N, s, samples, seed, opt.threads, sampler);
}

VinogradovCount vinogradov_count(int d, int s, i64 N, double tuple_cap) {
  if (d < 1 || d > kMaxDegree) throw std::invalid_argument("degree d must be in [1, 12]");
  if (s < 1) throw std::invalid_argument("s must be >= 1");
  if (N < 1) throw std::invalid_argument("N must be >= 1");

  double naive = std::pow(static_cast<double>(N), 2.0 * s);
  if (naive > tuple_cap)
    throw cap_exceeded("system size N^(2s) = " + std::to_string(naive) + " exceeds cap " +
                           std::to_string(tuple_cap),
                       naive);
  double side = std::pow(static_cast<double>(N), static_cast<double>(s));
  if (side > 1e12)
    throw cap_exceeded("meet-in-the-middle side N^s = " + std::to_string(side) +
                           " exceeds the 1e12 memory envelope",
                       side);
  if (std::log2(static_cast<double>(s)) + d * std::log2(static_cast<double>(N)) >= 127.0)
    throw std::domain_error("power sums exceed exact 128-bit integer range");

  u64 half = 1;
  for (int i = 0; i < s; ++i) half *= static_cast<u64>(N);

  using Key = std::array<u128, kMaxDegree>;
  std::vector<Key> keys;
  keys.reserve(static_cast<size_t>(half));

  std::vector<i64> tuple(static_cast<size_t>(s), 1);
  for (;;) {
    Key key{};
    for (i64 n : tuple) {
      u128 p = 1;
      for (int j = 0; j < d; ++j) {
        p *= static_cast<u128>(static_cast<u64>(n));
        key[static_cast<size_t>(j)] += p;
      }
    }
    keys.push_back(key);
    int pos = s - 1;
    while (pos >= 0 && tuple[static_cast<size_t>(pos)] == N) {
      tuple[static_cast<size_t>(pos)] = 1;
      --pos;
    }
    if (pos < 0) break;
    ++tuple[static_cast<size_t>(pos)];
  }

  std::sort(keys.begin(), keys.end());
  u64 J = 0;
  for (size_t i = 0; i < keys.size();) {
    size_t j = i;
    while (j < keys.size() && keys[j] == keys[i]) ++j;
    u64 run = static_cast<u64>(j - i);
    J += run * run;
    i = j;
  }

  VinogradovCount out;
  out.J = J;
  out.s = s;
  out.d = d;
  out.N = N;
  return out;
}

ExponentFit moment_exponent_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw std::invalid_argument("need at least three points to fit");
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].second <= 0) throw std::invalid_argument("moments must be positive");
    if (i > 0 && points[i].first <= points[i - 1].first)
      throw std::invalid_argument("N values must be strictly increasing");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = static_cast<double>(points.size());
  for (const auto& [N, m] : points) {
    double x = std::log(N), y = std::log(m);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  ExponentFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0;
  for (const auto& [N, m] : points) {
    double r = std::log(m) - (fit.intercept + fit.slope * std::log(N));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace weylsums
