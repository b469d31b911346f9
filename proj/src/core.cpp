#include "weylsums/core.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "weylsums/completion.hpp"
#include "weylsums/parallel.hpp"

namespace weylsums {

namespace {

constexpr u128 kFracMask = (u128(1) << 127) - 1;

// frac(f(n)) in 127-bit fixed point; all arithmetic wraps mod 2^128 and the
// result is reduced mod 2^127 (a quotient ring of it), so every step is exact
u128 fixed_phase(std::span<const u128> fixed, i64 n) {
  u128 nn = static_cast<u128>(static_cast<u64>(n));
  u128 npow = 1;
  u128 acc = 0;
  for (size_t j = 0; j < fixed.size(); ++j) {
    npow *= nn;  // n^{j+1} mod 2^128
    acc += fixed[j] * npow;
  }
  return acc & kFracMask;
}

double fixed_to_unit(u128 v) {
  return static_cast<double>(std::ldexp(static_cast<long double>(v), -127));
}

cplx unit_phase(u128 frac) {
  double t = 2.0 * std::numbers::pi * fixed_to_unit(frac);
  return cplx(std::cos(t), std::sin(t));
}

// e(F/2^127) without trigonometry: four 256-entry tables cover the top 32
// fraction bits, a first-order factor absorbs the sub-2^-32 residual (whose
// quadratic term is ~1e-18 and ignorable)
struct TwiddleTables {
  std::array<std::array<cplx, 256>, 4> t;
  TwiddleTables() {
    for (int i = 0; i < 4; ++i) {
      double scale = std::ldexp(2.0 * std::numbers::pi, -8 * (i + 1));
      for (int v = 0; v < 256; ++v) {
        double a = scale * v;
        t[static_cast<size_t>(i)][static_cast<size_t>(v)] = cplx(std::cos(a), std::sin(a));
      }
    }
  }
};

cplx synth_phase(u128 fraction) {
  static const TwiddleTables tables;
  u128 f = fraction & kFracMask;
  unsigned c0 = static_cast<unsigned>(f >> 119) & 0xFF;
  unsigned c1 = static_cast<unsigned>(f >> 111) & 0xFF;
  unsigned c2 = static_cast<unsigned>(f >> 103) & 0xFF;
  unsigned c3 = static_cast<unsigned>(f >> 95) & 0xFF;
  cplx z = tables.t[0][c0] * tables.t[1][c1];
  z *= tables.t[2][c2] * tables.t[3][c3];
  u64 res = static_cast<u64>(f >> 40) & ((u64(1) << 55) - 1);  // residual bits 40..94
  double theta = 2.0 * std::numbers::pi * std::ldexp(static_cast<double>(res), -87);
  return z + cplx(-z.imag() * theta, z.real() * theta);  // z * (1 + i theta)
}

void check_n(i64 n) {
  if (n < 1) throw std::invalid_argument("index n must be >= 1");
}

}  // namespace

double phase_fraction(const PhasePoint& x, i64 n) {
  check_n(n);
  std::vector<u128> fixed(static_cast<size_t>(x.dim()));
  for (int j = 0; j < x.dim(); ++j) fixed[static_cast<size_t>(j)] = x.fixed(j);
  return fixed_to_unit(fixed_phase(fixed, n));
}

cplx eval_phase(const PhasePoint& x, i64 n) {
  check_n(n);
  std::vector<u128> fixed(static_cast<size_t>(x.dim()));
  for (int j = 0; j < x.dim(); ++j) fixed[static_cast<size_t>(j)] = x.fixed(j);
  return unit_phase(fixed_phase(fixed, n));
}

PhaseRecurrence::PhaseRecurrence(const PhasePoint& x) : d_(x.dim()) {
  std::vector<u128> fixed(static_cast<size_t>(d_));
  for (int j = 0; j < d_; ++j) fixed[static_cast<size_t>(j)] = x.fixed(j);
  init(fixed);
}

PhaseRecurrence::PhaseRecurrence(std::span<const double> coords)
    : d_(static_cast<int>(coords.size())) {
  if (d_ < kMinDegree || d_ > kMaxDegree)
    throw std::invalid_argument("phase point must have between 2 and 12 coordinates");
  std::array<u128, kMaxDegree> fixed{};
  for (int j = 0; j < d_; ++j)
    fixed[static_cast<size_t>(j)] = detail::fixed127(reduce_mod1(coords[static_cast<size_t>(j)]));
  init(std::span<const u128>(fixed.data(), static_cast<size_t>(d_)));
}

void PhaseRecurrence::init(std::span<const u128> fixed) {
  // difference table of exact phase fractions: after k rounds of in-place
  // differencing, diffs_[k] holds frac(D^k f(1))
  std::array<u128, kMaxDegree + 1> table{};
  for (int i = 0; i <= d_; ++i) table[static_cast<size_t>(i)] = fixed_phase(fixed, i + 1);
  for (int k = 0; k <= d_; ++k) {
    diffs_[static_cast<size_t>(k)] = table[0];
    for (int i = 0; i < d_ - k; ++i)
      table[static_cast<size_t>(i)] = table[static_cast<size_t>(i) + 1] - table[static_cast<size_t>(i)];
  }
  value_ = synth_phase(diffs_[0]);
}

void PhaseRecurrence::advance() {
  // D^k f(n+1) = D^k f(n) + D^{k+1} f(n): ascending k consumes the old values
  for (int k = 0; k < d_; ++k) diffs_[static_cast<size_t>(k)] += diffs_[static_cast<size_t>(k) + 1];
  value_ = synth_phase(diffs_[0]);
}

std::vector<cplx> phase_sequence(const PhasePoint& x, i64 N) {
  check_n(N);
  std::vector<cplx> out(static_cast<size_t>(N));
  PhaseRecurrence rec(x);
  for (i64 n = 0; n < N; ++n) {
    out[static_cast<size_t>(n)] = rec.current();
    rec.advance();
  }
  return out;
}

cplx weyl_sum_direct(const PhasePoint& x, i64 N) {
  check_n(N);
  std::vector<u128> fixed(static_cast<size_t>(x.dim()));
  for (int j = 0; j < x.dim(); ++j) fixed[static_cast<size_t>(j)] = x.fixed(j);
  cplx sum = 0;
  for (i64 n = 1; n <= N; ++n) sum += unit_phase(fixed_phase(fixed, n));
  return sum;
}

cplx weyl_sum_fast(const PhasePoint& x, i64 N) {
  check_n(N);
  PhaseRecurrence rec(x);
  cplx sum = 0;
  for (i64 n = 1; n <= N; ++n) {
    sum += rec.current();
    rec.advance();
  }
  return sum;
}

cplx weyl_sum_weighted(const WeightSequence& a, const PhasePoint& x, i64 N) {
  check_n(N);
  if (a.size() != N)
    throw std::invalid_argument("weight length " + std::to_string(a.size()) +
                                " does not match N = " + std::to_string(N));
  PhaseRecurrence rec(x);
  cplx sum = 0;
  for (i64 n = 0; n < N; ++n) {
    sum += a.values[static_cast<size_t>(n)] * rec.current();
    rec.advance();
  }
  return sum;
}

// ---- grid sweep ------------------------------------------------------------

u64 grid_size(const std::vector<i64>& resolution, u64 cap) {
  if (resolution.empty()) throw std::invalid_argument("resolution must be nonempty");
  u128 total = 1;
  for (i64 r : resolution) {
    if (r < 1) throw std::invalid_argument("every resolution must be >= 1");
    total *= static_cast<u128>(static_cast<u64>(r));
    if (total > static_cast<u128>(cap))
      throw cap_exceeded("grid of " + u128_to_string(total) + "+ points exceeds cap " +
                             std::to_string(cap),
                         static_cast<double>(total));
  }
  return static_cast<u64>(total);
}

void unflatten_index(u64 index, const std::vector<i64>& resolution, std::span<i64> out) {
  for (size_t j = resolution.size(); j-- > 0;) {
    u64 r = static_cast<u64>(resolution[j]);
    out[j] = static_cast<i64>(index % r);
    index /= r;
  }
}

namespace {

class SweepEvaluator {
 public:
  SweepEvaluator(int d, i64 N, SweepFunctional f) : d_(d), N_(N), f_(f) {
    if (f != SweepFunctional::AbsWeylSum) completion_.emplace(d, N);
    coords_.resize(static_cast<size_t>(d));
  }

  double operator()(std::span<const i64> lattice, const std::vector<i64>& resolution) {
    for (size_t j = 0; j < coords_.size(); ++j)
      coords_[j] = static_cast<double>(lattice[j]) / static_cast<double>(resolution[j]);
    switch (f_) {
      case SweepFunctional::AbsWeylSum: {
        PhaseRecurrence rec{std::span<const double>(coords_)};
        cplx sum = 0;
        for (i64 n = 0; n < N_; ++n) {
          sum += rec.current();
          rec.advance();
        }
        return std::abs(sum);
      }
      case SweepFunctional::CompletedLiteral:
        return completion_->value(coords_, CompletionMode::Literal);
      case SweepFunctional::CompletedSymmetrized:
        return completion_->value(coords_, CompletionMode::Symmetrized);
    }
    return 0;
  }

 private:
  int d_;
  i64 N_;
  SweepFunctional f_;
  std::optional<CompletionEvaluator> completion_;
  std::vector<double> coords_;
};

constexpr u64 kSweepBlock = 8192;

}  // namespace

void grid_sweep(int d, i64 N, const std::vector<i64>& resolution, SweepFunctional f,
                const std::function<void(u64 index, double value)>& sink,
                const GridSweepOptions& opt) {
  SumParams params(d, N);
  if (static_cast<int>(resolution.size()) != d)
    throw std::invalid_argument("resolution must have d entries");
  u64 total = grid_size(resolution, opt.cap);

  int threads = resolve_threads(opt.threads);
  u64 n_blocks = (total + kSweepBlock - 1) / kSweepBlock;
  u64 wave = std::max<u64>(1, 4 * static_cast<u64>(threads));

  std::vector<std::vector<double>> buffers(static_cast<size_t>(std::min(wave, n_blocks)));

  for (u64 wave_start = 0; wave_start < n_blocks; wave_start += wave) {
    u64 wave_end = std::min(n_blocks, wave_start + wave);
    run_blocks(wave_end - wave_start, threads, [&](u64 wb) {
      u64 block = wave_start + wb;
      u64 begin = block * kSweepBlock;
      u64 end = std::min(total, begin + kSweepBlock);
      auto& buf = buffers[static_cast<size_t>(wb)];
      buf.resize(static_cast<size_t>(end - begin));
      SweepEvaluator eval(d, N, f);
      std::array<i64, kMaxDegree> lattice{};
      std::span<i64> lat(lattice.data(), static_cast<size_t>(d));
      for (u64 idx = begin; idx < end; ++idx) {
        unflatten_index(idx, resolution, lat);
        buf[static_cast<size_t>(idx - begin)] = eval(lat, resolution);
      }
    });
    for (u64 wb = 0; wb < wave_end - wave_start; ++wb) {
      u64 begin = (wave_start + wb) * kSweepBlock;
      const auto& buf = buffers[static_cast<size_t>(wb)];
      for (size_t k = 0; k < buf.size(); ++k) sink(begin + k, buf[k]);
    }
  }
}

std::vector<double> grid_sweep_values(int d, i64 N, const std::vector<i64>& resolution,
                                      SweepFunctional f, const GridSweepOptions& opt) {
  u64 total = grid_size(resolution, opt.cap);
  std::vector<double> out(static_cast<size_t>(total));
  grid_sweep(d, N, resolution, f, [&](u64 idx, double v) { out[static_cast<size_t>(idx)] = v; },
             opt);
  return out;
}

}  // namespace weylsums
