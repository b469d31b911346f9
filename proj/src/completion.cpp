#include "weylsums/completion.hpp"

#include <algorithm>
#include <cmath>

#include "weylsums/core.hpp"

namespace weylsums {

double completion_weight(CompletionMode mode, i64 h, i64 N) {
  if (h < 1 || h > N) throw std::invalid_argument("frequency h must lie in [1, N]");
  i64 m = mode == CompletionMode::Literal ? h : std::min(h, N + 1 - h);
  return 1.0 / static_cast<double>(m);
}

double completion_weight_mass(CompletionMode mode, i64 N) {
  double mass = 0;
  for (i64 h = 1; h <= N; ++h) mass += completion_weight(mode, h, N);
  return mass;
}

CompletionEvaluator::CompletionEvaluator(int d, i64 N)
    : d_(d), N_(N), fft_(static_cast<std::size_t>(N)) {
  SumParams check(d, N);
  buf_.resize(static_cast<size_t>(N));
  weight_literal_.resize(static_cast<size_t>(N));
  weight_symmetrized_.resize(static_cast<size_t>(N));
  for (i64 h = 1; h <= N; ++h) {
    weight_literal_[static_cast<size_t>(h - 1)] = 1.0 / static_cast<double>(h);
    weight_symmetrized_[static_cast<size_t>(h - 1)] = 1.0 / static_cast<double>(std::min(h, N + 1 - h));
  }
}

void CompletionEvaluator::load_sequence(std::span<const double> coords) {
  if (static_cast<int>(coords.size()) != d_)
    throw std::invalid_argument("coordinate count does not match evaluator degree");
  PhaseRecurrence rec(coords);
  for (i64 n = 0; n < N_; ++n) {
    buf_[static_cast<size_t>(n)] = rec.current();
    rec.advance();
  }
}

double CompletionEvaluator::value(std::span<const double> coords, CompletionMode mode) {
  load_sequence(coords);
  fft_.forward(buf_);
  const auto& w = mode == CompletionMode::Literal ? weight_literal_ : weight_symmetrized_;
  // bin k of the forward transform carries T_h for h = N - k (k = 0 is h = N)
  double acc = w[static_cast<size_t>(N_ - 1)] * std::abs(buf_[0]);
  for (i64 k = 1; k < N_; ++k)
    acc += w[static_cast<size_t>(N_ - k - 1)] * std::abs(buf_[static_cast<size_t>(k)]);
  return acc;
}

double CompletionEvaluator::value(const PhasePoint& x, CompletionMode mode) {
  return value(std::span<const double>(x.coords()), mode);
}

void CompletionEvaluator::spectrum(std::span<const double> coords, std::span<double> out) {
  if (out.size() != static_cast<size_t>(N_)) throw std::invalid_argument("output span must have N entries");
  load_sequence(coords);
  fft_.forward(buf_);
  out[static_cast<size_t>(N_ - 1)] = std::abs(buf_[0]);
  for (i64 k = 1; k < N_; ++k)
    out[static_cast<size_t>(N_ - k - 1)] = std::abs(buf_[static_cast<size_t>(k)]);
}

std::vector<double> inner_spectrum(const PhasePoint& x, i64 N) {
  CompletionEvaluator eval(x.dim(), N);
  std::vector<double> out(static_cast<size_t>(N));
  eval.spectrum(x.coords(), out);
  return out;
}

CompletionReport completed_sum(const PhasePoint& x, i64 N, CompletionMode mode) {
  CompletionReport report;
  report.mode = mode;
  report.spectrum_norms = inner_spectrum(x, N);
  double acc = 0;
  for (i64 h = 1; h <= N; ++h)
    acc += completion_weight(mode, h, N) * report.spectrum_norms[static_cast<size_t>(h - 1)];
  report.value = acc;
  return report;
}

double completed_value(const PhasePoint& x, i64 N, CompletionMode mode) {
  CompletionEvaluator eval(x.dim(), N);
  return eval.value(x.coords(), mode);
}

DominationResult domination_check(const PhasePoint& x, i64 N, CompletionMode mode) {
  DominationResult result;
  result.w_value = completed_value(x, N, mode);
  PhaseRecurrence rec(x);
  cplx partial = 0;
  for (i64 M = 1; M <= N; ++M) {
    partial += rec.current();
    rec.advance();
    double ratio = std::abs(partial) / result.w_value;
    if (ratio > result.ratio) {
      result.ratio = ratio;
      result.argmax_M = M;
    }
  }
  return result;
}

}  // namespace weylsums
