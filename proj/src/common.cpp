#include "weylsums/common.hpp"

#include <algorithm>
#include <cmath>

namespace weylsums {

double reduce_mod1(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("coordinate must be finite");
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;  // floor rounding at the seam
  if (r < 0.0) r = 0.0;
  return r;
}

namespace detail {

u128 fixed127(double coord) {
  // coord in [0,1); exact for coord >= 2^-75, else rounded to the 2^-127 grid
  long double scaled = std::ldexp(static_cast<long double>(coord), 127);
  long double rounded = std::floor(scaled + 0.5L);
  if (rounded >= std::ldexp(1.0L, 127)) return 0;  // rounding at the 1.0 seam wraps to 0
  return static_cast<u128>(rounded);
}

}  // namespace detail

PhasePoint::PhasePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  int d = static_cast<int>(coords_.size());
  if (d < kMinDegree || d > kMaxDegree)
    throw std::invalid_argument("phase point must have between 2 and 12 coordinates");
  fixed_.resize(coords_.size());
  for (size_t j = 0; j < coords_.size(); ++j) {
    coords_[j] = reduce_mod1(coords_[j]);
    fixed_[j] = detail::fixed127(coords_[j]);
  }
}

PhasePoint PhasePoint::zero(int d) { return PhasePoint(std::vector<double>(static_cast<size_t>(d), 0.0)); }

PhasePoint PhasePoint::negated() const {
  std::vector<double> neg(coords_.size());
  for (size_t j = 0; j < coords_.size(); ++j) neg[j] = coords_[j] == 0.0 ? 0.0 : 1.0 - coords_[j];
  return PhasePoint(std::move(neg));
}

WeightSequence::WeightSequence(std::vector<cplx> v) : values(std::move(v)) {
  if (values.empty()) throw std::invalid_argument("weight sequence must be nonempty");
  for (const cplx& a : values)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw std::invalid_argument("weights must be finite");
}

WeightSequence WeightSequence::ones(i64 n) {
  if (n < 1) throw std::invalid_argument("weight sequence must be nonempty");
  return WeightSequence(std::vector<cplx>(static_cast<size_t>(n), cplx(1.0, 0.0)));
}

std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace weylsums
