#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace weylsums {

using cplx = std::complex<double>;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline constexpr int kMinDegree = 2;
inline constexpr int kMaxDegree = 12;

// default resource caps, overridable per call
inline constexpr u64 kDefaultGridCap = 100'000'000;        // lattice points / boxes
inline constexpr double kDefaultTupleCap = 1e9;            // naive tuple count N^(2s)

inline constexpr const char* kVersion = "0.1.0";

// thrown when a requested grid or enumeration exceeds its configured cap;
// carries the offending size estimate for error messages and exit codes
class cap_exceeded : public std::runtime_error {
 public:
  cap_exceeded(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

struct SumParams {
  int d;
  i64 N;

  SumParams(int d_, i64 N_) : d(d_), N(N_) {
    if (d < kMinDegree || d > kMaxDegree)
      throw std::invalid_argument("degree d must be in [2, 12], got " + std::to_string(d_));
    if (N < 1) throw std::invalid_argument("sum length N must be >= 1");
  }
};

// A point of the unit torus, coordinates reduced into [0, 1) on construction.
// Each coordinate also carries an exact 127-bit fixed-point representation
// (coord = fixed/2^127); doubles >= 2^-75 are represented without loss.
// All phase arithmetic downstream reduces x_j * n^j mod 1 exactly through it.
class PhasePoint {
 public:
  explicit PhasePoint(std::vector<double> coords);
  static PhasePoint zero(int d);

  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int j) const { return coords_[static_cast<size_t>(j)]; }
  const std::vector<double>& coords() const { return coords_; }
  u128 fixed(int j) const { return fixed_[static_cast<size_t>(j)]; }

  // -x on the torus (each nonzero coordinate mapped to 1 - x_j)
  PhasePoint negated() const;

 private:
  std::vector<double> coords_;
  std::vector<u128> fixed_;
};

struct WeightSequence {
  std::vector<cplx> values;

  explicit WeightSequence(std::vector<cplx> v);
  static WeightSequence ones(i64 n);
  i64 size() const { return static_cast<i64>(values.size()); }
};

// reduce a real into [0, 1)
double reduce_mod1(double x);

std::string u128_to_string(u128 v);

namespace detail {
// exact 127-bit fixed-point image of a coordinate already reduced into [0, 1)
u128 fixed127(double reduced);
}  // namespace detail

}  // namespace weylsums
