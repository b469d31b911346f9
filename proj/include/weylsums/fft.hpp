#pragma once

#include <cstddef>
#include <vector>

#include "weylsums/common.hpp"

namespace weylsums {

// In-place complex DFT, X_k = sum_m a_m e(-km/n).
//
// Plan selection: radix-2 for powers of two; direct O(n^2) with a precomputed
// root table for other sizes below 2048; Bluestein's chirp transform above.
// A plan is immutable after construction and safe to share across threads;
// execute() uses only caller-provided scratch.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }
  void forward(std::vector<cplx>& data) const;

 private:
  enum class Kind { Radix2, Direct, Bluestein };

  void radix2(std::vector<cplx>& data, const std::vector<cplx>& twiddles) const;

  std::size_t n_;
  Kind kind_;
  std::vector<cplx> twiddles_;  // radix2: e(-j/n), j < n/2; direct: e(-j/n), j < n

  // Bluestein state: X_k = conj(chirp_k) * (a.chirp conv c)_k with an inner
  // radix-2 transform of length m_ >= 2n-1
  std::size_t m_ = 0;
  std::vector<cplx> chirp_;        // e(j^2 / (2n)), j < n
  std::vector<cplx> kernel_fft_;   // forward transform of the padded chirp kernel
  std::vector<cplx> inner_twiddles_;
};

}  // namespace weylsums
