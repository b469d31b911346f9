#include "weylsums/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace weylsums {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

cplx root_of_unity(double num, double den) {
  double t = -2.0 * std::numbers::pi * (num / den);
  return cplx(std::cos(t), std::sin(t));
}

std::vector<cplx> half_twiddles(std::size_t n) {
  std::vector<cplx> tw(n / 2);
  for (std::size_t j = 0; j < n / 2; ++j) tw[j] = root_of_unity(static_cast<double>(j), static_cast<double>(n));
  return tw;
}

void bit_reverse_permute(std::vector<cplx>& a) {
  std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

constexpr std::size_t kDirectLimit = 2048;

}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("transform length must be positive");
  if (is_pow2(n)) {
    kind_ = Kind::Radix2;
    twiddles_ = half_twiddles(n);
    return;
  }
  if (n < kDirectLimit) {
    kind_ = Kind::Direct;
    twiddles_.resize(n);
    for (std::size_t j = 0; j < n; ++j) twiddles_[j] = root_of_unity(static_cast<double>(j), static_cast<double>(n));
    return;
  }
  kind_ = Kind::Bluestein;
  m_ = next_pow2(2 * n - 1);
  inner_twiddles_ = half_twiddles(m_);
  chirp_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    // e(j^2 / (2n)) with the square reduced mod 2n first, exact in integers
    u128 sq = static_cast<u128>(j) * j % (2 * static_cast<u128>(n));
    double t = std::numbers::pi * static_cast<double>(static_cast<u64>(sq)) / static_cast<double>(n);
    chirp_[j] = cplx(std::cos(t), std::sin(t));
  }
  kernel_fft_.assign(m_, cplx(0, 0));
  for (std::size_t j = 0; j < n; ++j) {
    kernel_fft_[j] = chirp_[j];
    if (j > 0) kernel_fft_[m_ - j] = chirp_[j];
  }
  radix2(kernel_fft_, inner_twiddles_);
}

void Fft::radix2(std::vector<cplx>& a, const std::vector<cplx>& twiddles) const {
  std::size_t n = a.size();
  bit_reverse_permute(a);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::size_t stride = n / len;
    std::size_t half = len / 2;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t j = 0; j < half; ++j) {
        cplx w = twiddles[j * stride];
        cplx u = a[base + j];
        cplx v = a[base + j + half] * w;
        a[base + j] = u + v;
        a[base + j + half] = u - v;
      }
    }
  }
}

void Fft::forward(std::vector<cplx>& data) const {
  if (data.size() != n_) throw std::invalid_argument("data length does not match plan");
  switch (kind_) {
    case Kind::Radix2:
      radix2(data, twiddles_);
      return;
    case Kind::Direct: {
      std::vector<cplx> out(n_, cplx(0, 0));
      for (std::size_t k = 0; k < n_; ++k) {
        cplx acc = 0;
        std::size_t idx = 0;
        for (std::size_t m = 0; m < n_; ++m) {
          acc += data[m] * twiddles_[idx];
          idx += k;
          if (idx >= n_) idx -= n_;
        }
        out[k] = acc;
      }
      data = std::move(out);
      return;
    }
    case Kind::Bluestein: {
      std::vector<cplx> work(m_, cplx(0, 0));
      for (std::size_t j = 0; j < n_; ++j) work[j] = data[j] * std::conj(chirp_[j]);
      radix2(work, inner_twiddles_);
      for (std::size_t j = 0; j < m_; ++j) work[j] *= kernel_fft_[j];
      // inverse transform via conjugation
      for (auto& z : work) z = std::conj(z);
      radix2(work, inner_twiddles_);
      double scale = 1.0 / static_cast<double>(m_);
      for (std::size_t k = 0; k < n_; ++k)
        data[k] = std::conj(chirp_[k]) * std::conj(work[k]) * scale;
      return;
    }
  }
}

}  // namespace weylsums
