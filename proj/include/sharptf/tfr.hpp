#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "sharptf/error.hpp"
#include "sharptf/signal.hpp"
#include "sharptf/window.hpp"

namespace sharptf {

// Every time-frequency matrix is T x F with T = N: row n is sample n and
// column k is normalized frequency k * 0.5 / F cycles/sample.
template <typename Scalar>
using TfrT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Tfr = TfrT<double>;

template <typename Scalar>
using ComplexTfrT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr Index kDefaultBins = 256;
inline constexpr Index kMinBins = 8;

/// Column index of frequency f: round(2 F f).
inline Index frequency_bin(double f, Index bins) {
  return static_cast<Index>(std::llround(2.0 * static_cast<double>(bins) * f));
}

inline double bin_frequency(Index k, Index bins) {
  return static_cast<double>(k) * 0.5 / static_cast<double>(bins);
}

namespace detail {

inline Index wrap(Index m, Index period) {
  const Index r = m % period;
  return r < 0 ? r + period : r;
}

inline void check_bins(Index bins) {
  if (bins < kMinBins) {
    throw ConfigError("frequency bin count must be >= " + std::to_string(kMinBins) +
                      ", got " + std::to_string(bins));
  }
}

/// Per-row lag buffer and FFT. The lag axis is folded modulo the transform
/// length, which samples the lag DTFT exactly at k / length.
template <typename Real>
class LagTransform {
 public:
  using Complex = std::complex<Real>;

  explicit LagTransform(Index length)
      : buffer_(static_cast<std::size_t>(length)), spectrum_(static_cast<std::size_t>(length)) {}

  void clear() { std::fill(buffer_.begin(), buffer_.end(), Complex(0, 0)); }
  void add(Index lag, Complex v) { buffer_[wrap(lag, size())] += v; }

  const std::vector<Complex>& forward() {
    fft_.fwd(spectrum_, buffer_);
    return spectrum_;
  }

  Index size() const { return static_cast<Index>(buffer_.size()); }

 private:
  Eigen::FFT<Real> fft_;
  std::vector<Complex> buffer_;
  std::vector<Complex> spectrum_;
};

template <typename Real>
Eigen::Matrix<Real, Eigen::Dynamic, 1> unit_sum(Eigen::Matrix<Real, Eigen::Dynamic, 1> w) {
  return w / w.sum();
}

}  // namespace detail

/// Discrete Wigner-Ville distribution before the imaginary residue is
/// discarded. Row n is the F-point DFT over lag m of x[n+m] conj(x[n-m]) for
/// |m| <= min(n, N-1-n).
template <typename Derived>
ComplexTfrT<typename Derived::Scalar::value_type> wvd_complex(
    const Eigen::MatrixBase<Derived>& x, Index bins) {
  using Real = typename Derived::Scalar::value_type;
  detail::check_bins(bins);
  validate_signal(x);
  const Index n_samples = x.size();

  ComplexTfrT<Real> out(n_samples, bins);
  detail::LagTransform<Real> lag(bins);
  for (Index n = 0; n < n_samples; ++n) {
    lag.clear();
    const Index max_lag = std::min(n, n_samples - 1 - n);
    for (Index m = -max_lag; m <= max_lag; ++m) {
      lag.add(m, x(n + m) * std::conj(x(n - m)));
    }
    const auto& spec = lag.forward();
    for (Index k = 0; k < bins; ++k) out(n, k) = spec[k];
  }
  return out;
}

template <typename Derived>
TfrT<typename Derived::Scalar::value_type> wvd(const Eigen::MatrixBase<Derived>& x, Index bins) {
  return wvd_complex(x, bins).real();
}

/// Smoothed pseudo WVD before the imaginary residue is discarded: the
/// instantaneous autocorrelation is averaged over time by g (normalized to
/// unit sum), weighted over lag by h, then transformed over lag.
template <typename Derived>
ComplexTfrT<typename Derived::Scalar::value_type> spwvd_complex(
    const Eigen::MatrixBase<Derived>& x, const WindowSpec& g, const WindowSpec& h, Index bins) {
  using Real = typename Derived::Scalar::value_type;
  using Complex = std::complex<Real>;
  detail::check_bins(bins);
  validate_signal(x);
  const Index n_samples = x.size();
  validate(g, n_samples);
  validate(h, n_samples);

  const auto gw = detail::unit_sum<Real>(window_values<Real>(g));
  const auto hw = window_values<Real>(h);
  const Index g_half = g.half_length();
  const Index h_half = h.half_length();

  ComplexTfrT<Real> out(n_samples, bins);
  detail::LagTransform<Real> lag(bins);
  for (Index n = 0; n < n_samples; ++n) {
    lag.clear();
    for (Index m = 0; m <= std::min(h_half, n_samples - 1); ++m) {
      Complex acc(0, 0);
      const Index s_lo = std::max(-g_half, m - n);
      const Index s_hi = std::min(g_half, n_samples - 1 - n - m);
      for (Index s = s_lo; s <= s_hi; ++s) {
        acc += gw(s + g_half) * x(n + s + m) * std::conj(x(n + s - m));
      }
      lag.add(m, hw(h_half + m) * acc);
      if (m > 0) lag.add(-m, hw(h_half - m) * std::conj(acc));
    }
    const auto& spec = lag.forward();
    for (Index k = 0; k < bins; ++k) out(n, k) = spec[k];
  }
  return out;
}

template <typename Derived>
TfrT<typename Derived::Scalar::value_type> spwvd(const Eigen::MatrixBase<Derived>& x,
                                                 const WindowSpec& g, const WindowSpec& h,
                                                 Index bins) {
  return spwvd_complex(x, g, h, bins).real();
}

/// |STFT|^2 with hop 1 and the window centred on each sample; samples outside
/// the signal count as zero. Column k is evaluated at k * 0.5 / F through a
/// 2F-point DFT.
template <typename Derived>
TfrT<typename Derived::Scalar::value_type> stft_spectrogram(const Eigen::MatrixBase<Derived>& x,
                                                            const WindowSpec& w, Index bins) {
  using Real = typename Derived::Scalar::value_type;
  detail::check_bins(bins);
  validate_signal(x);
  const Index n_samples = x.size();
  if (w.length > n_samples) {
    throw ValidationError("window length " + std::to_string(w.length) +
                          " exceeds signal length " + std::to_string(n_samples));
  }
  validate(w, n_samples);

  const auto wv = window_values<Real>(w);
  const Index half = w.half_length();
  TfrT<Real> out(n_samples, bins);
  detail::LagTransform<Real> frame(2 * bins);
  for (Index n = 0; n < n_samples; ++n) {
    frame.clear();
    for (Index m = std::max(-half, -n); m <= std::min(half, n_samples - 1 - n); ++m) {
      frame.add(m, wv(m + half) * x(n + m));
    }
    const auto& spec = frame.forward();
    for (Index k = 0; k < bins; ++k) out(n, k) = std::norm(spec[k]);
  }
  return out;
}

}  // namespace sharptf
