#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "sharptf/methods.hpp"
#include "sharptf/tfr.hpp"
#include "support.hpp"

using namespace sharptf;
using namespace sharptf::testing;

namespace {

constexpr double kPi = std::numbers::pi;

// W[n,k] = sum over in-bounds m of x[n+m] conj(x[n-m]) exp(-j 2 pi (k / 2F) 2m)
ComplexTfrT<double> wvd_double_sum(const Signal& x, Index bins) {
  const Index n_samples = x.size();
  ComplexTfrT<double> out(n_samples, bins);
  for (Index n = 0; n < n_samples; ++n) {
    for (Index k = 0; k < bins; ++k) {
      const double f = 0.5 * double(k) / double(bins);
      std::complex<double> acc = 0;
      for (Index m = -n_samples; m <= n_samples; ++m) {
        if (n + m < 0 || n + m >= n_samples || n - m < 0 || n - m >= n_samples) continue;
        acc += x(n + m) * std::conj(x(n - m)) * std::polar(1.0, -2 * kPi * f * 2.0 * double(m));
      }
      out(n, k) = acc;
    }
  }
  return out;
}

// |sum_m w[m] x[n+m] exp(-j 2 pi f m)|^2 on the grid f = k / 2F
Tfr spectrogram_direct(const Signal& x, const WindowSpec& w, Index bins) {
  const Eigen::VectorXd wv = window_values<double>(w);
  const Index half = w.half_length();
  Tfr out(x.size(), bins);
  for (Index n = 0; n < x.size(); ++n) {
    for (Index k = 0; k < bins; ++k) {
      const double f = 0.5 * double(k) / double(bins);
      std::complex<double> acc = 0;
      for (Index m = -half; m <= half; ++m) {
        if (n + m < 0 || n + m >= x.size()) continue;
        acc += wv(m + half) * x(n + m) * std::polar(1.0, -2 * kPi * f * double(m));
      }
      out(n, k) = std::norm(acc);
    }
  }
  return out;
}

Index argmax_row(const Tfr& t, Index n) {
  Index k = 0;
  t.row(n).maxCoeff(&k);
  return k;
}

}  // namespace

TEST_CASE("wvd equals the direct double sum", "[tfr][wvd]") {
  const Signal two_tones = synthesize(spec_of(16, {tone(0.1, 0, 16), tone(0.4, 0, 16)}));
  for (const Signal& x : {two_tones, random_signal(16, 1), random_signal(16, 2)}) {
    for (Index bins : {16, 24}) {
      const ComplexTfrT<double> ref = wvd_double_sum(x, bins);
      const ComplexTfrT<double> got = wvd_complex(x, bins);
      CHECK((got - ref).cwiseAbs().maxCoeff() < 1e-9);
    }
  }
}

TEST_CASE("two-tone cross term sits midway and oscillates", "[tfr][wvd]") {
  const Signal x = synthesize(spec_of(64, {tone(0.1, 0, 64), tone(0.4, 0, 64)}));
  const Tfr w = wvd(x, 64);
  const Index mid = frequency_bin(0.25, 64);
  CHECK(w(32, mid) * w(33, mid) < 0.0);
  CHECK(std::abs(w(32, mid)) > 0.5 * w.row(32).maxCoeff());
}

TEST_CASE("wvd is real up to rounding", "[tfr][wvd]") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ComplexTfrT<double> w = wvd_complex(random_signal(64, seed), 64);
    CHECK(w.imag().cwiseAbs().maxCoeff() < 1e-9 * w.real().cwiseAbs().maxCoeff());
  }
}

TEST_CASE("wvd time marginal is F |x|^2", "[tfr][wvd]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Signal x = random_signal(64, 100 + seed);
    const Tfr w = wvd(x, 64);
    const Eigen::VectorXd ratio = (w.rowwise().sum() / 64.0).array() / x.cwiseAbs2().array();
    CHECK(ratio.maxCoeff() - ratio.minCoeff() < 1e-6);
    CHECK(std::abs(ratio.mean() - 1.0) < 1e-9);
    CHECK(std::abs(w.sum() - 64.0 * x.squaredNorm()) < 1e-9 * w.cwiseAbs().sum());
  }
}

TEST_CASE("tone peaks at its bin in every method", "[tfr]") {
  const Signal x = synthesize(spec_of(64, {tone(0.25, 0, 64)}));
  const Tfr w = wvd(x, 64);
  for (Index n = 1; n < 63; ++n) CHECK(argmax_row(w, n) == 32);

  TfConfig cfg;
  cfg.bins = 64;
  for (auto m : {Method::Spectrogram, Method::Spwvd, Method::Rspwvd}) {
    const Tfr t = compute_tfr(m, x, nullptr, cfg);
    for (Index n = 8; n < 56; ++n) CHECK(std::abs(argmax_row(t, n) - 32) <= 1);
  }
}

TEST_CASE("wvd rejects bad input", "[tfr][wvd]") {
  CHECK_THROWS_AS(wvd(random_signal(16, 0), 4), ConfigError);
  Signal x = random_signal(16, 0);
  x(2) = {INFINITY, 0};
  CHECK_THROWS_AS(wvd(x, 16), ValidationError);
}

TEST_CASE("spwvd with delta g and maximal rectangular h is the wvd", "[tfr][spwvd]") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Signal x = random_signal(40, seed);
    const Tfr a = spwvd(x, {WindowShape::Rectangular, 1}, {WindowShape::Rectangular, 79}, 64);
    CHECK((a - wvd(x, 64)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("spwvd suppresses the two-tone cross term", "[tfr][spwvd]") {
  const Signal x = synthesize(spec_of(64, {tone(0.1, 0, 64), tone(0.4, 0, 64)}));
  const Tfr w = wvd(x, 64);
  const Tfr p = spwvd(x, {WindowShape::Hamming, 33}, {WindowShape::Hamming, 63}, 64);
  const Index lo = frequency_bin(0.2, 64);
  const Index hi = frequency_bin(0.3, 64);
  const double w_band = w.middleCols(lo, hi - lo + 1).cwiseAbs().maxCoeff();
  const double p_band = p.middleCols(lo, hi - lo + 1).cwiseAbs().maxCoeff();
  // the computed ratio is about 580
  CHECK(w_band / p_band >= 5.0);
  CHECK(spwvd_complex(x, {WindowShape::Hamming, 33}, {WindowShape::Hamming, 63}, 64)
            .imag()
            .cwiseAbs()
            .maxCoeff() < 1e-9 * p.cwiseAbs().maxCoeff());
}

TEST_CASE("spwvd in single precision tracks double", "[tfr][spwvd]") {
  const Signal x = random_signal(32, 3);
  const WindowSpec g{WindowShape::Hamming, 7};
  const WindowSpec h{WindowShape::Gaussian, 15};
  const TfrT<float> pf = spwvd(x.cast<std::complex<float>>(), g, h, 32);
  const Tfr pd = spwvd(x, g, h, 32);
  CHECK((pf.cast<double>() - pd).cwiseAbs().maxCoeff() < 1e-4 * pd.cwiseAbs().maxCoeff());
}

TEST_CASE("spectrogram equals the direct windowed DFT", "[tfr][stft]") {
  const Signal x = random_signal(32, 7);
  for (auto shape : {WindowShape::Hamming, WindowShape::Gaussian, WindowShape::Rectangular}) {
    const WindowSpec w{shape, 9};
    const Tfr s = stft_spectrogram(x, w, 16);
    CHECK((s - spectrogram_direct(x, w, 16)).cwiseAbs().maxCoeff() < 1e-9 * s.maxCoeff());
    CHECK(s.minCoeff() >= 0.0);
  }
}

TEST_CASE("spectrogram of a tone peaks at its bin", "[tfr][stft]") {
  const Signal x = synthesize(spec_of(128, {tone(0.125, 0, 128)}));
  const Tfr s = stft_spectrogram(x, {WindowShape::Hamming, 33}, 128);
  for (Index n = 16; n < 112; ++n) CHECK(argmax_row(s, n) == 32);
}

TEST_CASE("spectrogram energy obeys Parseval", "[tfr][stft]") {
  // Zero margins of one half-window keep every sample fully inside the
  // sliding window. The upper half band comes from the (-1)^n shifted signal.
  const WindowSpec w{WindowShape::Hamming, 9};
  const double w_energy = window_values<double>(w).squaredNorm();
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Signal x = random_signal(48, seed);
    x.head(4).setZero();
    x.tail(4).setZero();
    Signal flipped = x;
    for (Index n = 1; n < x.size(); n += 2) flipped(n) = -flipped(n);
    const double total = stft_spectrogram(x, w, 16).sum() + stft_spectrogram(flipped, w, 16).sum();
    const double ratio = total / (x.squaredNorm() * w_energy);
    CHECK(std::abs(ratio - 32.0) < 32.0 * 1e-6);
  }
}

TEST_CASE("spectrogram window cannot exceed the signal", "[tfr][stft]") {
  CHECK_THROWS_AS(stft_spectrogram(random_signal(16, 0), {WindowShape::Hamming, 17}, 16),
                  ValidationError);
}

TEST_CASE("axis mapping", "[tfr]") {
  CHECK(frequency_bin(0.25, 256) == 128);
  CHECK(frequency_bin(0.125, 128) == 32);
  CHECK(bin_frequency(64, 128) == 0.25);
}
