#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sharptf/tfr.hpp"

namespace sharptf {

struct ReassignmentOptions {
  /// Cells with |P| below threshold * max|P| are not moved.
  double threshold = 1e-6;
};

/// The smoothed distribution together with the per-cell displacement fields
/// (in samples and in frequency bins) and the reassigned result.
template <typename Real>
struct ReassignedTfr {
  TfrT<Real> smoothed;
  TfrT<Real> time_shift;
  TfrT<Real> freq_shift;
  TfrT<Real> reassigned;
};

/// Reassigned SPWVD. Besides P = spwvd(x, g, h) two auxiliary distributions
/// are formed in the same pass: P_tg with s*g(s) as time window and P_dh with
/// dh/dm as lag window. Each cell (n, k) moves to
///   n + P_tg / P,   k - F * Im(P_dh) / (2 pi P),
/// rounded to the nearest cell and clipped to the grid; its value is added
/// there, so the total sum is conserved.
template <typename Derived>
ReassignedTfr<typename Derived::Scalar::value_type> reassign_spwvd_fields(
    const Eigen::MatrixBase<Derived>& x, const WindowSpec& g, const WindowSpec& h, Index bins,
    const ReassignmentOptions& options = {}) {
  using Real = typename Derived::Scalar::value_type;
  using Complex = std::complex<Real>;
  detail::check_bins(bins);
  validate_signal(x);
  const Index n_samples = x.size();
  validate(g, n_samples);
  validate(h, n_samples);

  const auto gw = detail::unit_sum<Real>(window_values<Real>(g));
  const auto hw = window_values<Real>(h);
  const auto dh = window_derivative<Real>(h);
  const Index g_half = g.half_length();
  const Index h_half = h.half_length();

  ReassignedTfr<Real> r;
  r.smoothed.resize(n_samples, bins);
  r.time_shift.setZero(n_samples, bins);
  r.freq_shift.setZero(n_samples, bins);
  TfrT<Real> freq_moment(n_samples, bins);

  detail::LagTransform<Real> base(bins);
  detail::LagTransform<Real> timed(bins);
  detail::LagTransform<Real> derived(bins);
  for (Index n = 0; n < n_samples; ++n) {
    base.clear();
    timed.clear();
    derived.clear();
    for (Index m = 0; m <= std::min(h_half, n_samples - 1); ++m) {
      Complex acc(0, 0);
      Complex acc_t(0, 0);
      const Index s_lo = std::max(-g_half, m - n);
      const Index s_hi = std::min(g_half, n_samples - 1 - n - m);
      for (Index s = s_lo; s <= s_hi; ++s) {
        const Complex v = gw(s + g_half) * x(n + s + m) * std::conj(x(n + s - m));
        acc += v;
        acc_t += static_cast<Real>(s) * v;
      }
      base.add(m, hw(h_half + m) * acc);
      timed.add(m, hw(h_half + m) * acc_t);
      derived.add(m, dh(h_half + m) * acc);
      if (m > 0) {
        base.add(-m, hw(h_half - m) * std::conj(acc));
        timed.add(-m, hw(h_half - m) * std::conj(acc_t));
        derived.add(-m, dh(h_half - m) * std::conj(acc));
      }
    }
    const auto& p = base.forward();
    for (Index k = 0; k < bins; ++k) r.smoothed(n, k) = p[k].real();
    const auto& pt = timed.forward();
    for (Index k = 0; k < bins; ++k) r.time_shift(n, k) = pt[k].real();
    const auto& pd = derived.forward();
    for (Index k = 0; k < bins; ++k) freq_moment(n, k) = pd[k].imag();
  }

  const Real peak = r.smoothed.cwiseAbs().maxCoeff();
  const Real cutoff = static_cast<Real>(options.threshold) * peak;
  const Real freq_scale = -static_cast<Real>(bins) / (Real(2) * std::numbers::pi_v<Real>);
  r.reassigned.setZero(n_samples, bins);
  for (Index n = 0; n < n_samples; ++n) {
    for (Index k = 0; k < bins; ++k) {
      const Real value = r.smoothed(n, k);
      if (value == Real(0) || std::abs(value) < cutoff) {
        r.time_shift(n, k) = 0;
        r.reassigned(n, k) += value;
        continue;
      }
      const Real dt = r.time_shift(n, k) / value;
      const Real dk = freq_scale * freq_moment(n, k) / value;
      r.time_shift(n, k) = dt;
      r.freq_shift(n, k) = dk;
      const Real tn = std::clamp<Real>(std::round(static_cast<Real>(n) + dt), 0,
                                       static_cast<Real>(n_samples - 1));
      const Real tk = std::clamp<Real>(std::round(static_cast<Real>(k) + dk), 0,
                                       static_cast<Real>(bins - 1));
      r.reassigned(static_cast<Index>(tn), static_cast<Index>(tk)) += value;
    }
  }
  return r;
}

template <typename Derived>
TfrT<typename Derived::Scalar::value_type> reassign_spwvd(const Eigen::MatrixBase<Derived>& x,
                                                          const WindowSpec& g,
                                                          const WindowSpec& h, Index bins,
                                                          const ReassignmentOptions& options = {}) {
  return reassign_spwvd_fields(x, g, h, bins, options).reassigned;
}

}  // namespace sharptf
