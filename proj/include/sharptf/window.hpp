#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "sharptf/error.hpp"

namespace sharptf {

enum class WindowShape { Hamming, Gaussian, Rectangular };

inline std::string_view to_string(WindowShape shape) {
  switch (shape) {
    case WindowShape::Hamming: return "hamming";
    case WindowShape::Gaussian: return "gaussian";
    case WindowShape::Rectangular: return "rectangular";
  }
  return "unknown";
}

inline WindowShape parse_window_shape(std::string_view name) {
  for (auto s : {WindowShape::Hamming, WindowShape::Gaussian, WindowShape::Rectangular}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown window shape '" + std::string(name) + "'");
}

/// Odd-length symmetric window with peak value 1 at its center sample.
/// Used both as the time-smoothing window g and the lag window h.
struct WindowSpec {
  WindowShape shape = WindowShape::Hamming;
  Eigen::Index length = 1;

  Eigen::Index half_length() const { return (length - 1) / 2; }
  bool operator==(const WindowSpec&) const = default;
};

/// Gaussian windows fall to this value at their end samples.
inline constexpr double kGaussianEdgeValue = 0.005;

inline Eigen::Index make_odd(Eigen::Index n) { return n % 2 == 0 ? n + 1 : n; }

/// Default g: hamming of length N/8 + 1, made odd.
inline WindowSpec default_time_window(Eigen::Index signal_length) {
  return {WindowShape::Hamming, make_odd(signal_length / 8 + 1)};
}

/// Default h: gaussian of length N/2 + 1, made odd. A hamming lag window
/// ends on a 0.08 pedestal that biases the frequency reassignment.
inline WindowSpec default_lag_window(Eigen::Index signal_length) {
  return {WindowShape::Gaussian, make_odd(signal_length / 2 + 1)};
}

inline void validate(const WindowSpec& w, Eigen::Index signal_length) {
  if (w.length < 1 || w.length % 2 == 0) {
    throw ConfigError("window length must be odd and positive, got " +
                      std::to_string(w.length));
  }
  if (w.length > 2 * signal_length - 1) {
    throw ConfigError("window length " + std::to_string(w.length) +
                      " exceeds 2N-1 = " + std::to_string(2 * signal_length - 1));
  }
}

/// Samples w[m] for m = -M..M, stored at index m + M.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> window_values(const WindowSpec& w) {
  const Eigen::Index half = w.half_length();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(w.length);
  for (Eigen::Index i = 0; i < w.length; ++i) {
    const double m = static_cast<double>(i - half);
    double v = 1.0;
    if (half > 0) {
      switch (w.shape) {
        case WindowShape::Hamming:
          v = 0.54 + 0.46 * std::cos(std::numbers::pi * m / static_cast<double>(half));
          break;
        case WindowShape::Gaussian: {
          const double u = m / static_cast<double>(half);
          v = std::exp(std::log(kGaussianEdgeValue) * u * u);
          break;
        }
        case WindowShape::Rectangular:
          break;
      }
    }
    out(i) = static_cast<Scalar>(v);
  }
  return out;
}

/// dw/dm sampled like window_values. Closed form for hamming and gaussian;
/// central differences (zero outside the window) for rectangular.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> window_derivative(const WindowSpec& w) {
  const Eigen::Index half = w.half_length();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(w.length);
  if (w.shape == WindowShape::Rectangular || half == 0) {
    const auto values = window_values<double>(w);
    auto at = [&](Eigen::Index i) { return (i < 0 || i >= w.length) ? 0.0 : values(i); };
    for (Eigen::Index i = 0; i < w.length; ++i) {
      out(i) = static_cast<Scalar>(0.5 * (at(i + 1) - at(i - 1)));
    }
    return out;
  }
  const double hd = static_cast<double>(half);
  for (Eigen::Index i = 0; i < w.length; ++i) {
    const double m = static_cast<double>(i - half);
    double d = 0.0;
    if (w.shape == WindowShape::Hamming) {
      d = -0.46 * std::numbers::pi / hd * std::sin(std::numbers::pi * m / hd);
    } else {
      const double c = std::log(kGaussianEdgeValue) / (hd * hd);
      d = 2.0 * c * m * std::exp(c * m * m);
    }
    out(i) = static_cast<Scalar>(d);
  }
  // The window jumps from its edge value to zero just outside; that step
  // enters the derivative as an impulse at each end.
  const double edge = window_values<double>(w)(0);
  out(0) += static_cast<Scalar>(edge);
  out(w.length - 1) -= static_cast<Scalar>(edge);
  return out;
}

}  // namespace sharptf
