#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "sharptf/error.hpp"

namespace sharptf {

using Index = Eigen::Index;

// Samples are indexed by integer time n; frequencies are in cycles/sample on
// [0, 0.5).
template <typename Scalar>
using SignalT = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;
using Signal = SignalT<double>;

inline constexpr int kMaxComponents = 4;
inline constexpr Index kDefaultLength = 256;

/// Throws ValidationError unless x has at least two samples, all finite.
template <typename Derived>
void validate_signal(const Eigen::MatrixBase<Derived>& x) {
  if (x.size() < 2) {
    throw ValidationError("signal must have at least 2 samples, got " +
                          std::to_string(x.size()));
  }
  for (Index n = 0; n < x.size(); ++n) {
    if (!std::isfinite(x(n).real()) || !std::isfinite(x(n).imag())) {
      throw ValidationError("signal sample " + std::to_string(n) +
                            " is not finite");
    }
  }
}

enum class ComponentKind { Tone, LinearChirp, SinusoidalFm, GaussianAtom };

std::string_view to_string(ComponentKind kind);
ComponentKind parse_component_kind(std::string_view name);

/// Constant level on the half-open sample range [start, end).
struct RectangularEnvelope {
  std::int64_t start = 0;
  std::int64_t end = 0;
  double level = 1.0;
  bool operator==(const RectangularEnvelope&) const = default;
};

/// level * exp(-((n - center) / width)^2 / 2), supported on |n - center| <= 4 width.
struct GaussianEnvelope {
  double center = 0.0;
  double width = 1.0;
  double level = 1.0;
  bool operator==(const GaussianEnvelope&) const = default;
};

using Envelope = std::variant<RectangularEnvelope, GaussianEnvelope>;

/// Tone and gaussian atom.
struct ConstantFrequency {
  double f0 = 0.0;
  bool operator==(const ConstantFrequency&) const = default;
};

/// IF sweeps linearly from f_start at n = 0 to f_end at n = N - 1.
struct LinearSweep {
  double f_start = 0.0;
  double f_end = 0.0;
  bool operator==(const LinearSweep&) const = default;
};

/// IF = f_center + deviation * sin(2 pi rate n), rate in cycles/sample.
struct SinusoidalModulation {
  double f_center = 0.0;
  double deviation = 0.0;
  double rate = 0.0;
  bool operator==(const SinusoidalModulation&) const = default;
};

using PhaseLaw = std::variant<ConstantFrequency, LinearSweep, SinusoidalModulation>;

struct ComponentSpec {
  ComponentKind kind = ComponentKind::Tone;
  Envelope envelope = RectangularEnvelope{};
  PhaseLaw phase = ConstantFrequency{};
  bool operator==(const ComponentSpec&) const = default;
};

struct SignalSpec {
  Index length = kDefaultLength;
  std::uint64_t seed = 0;
  std::vector<ComponentSpec> components;
  bool operator==(const SignalSpec&) const = default;
};

double envelope_level(const Envelope& env);
double envelope_value(const Envelope& env, double n);
bool in_support(const Envelope& env, Index n);
double instantaneous_frequency(const PhaseLaw& phase, double n, Index length);

/// Throws ValidationError naming the first offending component.
void validate(const ComponentSpec& component, Index length, std::size_t index = 0);
void validate(const SignalSpec& spec);

/// Sum over components of a_k[n] exp(j phi_k[n]). The phase is the
/// trapezoidal running sum of 2 pi IF, so the central difference of the
/// unwrapped phase reproduces any linear IF law exactly.
Signal synthesize(const SignalSpec& spec);

/// Discrete analytic signal of real(x). The imaginary part of x is ignored, so
/// applying the operation twice gives the same result as applying it once.
template <typename Derived>
SignalT<typename Derived::Scalar::value_type> analytic_signal(
    const Eigen::MatrixBase<Derived>& x) {
  using Real = typename Derived::Scalar::value_type;
  using Complex = std::complex<Real>;
  validate_signal(x);
  const Index n = x.size();

  std::vector<Complex> time(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) time[i] = Complex(x(i).real(), Real(0));

  Eigen::FFT<Real> fft;
  std::vector<Complex> spec;
  fft.fwd(spec, time);
  // DC and Nyquist keep unit weight; 1..ceil(n/2)-1 doubled; the rest zeroed.
  const Index half = n / 2;
  for (Index k = 1; k < n; ++k) {
    if (k < (n + 1) / 2) {
      spec[k] *= Real(2);
    } else if (!(n % 2 == 0 && k == half)) {
      spec[k] = Complex(0, 0);
    }
  }
  fft.inv(time, spec);

  SignalT<Real> out(n);
  for (Index i = 0; i < n; ++i) out(i) = time[i];
  return out;
}

}  // namespace sharptf
