#include "sharptf/signal.hpp"

#include <cmath>
#include <numbers>

namespace sharptf {

namespace {

constexpr double kGaussianSupport = 4.0;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string component_error(std::size_t index, const std::string& what) {
  return "component " + std::to_string(index) + ": " + what;
}

bool phase_matches_kind(ComponentKind kind, const PhaseLaw& phase) {
  switch (kind) {
    case ComponentKind::Tone:
    case ComponentKind::GaussianAtom:
      return std::holds_alternative<ConstantFrequency>(phase);
    case ComponentKind::LinearChirp:
      return std::holds_alternative<LinearSweep>(phase);
    case ComponentKind::SinusoidalFm:
      return std::holds_alternative<SinusoidalModulation>(phase);
  }
  return false;
}

}  // namespace

std::string_view to_string(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::Tone: return "constant-tone";
    case ComponentKind::LinearChirp: return "linear-chirp";
    case ComponentKind::SinusoidalFm: return "sinusoidal-fm";
    case ComponentKind::GaussianAtom: return "gaussian-atom";
  }
  return "unknown";
}

ComponentKind parse_component_kind(std::string_view name) {
  for (auto kind : {ComponentKind::Tone, ComponentKind::LinearChirp,
                    ComponentKind::SinusoidalFm, ComponentKind::GaussianAtom}) {
    if (to_string(kind) == name) return kind;
  }
  throw ValidationError("unknown component kind '" + std::string(name) + "'");
}

double envelope_level(const Envelope& env) {
  return std::visit([](const auto& e) { return e.level; }, env);
}

double envelope_value(const Envelope& env, double n) {
  return std::visit(
      overloaded{
          [n](const RectangularEnvelope& e) {
            return (n >= static_cast<double>(e.start) && n < static_cast<double>(e.end))
                       ? e.level
                       : 0.0;
          },
          [n](const GaussianEnvelope& e) {
            if (std::abs(n - e.center) > kGaussianSupport * e.width) return 0.0;
            const double u = (n - e.center) / e.width;
            return e.level * std::exp(-0.5 * u * u);
          }},
      env);
}

bool in_support(const Envelope& env, Index n) {
  return std::visit(
      overloaded{[n](const RectangularEnvelope& e) { return n >= e.start && n < e.end; },
                 [n](const GaussianEnvelope& e) {
                   return std::abs(static_cast<double>(n) - e.center) <=
                          kGaussianSupport * e.width;
                 }},
      env);
}

double instantaneous_frequency(const PhaseLaw& phase, double n, Index length) {
  return std::visit(
      overloaded{
          [](const ConstantFrequency& p) { return p.f0; },
          [n, length](const LinearSweep& p) {
            const double span = static_cast<double>(std::max<Index>(length - 1, 1));
            return p.f_start + (p.f_end - p.f_start) * n / span;
          },
          [n](const SinusoidalModulation& p) {
            return p.f_center + p.deviation * std::sin(2.0 * std::numbers::pi * p.rate * n);
          }},
      phase);
}

void validate(const ComponentSpec& c, Index length, std::size_t index) {
  if (!phase_matches_kind(c.kind, c.phase)) {
    throw ValidationError(component_error(
        index, "phase parameters do not match kind '" + std::string(to_string(c.kind)) + "'"));
  }
  const double level = envelope_level(c.envelope);
  if (!(level > 0.0) || !std::isfinite(level)) {
    throw ValidationError(component_error(index, "envelope level must be positive"));
  }
  if (const auto* rect = std::get_if<RectangularEnvelope>(&c.envelope)) {
    if (rect->end <= rect->start) {
      throw ValidationError(component_error(index, "rectangular envelope has end <= start"));
    }
  } else {
    const auto& gauss = std::get<GaussianEnvelope>(c.envelope);
    if (!(gauss.width > 0.0) || !std::isfinite(gauss.width) || !std::isfinite(gauss.center)) {
      throw ValidationError(component_error(index, "gaussian envelope width must be positive"));
    }
  }
  if (const auto* fm = std::get_if<SinusoidalModulation>(&c.phase)) {
    if (fm->deviation < 0.0 || fm->rate < 0.0) {
      throw ValidationError(component_error(index, "FM deviation and rate must be >= 0"));
    }
  }

  bool any = false;
  for (Index n = 0; n < length; ++n) {
    if (!in_support(c.envelope, n)) continue;
    any = true;
    const double f = instantaneous_frequency(c.phase, static_cast<double>(n), length);
    if (!(f >= 0.0 && f < 0.5)) {
      throw ValidationError(component_error(
          index, "instantaneous frequency " + std::to_string(f) + " at sample " +
                     std::to_string(n) + " outside [0, 0.5)"));
    }
  }
  if (!any) {
    throw ValidationError(component_error(index, "envelope support does not intersect [0, N)"));
  }
}

void validate(const SignalSpec& spec) {
  if (spec.length < 2) {
    throw ValidationError("signal length must be >= 2, got " + std::to_string(spec.length));
  }
  if (spec.components.empty()) {
    throw ValidationError("signal spec has no components");
  }
  if (spec.components.size() > static_cast<std::size_t>(kMaxComponents)) {
    throw ValidationError("signal spec has " + std::to_string(spec.components.size()) +
                          " components, at most " + std::to_string(kMaxComponents) +
                          " allowed");
  }
  for (std::size_t k = 0; k < spec.components.size(); ++k) {
    validate(spec.components[k], spec.length, k);
  }
}

Signal synthesize(const SignalSpec& spec) {
  validate(spec);
  const Index length = spec.length;
  Signal x = Signal::Zero(length);
  for (const auto& c : spec.components) {
    double phase = 0.0;
    double prev_f = instantaneous_frequency(c.phase, 0.0, length);
    for (Index n = 0; n < length; ++n) {
      const double f = instantaneous_frequency(c.phase, static_cast<double>(n), length);
      if (n > 0) phase += std::numbers::pi * (prev_f + f);
      prev_f = f;
      const double a = envelope_value(c.envelope, static_cast<double>(n));
      if (a != 0.0) x(n) += std::polar(a, phase);
    }
  }
  return x;
}

}  // namespace sharptf
