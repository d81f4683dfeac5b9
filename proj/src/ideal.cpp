#include "sharptf/ideal.hpp"

#include <algorithm>

namespace sharptf {

std::vector<TrajectorySample> trajectory(const ComponentSpec& component, Index length) {
  std::vector<TrajectorySample> out;
  for (Index n = 0; n < length; ++n) {
    if (!in_support(component.envelope, n)) continue;
    const double t = static_cast<double>(n);
    const double f = instantaneous_frequency(component.phase, t, length);
    if (!(f >= 0.0 && f < 0.5)) {
      throw ValidationError("instantaneous frequency " + std::to_string(f) + " at sample " +
                            std::to_string(n) + " outside [0, 0.5)");
    }
    const double a = envelope_value(component.envelope, t);
    out.push_back({n, f, a * a});
  }
  return out;
}

Tfr render_ideal(const SignalSpec& spec, Index bins, bool binary) {
  detail::check_bins(bins);
  validate(spec);
  Tfr out = Tfr::Zero(spec.length, bins);
  for (const auto& component : spec.components) {
    for (const auto& p : trajectory(component, spec.length)) {
      const Index k = std::clamp<Index>(frequency_bin(p.frequency, bins), 0, bins - 1);
      out(p.time, k) += binary ? 1.0 : p.weight;
    }
  }
  return out;
}

}  // namespace sharptf
