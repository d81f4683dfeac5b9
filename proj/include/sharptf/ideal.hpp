#pragma once

#include <vector>

#include "sharptf/signal.hpp"
#include "sharptf/tfr.hpp"

namespace sharptf {

/// One point of a component's ideal trajectory.
struct TrajectorySample {
  Index time = 0;
  double frequency = 0.0;  // cycles/sample, in [0, 0.5)
  double weight = 0.0;     // a_k[n]^2
};

/// Trajectory of one component over the samples in its envelope support.
std::vector<TrajectorySample> trajectory(const ComponentSpec& component, Index length);

/// Ideal TF image of a spec on the shared T x F grid: each component adds
/// a_k[n]^2 (or 1 when binary) at bin round(2 F f_k[n]) of row n.
Tfr render_ideal(const SignalSpec& spec, Index bins, bool binary = false);

}  // namespace sharptf
