#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "sharptf/signal.hpp"
#include "sharptf/tfr.hpp"
#include "sharptf/window.hpp"

namespace sharptf {

enum class Method { Wvd, Spectrogram, Spwvd, Rspwvd, Ideal };

std::string_view to_string(Method method);

/// Throws ConfigError for unknown names.
Method parse_method(std::string_view name);

/// Transform settings shared by every method of one comparison.
struct TfConfig {
  Index bins = kDefaultBins;
  std::optional<WindowSpec> time_window;  // g; defaults to default_time_window(N)
  std::optional<WindowSpec> lag_window;   // h (also the spectrogram window); default_lag_window(N)
  double reassignment_threshold = 1e-6;
  bool binary_ideal = false;

  WindowSpec g(Index length) const { return time_window.value_or(default_time_window(length)); }
  WindowSpec h(Index length) const { return lag_window.value_or(default_lag_window(length)); }
};

/// Computes one method's TF matrix. `spec` is required for Method::Ideal and
/// ignored otherwise.
Tfr compute_tfr(Method method, const Signal& x, const SignalSpec* spec, const TfConfig& config);

}  // namespace sharptf
