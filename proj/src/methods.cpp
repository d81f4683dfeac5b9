#include "sharptf/methods.hpp"

#include "sharptf/ideal.hpp"
#include "sharptf/reassign.hpp"

namespace sharptf {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Wvd: return "wvd";
    case Method::Spectrogram: return "spectrogram";
    case Method::Spwvd: return "spwvd";
    case Method::Rspwvd: return "rspwvd";
    case Method::Ideal: return "ideal";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (auto m : {Method::Wvd, Method::Spectrogram, Method::Spwvd, Method::Rspwvd, Method::Ideal}) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown method '" + std::string(name) +
                    "' (expected wvd, spectrogram, spwvd, rspwvd or ideal)");
}

Tfr compute_tfr(Method method, const Signal& x, const SignalSpec* spec, const TfConfig& config) {
  const Index length = x.size();
  switch (method) {
    case Method::Wvd:
      return wvd(x, config.bins);
    case Method::Spectrogram:
      return stft_spectrogram(x, config.h(length), config.bins);
    case Method::Spwvd:
      return spwvd(x, config.g(length), config.h(length), config.bins);
    case Method::Rspwvd:
      return reassign_spwvd(x, config.g(length), config.h(length), config.bins,
                            ReassignmentOptions{config.reassignment_threshold});
    case Method::Ideal:
      if (spec == nullptr) throw ConfigError("method 'ideal' needs a signal spec input");
      return render_ideal(*spec, config.bins, config.binary_ideal);
  }
  throw ConfigError("unsupported method");
}

}  // namespace sharptf
