#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sharptf/signal.hpp"
#include "sharptf/tfr.hpp"

namespace sharptf {

// SignalSpec JSON (schema in docs/signal_spec.schema.json):
//   { "length": 256, "seed": 0, "components": [
//       { "kind": "linear-chirp",
//         "envelope": { "type": "rectangular", "start": 0, "end": 256, "level": 1 },
//         "phase": { "f_start": 0.1, "f_end": 0.4 } } ] }
nlohmann::json to_json(const SignalSpec& spec);

/// Parses and validates. Errors name the offending field or component.
SignalSpec spec_from_json(const nlohmann::json& j);
SignalSpec read_spec(const std::filesystem::path& path);
void write_spec(const std::filesystem::path& path, const SignalSpec& spec);

/// Compact single-line JSON; equal specs give equal strings.
std::string canonical_string(const SignalSpec& spec);

/// CSV with header `index,re,im` and 17 significant digits per value.
std::string signal_to_csv(const Signal& x);
void write_signal_csv(const std::filesystem::path& path, const Signal& x);
Signal read_signal_csv(const std::filesystem::path& path);

/// Mono 16-bit PCM WAV segment; sample values are s / 32768 with zero
/// imaginary part.
Signal load_wav_segment(const std::filesystem::path& path, Index offset, Index length);

/// Total number of samples in a mono 16-bit PCM WAV file.
Index wav_sample_count(const std::filesystem::path& path);

struct TfrFile {
  Tfr values;
  std::string method;
};

// Binary TF matrix: one JSON header line
//   {"T":..,"F":..,"axis":"...","method":"...","dtype":"float64-le","order":"row-major"}
// followed by T*F little-endian doubles, row n = time sample n.
void write_tfr(const std::filesystem::path& path, const Tfr& values, std::string_view method);
TfrFile read_tfr(const std::filesystem::path& path);

}  // namespace sharptf
