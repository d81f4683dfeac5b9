#include <fstream>
#include <sstream>

#include "sharptf/io.hpp"

namespace sharptf {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw ValidationError(where + ": missing field '" + name + "'");
  return *it;
}

double number(const json& j, const char* name, const std::string& where) {
  const json& v = field(j, name, where);
  if (!v.is_number()) throw ValidationError(where + ": field '" + name + "' must be a number");
  return v.get<double>();
}

std::int64_t integer(const json& j, const char* name, const std::string& where) {
  const json& v = field(j, name, where);
  if (!v.is_number_integer()) {
    throw ValidationError(where + ": field '" + name + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

json envelope_json(const Envelope& env) {
  return std::visit(
      overloaded{[](const RectangularEnvelope& e) {
                   return json{{"type", "rectangular"},
                               {"start", e.start},
                               {"end", e.end},
                               {"level", e.level}};
                 },
                 [](const GaussianEnvelope& e) {
                   return json{{"type", "gaussian"},
                               {"center", e.center},
                               {"width", e.width},
                               {"level", e.level}};
                 }},
      env);
}

json phase_json(const PhaseLaw& phase) {
  return std::visit(
      overloaded{[](const ConstantFrequency& p) { return json{{"f0", p.f0}}; },
                 [](const LinearSweep& p) { return json{{"f_start", p.f_start}, {"f_end", p.f_end}}; },
                 [](const SinusoidalModulation& p) {
                   return json{{"f_center", p.f_center},
                               {"deviation", p.deviation},
                               {"rate", p.rate}};
                 }},
      phase);
}

Envelope parse_envelope(const json& j, const std::string& where) {
  const json& type = field(j, "type", where);
  if (!type.is_string()) throw ValidationError(where + ": field 'type' must be a string");
  const auto name = type.get<std::string>();
  if (name == "rectangular") {
    return RectangularEnvelope{integer(j, "start", where), integer(j, "end", where),
                               number(j, "level", where)};
  }
  if (name == "gaussian") {
    return GaussianEnvelope{number(j, "center", where), number(j, "width", where),
                            number(j, "level", where)};
  }
  throw ValidationError(where + ": unknown envelope type '" + name + "'");
}

PhaseLaw parse_phase(ComponentKind kind, const json& j, const std::string& where) {
  switch (kind) {
    case ComponentKind::Tone:
    case ComponentKind::GaussianAtom:
      return ConstantFrequency{number(j, "f0", where)};
    case ComponentKind::LinearChirp:
      return LinearSweep{number(j, "f_start", where), number(j, "f_end", where)};
    case ComponentKind::SinusoidalFm:
      return SinusoidalModulation{number(j, "f_center", where), number(j, "deviation", where),
                                  number(j, "rate", where)};
  }
  throw ValidationError(where + ": unsupported kind");
}

}  // namespace

json to_json(const SignalSpec& spec) {
  json components = json::array();
  for (const auto& c : spec.components) {
    components.push_back({{"kind", std::string(to_string(c.kind))},
                          {"envelope", envelope_json(c.envelope)},
                          {"phase", phase_json(c.phase)}});
  }
  return json{{"length", spec.length}, {"seed", spec.seed}, {"components", components}};
}

SignalSpec spec_from_json(const json& j) {
  SignalSpec spec;
  spec.length = integer(j, "length", "spec");
  if (j.is_object() && j.contains("seed")) {  // optional, defaults to 0
    const json& seed = j["seed"];
    if (!seed.is_number_unsigned() &&
        !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
      throw ValidationError("spec: field 'seed' must be a non-negative integer");
    }
    spec.seed = seed.get<std::uint64_t>();
  }
  const json& components = field(j, "components", "spec");
  if (!components.is_array()) throw ValidationError("spec: field 'components' must be an array");
  for (std::size_t k = 0; k < components.size(); ++k) {
    const std::string where = "components[" + std::to_string(k) + "]";
    const json& c = components[k];
    const json& kind = field(c, "kind", where);
    if (!kind.is_string()) throw ValidationError(where + ": field 'kind' must be a string");
    ComponentSpec comp;
    try {
      comp.kind = parse_component_kind(kind.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(where + ".kind: " + e.what());
    }
    comp.envelope = parse_envelope(field(c, "envelope", where), where + ".envelope");
    comp.phase = parse_phase(comp.kind, field(c, "phase", where), where + ".phase");
    spec.components.push_back(comp);
  }
  validate(spec);
  return spec;
}

SignalSpec read_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open spec file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return spec_from_json(j);
}

void write_spec(const std::filesystem::path& path, const SignalSpec& spec) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write spec file " + path.string());
  out << to_json(spec).dump(2) << '\n';
}

std::string canonical_string(const SignalSpec& spec) { return to_json(spec).dump(); }

}  // namespace sharptf
