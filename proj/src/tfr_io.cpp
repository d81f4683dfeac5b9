#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include "sharptf/io.hpp"

namespace sharptf {

namespace {

constexpr const char* kAxis = "row n = sample n; column k = k*0.5/F cycles/sample";

void put_le(std::vector<char>& out, double v) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>(bits & 0xff));
    bits >>= 8;
  }
}

double get_le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | p[i];
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_tfr(const std::filesystem::path& path, const Tfr& values, std::string_view method) {
  const nlohmann::json header{{"T", values.rows()},       {"F", values.cols()},
                              {"axis", kAxis},             {"method", std::string(method)},
                              {"dtype", "float64-le"},     {"order", "row-major"}};
  std::vector<char> payload;
  payload.reserve(static_cast<std::size_t>(values.size()) * 8);
  for (Index n = 0; n < values.rows(); ++n) {
    for (Index k = 0; k < values.cols(); ++k) put_le(payload, values(n, k));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write TF matrix " + path.string());
  out << header.dump() << '\n';
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

TfrFile read_tfr(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open TF matrix " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw IoError(path.string() + ": missing header line");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(path.string() + ": malformed header: " + e.what());
  }
  const Index rows = header.at("T").get<Index>();
  const Index cols = header.at("F").get<Index>();
  if (rows < 0 || cols < 0) throw IoError(path.string() + ": negative dimensions");
  std::vector<unsigned char> payload(static_cast<std::size_t>(rows * cols) * 8);
  in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  if (in.gcount() != static_cast<std::streamsize>(payload.size())) {
    throw IoError(path.string() + ": truncated payload");
  }
  TfrFile file;
  file.method = header.value("method", "");
  file.values.resize(rows, cols);
  std::size_t pos = 0;
  for (Index n = 0; n < rows; ++n) {
    for (Index k = 0; k < cols; ++k, pos += 8) file.values(n, k) = get_le(payload.data() + pos);
  }
  return file;
}

}  // namespace sharptf
