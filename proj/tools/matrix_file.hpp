#pragma once

// MatrixFile: the on-disk JSON format for dense complex matrices.
//   {"rows": R, "cols": C, "data": [[re, im], ...]}   (row-major)
// Doubles are serialized round-trip exact, so write-then-read reproduces a
// matrix bitwise.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace posprod_cli {

struct MatrixFileData {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // interleaved [re, im], row-major
};

inline std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string fnv1a64_hex(const std::string& bytes) {
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return out;
}

inline MatrixFileData parse_matrix_json(const nlohmann::json& j,
                                        const std::string& where) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data") || !j["data"].is_array()) {
    throw std::runtime_error(where + ": not a matrix file");
  }
  MatrixFileData m;
  m.rows = j["rows"].get<std::size_t>();
  m.cols = j["cols"].get<std::size_t>();
  if (m.rows == 0 || m.cols == 0) {
    throw std::runtime_error(where + ": dimensions must be positive");
  }
  if (j["data"].size() != m.rows * m.cols) {
    throw std::runtime_error(where + ": data length " +
                             std::to_string(j["data"].size()) +
                             " does not match rows*cols");
  }
  m.data.reserve(2 * m.rows * m.cols);
  for (const nlohmann::json& entry : j["data"]) {
    if (!entry.is_array() || entry.size() != 2) {
      throw std::runtime_error(where + ": entries must be [re, im] pairs");
    }
    const double re = entry[0].get<double>();
    const double im = entry[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw std::runtime_error(where + ": non-finite entry");
    }
    m.data.push_back(re);
    m.data.push_back(im);
  }
  return m;
}

inline MatrixFileData read_matrix_file(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file_bytes(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return parse_matrix_json(j, path);
}

inline nlohmann::ordered_json matrix_to_json(const MatrixFileData& m) {
  nlohmann::ordered_json j;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  nlohmann::ordered_json data = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < m.rows * m.cols; ++k) {
    data.push_back({m.data[2 * k], m.data[2 * k + 1]});
  }
  j["data"] = std::move(data);
  return j;
}

inline void write_matrix_file(const std::string& path,
                              const MatrixFileData& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << matrix_to_json(m).dump(2) << "\n";
}

}  // namespace posprod_cli
