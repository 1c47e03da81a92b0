#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "gwmaj/matrix.hpp"

namespace gwmaj {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Matrix file format:
//   { "rows": n, "cols": m, "data": [["p/q", ...], ...] }
// Entries are integer or fraction strings ("3", "-1/2"); integer JSON
// numbers are accepted on input. Writers always emit strings so values
// survive any JSON round trip exactly.

inline Matrix matrix_from_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("matrix document must be a JSON object");
  for (const char* key : {"rows", "cols", "data"}) {
    if (!doc.contains(key)) {
      throw ParseError(std::string("matrix document is missing \"") + key + "\"");
    }
  }
  if (!doc["rows"].is_number_integer() || !doc["cols"].is_number_integer()) {
    throw ParseError("\"rows\" and \"cols\" must be integers");
  }
  const long long rows = doc["rows"].get<long long>();
  const long long cols = doc["cols"].get<long long>();
  if (rows < 1 || cols < 1 || rows > 4096 || cols > 4096) {
    throw ParseError("\"rows\" and \"cols\" must be in [1, 4096]");
  }
  const Json& data = doc["data"];
  if (!data.is_array() || data.size() != static_cast<std::size_t>(rows)) {
    throw ParseError("\"data\" must be an array of " + std::to_string(rows) + " rows");
  }
  Matrix result(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < result.rows(); ++i) {
    const Json& row = data[i];
    if (!row.is_array() || row.size() != result.cols()) {
      throw ParseError("row " + std::to_string(i) + " must be an array of " +
                       std::to_string(cols) + " entries");
    }
    for (std::size_t j = 0; j < result.cols(); ++j) {
      const Json& entry = row[j];
      const std::string where = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (entry.is_string()) {
        try {
          result(i, j) = parse_rational(entry.get<std::string>());
        } catch (const ParseError& error) {
          throw ParseError(where + ": " + error.what());
        }
      } else if (entry.is_number_integer()) {
        result(i, j) = Rational(mpz_class(std::to_string(entry.get<long long>())));
      } else {
        throw ParseError(where + ": " + entry.dump() + " is not an integer or fraction string");
      }
    }
  }
  return result;
}

inline OrderedJson matrix_to_json(const Matrix& m) {
  OrderedJson doc;
  doc["rows"] = m.rows();
  doc["cols"] = m.cols();
  OrderedJson data = OrderedJson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    OrderedJson row = OrderedJson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    data.push_back(std::move(row));
  }
  doc["data"] = std::move(data);
  return doc;
}

inline std::string dump_json(const OrderedJson& doc) { return doc.dump(2) + "\n"; }

inline Json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& error) {
    throw ParseError(origin + ": invalid JSON: " + error.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << text;
  if (!out) throw ParseError(path + ": write failed");
}

inline Matrix read_matrix_file(const std::string& path) {
  try {
    return matrix_from_json(parse_json_text(read_text_file(path), path));
  } catch (const ParseError& error) {
    const std::string what = error.what();
    if (what.rfind(path, 0) == 0) throw;
    throw ParseError(path + ": " + what);
  }
}

inline void write_matrix_file(const std::string& path, const Matrix& m) {
  write_text_file(path, dump_json(matrix_to_json(m)));
}

}  // namespace gwmaj
