#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "affine_moduli/errors.hpp"
#include "affine_moduli/tensor.hpp"

namespace affine_moduli {

// Flat interchange document for coefficient tensors. Coefficients are written
// as decimals with 17 significant digits, which round-trip doubles
// bit-exactly; emission is locale-independent and fully deterministic.
struct TensorDocument {
  std::string schema_version = "affine-moduli/1";
  int m = 0;
  std::vector<double> coeffs;
  std::map<std::string, std::string> metadata;
};

inline TensorDocument from_christoffel(const Christoffel& g,
                                       std::map<std::string, std::string> metadata = {}) {
  TensorDocument doc;
  doc.m = g.m;
  doc.coeffs = g.coeffs;
  doc.metadata = std::move(metadata);
  return doc;
}

inline Christoffel to_christoffel(const TensorDocument& doc) {
  return Christoffel(doc.m, doc.coeffs);
}

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string escape_json(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace detail

inline std::string emit(const TensorDocument& doc) {
  if (doc.coeffs.size() != static_cast<size_t>(doc.m) * doc.m * doc.m)
    throw DimensionMismatch("emit: coefficient count must be m^3");
  for (double v : doc.coeffs)
    if (!std::isfinite(v)) throw NonFinite("emit: non-finite coefficient");
  std::string out;
  out += "{\n";
  out += "  \"schema_version\": \"" + detail::escape_json(doc.schema_version) + "\",\n";
  out += "  \"m\": " + std::to_string(doc.m) + ",\n";
  out += "  \"coeffs\": [\n";
  for (size_t i = 0; i < doc.coeffs.size(); ++i) {
    out += "    " + detail::format_double(doc.coeffs[i]);
    if (i + 1 < doc.coeffs.size()) out += ",";
    out += "\n";
  }
  out += "  ],\n";
  out += "  \"metadata\": {";
  bool first = true;
  for (const auto& [k, v] : doc.metadata) {
    out += first ? "\n" : ",\n";
    out += "    \"" + detail::escape_json(k) + "\": \"" + detail::escape_json(v) + "\"";
    first = false;
  }
  out += first ? "}\n" : "\n  }\n";
  out += "}\n";
  return out;
}

inline TensorDocument parse(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("parse: invalid JSON: ") + e.what());
  }
  TensorDocument doc;
  try {
    if (!j.is_object()) throw ParseError("parse: top-level value must be an object");
    if (!j.contains("schema_version") || !j["schema_version"].is_string())
      throw ParseError("parse: missing string field 'schema_version'");
    doc.schema_version = j["schema_version"].get<std::string>();
    if (doc.schema_version != "affine-moduli/1")
      throw ParseError("parse: unsupported schema_version '" + doc.schema_version + "'");
    if (!j.contains("m") || !j["m"].is_number_integer())
      throw ParseError("parse: missing integer field 'm'");
    doc.m = j["m"].get<int>();
    if (doc.m < 1) throw ParseError("parse: field 'm' must be >= 1");
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
      throw ParseError("parse: missing array field 'coeffs'");
    for (const auto& v : j["coeffs"]) {
      if (!v.is_number()) throw ParseError("parse: field 'coeffs' must hold numbers");
      doc.coeffs.push_back(v.get<double>());
    }
    if (doc.coeffs.size() != static_cast<size_t>(doc.m) * doc.m * doc.m)
      throw ParseError("parse: field 'coeffs' must hold exactly m^3 values");
    if (j.contains("metadata")) {
      if (!j["metadata"].is_object())
        throw ParseError("parse: field 'metadata' must be an object");
      for (const auto& [k, v] : j["metadata"].items()) {
        if (!v.is_string())
          throw ParseError("parse: metadata values must be strings");
        doc.metadata[k] = v.get<std::string>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("parse: malformed document: ") + e.what());
  }
  for (double v : doc.coeffs)
    if (!std::isfinite(v)) throw NonFinite("parse: non-finite coefficient");
  return doc;
}

}  // namespace affine_moduli
