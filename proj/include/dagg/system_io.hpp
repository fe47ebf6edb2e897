#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dagg/aggregation.hpp"

namespace dagg {

using json = nlohmann::json;

namespace detail {

inline BigInt json_to_bigint(const json& v, const char* where) {
  if (v.is_number_integer()) {
    // 64-bit JSON integers promote losslessly.
    return BigInt(std::to_string(v.get<long long>()));
  }
  if (v.is_string()) {
    try {
      return BigInt(v.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw ParseError(std::string("system file: ") + where +
                   " must be an integer");
}

}  // namespace detail

/// Parse {"A": [[...]], "b": [...], "u": [...]} into a system. A must be
/// rectangular, b as long as A has rows, u (optional) as long as A has
/// columns and nonnegative.
inline DiophantineSystem parse_system(const json& doc) {
  if (!doc.is_object() || !doc.contains("A") || !doc.contains("b"))
    throw ParseError("system file: need keys 'A' and 'b'");
  const json& ja = doc["A"];
  if (!ja.is_array() || ja.empty() || !ja[0].is_array() || ja[0].empty())
    throw ParseError("system file: 'A' must be a nonempty 2d array");
  const std::size_t m = ja.size(), n = ja[0].size();
  DiophantineSystem sys;
  sys.A = IntMatrix(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    if (!ja[i].is_array() || ja[i].size() != n)
      throw ParseError("system file: 'A' is ragged");
    for (std::size_t j = 0; j < n; ++j)
      sys.A.at(i, j) = detail::json_to_bigint(ja[i][j], "A entry");
  }
  const json& jb = doc["b"];
  if (!jb.is_array() || jb.size() != m)
    throw ParseError("system file: 'b' must have one entry per row of A");
  sys.b.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    sys.b[i] = detail::json_to_bigint(jb[i], "b entry");
  if (doc.contains("u") && !doc["u"].is_null()) {
    const json& ju = doc["u"];
    if (!ju.is_array() || ju.size() != n)
      throw ParseError("system file: 'u' must have one entry per column of A");
    IntVec u(n);
    for (std::size_t j = 0; j < n; ++j) {
      u[j] = detail::json_to_bigint(ju[j], "u entry");
      if (u[j] < 0) throw ParseError("system file: 'u' must be nonnegative");
    }
    sys.u = std::move(u);
  }
  return sys;
}

inline DiophantineSystem load_system(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open system file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError(std::string("system file is not valid JSON: ") +
                     e.what());
  }
  return parse_system(doc);
}

inline json to_json(const RatMatrix& T) {
  json rows = json::array();
  for (std::size_t i = 0; i < T.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < T.cols(); ++j)
      row.push_back(rat_to_string(T.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline RatMatrix rat_matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty())
    throw ParseError("T: expected a nonempty array of rows");
  std::size_t n = rows[0].size();
  RatMatrix T(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      throw ParseError("T: ragged rows");
    for (std::size_t j = 0; j < n; ++j)
      T.at(i, j) = parse_rat(rows[i][j].get<std::string>());
  }
  return T;
}

inline json provenance_to_json(const Provenance& p) {
  json q = json::array();
  for (const auto& x : p.moduli) q.push_back(x.get_str());
  json h = json::array();
  for (const auto& vec : p.separators) {
    json hv = json::array();
    for (const auto& x : vec) hv.push_back(x.get_str());
    h.push_back(hv);
  }
  json out;
  out["M"] = p.bound_M.get_str();
  out["C"] = p.threshold_C.get_str();
  out["q"] = q;
  out["h"] = h;
  out["r"] = p.lineality_dim ? json(*p.lineality_dim) : json(nullptr);
  return out;
}

inline json aggregation_to_json(const AggregationMatrix& agg) {
  json out;
  out["kind"] = agg.kind == AggregationKind::Strong ? "strong" : "weak";
  out["k"] = agg.size;
  out["T"] = to_json(agg.T);
  out["provenance"] = provenance_to_json(agg.provenance);
  if (agg.introduced_bounds) {
    json u = json::array();
    for (const auto& x : *agg.introduced_bounds) u.push_back(x.get_str());
    out["introduced_bounds"] = u;
  }
  out["verdict"] = "ok";
  return out;
}

}  // namespace dagg
