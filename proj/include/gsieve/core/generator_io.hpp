#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gsieve/core/gen_set.hpp"
#include "gsieve/core/int_mat.hpp"
#include "gsieve/errors.hpp"

namespace gsieve {

namespace detail {

inline Rational parse_entry(const nlohmann::json& v) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(BigInt(s));
      BigInt num(s.substr(0, slash));
      BigInt den(s.substr(slash + 1));
      require(den != 0, Errc::config_error, "zero denominator in '" + s + "'");
      return Rational(num, den);
    } catch (const std::runtime_error&) {
      fail(Errc::config_error, "cannot parse matrix entry '" + s + "'");
    }
  }
  fail(Errc::config_error, "matrix entries must be integers or \"num/den\" strings");
}

}  // namespace detail

inline IntMat parse_matrix(const nlohmann::json& rows) {
  require(rows.is_array() && !rows.empty(), Errc::config_error, "matrix must be a nonempty array of rows");
  const auto d = static_cast<std::uint32_t>(rows.size());
  std::vector<Rational> entries;
  for (const auto& row : rows) {
    require(row.is_array() && row.size() == d, Errc::config_error, "matrix must be square");
    for (const auto& v : row) entries.push_back(detail::parse_entry(v));
  }
  return IntMat(d, std::move(entries));
}

/// Generator sets are stored as a JSON array of d x d matrices, or as
/// {"generators": [...], "symmetric": true} when the file already lists every
/// inverse. Every matrix must have determinant exactly 1.
inline GenSet<IntMat> parse_generators(const nlohmann::json& doc) {
  const nlohmann::json* list = &doc;
  bool asserted_symmetric = false;
  if (doc.is_object()) {
    for (const auto& [key, value] : doc.items()) {
      require(key == "generators" || key == "symmetric", Errc::config_error,
              "unknown key '" + key + "' in generator file");
    }
    require(doc.contains("generators"), Errc::config_error, "generator file lacks 'generators'");
    list = &doc.at("generators");
    if (doc.contains("symmetric")) asserted_symmetric = doc.at("symmetric").get<bool>();
  }
  require(list->is_array() && !list->empty(), Errc::config_error, "generator list must be a nonempty array");
  std::vector<IntMat> mats;
  for (const auto& m : *list) {
    IntMat g = parse_matrix(m);
    require(g.d() == parse_matrix(list->front()).d(), Errc::config_error, "generators differ in dimension");
    require(g.det() == 1, Errc::not_determinant_one, "generator does not have determinant 1");
    mats.push_back(std::move(g));
  }
  return asserted_symmetric ? GenSet<IntMat>::verified_symmetric(mats) : GenSet<IntMat>::symmetrized(mats);
}

inline GenSet<IntMat> load_generators(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::config_error, "cannot open generator file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::config_error, std::string("malformed generator file: ") + e.what());
  }
  return parse_generators(doc);
}

inline nlohmann::json to_json(const IntMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::uint32_t i = 0; i < m.d(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::uint32_t j = 0; j < m.d(); ++j) {
      const Rational& x = m.at(i, j);
      if (boost::multiprecision::denominator(x) == 1 &&
          boost::multiprecision::abs(boost::multiprecision::numerator(x)) < BigInt(1) << 62) {
        row.push_back(boost::multiprecision::numerator(x).convert_to<std::int64_t>());
      } else {
        std::ostringstream os;
        os << x;
        row.push_back(os.str());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gsieve
