#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gsieve/errors.hpp"

namespace gsieve::cli {

using ojson = nlohmann::ordered_json;

enum class ParamType { integer, number, boolean, string, int_list, string_list, schedule };

struct ParamSpec {
  std::string path;  ///< "key" or "table.key"
  ParamType type;
  ojson fallback;    ///< null means required
  std::string help;
};

inline std::string flag_name(const std::string& path) {
  std::string f = "--";
  for (char c : path) f.push_back(c == '.' || c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return f;
}

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"gap", "walk", "approx", "sieve", "strongapprox", "report"};
  return names;
}

/// Parameters accepted by each subcommand, in the order they are written to
/// the canonical config.
inline const std::vector<ParamSpec>& schema(const std::string& command) {
  static const std::map<std::string, std::vector<ParamSpec>> table{
      {"gap",
       {{"generators", ParamType::string, "sanov", "preset (sanov, e12, elementary, cyclic:N, complete:N) or JSON file"},
        {"primes", ParamType::int_list, ojson::array({3, 5, 7}), "primes to reduce modulo (ignored for cyclic presets)"},
        {"method", ParamType::string, "auto", "dense, power_iteration or auto"},
        {"tol", ParamType::number, 1e-10, "Rayleigh quotient tolerance"},
        {"max_iter", ParamType::integer, 1000000, "power iteration budget"},
        {"lazy", ParamType::boolean, false, "hold with probability 1/2 at each step"}}},
      {"walk",
       {{"generators", ParamType::string, "sanov", "preset or JSON file"},
        {"primes", ParamType::int_list, ojson::array({5}), "primes whose residues are tracked"},
        {"samples", ParamType::integer, 10000, "number of sample paths"},
        {"schedule", ParamType::schedule, "arith:0:20:2", "n values: arith:A:B:STEP, geom:A:B:FACTOR or a list"},
        {"targets", ParamType::string_list, ojson::array({"borel"}),
         "borel, torus, monomial, identity or trace=T, optionally @P to pick one prime"},
        {"lazy", ParamType::boolean, false, "hold with probability 1/2 at each step"}}},
      {"approx",
       {{"group", ParamType::string, "sl2:7", "sl2:P, sl:D:P or cyclic:N"},
        {"set", ParamType::string, "subgroup:borel", "terms joined by '+': subgroup:K, random:M, ids:FILE, id:K, "
                                                      "interval:N, gens:PRESET, whole"},
        {"max_power", ParamType::integer, 5, "largest k in the growth scan"}}},
      {"sieve",
       {{"generators", ParamType::string, "sanov", "preset or JSON file"},
        {"schedule", ParamType::schedule, "arith:2:40:2", "n values"},
        {"samples", ParamType::integer, 100000, "number of sample paths"},
        {"b_hat", ParamType::number, 1.0, "compare against 1/N from n >= b_hat log N"},
        {"battery.N", ParamType::integer, 20, "number of primes"},
        {"battery.m", ParamType::integer, 1, "primes are 1 mod m"},
        {"battery.p_min", ParamType::integer, 3, "smallest admissible prime"},
        {"target.kind", ParamType::string, "missing_cycle_type",
         "m_power, missing_cycle_type, trace_value or power_unipotent"},
        {"target.m", ParamType::integer, 2, "exponent for m_power"},
        {"target.partition", ParamType::int_list, ojson::array({2}), "cycle type for missing_cycle_type"},
        {"target.trace", ParamType::integer, 0, "trace for trace_value"}}},
      {"strongapprox",
       {{"generators", ParamType::string, "sanov", "preset or JSON file"},
        {"primes", ParamType::int_list, ojson::array(), "explicit primes; empty means every prime in [p_min, p_max]"},
        {"p_min", ParamType::integer, 2, "scan start"},
        {"p_max", ParamType::integer, 61, "scan end"},
        {"cap", ParamType::integer, 8000000, "enumeration cap per prime"}}},
      {"report", {{"manifest", ParamType::string, "manifest.json", "manifest to verify, relative to --out-dir"}}},
  };
  auto it = table.find(command);
  require(it != table.end(), Errc::config_error, "unknown command '" + command + "'");
  return it->second;
}

/// Stochastic commands refuse to run without an explicit seed.
inline bool needs_seed(const std::string& command, const ojson& params) {
  if (command == "walk" || command == "sieve") return true;
  if (command == "approx") return params.at("set").get<std::string>().find("random:") != std::string::npos;
  return false;
}

struct ExperimentConfig {
  std::string command;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string out_dir = ".";
  ojson params = ojson::object();  ///< flat map path -> value, schema order

  const ojson& at(const std::string& path) const { return params.at(path); }

  /// Everything that determines the outputs; worker count and output
  /// directory are deliberately left out.
  ojson canonical() const {
    ojson c = ojson::object();
    c["command"] = command;
    c["seed"] = seed ? ojson(*seed) : ojson(nullptr);
    c["params"] = params;
    return c;
  }
};

namespace detail {

inline ojson coerce(const ParamSpec& spec, const ojson& v) {
  auto bad = [&]() -> ojson { fail(Errc::config_error, "bad value for '" + spec.path + "': " + v.dump()); };
  switch (spec.type) {
    case ParamType::integer:
      if (!v.is_number_integer()) bad();
      return v;
    case ParamType::number:
      if (!v.is_number()) bad();
      return v.get<double>();
    case ParamType::boolean:
      if (!v.is_boolean()) bad();
      return v;
    case ParamType::string:
      if (!v.is_string()) bad();
      return v;
    case ParamType::int_list:
      if (!v.is_array()) bad();
      for (const auto& x : v) {
        if (!x.is_number_integer()) bad();
      }
      return v;
    case ParamType::string_list:
      if (!v.is_array()) bad();
      for (const auto& x : v) {
        if (!x.is_string()) bad();
      }
      return v;
    case ParamType::schedule:
      if (v.is_string()) return v;
      if (!v.is_array()) bad();
      for (const auto& x : v) {
        if (!x.is_number_integer() || x.get<std::int64_t>() < 0) bad();
      }
      return v;
  }
  return bad();
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

inline std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(), Errc::config_error,
          "expected an integer for " + what + ", got '" + s + "'");
  return v;
}

/// Command-line text to a typed value.
inline ojson from_flag(const ParamSpec& spec, const std::string& text) {
  switch (spec.type) {
    case ParamType::integer: return parse_int(text, spec.path);
    case ParamType::number: {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      require(ec == std::errc() && ptr == text.data() + text.size(), Errc::config_error,
              "expected a number for " + spec.path);
      return v;
    }
    case ParamType::boolean:
      require(text == "true" || text == "false", Errc::config_error, spec.path + " takes true or false");
      return text == "true";
    case ParamType::string: return text;
    case ParamType::int_list: {
      ojson arr = ojson::array();
      if (!text.empty()) {
        for (const auto& part : split(text, ',')) arr.push_back(parse_int(part, spec.path));
      }
      return arr;
    }
    case ParamType::string_list: {
      ojson arr = ojson::array();
      for (const auto& part : split(text, ',')) arr.push_back(part);
      return arr;
    }
    case ParamType::schedule: return text;
  }
  return nullptr;
}

}  // namespace detail

/// Resolves a config from an optional TOML document and command-line
/// overrides (flag path -> text). Unknown keys anywhere in the document are
/// errors.
inline ExperimentConfig resolve_config(const std::string& command, const ojson& doc,
                                       const std::map<std::string, std::string>& overrides,
                                       std::optional<std::uint64_t> seed_flag, unsigned threads,
                                       const std::string& out_dir) {
  const auto& specs = schema(command);
  auto known = [&](const std::string& path) {
    return std::any_of(specs.begin(), specs.end(), [&](const ParamSpec& s) { return s.path == path; });
  };
  ExperimentConfig cfg;
  cfg.command = command;
  cfg.threads = threads;
  cfg.out_dir = out_dir;
  std::map<std::string, ojson> given;
  if (!doc.is_null()) {
    require(doc.is_object(), Errc::config_error, "config root must be a table");
    for (const auto& [key, value] : doc.items()) {
      if (key == "command") {
        require(value.is_string() && value.get<std::string>() == command, Errc::config_error,
                "config is for command '" + value.dump() + "', not '" + command + "'");
      } else if (key == "seed") {
        require(value.is_number_integer() && value.get<std::int64_t>() >= 0, Errc::config_error,
                "seed must be a non-negative integer");
        cfg.seed = value.get<std::uint64_t>();
      } else if (value.is_object()) {
        for (const auto& [sub, subvalue] : value.items()) {
          const std::string path = key + "." + sub;
          require(known(path), Errc::config_error, "unknown key '" + path + "' for " + command);
          given[path] = subvalue;
        }
      } else {
        require(known(key), Errc::config_error, "unknown key '" + key + "' for " + command);
        given[key] = value;
      }
    }
  }
  for (const auto& [path, text] : overrides) {
    auto it = std::find_if(specs.begin(), specs.end(), [&](const ParamSpec& s) { return s.path == path; });
    require(it != specs.end(), Errc::config_error, "unknown option '" + path + "' for " + command);
    given[path] = detail::from_flag(*it, text);
  }
  if (seed_flag) cfg.seed = seed_flag;
  for (const auto& spec : specs) {
    auto it = given.find(spec.path);
    if (it != given.end()) {
      cfg.params[spec.path] = detail::coerce(spec, it->second);
    } else {
      require(!spec.fallback.is_null(), Errc::config_error, "missing required key '" + spec.path + "'");
      cfg.params[spec.path] = spec.fallback;
    }
  }
  require(!needs_seed(command, cfg.params) || cfg.seed.has_value(), Errc::config_error,
          command + " is stochastic and needs --seed");
  require(threads >= 1, Errc::config_error, "--threads must be >= 1");
  return cfg;
}

/// "arith:A:B:STEP", "geom:A:B:FACTOR" or an explicit list; sorted, unique.
inline std::vector<std::size_t> parse_schedule(const ojson& v) {
  std::vector<std::size_t> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(x.get<std::size_t>());
  } else {
    const auto s = v.get<std::string>();
    const auto parts = detail::split(s, ':');
    if (parts.size() == 4 && (parts[0] == "arith" || parts[0] == "geom")) {
      const auto a = detail::parse_int(parts[1], "schedule");
      const auto b = detail::parse_int(parts[2], "schedule");
      const auto step = detail::parse_int(parts[3], "schedule");
      require(a >= 0 && b >= a && b <= 1'000'000, Errc::config_error, "schedule needs 0 <= A <= B <= 1e6");
      if (parts[0] == "arith") {
        require(step >= 1, Errc::config_error, "arith step must be >= 1");
        for (auto n = a; n <= b; n += step) out.push_back(static_cast<std::size_t>(n));
      } else {
        require(step >= 2 && a >= 1, Errc::config_error, "geom needs A >= 1 and FACTOR >= 2");
        for (auto n = a; n <= b; n *= step) out.push_back(static_cast<std::size_t>(n));
      }
    } else {
      for (const auto& part : detail::split(s, ',')) {
        const auto n = detail::parse_int(part, "schedule");
        require(n >= 0, Errc::config_error, "schedule entries must be >= 0");
        out.push_back(static_cast<std::size_t>(n));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  require(!out.empty(), Errc::config_error, "empty schedule");
  return out;
}

}  // namespace gsieve::cli
