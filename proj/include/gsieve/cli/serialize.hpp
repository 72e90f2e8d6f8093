#pragma once

#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

#include "gsieve/approx/report.hpp"
#include "gsieve/core/int_mat.hpp"
#include "gsieve/sieve/engine.hpp"
#include "gsieve/spectral/eigen.hpp"
#include "gsieve/walk/monte_carlo.hpp"
#include "gsieve/walk/strong_approx.hpp"

// JSON mappings for the report records. Exact rationals and big integers
// travel as decimal strings; absent optionals as null.

namespace nlohmann {

template <class T>
struct adl_serializer<std::optional<T>> {
  static void to_json(json& j, const std::optional<T>& v) {
    if (v) {
      j = *v;
    } else {
      j = nullptr;
    }
  }
  static void from_json(const json& j, std::optional<T>& v) {
    if (j.is_null()) {
      v.reset();
    } else {
      v = j.get<T>();
    }
  }
};

}  // namespace nlohmann

namespace gsieve {

using json = nlohmann::json;

inline std::string to_decimal(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

inline Rational rational_from(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

inline void to_json(json& j, const SpectralReport& r) {
  j = json{{"lambda1", r.lambda1},     {"alpha1", r.alpha1},       {"alpha_min", r.alpha_min},
           {"method", to_string(r.method)}, {"iterations", r.iterations}, {"residual", r.residual},
           {"converged", r.converged}, {"zero_multiplicity", r.zero_multiplicity}, {"spectrum", r.spectrum}};
}

inline void from_json(const json& j, SpectralReport& r) {
  j.at("lambda1").get_to(r.lambda1);
  j.at("alpha1").get_to(r.alpha1);
  j.at("alpha_min").get_to(r.alpha_min);
  r.method = j.at("method").get<std::string>() == "dense" ? SpectralMethod::dense : SpectralMethod::power_iteration;
  j.at("iterations").get_to(r.iterations);
  j.at("residual").get_to(r.residual);
  j.at("converged").get_to(r.converged);
  j.at("zero_multiplicity").get_to(r.zero_multiplicity);
  j.at("spectrum").get_to(r.spectrum);
}

inline void to_json(json& j, const DecayFit& f) {
  j = json{{"c", f.c}, {"intercept", f.intercept}, {"r2", f.r2}, {"n_lo", f.n_lo}, {"n_hi", f.n_hi}, {"points", f.points}};
}

inline void from_json(const json& j, DecayFit& f) {
  j.at("c").get_to(f.c);
  j.at("intercept").get_to(f.intercept);
  j.at("r2").get_to(f.r2);
  j.at("n_lo").get_to(f.n_lo);
  j.at("n_hi").get_to(f.n_hi);
  j.at("points").get_to(f.points);
}

inline void to_json(json& j, const ApproxReport& r) {
  j = json{{"size_a", r.size_a},
           {"size_aa", r.size_aa},
           {"size_aaa", r.size_aaa},
           {"symmetric", r.symmetric},
           {"contains_identity", r.contains_identity},
           {"k_hat", r.k_hat},
           {"cover", r.cover},
           {"tripling", r.tripling},
           {"energy", r.energy},
           {"growth", r.growth},
           {"epsilon", r.epsilon},
           {"generates", r.generates}};
}

inline void from_json(const json& j, ApproxReport& r) {
  j.at("size_a").get_to(r.size_a);
  j.at("size_aa").get_to(r.size_aa);
  j.at("size_aaa").get_to(r.size_aaa);
  j.at("symmetric").get_to(r.symmetric);
  j.at("contains_identity").get_to(r.contains_identity);
  j.at("k_hat").get_to(r.k_hat);
  j.at("cover").get_to(r.cover);
  j.at("tripling").get_to(r.tripling);
  j.at("energy").get_to(r.energy);
  j.at("growth").get_to(r.growth);
  j.at("epsilon").get_to(r.epsilon);
  j.at("generates").get_to(r.generates);
}

inline void to_json(json& j, const PrimeDensity& d) {
  j = json{{"p", d.p}, {"order", d.order}, {"surjective", d.surjective}, {"density", to_decimal(d.density)}};
}

inline void from_json(const json& j, PrimeDensity& d) {
  j.at("p").get_to(d.p);
  j.at("order").get_to(d.order);
  j.at("surjective").get_to(d.surjective);
  d.density = rational_from(j.at("density").get<std::string>());
}

inline void to_json(json& j, const SieveEstimate& e) {
  j = json{{"n", e.n}, {"hits", e.hits}, {"estimate", e.estimate}, {"ci_lo", e.ci_lo}, {"ci_hi", e.ci_hi}};
}

inline void from_json(const json& j, SieveEstimate& e) {
  j.at("n").get_to(e.n);
  j.at("hits").get_to(e.hits);
  j.at("estimate").get_to(e.estimate);
  j.at("ci_lo").get_to(e.ci_lo);
  j.at("ci_hi").get_to(e.ci_hi);
}

inline void to_json(json& j, const SieveReport& r) {
  j = json{{"target", r.target},
           {"battery_size", r.battery_size},
           {"samples", r.samples},
           {"primes", r.primes},
           {"alpha_min", r.alpha_min},
           {"estimates", r.estimates},
           {"fit", r.fit},
           {"b_hat", r.b_hat},
           {"n_threshold", r.n_threshold},
           {"bound_points", r.bound_points},
           {"bound_held", r.bound_held},
           {"first_below", r.first_below}};
}

inline void from_json(const json& j, SieveReport& r) {
  j.at("target").get_to(r.target);
  j.at("battery_size").get_to(r.battery_size);
  j.at("samples").get_to(r.samples);
  j.at("primes").get_to(r.primes);
  j.at("alpha_min").get_to(r.alpha_min);
  j.at("estimates").get_to(r.estimates);
  j.at("fit").get_to(r.fit);
  j.at("b_hat").get_to(r.b_hat);
  j.at("n_threshold").get_to(r.n_threshold);
  j.at("bound_points").get_to(r.bound_points);
  j.at("bound_held").get_to(r.bound_held);
  j.at("first_below").get_to(r.first_below);
}

inline void to_json(json& j, const StrongApproxEntry& e) {
  j = json{{"p", e.p}, {"status", to_string(e.status)}, {"image_order", e.image_order},
           {"expected_order", e.expected_order}, {"note", e.note}};
}

inline void from_json(const json& j, StrongApproxEntry& e) {
  j.at("p").get_to(e.p);
  const auto s = j.at("status").get<std::string>();
  e.status = s == "surjective" ? ImageStatus::surjective : s == "proper" ? ImageStatus::proper : ImageStatus::skipped;
  j.at("image_order").get_to(e.image_order);
  j.at("expected_order").get_to(e.expected_order);
  j.at("note").get_to(e.note);
}

inline void to_json(json& j, const StrongApproxScan& s) {
  j = json{{"m_s", s.m_s.str()}, {"entries", s.entries}};
}

inline void from_json(const json& j, StrongApproxScan& s) {
  s.m_s = BigInt(j.at("m_s").get<std::string>());
  j.at("entries").get_to(s.entries);
}

}  // namespace gsieve
