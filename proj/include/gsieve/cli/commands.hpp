#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gsieve/approx/report.hpp"
#include "gsieve/cli/config.hpp"
#include "gsieve/cli/format.hpp"
#include "gsieve/cli/manifest.hpp"
#include "gsieve/cli/serialize.hpp"
#include "gsieve/core/cyclic.hpp"
#include "gsieve/core/generator_io.hpp"
#include "gsieve/core/presets.hpp"
#include "gsieve/core/sl_table.hpp"
#include "gsieve/core/subgroups.hpp"
#include "gsieve/sieve/engine.hpp"
#include "gsieve/spectral/eigen.hpp"
#include "gsieve/walk/monte_carlo.hpp"
#include "gsieve/walk/strong_approx.hpp"

namespace gsieve::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitConfig = 2;

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<OutputFile> files;
  std::vector<StageTiming> stages;
};

/// Records wall time per named stage.
class Stopwatch {
 public:
  explicit Stopwatch(std::vector<StageTiming>& sink) : sink_(sink) {}

  template <class F>
  decltype(auto) stage(const std::string& name, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    struct Record {
      std::vector<StageTiming>& sink;
      std::string name;
      std::chrono::steady_clock::time_point t0;
      ~Record() { sink.push_back({name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}); }
    } rec{sink_, name, t0};
    return f();
  }

 private:
  std::vector<StageTiming>& sink_;
};

struct CyclicPreset {
  std::uint32_t n = 0;
  bool complete = false;  ///< all non-identity elements instead of +-1
};

inline std::optional<CyclicPreset> parse_cyclic(const std::string& src) {
  for (const auto& [prefix, complete] : {std::pair{std::string("cyclic:"), false}, std::pair{std::string("complete:"), true}}) {
    if (src.rfind(prefix, 0) == 0) {
      const auto n = detail::parse_int(src.substr(prefix.size()), "cyclic order");
      require(n >= 2 && n <= 100'000'000, Errc::config_error, "cyclic order must lie in [2, 1e8]");
      return CyclicPreset{static_cast<std::uint32_t>(n), complete};
    }
  }
  return std::nullopt;
}

inline GenSet<Cyclic> cyclic_generators(const CyclicPreset& c, bool lazy) {
  std::vector<Cyclic> gens;
  if (c.complete) {
    for (std::uint32_t k = 1; k < c.n; ++k) gens.emplace_back(c.n, k);
  } else {
    gens.emplace_back(c.n, 1);
  }
  return GenSet<Cyclic>::symmetrized(gens, lazy);
}

inline GenSet<IntMat> resolve_generators(const std::string& src, bool lazy = false) {
  GenSet<IntMat> g;
  if (src == "sanov" || src == "e12" || src == "elementary") {
    g = presets::by_name(src);
  } else {
    require(!parse_cyclic(src).has_value(), Errc::config_error, "cyclic presets are only valid for gap");
    g = load_generators(src);
  }
  return g.with_lazy(lazy);
}

inline std::vector<std::uint32_t> prime_list(const ojson& arr) {
  std::vector<std::uint32_t> out;
  for (const auto& v : arr) {
    const auto p = v.get<std::int64_t>();
    require(p >= 2 && p < (1LL << 31) && is_prime(static_cast<std::uint64_t>(p)), Errc::config_error,
            std::to_string(p) + " is not a prime");
    out.push_back(static_cast<std::uint32_t>(p));
  }
  return out;
}

// ---------------------------------------------------------------- gap

inline CommandResult run_gap(const ExperimentConfig& cfg) {
  CommandResult res;
  Stopwatch sw(res.stages);
  const auto method_name = cfg.at("method").get<std::string>();
  require(method_name == "dense" || method_name == "power_iteration" || method_name == "auto", Errc::config_error,
          "method must be dense, power_iteration or auto");
  const bool lazy = cfg.at("lazy").get<bool>();
  SpectralOptions base;
  base.tol = cfg.at("tol").get<double>();
  base.max_iter = cfg.at("max_iter").get<std::size_t>();
  base.threads = cfg.threads;
  require(base.tol > 0.0 && base.max_iter >= 1, Errc::config_error, "tol and max_iter must be positive");

  struct Job {
    std::uint64_t label;
    std::function<CayleyOperator(std::size_t&)> build;
  };
  std::vector<Job> jobs;
  const auto src = cfg.at("generators").get<std::string>();
  if (auto cyc = parse_cyclic(src)) {
    const auto gens = cyclic_generators(*cyc, lazy);
    jobs.push_back({cyc->n, [gens](std::size_t& order) {
                      auto t = enumerate_group(gens);
                      order = t.order();
                      return t.cayley();
                    }});
  } else {
    const auto gens = resolve_generators(src, lazy);
    for (auto p : prime_list(cfg.at("primes"))) {
      jobs.push_back({p, [gens, p](std::size_t& order) {
                        const PrimeModulus mod(p, gens[0].d());
                        auto t = enumerate_group(gens.map([&](const IntMat& g) { return reduce_mod(g, mod); }));
                        order = t.order();
                        return t.cayley();
                      }});
    }
  }
  require(!jobs.empty(), Errc::config_error, "no primes given");

  Csv csv({"p", "group_order", "lambda1", "alpha1", "alpha_min", "method", "iterations", "residual"});
  json reports = json::array();
  for (const auto& job : jobs) {
    std::size_t order = 0;
    const auto op = sw.stage("enumerate " + std::to_string(job.label), [&] { return job.build(order); });
    if (order < 2) {
      std::cerr << "warning: group of order " << order << " at " << job.label << " has no spectral gap; skipped\n";
      continue;
    }
    SpectralOptions opt = base;
    opt.method = method_name == "dense"            ? SpectralMethod::dense
                 : method_name == "power_iteration" ? SpectralMethod::power_iteration
                 : order <= opt.dense_cap          ? SpectralMethod::dense
                                                   : SpectralMethod::power_iteration;
    auto rep = sw.stage("lambda1 " + std::to_string(job.label), [&] { return lambda1(op, opt); });
    if (!rep.converged) {
      std::cerr << "error: power iteration did not converge at " << job.label << "\n";
      res.exit_code = kExitVerification;
    }
    if (!lazy && rep.alpha_min < -1.0 + 1e-9) {
      std::cerr << "warning: alpha_min = -1 at " << job.label << " (bipartite Cayley graph); consider lazy = true\n";
    }
    csv.row(job.label, order, rep.lambda1, rep.alpha1, rep.alpha_min, to_string(rep.method), rep.iterations,
            rep.residual);
    rep.spectrum.clear();
    json entry = rep;
    entry["p"] = job.label;
    entry["group_order"] = order;
    reports.push_back(std::move(entry));
  }
  res.files.push_back({"gap.csv", csv.str()});
  res.files.push_back({"gap.json", json{{"reports", reports}}.dump(2) + "\n"});
  return res;
}

// ---------------------------------------------------------------- walk

inline WalkTarget parse_walk_target(const std::string& text, std::uint32_t p) {
  if (text == "borel" || text == "torus" || text == "monomial") {
    return targets::subgroup(p, parse_subgroup_kind(text), text);
  }
  if (text == "identity") return targets::identity(p);
  if (text.rfind("trace=", 0) == 0) {
    const auto t = detail::parse_int(text.substr(6), "trace");
    require(t >= 0, Errc::config_error, "trace must be >= 0");
    return targets::trace_value(p, static_cast<std::uint32_t>(t));
  }
  fail(Errc::config_error, "unknown walk target '" + text + "'");
}

inline CommandResult run_walk(const ExperimentConfig& cfg) {
  CommandResult res;
  Stopwatch sw(res.stages);
  const auto gens = resolve_generators(cfg.at("generators").get<std::string>(), cfg.at("lazy").get<bool>());
  const auto primes = prime_list(cfg.at("primes"));
  require(!primes.empty(), Errc::config_error, "walk needs at least one prime");
  const auto schedule = parse_schedule(cfg.at("schedule"));
  const auto samples = cfg.at("samples").get<std::int64_t>();
  require(samples >= 1, Errc::config_error, "samples must be >= 1");
  std::vector<WalkTarget> target_list;
  for (const auto& t : cfg.at("targets")) {
    auto text = t.get<std::string>();
    const auto at = text.find('@');
    if (at != std::string::npos) {
      const auto p = detail::parse_int(text.substr(at + 1), "target prime");
      require(std::find(primes.begin(), primes.end(), p) != primes.end(), Errc::config_error,
              "target prime " + std::to_string(p) + " is not in primes");
      target_list.push_back(parse_walk_target(text.substr(0, at), static_cast<std::uint32_t>(p)));
    } else {
      for (auto p : primes) target_list.push_back(parse_walk_target(text, p));
    }
  }
  require(!target_list.empty(), Errc::config_error, "walk needs at least one target");
  const WalkSampler sampler(gens, primes, *cfg.seed);
  const auto stats = sw.stage("sample", [&] {
    return monte_carlo_walk(sampler, schedule, static_cast<std::uint64_t>(samples), target_list, cfg.threads);
  });

  Csv csv({"n", "target", "prime", "frequency", "ci_lo", "ci_hi", "samples"});
  for (const auto& c : stats.cells) {
    csv.row(c.n, stats.targets[c.target], stats.target_primes[c.target].front(), c.frequency, c.ci_lo, c.ci_hi,
            stats.samples);
  }
  json fits = json::array();
  for (std::size_t t = 0; t < stats.targets.size(); ++t) {
    json entry{{"target", stats.targets[t]}, {"prime", stats.target_primes[t].front()}};
    try {
      entry["fit"] = nonconcentration_fit(stats, t);
      entry["fit_error"] = nullptr;
    } catch (const Error& e) {
      if (e.code() != Errc::insufficient_signal) throw;
      entry["fit"] = nullptr;
      entry["fit_error"] = e.what();
    }
    fits.push_back(std::move(entry));
  }
  json summary{{"samples", stats.samples},
               {"schedule", stats.schedule},
               {"seed", *cfg.seed},
               {"noise_floor", noise_floor(stats.samples)},
               {"targets", fits}};
  res.files.push_back({"walk.csv", csv.str()});
  res.files.push_back({"walk.json", summary.dump(2) + "\n"});
  return res;
}

// ---------------------------------------------------------------- approx

namespace detail {

template <GroupElement E>
IdSet parse_set_term(const GroupTable<E>& table, const std::string& term, const ExperimentConfig& cfg,
                     const std::function<IdSet(const std::string&)>& group_specific) {
  const auto colon = term.find(':');
  const std::string head = term.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : term.substr(colon + 1);
  if (head == "whole") return IdSet::full(table.order());
  if (head == "random") {
    const auto m = parse_int(arg, "random set size");
    require(m >= 1 && static_cast<std::size_t>(m) <= table.order(), Errc::config_error, "random set size out of range");
    return random_symmetric_subset(table, static_cast<std::size_t>(m), *cfg.seed).ids();
  }
  if (head == "id") {
    const auto id = parse_int(arg, "element id");
    require(id >= 0 && static_cast<std::size_t>(id) < table.order(), Errc::config_error, "element id out of range");
    return IdSet::of(table.order(), std::vector<ElementId>{static_cast<ElementId>(id)});
  }
  if (head == "ids") {
    std::ifstream in(arg);
    require(in.good(), Errc::config_error, "cannot open id list '" + arg + "'");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::config_error, std::string("malformed id list: ") + e.what());
    }
    require(doc.is_array(), Errc::config_error, "id list must be a JSON array");
    IdSet s(table.order());
    for (const auto& v : doc) {
      require(v.is_number_unsigned() && v.get<std::size_t>() < table.order(), Errc::config_error, "bad id in list");
      s.insert(v.get<ElementId>());
    }
    return s;
  }
  return group_specific(term);
}

template <GroupElement E>
ApproxReport approx_on(const GroupTable<E>& table, const ExperimentConfig& cfg,
                       const std::function<IdSet(const std::string&)>& group_specific) {
  IdSet ids(table.order());
  for (const auto& term : split(cfg.at("set").get<std::string>(), '+')) {
    for (auto id : parse_set_term(table, term, cfg, group_specific).ids()) ids.insert(id);
  }
  require(!ids.empty(), Errc::config_error, "set is empty");
  const auto max_power = cfg.at("max_power").get<std::int64_t>();
  require(max_power >= 1 && max_power <= 64, Errc::config_error, "max_power must lie in [1, 64]");
  return approx_report(FiniteSubset<E>(table, std::move(ids)), static_cast<std::size_t>(max_power));
}

}  // namespace detail

inline CommandResult run_approx(const ExperimentConfig& cfg) {
  CommandResult res;
  Stopwatch sw(res.stages);
  const auto group = cfg.at("group").get<std::string>();
  ApproxReport rep;
  if (auto cyc = parse_cyclic(group.rfind("cyclic:", 0) == 0 ? group : "")) {
    const auto table = sw.stage("enumerate", [&] { return enumerate_group(cyclic_generators(*cyc, false)); });
    rep = sw.stage("measure", [&] {
      return detail::approx_on(table, cfg, [&](const std::string& term) {
        require(term.rfind("interval:", 0) == 0, Errc::config_error, "unknown set term '" + term + "' for Z/n");
        const auto n = detail::parse_int(term.substr(9), "interval radius");
        require(n >= 0 && 2 * n + 1 <= static_cast<std::int64_t>(table.order()), Errc::config_error,
                "interval too long");
        IdSet s(table.order());
        for (auto k = -n; k <= n; ++k) s.insert(table.id_of(Cyclic(cyc->n, k)));
        return s;
      });
    });
  } else {
    const auto parts = detail::split(group, ':');
    std::uint32_t d = 0;
    std::int64_t p = 0;
    if (parts.size() == 2 && parts[0] == "sl2") {
      d = 2;
      p = detail::parse_int(parts[1], "prime");
    } else if (parts.size() == 3 && parts[0] == "sl") {
      d = static_cast<std::uint32_t>(detail::parse_int(parts[1], "dimension"));
      p = detail::parse_int(parts[2], "prime");
    } else {
      fail(Errc::config_error, "group must be sl2:P, sl:D:P or cyclic:N");
    }
    require(p >= 2 && p < 65536 && is_prime(static_cast<std::uint64_t>(p)), Errc::config_error, "group needs a prime p");
    const auto table = sw.stage("enumerate", [&] { return enumerate_sl(static_cast<std::uint32_t>(p), d); });
    rep = sw.stage("measure", [&] {
      return detail::approx_on(table, cfg, [&](const std::string& term) {
        if (term.rfind("subgroup:", 0) == 0) return standard_subgroup(table, parse_subgroup_kind(term.substr(9)));
        if (term.rfind("gens:", 0) == 0) {
          const auto gens = resolve_generators(term.substr(5));
          const PrimeModulus mod(static_cast<std::uint32_t>(p), d);
          IdSet s(table.order());
          s.insert(table.identity());
          for (const auto& g : gens.members()) s.insert(table.id_of(reduce_mod(g, mod)));
          return s;
        }
        fail(Errc::config_error, "unknown set term '" + term + "'");
      });
    });
  }
  json out{{"group", group}, {"set", cfg.at("set").get<std::string>()}, {"report", rep}};
  res.files.push_back({"approx.json", out.dump(2) + "\n"});
  return res;
}

// ---------------------------------------------------------------- sieve

inline CommandResult run_sieve(const ExperimentConfig& cfg) {
  CommandResult res;
  Stopwatch sw(res.stages);
  const auto gens = resolve_generators(cfg.at("generators").get<std::string>());
  const auto schedule = parse_schedule(cfg.at("schedule"));
  const auto samples = cfg.at("samples").get<std::int64_t>();
  require(samples >= 1, Errc::config_error, "samples must be >= 1");
  const auto n = cfg.at("battery.N").get<std::int64_t>();
  const auto m = cfg.at("battery.m").get<std::int64_t>();
  const auto p_min = cfg.at("battery.p_min").get<std::int64_t>();
  require(n >= 1 && m >= 1 && p_min >= 2 && p_min < 65536, Errc::config_error, "battery needs N >= 1, m >= 1, p_min >= 2");

  TargetSpec spec;
  const auto kind = cfg.at("target.kind").get<std::string>();
  if (kind == "m_power") {
    spec.kind = TargetKind::m_power;
    spec.m = cfg.at("target.m").get<std::uint64_t>();
    require(spec.m >= 2, Errc::config_error, "target.m must be >= 2");
  } else if (kind == "missing_cycle_type") {
    spec.kind = TargetKind::missing_cycle_type;
    spec.partition.clear();
    for (const auto& v : cfg.at("target.partition")) {
      require(v.get<std::int64_t>() >= 1, Errc::config_error, "partition parts must be positive");
      spec.partition.push_back(v.get<std::uint32_t>());
    }
    try {
      validate_partition(spec.partition, gens[0].d());
    } catch (const Error& e) {
      fail(Errc::config_error, e.what());
    }
  } else if (kind == "trace_value") {
    spec.kind = TargetKind::trace_value;
    const auto t = cfg.at("target.trace").get<std::int64_t>();
    require(t >= 0, Errc::config_error, "target.trace must be >= 0");
    spec.trace = static_cast<std::uint32_t>(t);
  } else if (kind == "power_unipotent") {
    spec.kind = TargetKind::power_unipotent;
  } else {
    fail(Errc::config_error, "unknown target kind '" + kind + "'");
  }
  const auto battery = select_primes(static_cast<std::size_t>(n), static_cast<std::uint32_t>(m),
                                     static_cast<std::uint32_t>(p_min));
  const auto target = sw.stage("excluded sets", [&] { return build_target(spec, gens, battery.primes, cfg.threads); });
  const WalkSampler sampler(gens, battery.primes, *cfg.seed);
  const auto rep = sw.stage("sample", [&] {
    return sieve_run(sampler, target, battery, schedule, static_cast<std::uint64_t>(samples),
                     cfg.at("b_hat").get<double>(), cfg.threads);
  });
  Csv csv({"n", "estimate", "ci_lo", "ci_hi"});
  for (const auto& e : rep.estimates) csv.row(e.n, e.estimate, e.ci_lo, e.ci_hi);
  json out = rep;
  out["battery"] = {{"primes", battery.primes}, {"modulus", battery.modulus}, {"p_min", battery.p_min},
                    {"source_note", battery.source_note}};
  res.files.push_back({"sieve.csv", csv.str()});
  res.files.push_back({"sieve.json", out.dump(2) + "\n"});
  return res;
}

// ---------------------------------------------------------------- strongapprox

inline CommandResult run_strongapprox(const ExperimentConfig& cfg) {
  CommandResult res;
  Stopwatch sw(res.stages);
  const auto gens = resolve_generators(cfg.at("generators").get<std::string>());
  auto primes = prime_list(cfg.at("primes"));
  if (primes.empty()) {
    const auto lo = cfg.at("p_min").get<std::int64_t>();
    const auto hi = cfg.at("p_max").get<std::int64_t>();
    require(lo >= 2 && hi >= lo && hi < 65536, Errc::config_error, "need 2 <= p_min <= p_max < 65536");
    for (auto p = lo; p <= hi; ++p) {
      if (is_prime(static_cast<std::uint64_t>(p))) primes.push_back(static_cast<std::uint32_t>(p));
    }
  }
  const auto cap = cfg.at("cap").get<std::int64_t>();
  require(cap >= 1, Errc::config_error, "cap must be >= 1");
  const auto scan = sw.stage("scan", [&] { return strong_approx_scan(gens, primes, static_cast<std::size_t>(cap)); });
  Csv csv({"p", "status", "image_order", "expected_order"});
  for (const auto& e : scan.entries) csv.row(e.p, to_string(e.status), e.image_order, e.expected_order);
  res.files.push_back({"strongapprox.csv", csv.str()});
  res.files.push_back({"strongapprox.json", json(scan).dump(2) + "\n"});
  return res;
}

// ---------------------------------------------------------------- report

/// Re-reads a manifest and checks every listed output against its digest.
/// Writes nothing.
inline CommandResult run_report(const ExperimentConfig& cfg, std::ostream& out) {
  CommandResult res;
  const std::filesystem::path dir(cfg.out_dir);
  const auto path = dir / cfg.at("manifest").get<std::string>();
  ojson doc;
  try {
    doc = ojson::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::config_error, std::string("malformed manifest: ") + e.what());
  }
  const auto manifest = RunManifest::from_json(doc);
  out << "command " << manifest.command << ", version " << manifest.artifact_version << ", config "
      << manifest.config_hash << "\n";
  for (const auto& s : manifest.stages) out << "  stage " << s.name << ": " << fmt(s.seconds) << " s\n";
  for (const auto& c : verify_manifest(dir, manifest)) {
    out << (c.ok ? "  ok   " : "  FAIL ") << c.file << " (" << c.detail << ")\n";
    if (!c.ok) res.exit_code = kExitVerification;
  }
  if (config_hash(manifest.config) != manifest.config_hash) {
    out << "  FAIL config hash does not match the recorded config\n";
    res.exit_code = kExitVerification;
  }
  return res;
}

/// Runs one experiment and writes its outputs plus manifest.json. Returns the
/// process exit code; diagnostics go to `err`.
inline int dispatch(const ExperimentConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    CommandResult res;
    if (cfg.command == "gap") {
      res = run_gap(cfg);
    } else if (cfg.command == "walk") {
      res = run_walk(cfg);
    } else if (cfg.command == "approx") {
      res = run_approx(cfg);
    } else if (cfg.command == "sieve") {
      res = run_sieve(cfg);
    } else if (cfg.command == "strongapprox") {
      res = run_strongapprox(cfg);
    } else if (cfg.command == "report") {
      return run_report(cfg, out).exit_code;
    } else {
      fail(Errc::config_error, "unknown command '" + cfg.command + "'");
    }
    RunManifest m;
    m.command = cfg.command;
    m.config = cfg.canonical();
    m.config_hash = config_hash(m.config);
    m.stages = res.stages;
    m.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    m = write_outputs(cfg.out_dir, std::move(m), res.files);
    for (const auto& [file, digest] : m.outputs) out << file << " " << digest << "\n";
    return res.exit_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::verification_failure ? kExitVerification : kExitConfig;
  }
}

}  // namespace gsieve::cli
