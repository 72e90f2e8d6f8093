#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gsieve/cli/commands.hpp"
#include "gsieve/cli/toml_lite.hpp"
#include "gsieve/version.hpp"

namespace {

struct SubcommandFlags {
  std::string config_path;
  std::map<std::string, std::string> values;  // schema path -> raw flag text
};

const std::map<std::string, std::string> kAbout{
    {"gap", "spectral gap of Cayley graphs mod each prime"},
    {"walk", "Monte Carlo walk frequencies and decay fits"},
    {"approx", "product sets, energy and covering numbers of a subset"},
    {"sieve", "group sieve over a prime battery"},
    {"strongapprox", "image of the generated group mod each prime"},
    {"report", "verify the digests in a run's manifest.json"},
};

}  // namespace

int main(int argc, char** argv) {
  using namespace gsieve;
  CLI::App app{"Spectral gaps, random walks and sieves on finite matrix groups"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();  // --seed, --threads and --out-dir may follow the subcommand

  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string out_dir = ".";
  app.add_option("--seed", seed, "RNG seed (required by stochastic commands)");
  app.add_option("--threads", threads, "worker count")->check(CLI::PositiveNumber);
  app.add_option("--out-dir", out_dir, "directory for outputs and manifest.json");

  std::map<std::string, SubcommandFlags> flags;
  for (const auto& name : cli::commands()) {
    auto* sub = app.add_subcommand(name, kAbout.at(name));
    auto& f = flags[name];
    sub->add_option("--config", f.config_path, "TOML config file");
    for (const auto& spec : cli::schema(name)) {
      auto* opt = sub->add_option_function<std::string>(
          cli::flag_name(spec.path), [&f, path = spec.path](const std::string& v) { f.values[path] = v; },
          spec.help + " (default " + spec.fallback.dump() + ")");
      if (spec.type == cli::ParamType::boolean) {
        opt->expected(0, 1)->default_str("true");
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kExitConfig;
  }

  const auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  auto& f = flags[command];
  for (auto& [path, text] : f.values) {
    if (text.empty()) text = "true";  // bare boolean flag
  }
  try {
    cli::ojson doc;
    if (!f.config_path.empty()) doc = toml::load(f.config_path);
    const auto cfg = cli::resolve_config(command, doc, f.values, seed, threads, out_dir);
    return cli::dispatch(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitConfig;
  }
}
