#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "gsieve/cli/commands.hpp"
#include "gsieve/cli/config.hpp"
#include "gsieve/cli/serialize.hpp"
#include "gsieve/cli/toml_lite.hpp"

namespace gsieve::cli {
namespace {

namespace fs = std::filesystem;

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::invalid_argument;
}

// Fresh directory per test, removed afterwards.
class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / ("gsieve-" + std::string(info->test_suite_name()) + "-" + info->name());
    fs::remove_all(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& s) const { return path_ / s; }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

ExperimentConfig config(const std::string& command, const std::string& toml,
                        const std::map<std::string, std::string>& overrides = {}, unsigned threads = 1,
                        const std::string& out = ".") {
  return resolve_config(command, toml::parse(toml), overrides, std::nullopt, threads, out);
}

std::string slurp(const fs::path& p) { return read_file(p); }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) rows.push_back(detail::split(line, ','));
  return rows;
}

int run(const ExperimentConfig& cfg) {
  std::ostringstream out, err;
  return dispatch(cfg, out, err);
}

TEST(Toml, ParsesTheSubset) {
  const auto doc = toml::parse(R"(
# experiment
seed = 7
samples = 1_000
[battery]
N = 5
ratio = 2.5e-1
name = "a \"b\""
flags = [true, false,
         true]
)");
  EXPECT_EQ(doc.at("seed"), 7);
  EXPECT_EQ(doc.at("samples"), 1000);
  EXPECT_EQ(doc.at("battery").at("N"), 5);
  EXPECT_DOUBLE_EQ(doc.at("battery").at("ratio").get<double>(), 0.25);
  EXPECT_EQ(doc.at("battery").at("name"), "a \"b\"");
  EXPECT_EQ(doc.at("battery").at("flags").size(), 3U);
}

TEST(Toml, MalformedInputIsAConfigError) {
  for (const char* bad : {"x = ", "x = 1\nx = 2", "[t\nx = 1", "x = {a = 1}", "a.b = 1", "x = 'lit'",
                          "x = \"open", "x = [1, 2", "= 3", "x = 12abc", "[a]\n[a]"}) {
    EXPECT_EQ(code_of([&] { toml::parse(bad); }), Errc::config_error) << bad;
  }
}

TEST(Config, DefaultsOverridesAndUnknownKeys) {
  const auto cfg = config("sieve", "seed = 3\nsamples = 50\n[battery]\nN = 4\n", {{"battery.p_min", "5"}});
  EXPECT_EQ(cfg.seed, 3U);
  EXPECT_EQ(cfg.at("samples"), 50);
  EXPECT_EQ(cfg.at("battery.N"), 4);
  EXPECT_EQ(cfg.at("battery.p_min"), 5);
  EXPECT_EQ(cfg.at("target.kind"), "missing_cycle_type");
  EXPECT_EQ(code_of([] { config("sieve", "seed = 1\nsamplez = 3\n"); }), Errc::config_error);
  EXPECT_EQ(code_of([] { config("sieve", "seed = 1\n[battery]\nn = 3\n"); }), Errc::config_error);
  EXPECT_EQ(code_of([] { config("gap", "command = \"walk\"\n"); }), Errc::config_error);
  EXPECT_EQ(code_of([] { config("gap", "tol = \"small\"\n"); }), Errc::config_error);
  EXPECT_EQ(code_of([] { config("gap", "", {{"max_iter", "many"}}); }), Errc::config_error);
  EXPECT_EQ(code_of([] { config("nope", ""); }), Errc::config_error);
}

TEST(Config, StochasticCommandsNeedASeed) {
  EXPECT_EQ(code_of([] { config("walk", ""); }), Errc::config_error);
  EXPECT_EQ(code_of([] { config("sieve", ""); }), Errc::config_error);
  EXPECT_EQ(code_of([] { config("approx", "set = \"random:5\"\n"); }), Errc::config_error);
  EXPECT_NO_THROW(config("approx", "set = \"subgroup:borel\"\n"));
  EXPECT_NO_THROW(config("gap", ""));
}

TEST(Config, Schedules) {
  EXPECT_EQ(parse_schedule(ojson("arith:0:10:5")), (std::vector<std::size_t>{0, 5, 10}));
  EXPECT_EQ(parse_schedule(ojson("geom:1:20:3")), (std::vector<std::size_t>{1, 3, 9}));
  EXPECT_EQ(parse_schedule(ojson("8,2,8")), (std::vector<std::size_t>{2, 8}));
  EXPECT_EQ(code_of([] { parse_schedule(ojson("arith:5:1:1")); }), Errc::config_error);
  EXPECT_EQ(code_of([] { parse_schedule(ojson("geom:0:9:2")); }), Errc::config_error);
}

TEST(Config, CanonicalFormIgnoresThreadsAndOutDir) {
  const auto a = config("gap", "primes = [5]\n", {}, 1, "/tmp/a");
  const auto b = config("gap", "primes = [5]\n", {}, 8, "/tmp/b");
  EXPECT_EQ(config_hash(a.canonical()), config_hash(b.canonical()));
  const auto c = config("gap", "primes = [7]\n");
  EXPECT_NE(config_hash(a.canonical()), config_hash(c.canonical()));
}

TEST(Format, NumbersRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.0}) EXPECT_EQ(std::stod(fmt(v)), v);
  EXPECT_EQ(code_of([] { fmt(std::nan("")); }), Errc::verification_failure);
  EXPECT_EQ(code_of([] { fmt(std::string("a,b")); }), Errc::invalid_argument);
}

TEST(Gap, CyclicFourHasUnitGap) {
  TempDir dir;
  const auto cfg = config("gap", "generators = \"cyclic:4\"\n", {}, 1, dir.path().string());
  EXPECT_EQ(run(cfg), kExitOk);
  const auto rows = csv_rows(slurp(dir / "gap.csv"));
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"p", "group_order", "lambda1", "alpha1", "alpha_min", "method",
                                               "iterations", "residual"}));
  EXPECT_EQ(rows[1][1], "4");
  EXPECT_NEAR(std::stod(rows[1][2]), 1.0, 1e-12);
  EXPECT_NEAR(std::stod(rows[1][4]), -1.0, 1e-12);
}

TEST(Gap, SanovValuesInJson) {
  TempDir dir;
  const auto cfg = config("gap", "primes = [5, 7]\nmethod = \"power_iteration\"\n", {}, 1, dir.path().string());
  EXPECT_EQ(run(cfg), kExitOk);
  const auto doc = json::parse(slurp(dir / "gap.json"));
  ASSERT_EQ(doc.at("reports").size(), 2U);
  const auto r5 = doc["reports"][0].get<SpectralReport>();
  EXPECT_NEAR(r5.lambda1, 0.19098300562505188, 1e-8);
  EXPECT_TRUE(r5.converged);
  EXPECT_EQ(doc["reports"][1]["group_order"], 336);
}

TEST(Outputs, RepeatedRunsAreByteIdentical) {
  TempDir a, b;
  const std::string toml = "seed = 11\nsamples = 400\nschedule = \"arith:0:12:3\"\n[battery]\nN = 3\n";
  EXPECT_EQ(run(config("sieve", toml, {}, 1, (a / "run").string())), kExitOk);
  EXPECT_EQ(run(config("sieve", toml, {}, 1, (b / "run").string())), kExitOk);
  for (const char* f : {"sieve.csv", "sieve.json"}) EXPECT_EQ(slurp(a / "run" / f), slurp(b / "run" / f)) << f;
  const auto ma = RunManifest::from_json(ojson::parse(slurp(a / "run" / "manifest.json")));
  const auto mb = RunManifest::from_json(ojson::parse(slurp(b / "run" / "manifest.json")));
  EXPECT_EQ(ma.outputs, mb.outputs);
  EXPECT_EQ(ma.config_hash, mb.config_hash);
}

TEST(Outputs, WorkerCountDoesNotChangeResults) {
  TempDir dir;
  const std::string walk = "seed = 5\nsamples = 3000\nprimes = [5, 7]\ntargets = [\"borel\", \"trace=0@7\"]\n";
  const std::string sieve = "seed = 5\nsamples = 2000\nschedule = \"2,6,10\"\n[battery]\nN = 4\n";
  std::map<std::string, std::string> golden;
  for (unsigned threads : {1U, 4U, 8U}) {
    const auto out = dir / ("t" + std::to_string(threads));
    ASSERT_EQ(run(config("walk", walk, {}, threads, (out / "walk").string())), kExitOk);
    ASSERT_EQ(run(config("sieve", sieve, {}, threads, (out / "sieve").string())), kExitOk);
    for (const char* f : {"walk/walk.csv", "walk/walk.json", "sieve/sieve.csv", "sieve/sieve.json"}) {
      const auto text = slurp(out / f);
      auto [it, fresh] = golden.emplace(f, text);
      if (!fresh) {
        EXPECT_EQ(it->second, text) << f << " at " << threads << " threads";
      }
    }
  }
}

TEST(Outputs, SieveJsonRoundTrips) {
  TempDir dir;
  ASSERT_EQ(run(config("sieve", "seed = 2\nsamples = 500\nschedule = \"0,4,8,12\"\n[battery]\nN = 3\n", {}, 1,
                       dir.path().string())),
            kExitOk);
  const auto text = slurp(dir / "sieve.json");
  auto doc = json::parse(text);
  EXPECT_EQ(doc.at("battery").at("primes"), json::array({3, 5, 7}));
  doc.erase("battery");
  const auto rep = doc.get<SieveReport>();
  EXPECT_EQ(rep.battery_size, 3U);
  EXPECT_EQ(rep.estimates.size(), 4U);
  EXPECT_EQ(json(rep), doc);
  ASSERT_EQ(rep.primes.size(), 3U);
  EXPECT_EQ(rep.primes[0].density, Rational(1) - cycle_type_density(rep.primes[0].p, {2}));
}

TEST(Outputs, CsvFieldsAreFinite) {
  TempDir dir;
  ASSERT_EQ(run(config("walk", "seed = 1\nsamples = 200\ntargets = [\"borel\", \"identity\"]\n", {}, 1,
                       dir.path().string())),
            kExitOk);
  const auto rows = csv_rows(slurp(dir / "walk.csv"));
  ASSERT_GT(rows.size(), 1U);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].size(), rows[0].size());
    for (const auto& cell : rows[i]) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end != cell.c_str() && *end == '\0') {
        EXPECT_TRUE(std::isfinite(v)) << cell;
      }
    }
  }
}

TEST(Outputs, ApproxAndStrongApprox) {
  TempDir dir;
  ASSERT_EQ(run(config("approx", "group = \"sl2:5\"\nset = \"subgroup:borel\"\n", {}, 1, (dir / "a").string())),
            kExitOk);
  const auto approx = json::parse(slurp(dir / "a" / "approx.json"));
  EXPECT_EQ(approx.at("report").get<ApproxReport>().size_a, 20U);

  ASSERT_EQ(run(config("strongapprox", "p_max = 13\n", {}, 1, (dir / "s").string())), kExitOk);
  const auto rows = csv_rows(slurp(dir / "s" / "strongapprox.csv"));
  ASSERT_EQ(rows.size(), 7U);  // header + 2, 3, 5, 7, 11, 13
  EXPECT_EQ(rows[1][0], "2");
  EXPECT_NE(rows[1][2], rows[1][3]);
  for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_EQ(rows[i][2], rows[i][3]) << rows[i][0];
}

TEST(Report, DetectsTamperedOutputs) {
  TempDir dir;
  ASSERT_EQ(run(config("gap", "primes = [3]\n", {}, 1, dir.path().string())), kExitOk);
  const auto report_cfg = config("report", "", {}, 1, dir.path().string());
  std::ostringstream ok_out;
  EXPECT_EQ(run_report(report_cfg, ok_out).exit_code, kExitOk);
  EXPECT_NE(ok_out.str().find("ok   gap.csv"), std::string::npos);
  {
    std::ofstream f(dir / "gap.csv", std::ios::app);
    f << "tampered\n";
  }
  std::ostringstream bad_out;
  EXPECT_EQ(run_report(report_cfg, bad_out).exit_code, kExitVerification);
  EXPECT_NE(bad_out.str().find("FAIL gap.csv"), std::string::npos);
}

TEST(Exit, ErrorsMapToExitCodes) {
  TempDir dir;
  EXPECT_EQ(run(config("gap", "generators = \"nosuch\"\n", {}, 1, dir.path().string())), kExitConfig);
  // Sanov generators are not surjective mod 2, so a sieve over p = 2 fails.
  EXPECT_EQ(run(config("sieve", "seed = 1\nsamples = 10\n[battery]\nN = 1\np_min = 2\n", {}, 1,
                       dir.path().string())),
            kExitVerification);
}

#ifdef GSIEVE_CLI
int shell(const std::string& args) {
  const int status = std::system((std::string(GSIEVE_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Binary, ExitCodesAndNoPartialOutput) {
  TempDir dir;
  fs::create_directories(dir.path());
  {
    std::ofstream f(dir / "bad.toml");
    f << "samples = [1, 2\n";
  }
  const auto out = dir / "out";
  EXPECT_EQ(shell("sieve --seed 1 --config " + (dir / "bad.toml").string() + " --out-dir " + out.string()), 2);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_EQ(shell("walk --out-dir " + out.string()), 2);
  EXPECT_EQ(shell("--help"), 0);
  EXPECT_EQ(shell("gap --primes 3 --bogus 1"), 2);
  EXPECT_EQ(shell("gap --generators cyclic:5 --out-dir " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "gap.csv"));
  EXPECT_EQ(shell("report --out-dir " + out.string()), 0);
}
#endif

}  // namespace
}  // namespace gsieve::cli
