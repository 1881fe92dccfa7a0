#include <doctest.h>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "secrelay/cli.hpp"
#include "secrelay/errors.hpp"

using namespace secrelay;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "secrelay");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> v;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) v.push_back(f);
  return v;
}

double num(const std::string& s) { return std::stod(s); }

std::string field_value(const std::string& pretty, const std::string& key) {
  for (const auto& l : lines(pretty)) {
    if (l.rfind(key + " ", 0) == 0) {
      const auto pos = l.find_first_not_of(' ', key.size());
      return l.substr(pos);
    }
  }
  return {};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("secrelay_test_" + name);
  std::ofstream(p) << content;
  return p;
}

const std::vector<std::string> kSmallMc{"montecarlo", "--samples", "500", "--pr-points", "5", "--sigma2-hd", "1,4"};

}  // namespace

TEST_CASE("compute examples") {
  auto r = run({"compute", "--strategy", "af", "--alpha", "4", "--beta", "1", "--mu", "2", "--pr", "0.5"});
  CHECK(r.code == 0);
  CHECK(num(field_value(r.out, "capacity")) == doctest::Approx(0.160964).epsilon(1e-6));
  CHECK(field_value(r.out, "solver_branch") == "endpoint");
  CHECK(num(field_value(r.out, "genie_bound")) == doctest::Approx(0.160964).epsilon(1e-6));

  r = run({"compute", "--strategy", "df", "--alpha", "4", "--beta", "1", "--mu", "2", "--pr", "1"});
  CHECK(r.code == 0);
  CHECK(num(field_value(r.out, "capacity")) == 0.5);

  r = run({"compute", "--strategy", "af", "--alpha", "1", "--beta", "4", "--mu", "2", "--pr", "5"});
  CHECK(r.code == 0);
  CHECK(num(field_value(r.out, "capacity")) == 0.0);
}

TEST_CASE("compute from complex gains, dB powers and CSV output") {
  auto r = run({"compute", "--strategy", "AF", "--hr", "1", "--hd", "0,2", "--he", "0.6,0.8", "--ps", "0", "--db",
                "--pr", "-3.0103", "--format", "csv", "--per-hop"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "strategy,capacity,x_hat,consumed_power,genie_bound,solver_branch");
  const auto f = fields(ls[1]);
  // P_s = 1 W, P_r = 0.5 W, per-hop rate = log2 f(0.25).
  CHECK(num(f[1]) == doctest::Approx(std::log2(1.25)).epsilon(1e-4));
  CHECK(num(f[4]) == doctest::Approx(num(f[1])).epsilon(1e-9));
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"compute", "--strategy", "af", "--pr", "1"}).code == cli::kExitUsage);
  CHECK(run({"compute", "--strategy", "af", "--alpha", "4", "--beta", "1", "--pr", "1"}).code == cli::kExitUsage);
  CHECK(run({"compute", "--strategy", "af", "--alpha", "4", "--beta", "1", "--mu", "2", "--hd", "1", "--pr", "1"})
            .code == cli::kExitUsage);
  CHECK(run({"compute", "--strategy", "xf", "--alpha", "4", "--beta", "1", "--mu", "2", "--pr", "1"}).code ==
        cli::kExitUsage);
  CHECK(run({"compute", "--strategy", "af", "--alpha", "4", "--beta", "1", "--mu", "0.5", "--pr", "1"}).code ==
        cli::kExitUsage);
  CHECK(run({"compute", "--strategy", "af", "--alpha", "4", "--beta", "1", "--mu", "2", "--pr", "-1"}).code ==
        cli::kExitUsage);
  CHECK(run({"compute", "--strategy", "af", "--hr", "1,2,3", "--hd", "1", "--he", "1", "--ps", "1", "--pr", "1"})
            .code == cli::kExitUsage);
  const auto r = run({"sweep", "--alpha", "4", "--beta", "1", "--mu", "2", "--pr-max", "1", "--pr-step", "0"});
  CHECK(r.code == cli::kExitUsage);
  CHECK(!r.err.empty());
  CHECK(r.out.empty());
}

TEST_CASE("help exits with 0") {
  const auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("montecarlo") != std::string::npos);
  const auto v = run({"verify", "--help"});
  CHECK(v.code == 0);
  CHECK(v.out.find("inject-fault") == std::string::npos);
}

TEST_CASE("sweep rows") {
  const auto r = run({"sweep", "--alpha", "4", "--beta", "1", "--mu", "2", "--pr-max", "2", "--pr-step", "0.1"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 1 + 2 * 21);
  CHECK(ls[0] == "strategy,p_r,capacity,x_hat,consumed_power");
  double prev_p = -1.0, prev_af = 0.0, plateau = -1.0;
  for (std::size_t i = 1; i < ls.size(); i += 2) {
    const auto af = fields(ls[i]);
    const auto df = fields(ls[i + 1]);
    CHECK(af[0] == "af");
    CHECK(df[0] == "df");
    CHECK(af[1] == df[1]);
    const double p = num(af[1]), c = num(af[2]);
    CHECK(p > prev_p);
    CHECK(c >= prev_af);
    CHECK(num(df[2]) >= c);
    if (p > std::sqrt(0.5)) {
      if (plateau < 0.0) plateau = c;
      CHECK(c == plateau);
    }
    prev_p = p;
    prev_af = c;
  }
  CHECK(num(fields(ls.back())[1]) == doctest::Approx(2.0));
}

TEST_CASE("sweep single strategy to a file") {
  const auto path = std::filesystem::temp_directory_path() / "secrelay_test_sweep.csv";
  const auto r = run({"sweep", "--strategy", "df", "--alpha", "4", "--beta", "1", "--mu", "2", "--pr-min", "0.5",
                      "--pr-max", "1.5", "--pr-step", "0.5", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto ls = lines(buf.str());
  REQUIRE(ls.size() == 4);
  CHECK(ls[1] == "df,0.5,0.5,0.5,0.5");
}

TEST_CASE("montecarlo output shape and determinism") {
  const auto a = run(kSmallMc);
  REQUIRE(a.code == 0);
  const auto ls = lines(a.out);
  REQUIRE(ls.size() == 1 + 2 * 2 * 5);
  CHECK(ls[0] ==
        "strategy,sigma2_hd,p_r,mean_capacity,stderr_capacity,mean_consumed_power,stderr_consumed_power,n_samples,"
        "seed");
  const auto f = fields(ls[1]);
  CHECK(f[0] == "af");
  CHECK(f[1] == "1");
  CHECK(f[2] == "0");
  CHECK(f[7] == "500");
  CHECK(f[8] == "20240917");
  CHECK(fields(ls.back())[0] == "df");
  CHECK(fields(ls.back())[1] == "4");
  CHECK(fields(ls.back())[2] == "20");
  CHECK(run(kSmallMc).out == a.out);

  auto other = kSmallMc;
  other.insert(other.end(), {"--seed", "5"});
  const auto b = run(other);
  CHECK(b.out != a.out);
  CHECK(fields(lines(b.out)[1])[8] == "5");
}

TEST_CASE("montecarlo configuration precedence") {
  const auto cfg = temp_file("mc.cfg", "# small run\nseed = 77\nn_samples=300\npr_points = 3\nsigma2_hd=2\n");
  auto r = run({"montecarlo", "--config", cfg.string()});
  REQUIRE(r.code == 0);
  auto ls = lines(r.out);
  REQUIRE(ls.size() == 1 + 2 * 3);
  CHECK(fields(ls[1])[8] == "77");
  CHECK(fields(ls[1])[7] == "300");

  r = run({"montecarlo", "--config", cfg.string(), "--seed", "78", "--strategy", "af"});
  REQUIRE(r.code == 0);
  ls = lines(r.out);
  REQUIRE(ls.size() == 1 + 3);
  CHECK(fields(ls[1])[8] == "78");

  // The environment replaces only the built-in default seed.
  ::setenv("SECRELAY_SEED", "4242", 1);
  r = run({"montecarlo", "--samples", "10", "--pr-points", "2", "--sigma2-hd", "1"});
  CHECK(fields(lines(r.out)[1])[8] == "4242");
  r = run({"montecarlo", "--config", cfg.string()});
  CHECK(fields(lines(r.out)[1])[8] == "77");
  ::setenv("SECRELAY_SEED", "not-a-number", 1);
  CHECK(run({"montecarlo", "--samples", "10"}).code == cli::kExitUsage);
  ::unsetenv("SECRELAY_SEED");
}

TEST_CASE("montecarlo configuration errors") {
  CHECK(run({"montecarlo", "--config", "/nonexistent/secrelay.cfg"}).code == cli::kExitUsage);
  CHECK(run({"montecarlo", "--config", temp_file("bad1.cfg", "colour=blue\n").string()}).code == cli::kExitUsage);
  CHECK(run({"montecarlo", "--config", temp_file("bad2.cfg", "n_samples=0\n").string()}).code == cli::kExitUsage);
  CHECK(run({"montecarlo", "--config", temp_file("bad3.cfg", "just words\n").string()}).code == cli::kExitUsage);
  CHECK(run({"montecarlo", "--samples", "0"}).code == cli::kExitUsage);
  CHECK(run({"montecarlo", "--var-he", "-1", "--samples", "10"}).code == cli::kExitUsage);
}

TEST_CASE("montecarlo dB grid") {
  const auto r = run({"montecarlo", "--samples", "50", "--pr-min", "0", "--pr-max", "10", "--pr-points", "2",
                      "--sigma2-hd", "1", "--strategy", "df", "--db"});
  REQUIRE(r.code == 0);
  const auto ls = lines(r.out);
  CHECK(num(fields(ls[1])[2]) == 1.0);
  CHECK(num(fields(ls[2])[2]) == doctest::Approx(10.0));
}

TEST_CASE("verify passes and the injected fault is caught") {
  auto r = run({"verify", "--draws", "30", "--seed", "3", "--grid-points", "20000"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("# verify seed=3 draws=30", 0) == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);

  r = run({"verify", "--draws", "30", "--seed", "3", "--grid-points", "20000", "--inject-fault"});
  CHECK(r.code == cli::kExitVerifyFailed);
  CHECK(r.out.find("FAIL oracle_capacity") != std::string::npos);
  CHECK(run({"verify", "--grid-points", "1"}).code == cli::kExitUsage);
}

TEST_CASE("number formatting round-trips") {
  for (const double v : {0.0, 0.1, 1.0 / 3.0, 1e-300, 123456789.125, 0.16096404744368117}) {
    const std::string s = cli::format_double(v);
    double back = -1.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    CHECK(back == v);
  }
  CHECK(cli::format_double(0.5) == "0.5");
  CHECK(cli::format_double(20.0) == "20");
}

TEST_CASE("complex and key=value parsing") {
  CHECK(cli::parse_complex("1.5") == Complex(1.5, 0.0));
  CHECK(cli::parse_complex(" -1 , 2e-1 ") == Complex(-1.0, 0.2));
  CHECK_THROWS_AS(cli::parse_complex("1,2,3"), InvalidInput);
  CHECK_THROWS_AS(cli::parse_complex("abc"), InvalidInput);

  std::istringstream ok("a = 1\n\n# comment\nb=x y # trailing\n");
  const auto kv = cli::parse_key_values(ok);
  CHECK(kv.at("a") == "1");
  CHECK(kv.at("b") == "x y");
  std::istringstream dup("a=1\na=2\n");
  CHECK_THROWS_AS(cli::parse_key_values(dup), ConfigError);
  std::istringstream bare("novalue\n");
  CHECK_THROWS_AS(cli::parse_key_values(bare), ConfigError);
}
