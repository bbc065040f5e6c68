#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code;
  std::string output;  // stdout only
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(ABELAUT_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) {
    out.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / "abelaut_cli_test";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// strip elapsed-time lines so deterministic outputs can be compared byte-wise
std::string without_timings(const std::string& s) {
  std::string out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const std::size_t end = s.find('\n', pos);
    const std::string line = s.substr(pos, end == std::string::npos ? end : end - pos);
    if (line.find("elapsed_ms") == std::string::npos) {
      out += line;
      out += '\n';
    }
    pos = end == std::string::npos ? s.size() : end + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("tat search --p 3 --n 3 --budget 1").exit_code == 2);
  CHECK(run_cli("tat search --p 4 --n 4").exit_code == 2);
  CHECK(run_cli("tat verify /nonexistent.json").exit_code == 2);
  CHECK(run_cli("group build --construction hexagonal --tat /nonexistent.json")
            .exit_code == 2);
}

TEST_CASE("budget exhaustion exits with 3") {
  CHECK(run_cli("tat search --p 3 --n 4 --budget 0").exit_code == 3);
}

TEST_CASE("search, verify, build, analyze, certify round trip") {
  const fs::path dir = work_dir();
  const fs::path tat = dir / "tat.json";
  const CliResult search = run_cli("tat search --p 3 --n 4 --k-dim 0 --seed 7 "
                                   "--budget 500 --workers 2 -o " + tat.string());
  REQUIRE(search.exit_code == 0);
  REQUIRE(fs::exists(tat));

  CHECK(run_cli("tat verify " + tat.string() + " --workers 2").exit_code == 0);

  // determinism: the same seed reproduces the identical file
  const fs::path tat2 = dir / "tat2.json";
  REQUIRE(run_cli("tat search --p 3 --n 4 --k-dim 0 --seed 7 --budget 500 "
                  "--workers 1 -o " + tat2.string()).exit_code == 0);
  CHECK(slurp(tat) == slurp(tat2));

  for (const std::string c : {"special", "zurek", "central-product", "extension"}) {
    const fs::path group = dir / (c + ".json");
    CHECK(run_cli("group build --construction " + c + " --tat " + tat.string() +
                  " --workers 2 -o " + group.string()).exit_code == 0);
    const CliResult analysis = run_cli("group analyze " + group.string() +
                                       " --format json");
    CHECK(analysis.exit_code == 0);
    const auto j = nlohmann::json::parse(analysis.output);
    CHECK(j.at("schema") == 1);
  }

  // analysis values for the zurek group
  const CliResult zurek = run_cli("group analyze " + (dir / "zurek.json").string() +
                                  " --format json");
  const auto j = nlohmann::json::parse(zurek.output);
  CHECK(j.at("order_exponent") == 14);
  CHECK(j.at("lattice") == "G'<Phi=Z");
  CHECK(j.at("is_special") == false);
  CHECK(j.at("purely_nonabelian_certificate") == true);

  // certification emits a certificate and exits by the claim sheet
  const fs::path cert = dir / "cert.json";
  CHECK(run_cli("aut verify " + (dir / "zurek.json").string() + " --workers 2 -o " +
                cert.string()).exit_code == 0);
  const auto cj = nlohmann::json::parse(slurp(cert));
  CHECK(cj.at("aut_equals_autc") == true);
  CHECK(cj.at("structure") == "nonabelian");
  CHECK(cj.at("witness").is_object());
}

TEST_CASE("verification failures exit with 1") {
  const fs::path dir = work_dir();
  // f = 0 fails condition (3)
  nlohmann::json bad;
  bad["schema"] = 1;
  bad["p"] = 3;
  bad["n"] = 4;
  bad["wedge_order"] = "lex";
  bad["k_basis"] = nlohmann::json::array();
  bad["f_rows"] = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    bad["f_rows"].push_back(std::vector<int>(6, 0));
  }
  const fs::path bad_path = dir / "zero_f.json";
  std::ofstream(bad_path) << bad.dump();
  CHECK(run_cli("tat verify " + bad_path.string()).exit_code == 1);

  // K absorbing e1 ^ V fails condition (2)
  nlohmann::json badk = bad;
  badk["k_basis"] = {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}};
  const fs::path badk_path = dir / "bad_k.json";
  std::ofstream(badk_path) << badk.dump();
  const CliResult r = run_cli("tat verify " + badk_path.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("condition (2)") != std::string::npos);

  // malformed file is a usage error instead
  const fs::path garbled = dir / "garbled.json";
  std::ofstream(garbled) << "{ not json";
  CHECK(run_cli("tat verify " + garbled.string()).exit_code == 2);
}

TEST_CASE("extension build rejects m = 1 with exit 2") {
  const fs::path tat = work_dir() / "tat.json";
  REQUIRE(fs::exists(tat));
  CHECK(run_cli("group build --construction extension --m 1 --tat " +
                tat.string()).exit_code == 2);
}

TEST_CASE("ABELAUT_BUDGET caps the enumeration globally") {
  const fs::path tat = work_dir() / "tat.json";
  REQUIRE(fs::exists(tat));
  // |GL(4,3)| = 24261120 > 1000: verification must refuse to run
  const std::string cmd = "ABELAUT_BUDGET=1000 " + std::string(ABELAUT_CLI_PATH) +
                          " tat verify " + tat.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}

TEST_CASE("paper check reproduces all claims and is worker invariant") {
  const CliResult one = run_cli("paper check --p 3 --n 4 --seed 7 --workers 1");
  CHECK(one.exit_code == 0);
  CHECK(one.output.find("all claims reproduce") != std::string::npos);
  CHECK(one.output.find("[FAIL]") == std::string::npos);

  const CliResult eight = run_cli("paper-check --p 3 --n 4 --seed 7 --workers 8");
  CHECK(eight.exit_code == 0);
  CHECK(without_timings(one.output) == without_timings(eight.output));
}

TEST_CASE("paper check fails on a corrupted TAT") {
  const fs::path dir = work_dir();
  const fs::path tat = dir / "tat.json";
  REQUIRE(fs::exists(tat));
  auto j = nlohmann::json::parse(slurp(tat));
  // zero out f: no longer injective, verification fails before any build
  for (auto& row : j["f_rows"]) {
    for (auto& e : row) e = 0;
  }
  const fs::path corrupted = dir / "corrupted.json";
  std::ofstream(corrupted) << j.dump();
  const CliResult r = run_cli("paper check --p 3 --n 4 --tat " + corrupted.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("[FAIL]") != std::string::npos);
}
