// Drives the installed binary end to end: exit codes, document shape,
// byte-level determinism, and the cache.

#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
};

// env goes in front of the command so the shell applies it to the child.
RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + DYNFORGE_CLI + " " +
                    args + " 2>/dev/null";
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int st = ::pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

nlohmann::json parse_doc(const std::string& out) {
  auto j = nlohmann::json::parse(out, nullptr, false);
  REQUIRE(!j.is_discarded());
  return j;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("dynforge-cli-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("certification exit codes match the verdict") {
  CHECK(run_cli("certify --q 2 --preset factored:0,t").code == 0);
  CHECK(run_cli("certify --q 4 --num z^4-t^3*z").code == 0);
  CHECK(run_cli("certify --q 3 --preset factored:t^2,t^2+t").code == 1);
  CHECK(run_cli("certify --q 5 --num z^2-t*z-t^2").code == 1);
  CHECK(run_cli("certify --q 3 --preset quad-affine:0,t").code == 2);
}

TEST_CASE("malformed input exits 2 without a document") {
  RunResult r = run_cli("certify --q 2 --num z^^2");
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(run_cli("certify --q 6 --num z^2+t").code == 2);
  CHECK(run_cli("certify --q 2 --preset mystery:1").code == 2);
  CHECK(run_cli("certify --q 2").code == 2);
  CHECK(run_cli("dynatomic --q 2 --preset factored:0,t --m 0 --n 0").code == 2);
  CHECK(run_cli("dynatomic --q 2 --preset factored:0,t").code == 2);
  CHECK(run_cli("preper --q 2 --preset factored:0,t --n 1").code == 2);
  CHECK(run_cli("nonsense --q 2").code == 2);
}

TEST_CASE("reruns are byte-identical, cached or not") {
  TempDir tmp;
  std::string args = "report --q 2 --preset factored:0,t --max-total 2";
  std::string cached = args + " --cache-dir " + tmp.path.string();
  RunResult first = run_cli(cached);
  RunResult second = run_cli(cached);
  RunResult plain = run_cli(args);
  CHECK(first.code == 0);
  CHECK(second.code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out == plain.out);

  int entries = 0;
  for (const auto& f : fs::directory_iterator(tmp.path)) {
    ++entries;
    CHECK(f.path().extension() == ".json");
  }
  CHECK(entries == 1);

  auto doc = parse_doc(first.out);
  std::string key = doc["cache_key"].get<std::string>();
  CHECK(fs::exists(tmp.path / (key + ".json")));

  // The environment variable names the same cache when the flag is absent.
  RunResult env_run =
      run_cli(args, "DYNFORGE_CACHE=" + tmp.path.string());
  CHECK(env_run.out == first.out);
  CHECK(env_run.code == 0);
}

TEST_CASE("the exit code of a cached document matches the fresh one") {
  TempDir tmp;
  std::string args = "certify --q 3 --preset factored:t^2,t^2+t --cache-dir " +
                     tmp.path.string();
  RunResult fresh = run_cli(args);
  RunResult hit = run_cli(args);
  CHECK(fresh.code == 1);
  CHECK(hit.code == 1);
  CHECK(fresh.out == hit.out);
}

TEST_CASE("force skips the certification gate") {
  std::string fam = "--q 3 --preset factored:t^2,t^2+t";
  RunResult gated = run_cli("dynatomic " + fam + " --max-total 1");
  CHECK(gated.code == 1);
  auto gdoc = parse_doc(gated.out);
  CHECK(gdoc["status"] == "FAIL");
  CHECK(gdoc.contains("certificate"));
  CHECK(!gdoc.contains("factors"));

  RunResult forced = run_cli("dynatomic " + fam + " --max-total 1 --force");
  CHECK(forced.code == 0);
  auto fdoc = parse_doc(forced.out);
  CHECK(fdoc["status"] == "PASS");
  CHECK(!fdoc.contains("certificate"));
  CHECK(fdoc.contains("factors"));
  long sum = 0;
  for (const auto& f : fdoc["factors"])
    sum += f["mult"].get<long>() * f["ell"].get<long>();
  CHECK(sum == 3);  // d + 1 at (m, n) = (0, 1)
}

TEST_CASE("out writes the same bytes as stdout") {
  TempDir tmp;
  fs::path dest = tmp.path / "doc.json";
  RunResult direct = run_cli("constants --q 3 --num z^2+t");
  RunResult filed =
      run_cli("constants --q 3 --num z^2+t --out " + dest.string());
  CHECK(direct.code == 0);
  CHECK(filed.code == 0);
  CHECK(filed.out.empty());
  std::ifstream f(dest, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == direct.out);
}

TEST_CASE("document contents agree with the library results") {
  auto cons = parse_doc(run_cli("constants --q 3 --num z^2+t").out);
  CHECK(cons["constants"]["ram_lcm"] == 2);
  CHECK(cons["constants"]["residue_lcm"] == 2);
  CHECK(cons["constants"]["height_bound"] == 1);
  CHECK(cons["constants"]["stabilized"] == true);

  RunResult pre = run_cli("preper --q 2 --preset factored:0,t --m 1 --n 1");
  CHECK(pre.code == 0);
  auto pdoc = parse_doc(pre.out);
  CHECK(pdoc["points"].size() == 4);
  CHECK(pdoc["validation"]["ok"] == true);
  for (const auto& pt : pdoc["points"]) CHECK(pt["word"].size() == 2);

  auto cert = parse_doc(run_cli("certify --q 2 --preset quad-affine:t,t").out);
  CHECK(cert["status"] == "PASS");
  CHECK(cert["normal_form"]["s"] == "t");
  CHECK(cert["normal_form"]["ext_degree"] == 1);
  CHECK(cert["family"]["num"] == "z^2+t*z");
}
