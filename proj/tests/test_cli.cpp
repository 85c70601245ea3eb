#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the command-line surface, driven through the built
// binary. TSIEVE_BIN and TSIEVE_DATA are injected by the build.

namespace {

struct RunOutput {
  int status = -1;
  std::string stdout_text;
};

RunOutput run(const std::string& args) {
  std::string tmp = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR")
                                                      : "/tmp") +
                    "/tsieve_cli_out.txt";
  std::string cmd = std::string(TSIEVE_BIN) + " " + args + " > " + tmp + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunOutput out;
  out.status = WEXITSTATUS(rc);
  std::ifstream f(tmp);
  std::stringstream ss;
  ss << f.rdbuf();
  out.stdout_text = ss.str();
  return out;
}

std::string fig2_flags() {
  return std::string("--graph ") + TSIEVE_DATA + "/fig2.edges --colors " +
         TSIEVE_DATA + "/fig2.colors";
}

}  // namespace

TEST_CASE("cli decide exits 0 on YES and 1 on NO") {
  RunOutput yes = run("decide " + fig2_flags() +
                      " --problem pathmotif --motif 1,1,2,3 --format json");
  CHECK(yes.status == 0);
  CHECK(yes.stdout_text.find("\"decision\": \"YES\"") != std::string::npos);

  RunOutput no = run("decide " + fig2_flags() +
                     " --problem pathmotif --motif 1,1,1,3");
  CHECK(no.status == 1);
}

TEST_CASE("cli rejects bad usage with exit 2 naming the flag") {
  RunOutput r = run("decide " + fig2_flags() + " --problem ktemppath --k 0");
  CHECK(r.status == 2);
  CHECK(r.stdout_text.find("--k") != std::string::npos);

  RunOutput missing = run("decide --problem pathmotif --motif 1,2");
  CHECK(missing.status == 2);

  RunOutput badfile = run(
      "decide --graph /nonexistent.edges --problem pathmotif --motif 1,2");
  CHECK(badfile.status == 2);
}

TEST_CASE("cli extract emits a witness that verify accepts") {
  std::string tmp = "/tmp/tsieve_witness.json";
  RunOutput ext = run("extract " + fig2_flags() +
                      " --problem pathmotif --motif 1,1,2,3 --format json");
  REQUIRE(ext.status == 0);
  std::ofstream(tmp) << ext.stdout_text;
  CHECK(ext.stdout_text.find("\"witness\"") != std::string::npos);

  RunOutput ver = run("verify " + fig2_flags() +
                      " --problem pathmotif --motif 1,1,2,3 --witness " + tmp);
  CHECK(ver.status == 0);
  CHECK(ver.stdout_text.find("witness OK") != std::string::npos);
}

TEST_CASE("cli optimum reports the minimal horizon") {
  RunOutput r = run("optimum " + fig2_flags() +
                    " --problem pathmotif --motif 1,1,2,3 --format json");
  CHECK(r.status == 0);
  CHECK(r.stdout_text.find("\"optimum_ts\": 3") != std::string::npos);
}

TEST_CASE("cli gen writes deterministic artifacts") {
  std::string p1 = "/tmp/tsieve_gen_a", p2 = "/tmp/tsieve_gen_b";
  std::string flags =
      " --family regular --n 40 --d 4 --t 9 --colors-range 3 --seed 5 "
      "--plant 2 --plant-motif 1,2,3 --out ";
  REQUIRE(run("gen" + flags + p1).status == 0);
  REQUIRE(run("gen" + flags + p2).status == 0);
  for (const char* suffix : {".edges", ".colors", ".witnesses"}) {
    std::ifstream a(p1 + suffix), b(p2 + suffix);
    REQUIRE(a);
    REQUIRE(b);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK_FALSE(sa.str().empty());
  }
  // The planted sidecar has one line per planted witness.
  std::ifstream w(p1 + std::string(".witnesses"));
  int lines = 0;
  std::string line;
  while (std::getline(w, line)) ++lines;
  CHECK(lines == 2);

  // The planted instance must decide YES through the CLI as well.
  RunOutput dec = run("decide --graph " + p1 + ".edges --colors " + p1 +
                      ".colors --problem pathmotif --motif 1,2,3");
  CHECK(dec.status == 0);
}

TEST_CASE("cli bench memory suite emits the versioned CSV header") {
  RunOutput r = run("bench --suite memory --seed 3 --threads 1");
  CHECK(r.status == 0);
  CHECK(r.stdout_text.find("# tsieve-bench v1") != std::string::npos);
  CHECK(r.stdout_text.find("memory,regular") != std::string::npos);
  CHECK(r.stdout_text.find("exceeded") == std::string::npos);
}
