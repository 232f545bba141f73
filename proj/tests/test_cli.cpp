#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>

#include "monobox/exact_oracle.hpp"
#include "monobox/generators.hpp"
#include "monobox/io.hpp"
#include "monobox/model.hpp"

using namespace monobox;
namespace fs = std::filesystem;

// Exit-code contract: 0 found/valid, 1 not found/invalid certificate,
// 2 unusable invocation or input, 3 budget exhausted.

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "stdout.txt";
  const std::string cmd =
      std::string(MONOBOX_CLI_PATH) + " " + args + " > " + log.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  Run r;
  if (status != -1 && WIFEXITED(status)) r.code = WEXITSTATUS(status);
  std::ifstream in(log);
  std::ostringstream text;
  text << in.rdbuf();
  r.out = text.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const char* tag) : path(fs::temp_directory_path() / tag) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const char* name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("gen is deterministic per seed") {
  TempDir dir("monobox-cli-gen");
  const Run a = cli("gen colouring --d 2 --side 5 --colours 2 --seed 9 --out " + (dir / "a.inst"),
                    dir.path);
  const Run b = cli("gen colouring --d 2 --side 5 --colours 2 --seed 9 --out " + (dir / "b.inst"),
                    dir.path);
  CHECK(a.code == 0);
  CHECK(b.code == 0);
  CHECK(slurp(dir.path / "a.inst") == slurp(dir.path / "b.inst"));
  CHECK_FALSE(slurp(dir.path / "a.inst").empty());

  const Run c = cli("gen array --d 2 --side 4 --seed 10 --out " + (dir / "c.inst"), dir.path);
  CHECK(c.code == 0);
  const InstanceFile parsed = read_instance(dir.path / "c.inst");
  CHECK(std::get<NumericArray>(parsed.instance).side(0) == 4);
}

TEST_CASE("single-cell searches need no seed") {
  TempDir dir("monobox-cli-n1");
  REQUIRE(cli("gen colouring --d 2 --side 4 --colours 2 --seed 1 --out " + (dir / "a.inst"),
              dir.path)
              .code == 0);
  const Run r = cli("search mono-box --n 1 --in " + (dir / "a.inst"), dir.path);
  CHECK(r.code == 0);
}

TEST_CASE("sampling searches without a seed are rejected") {
  TempDir dir("monobox-cli-noseed");
  REQUIRE(cli("gen colouring --d 2 --side 5 --colours 2 --seed 2 --out " + (dir / "a.inst"),
              dir.path)
              .code == 0);
  const Run r = cli("search mono-box --n 2 --in " + (dir / "a.inst"), dir.path);
  CHECK(r.code == 2);
}

TEST_CASE("number prints the threshold") {
  TempDir dir("monobox-cli-number");
  const Run r = cli("number R --d 1 --n 3 --colours 2 --max-side 6", dir.path);
  CHECK(r.code == 0);
  CHECK(r.out == "6\n");

  const Run w = cli("number M --d 1 --n 3 --max-side 6 --witness-out " + (dir / "w.inst"),
                    dir.path);
  CHECK(w.code == 0);
  const InstanceFile witness = read_instance(dir.path / "w.inst");
  CHECK(std::get<NumericArray>(witness.instance).side(0) == 4);

  // cap below the threshold: lower-bound witness, exit 1
  const Run capped = cli("number M --d 1 --n 3 --max-side 4", dir.path);
  CHECK(capped.code == 1);
}

TEST_CASE("search, certificate, verify round trip") {
  TempDir dir("monobox-cli-roundtrip");
  REQUIRE(cli("gen colouring --d 2 --side 6 --colours 2 --seed 3 --out " + (dir / "a.inst"),
              dir.path)
              .code == 0);
  const Run found = cli("search mono-box --n 2 --strategy exact --in " + (dir / "a.inst") +
                            " --cert-out " + (dir / "a.cert"),
                        dir.path);
  REQUIRE(found.code == 0);
  const Run ok = cli("verify --in " + (dir / "a.inst") + " --cert " + (dir / "a.cert"), dir.path);
  CHECK(ok.code == 0);
  CHECK(ok.out == "valid\n");

  // verifying against a different instance is a digest mismatch, not "false"
  REQUIRE(cli("gen colouring --d 2 --side 6 --colours 2 --seed 4 --out " + (dir / "b.inst"),
              dir.path)
              .code == 0);
  const Run crossed = cli("verify --in " + (dir / "b.inst") + " --cert " + (dir / "a.cert"),
                          dir.path);
  CHECK(crossed.code == 2);
}

TEST_CASE("a failing certificate body exits 1") {
  TempDir dir("monobox-cli-badcert");
  const BoxColouring col = gen_direction_colouring(2, 4, 2);
  const InstanceFile file{col, std::nullopt};
  write_instance(dir.path / "a.inst", file);

  DirectionColourCertificate cert;
  cert.subbox.axes = {{0, 1}, {0, 1}};
  cert.direction_colours = {1, 0}; // true colours are 0 and 1
  write_certificate(dir.path / "a.cert", CertificateFile{instance_digest(file), cert});

  const Run r = cli("verify --in " + (dir / "a.inst") + " --cert " + (dir / "a.cert"), dir.path);
  CHECK(r.code == 1);
  CHECK(r.out == "INVALID\n");
}

TEST_CASE("exact search reports absence and budget exhaustion") {
  TempDir dir("monobox-cli-miss");
  // No 3x3 box is monochromatic in direction 0: its colour tracks the
  // other coordinate mod 3.
  const BoxColouring col = make_colouring(2, 6, 3, [](int dir, std::span<const int> off, int, int) {
    return dir == 0 ? off[0] % 3 : 0;
  });
  write_instance(dir.path / "a.inst", InstanceFile{col, std::nullopt});

  const Run miss = cli("search mono-box --n 3 --strategy exact --in " + (dir / "a.inst"),
                       dir.path);
  CHECK(miss.code == 1);

  const Run starved = cli("search mono-box --n 3 --strategy exact --budget 1 --in " +
                              (dir / "a.inst"),
                          dir.path);
  CHECK(starved.code == 3);
}

TEST_CASE("lex and consistency searches round trip") {
  TempDir dir("monobox-cli-lex");
  REQUIRE(cli("gen array --d 2 --side 4 --seed 11 --out " + (dir / "arr.inst"), dir.path).code ==
          0);
  const Run lex = cli("search lex-monotone --n 2 --in " + (dir / "arr.inst") + " --cert-out " +
                          (dir / "lex.cert"),
                      dir.path);
  REQUIRE(lex.code == 0);
  CHECK(cli("verify --in " + (dir / "arr.inst") + " --cert " + (dir / "lex.cert"), dir.path)
            .code == 0);

  const BoxColouring flat = gen_direction_colouring(2, 5, 2);
  write_instance(dir.path / "flat.inst", InstanceFile{flat, std::nullopt});
  const Run cons = cli("search consistent --n 3 --strategy exact --in " + (dir / "flat.inst") +
                           " --cert-out " + (dir / "cons.cert"),
                       dir.path);
  REQUIRE(cons.code == 0);
  CHECK(cli("verify --in " + (dir / "flat.inst") + " --cert " + (dir / "cons.cert"), dir.path)
            .code == 0);
}

TEST_CASE("pipeline search writes a trace") {
  TempDir dir("monobox-cli-trace");
  const BoxColouring flat = gen_direction_colouring(2, 6, 2);
  write_instance(dir.path / "flat.inst", InstanceFile{flat, std::nullopt});
  const Run r = cli("search mono-box --n 2 --seed 5 --in " + (dir / "flat.inst") +
                        " --trace-out " + (dir / "trace.json"),
                    dir.path);
  CHECK((r.code == 0 || r.code == 1 || r.code == 3));
  if (r.code == 0) CHECK_FALSE(slurp(dir.path / "trace.json").empty());
}

TEST_CASE("bad invocations exit 2") {
  TempDir dir("monobox-cli-bad");
  CHECK(cli("gen colouring --bogus 1", dir.path).code == 2);
  CHECK(cli("search mono-box --n 2", dir.path).code == 2);      // --in missing
  CHECK(cli("frobnicate", dir.path).code == 2);                 // unknown subcommand
  CHECK(cli("number Q --d 1 --n 2", dir.path).code == 2);       // unknown family
  CHECK(cli("search mono-box --n 0 --in nowhere.inst", dir.path).code == 2);
}
