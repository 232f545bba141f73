#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "monobox/consistency.hpp"
#include "monobox/dense_extraction.hpp"
#include "monobox/exact_oracle.hpp"
#include "monobox/generators.hpp"
#include "monobox/io.hpp"
#include "monobox/model.hpp"
#include "monobox/pipelines.hpp"
#include "monobox/verify.hpp"

using namespace monobox;

namespace {

InstanceFile colouring_file() {
  InstanceFile f{gen_random_colouring(2, 4, 3, Seed{77}), Seed{77}};
  return f;
}

InstanceFile array_file() {
  InstanceFile f{gen_random_array({3, 4}, Seed{78}), std::nullopt};
  return f;
}

} // namespace

TEST_CASE("instances survive a round trip") {
  const InstanceFile col = colouring_file();
  const InstanceFile back = parse_instance(serialize(col));
  CHECK(std::get<BoxColouring>(back.instance) == std::get<BoxColouring>(col.instance));
  REQUIRE(back.seed.has_value());
  CHECK(back.seed->value == Seed{77}.value);

  const InstanceFile arr = array_file();
  const InstanceFile back2 = parse_instance(serialize(arr));
  CHECK(std::get<NumericArray>(back2.instance) == std::get<NumericArray>(arr.instance));
  CHECK_FALSE(back2.seed.has_value());
}

TEST_CASE("digest ignores formatting but not content") {
  const InstanceFile col = colouring_file();
  const std::string text = serialize(col);
  const std::uint64_t digest = instance_digest(col);

  // Reflow every whitespace run to a single newline; identity must hold.
  std::string reflow;
  bool in_space = false;
  for (char c : text) {
    if (c == ' ' || c == '\n') {
      if (!in_space) reflow.push_back('\n');
      in_space = true;
    } else {
      reflow.push_back(c);
      in_space = false;
    }
  }
  CHECK(instance_digest(parse_instance(reflow)) == digest);

  // Any payload change must move the digest.
  InstanceFile other = col;
  std::vector<std::uint8_t> payload = std::get<BoxColouring>(col.instance).payload();
  payload[0] = payload[0] == 0 ? 1 : 0;
  other.instance = BoxColouring(2, 4, 3, payload);
  CHECK(instance_digest(other) != digest);

  // The digest covers the whole canonical serialization, seed included.
  InstanceFile reseeded = col;
  reseeded.seed = Seed{78};
  CHECK(instance_digest(reseeded) != digest);
}

TEST_CASE("certificates of every kind survive a round trip") {
  const InstanceFile col = colouring_file();
  const std::uint64_t digest = instance_digest(col);

  DirectionColourCertificate box;
  box.subbox.axes = {{0, 2}, {1, 3}};
  box.direction_colours = {2, 0};
  const CertificateFile boxf{digest, box};
  const CertificateFile boxb = parse_certificate(serialize(boxf));
  CHECK(boxb.instance_digest == digest);
  const auto& bb = std::get<DirectionColourCertificate>(boxb.certificate);
  CHECK(bb.subbox == box.subbox);
  CHECK(bb.direction_colours == box.direction_colours);

  MonotoneCertificate mono;
  mono.subbox.axes = {{1, 2}, {0, 3}};
  mono.signs = {1, -1};
  const CertificateFile monob = parse_certificate(serialize(CertificateFile{digest, mono}));
  const auto& mb = std::get<MonotoneCertificate>(monob.certificate);
  CHECK(mb.subbox == mono.subbox);
  CHECK(mb.signs == mono.signs);

  LexMonotoneCertificate lex;
  lex.subbox.axes = {{0, 1}, {2, 3}};
  lex.perm = {1, 0};
  lex.signs = {-1, 1};
  const CertificateFile lexb = parse_certificate(serialize(CertificateFile{digest, lex}));
  const auto& lb = std::get<LexMonotoneCertificate>(lexb.certificate);
  CHECK(lb.subbox == lex.subbox);
  CHECK(lb.perm == lex.perm);
  CHECK(lb.signs == lex.signs);

  ConsistencyCertificate cons;
  cons.subbox.axes = {{0, 1}, {0, 2}};
  cons.pattern_hash = 0xDEADBEEFCAFEF00Dull;
  const CertificateFile consb = parse_certificate(serialize(CertificateFile{digest, cons}));
  const auto& cb = std::get<ConsistencyCertificate>(consb.certificate);
  CHECK(cb.subbox == cons.subbox);
  CHECK(cb.pattern_hash == cons.pattern_hash);
}

TEST_CASE("verify_certificate accepts good pairs and rejects bad ones") {
  const BoxColouring col = gen_direction_colouring(2, 4, 2);
  const InstanceFile file{col, std::nullopt};

  const BoxDecision dec = decide_R_instance(col, 2);
  REQUIRE(dec.certificate.has_value());
  const CertificateFile good{instance_digest(file), *dec.certificate};
  CHECK(verify_certificate(file, good));

  // wrong instance: perturb one edge
  std::vector<std::uint8_t> payload = col.payload();
  payload[0] ^= 1;
  const InstanceFile other{BoxColouring(2, 4, 2, payload), std::nullopt};
  CHECK_FALSE(verify_certificate(other, good));

  // right digest, broken body
  CertificateFile bad = good;
  std::get<DirectionColourCertificate>(bad.certificate).direction_colours[0] ^= 1;
  CHECK_FALSE(verify_certificate(file, bad));

  // certificate kind does not fit the instance kind
  MonotoneCertificate mono;
  mono.subbox.axes = {{0, 1}, {0, 1}};
  mono.signs = {1, 1};
  const CertificateFile crossed{instance_digest(file), mono};
  CHECK_FALSE(verify_certificate(file, crossed));

  // consistency certificates check the pattern hash
  const auto witness = find_consistent_box_exhaustive(col, 2);
  REQUIRE(witness.has_value());
  const CertificateFile cons{instance_digest(file), to_certificate(*witness)};
  CHECK(verify_certificate(file, cons));
  CertificateFile wrong_hash = cons;
  std::get<ConsistencyCertificate>(wrong_hash.certificate).pattern_hash ^= 1;
  CHECK_FALSE(verify_certificate(file, wrong_hash));
}

TEST_CASE("malformed inputs raise with the offending token") {
  const std::string good = serialize(colouring_file());

  CHECK_THROWS_AS((void)parse_instance(""), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_instance("monobox-instance v2"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_instance(good.substr(0, good.size() / 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)parse_instance(good + " trailing"), std::invalid_argument);

  std::string bad_token = good;
  bad_token.replace(bad_token.find("colours"), 7, "colors!");
  CHECK_THROWS_AS((void)parse_instance(bad_token), std::invalid_argument);

  // colour id outside [0, colours)
  const std::string tiny =
      "monobox-instance v1 kind colouring d 1 side 2 colours 2 payload 2 end";
  CHECK_THROWS_AS((void)parse_instance(tiny), std::invalid_argument);

  // array payload must be the ranks 1..#cells
  const std::string dup =
      "monobox-instance v1 kind array d 1 sides 3 payload 1 1 3 end";
  CHECK_THROWS_AS((void)parse_instance(dup), std::invalid_argument);
  const std::string big =
      "monobox-instance v1 kind array d 1 sides 3 payload 1 2 9 end";
  CHECK_THROWS_AS((void)parse_instance(big), std::invalid_argument);

  // oversized headers must be rejected before any allocation
  const std::string huge =
      "monobox-instance v1 kind colouring d 9 side 1000000 colours 200 payload 0 end";
  CHECK_THROWS_AS((void)parse_instance(huge), std::invalid_argument);

  CHECK_THROWS_AS(
      (void)parse_certificate("monobox-certificate v1 kind mono_box instance zzz end"),
      std::invalid_argument);
}

TEST_CASE("files are written atomically and read back") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "monobox-io-test";
  fs::create_directories(dir);

  const InstanceFile file = array_file();
  const fs::path inst = dir / "a.inst";
  write_instance(inst, file);
  CHECK_FALSE(fs::exists(inst.string() + ".tmp"));
  const InstanceFile back = read_instance(inst);
  CHECK(std::get<NumericArray>(back.instance) == std::get<NumericArray>(file.instance));

  const auto dec = decide_M_instance(std::get<NumericArray>(file.instance), 2);
  REQUIRE(dec.certificate.has_value());
  const fs::path cert = dir / "a.cert";
  write_certificate(cert, CertificateFile{instance_digest(file), *dec.certificate});
  CHECK(verify_certificate(back, read_certificate(cert)));

  fs::remove_all(dir);
}

TEST_CASE("trace export is valid JSON mirroring the trace tree") {
  const BoxColouring col = gen_direction_colouring(2, 6, 2);
  PipelineParams params;
  params.seed = Seed{91};
  params.budget = 200'000;
  const MonoBoxSearch out = find_mono_box(col, 2, params);
  const std::string text = trace_to_json(out.trace);
  const nlohmann::json parsed = nlohmann::json::parse(text);
  CHECK(parsed.at("dims").get<int>() == out.trace.dims);
  CHECK(parsed.at("stage").get<std::string>() == out.trace.stage);
  CHECK(parsed.at("children").size() == out.trace.children.size());
}
