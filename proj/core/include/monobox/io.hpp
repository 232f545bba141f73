#pragma once

/*
 * Text formats for instances and certificates, plus trace export.
 *
 * Both formats are whitespace-separated token streams opened by a format
 * tag ("monobox-instance v1" / "monobox-certificate v1") and closed by
 * "end"; the serializer wraps long payloads but parsing ignores line
 * breaks.  The digest of an instance is FNV-1a 64 over its canonical
 * serialization, so reformatting a file does not change its identity.
 * Certificates carry the digest of the instance they were issued for;
 * verification against anything else is rejected.
 *
 * Array payloads hold the rank values 1..#cells (serialized exactly;
 * %.17g keeps doubles bit-identical through a round trip).
 */

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "monobox/dense_extraction.hpp"
#include "monobox/model.hpp"
#include "monobox/rng.hpp"

namespace monobox {

struct InstanceFile {
  std::variant<BoxColouring, NumericArray> instance;
  std::optional<Seed> seed; // generation provenance, when the instance was drawn
};

// File form of a ConsistencyWitness: the pattern string is summarized by
// its FNV-1a 64 hash.
struct ConsistencyCertificate {
  SubBox subbox;
  std::uint64_t pattern_hash = 0;
};

struct CertificateFile {
  std::uint64_t instance_digest = 0;
  std::variant<DirectionColourCertificate, MonotoneCertificate, LexMonotoneCertificate,
               ConsistencyCertificate>
      certificate;
};

std::uint64_t fnv1a_64(std::string_view bytes);

std::string serialize(const InstanceFile& file);
std::string serialize(const CertificateFile& file);

// Throw std::invalid_argument naming the offending token on malformed
// input.
InstanceFile parse_instance(std::string_view text);
CertificateFile parse_certificate(std::string_view text);

std::uint64_t instance_digest(const InstanceFile& file);

// Atomic: the bytes land under a temporary name first and are renamed
// into place.
void write_text_file(const std::filesystem::path& path, std::string_view text);
void write_instance(const std::filesystem::path& path, const InstanceFile& file);
void write_certificate(const std::filesystem::path& path, const CertificateFile& file);

InstanceFile read_instance(const std::filesystem::path& path);
CertificateFile read_certificate(const std::filesystem::path& path);

ConsistencyCertificate to_certificate(const ConsistencyWitness& witness);

// Digest check, then the verifier matching the certificate kind.  False on
// a digest mismatch, a kind/instance mismatch, or a failing verifier;
// malformed sub-box shapes propagate the verifier's exception.
bool verify_certificate(const InstanceFile& file, const CertificateFile& cert);

// JSON rendering of an extraction trace, children nested.
std::string trace_to_json(const ExtractionTrace& trace);

} // namespace monobox
