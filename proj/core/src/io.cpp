#include "monobox/io.hpp"

#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "monobox/consistency.hpp"
#include "monobox/params.hpp"
#include "monobox/verify.hpp"

namespace monobox {
namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_hex(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

// Emits tokens separated by single spaces, wrapping payload runs so files
// stay diffable.
class TokenWriter {
 public:
  void word(std::string_view w) {
    if (col_ > 0 && col_ + 1 + w.size() > 78) {
      out_ += '\n';
      col_ = 0;
    }
    if (col_ > 0) {
      out_ += ' ';
      ++col_;
    }
    out_ += w;
    col_ += w.size();
  }
  void number(std::int64_t v) { word(std::to_string(v)); }
  void line_break() {
    if (col_ > 0) {
      out_ += '\n';
      col_ = 0;
    }
  }
  std::string take() {
    line_break();
    return std::move(out_);
  }

 private:
  std::string out_;
  std::size_t col_ = 0;
};

class TokenReader {
 public:
  explicit TokenReader(std::string_view text) : text_(text) {}

  std::string next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) throw std::invalid_argument("unexpected end of input");
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(std::string_view w) {
    std::string got = next();
    if (got != w)
      throw std::invalid_argument("expected '" + std::string(w) + "', got '" + got + "'");
  }

  int integer(int lo, int hi) {
    std::string t = next();
    char* end = nullptr;
    long v = std::strtol(t.c_str(), &end, 10);
    if (end == t.c_str() || *end != '\0' || v < lo || v > hi)
      throw std::invalid_argument("bad integer token '" + t + "'");
    return static_cast<int>(v);
  }

  std::uint64_t hex64() {
    std::string t = next();
    if (t.size() != 16) throw std::invalid_argument("bad digest token '" + t + "'");
    char* end = nullptr;
    std::uint64_t v = std::strtoull(t.c_str(), &end, 16);
    if (end != t.c_str() + 16) throw std::invalid_argument("bad digest token '" + t + "'");
    return v;
  }

  std::uint64_t unsigned64() {
    std::string t = next();
    char* end = nullptr;
    std::uint64_t v = std::strtoull(t.c_str(), &end, 10);
    if (end == t.c_str() || *end != '\0')
      throw std::invalid_argument("bad unsigned token '" + t + "'");
    return v;
  }

  double real() {
    std::string t = next();
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
      throw std::invalid_argument("bad number token '" + t + "'");
    return v;
  }

  bool at_end() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return pos_ >= text_.size();
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

SubBox read_subbox(TokenReader& in) {
  in.expect("axes");
  const int d = in.integer(1, 16);
  SubBox box;
  for (int j = 0; j < d; ++j) {
    in.expect("axis");
    const int len = in.integer(1, 1 << 20);
    std::vector<int> axis(static_cast<std::size_t>(len));
    for (int& v : axis) v = in.integer(0, 1 << 20);
    box.axes.push_back(std::move(axis));
  }
  return box;
}

void write_subbox(TokenWriter& out, const SubBox& box) {
  out.word("axes");
  out.number(box.dims());
  for (const auto& axis : box.axes) {
    out.line_break();
    out.word("axis");
    out.number(static_cast<std::int64_t>(axis.size()));
    for (int v : axis) out.number(v);
  }
  out.line_break();
}

nlohmann::json trace_node(const ExtractionTrace& t) {
  nlohmann::json node;
  node["dims"] = t.dims;
  node["stage"] = t.stage;
  node["dense_fibers"] = t.dense_fibers;
  node["sample"] = t.sample;
  node["hit_fibers"] = t.hit_fibers;
  node["winning_set"] = t.winning_set;
  node["winning_fibers"] = t.winning_fibers;
  node["winning_label"] = t.winning_label;
  node["cap_applied"] = t.cap_applied;
  node["budget_exhausted"] = t.budget_exhausted;
  auto children = nlohmann::json::array();
  for (const auto& c : t.children) children.push_back(trace_node(c));
  node["children"] = std::move(children);
  return node;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

} // namespace

std::uint64_t fnv1a_64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string serialize(const InstanceFile& file) {
  TokenWriter out;
  out.word("monobox-instance");
  out.word("v1");
  out.line_break();
  if (const auto* col = std::get_if<BoxColouring>(&file.instance)) {
    out.word("kind");
    out.word("colouring");
    out.line_break();
    out.word("d");
    out.number(col->dims());
    out.word("side");
    out.number(col->side());
    out.word("colours");
    out.number(col->colours());
    out.line_break();
    if (file.seed) {
      out.word("seed");
      out.word(std::to_string(file.seed->value));
      out.line_break();
    }
    out.word("payload");
    for (std::uint8_t c : col->payload()) out.number(c);
  } else {
    const auto& arr = std::get<NumericArray>(file.instance);
    out.word("kind");
    out.word("array");
    out.line_break();
    out.word("d");
    out.number(arr.dims());
    out.word("sides");
    for (int s : arr.sides()) out.number(s);
    out.line_break();
    if (file.seed) {
      out.word("seed");
      out.word(std::to_string(file.seed->value));
      out.line_break();
    }
    out.word("payload");
    for (double v : arr.values()) out.word(format_double(v));
  }
  out.line_break();
  out.word("end");
  return out.take();
}

InstanceFile parse_instance(std::string_view text) {
  TokenReader in(text);
  in.expect("monobox-instance");
  in.expect("v1");
  in.expect("kind");
  const std::string kind = in.next();
  if (kind == "colouring") {
    in.expect("d");
    const int d = in.integer(1, 16);
    in.expect("side");
    const int side = in.integer(1, 1 << 20);
    in.expect("colours");
    const int r = in.integer(1, 255);
    std::string word = in.next();
    std::optional<Seed> seed;
    if (word == "seed") {
      seed = Seed{in.unsigned64()};
      word = in.next();
    }
    if (word != "payload") throw std::invalid_argument("expected 'payload', got '" + word + "'");
    const std::uint64_t edges = sat_mul(
        static_cast<std::uint64_t>(d),
        sat_mul(sat_pow(static_cast<std::uint64_t>(side), static_cast<std::uint64_t>(d - 1)),
                static_cast<std::uint64_t>(side) * static_cast<std::uint64_t>(side - 1) / 2));
    if (edges > 100'000'000) throw std::invalid_argument("instance too large");
    std::vector<std::uint8_t> payload;
    payload.reserve(edges);
    for (std::uint64_t i = 0; i < edges; ++i)
      payload.push_back(static_cast<std::uint8_t>(in.integer(0, r - 1)));
    in.expect("end");
    if (!in.at_end()) throw std::invalid_argument("trailing tokens after 'end'");
    return InstanceFile{BoxColouring(d, side, r, std::move(payload)), seed};
  }
  if (kind != "array") throw std::invalid_argument("unknown instance kind '" + kind + "'");
  in.expect("d");
  const int d = in.integer(1, 16);
  in.expect("sides");
  std::vector<int> sides(static_cast<std::size_t>(d));
  std::uint64_t cells = 1;
  for (int& s : sides) {
    s = in.integer(1, 1 << 20);
    cells = sat_mul(cells, static_cast<std::uint64_t>(s));
  }
  if (cells > 100'000'000) throw std::invalid_argument("instance too large");
  std::string word = in.next();
  std::optional<Seed> seed;
  if (word == "seed") {
    seed = Seed{in.unsigned64()};
    word = in.next();
  }
  if (word != "payload") throw std::invalid_argument("expected 'payload', got '" + word + "'");
  std::vector<double> values;
  values.reserve(cells);
  for (std::uint64_t i = 0; i < cells; ++i) values.push_back(in.real());
  in.expect("end");
  if (!in.at_end()) throw std::invalid_argument("trailing tokens after 'end'");
  // ranks 1..#cells, in some order; NumericArray's constructor rejects ties
  for (double v : values)
    if (!(v >= 1.0) || !(v <= static_cast<double>(cells)) || v != static_cast<std::int64_t>(v))
      throw std::invalid_argument("array payload is not a rank permutation");
  return InstanceFile{NumericArray(std::move(sides), std::move(values)), seed};
}

std::string serialize(const CertificateFile& file) {
  TokenWriter out;
  out.word("monobox-certificate");
  out.word("v1");
  out.line_break();
  out.word("kind");
  if (const auto* box = std::get_if<DirectionColourCertificate>(&file.certificate)) {
    out.word("mono_box");
    out.line_break();
    out.word("instance");
    out.word(format_hex(file.instance_digest));
    out.line_break();
    write_subbox(out, box->subbox);
    out.word("colours");
    for (int c : box->direction_colours) out.number(c);
  } else if (const auto* mono = std::get_if<MonotoneCertificate>(&file.certificate)) {
    out.word("monotone");
    out.line_break();
    out.word("instance");
    out.word(format_hex(file.instance_digest));
    out.line_break();
    write_subbox(out, mono->subbox);
    out.word("signs");
    for (int s : mono->signs) out.number(s);
  } else if (const auto* lex = std::get_if<LexMonotoneCertificate>(&file.certificate)) {
    out.word("lex_monotone");
    out.line_break();
    out.word("instance");
    out.word(format_hex(file.instance_digest));
    out.line_break();
    write_subbox(out, lex->subbox);
    out.word("perm");
    for (int p : lex->perm) out.number(p);
    out.line_break();
    out.word("signs");
    for (int s : lex->signs) out.number(s);
  } else {
    const auto& con = std::get<ConsistencyCertificate>(file.certificate);
    out.word("consistency");
    out.line_break();
    out.word("instance");
    out.word(format_hex(file.instance_digest));
    out.line_break();
    write_subbox(out, con.subbox);
    out.word("pattern");
    out.word(format_hex(con.pattern_hash));
  }
  out.line_break();
  out.word("end");
  return out.take();
}

CertificateFile parse_certificate(std::string_view text) {
  TokenReader in(text);
  in.expect("monobox-certificate");
  in.expect("v1");
  in.expect("kind");
  const std::string kind = in.next();
  in.expect("instance");
  CertificateFile file;
  file.instance_digest = in.hex64();
  SubBox box = read_subbox(in);
  const int d = box.dims();
  if (kind == "mono_box") {
    in.expect("colours");
    std::vector<int> colours(static_cast<std::size_t>(d));
    for (int& c : colours) c = in.integer(0, 254);
    file.certificate = DirectionColourCertificate{std::move(box), std::move(colours)};
  } else if (kind == "monotone") {
    in.expect("signs");
    std::vector<int> signs(static_cast<std::size_t>(d));
    for (int& s : signs) s = in.integer(-1, 1);
    file.certificate = MonotoneCertificate{std::move(box), std::move(signs)};
  } else if (kind == "lex_monotone") {
    in.expect("perm");
    std::vector<int> perm(static_cast<std::size_t>(d));
    for (int& p : perm) p = in.integer(0, d - 1);
    in.expect("signs");
    std::vector<int> signs(static_cast<std::size_t>(d));
    for (int& s : signs) s = in.integer(-1, 1);
    file.certificate = LexMonotoneCertificate{std::move(box), std::move(perm), std::move(signs)};
  } else if (kind == "consistency") {
    in.expect("pattern");
    file.certificate = ConsistencyCertificate{std::move(box), in.hex64()};
  } else {
    throw std::invalid_argument("unknown certificate kind '" + kind + "'");
  }
  in.expect("end");
  if (!in.at_end()) throw std::invalid_argument("trailing tokens after 'end'");
  return file;
}

std::uint64_t instance_digest(const InstanceFile& file) { return fnv1a_64(serialize(file)); }

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_instance(const std::filesystem::path& path, const InstanceFile& file) {
  write_text_file(path, serialize(file));
}

void write_certificate(const std::filesystem::path& path, const CertificateFile& file) {
  write_text_file(path, serialize(file));
}

InstanceFile read_instance(const std::filesystem::path& path) {
  return parse_instance(read_text(path));
}

CertificateFile read_certificate(const std::filesystem::path& path) {
  return parse_certificate(read_text(path));
}

ConsistencyCertificate to_certificate(const ConsistencyWitness& witness) {
  return ConsistencyCertificate{witness.subbox, fnv1a_64(witness.pattern)};
}

bool verify_certificate(const InstanceFile& file, const CertificateFile& cert) {
  if (cert.instance_digest != instance_digest(file)) return false;
  const auto* col = std::get_if<BoxColouring>(&file.instance);
  const auto* arr = std::get_if<NumericArray>(&file.instance);
  if (const auto* box = std::get_if<DirectionColourCertificate>(&cert.certificate))
    return col != nullptr && verify_mono_box(*col, *box);
  if (const auto* mono = std::get_if<MonotoneCertificate>(&cert.certificate))
    return arr != nullptr && verify_monotone(*arr, *mono);
  if (const auto* lex = std::get_if<LexMonotoneCertificate>(&cert.certificate))
    return arr != nullptr && verify_lex_monotone(*arr, *lex);
  const auto& con = std::get<ConsistencyCertificate>(cert.certificate);
  if (col != nullptr) {
    con.subbox.validate(std::vector<int>(static_cast<std::size_t>(col->dims()), col->side()));
    return is_consistent(*col, con.subbox) &&
           fnv1a_64(canonical_pattern(*col, con.subbox)) == con.pattern_hash;
  }
  con.subbox.validate(arr->sides());
  return is_consistent(*arr, con.subbox) &&
         fnv1a_64(canonical_pattern(*arr, con.subbox)) == con.pattern_hash;
}

std::string trace_to_json(const ExtractionTrace& trace) { return trace_node(trace).dump(2); }

} // namespace monobox
