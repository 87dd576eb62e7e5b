#include "rabe/serialization.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

#include "rabe/error.hpp"
#include "rabe/random.hpp"

namespace rabe {
namespace {

constexpr std::string_view kBegin = "-----BEGIN RABE ENVELOPE-----";
constexpr std::string_view kEnd = "-----END RABE ENVELOPE-----";

constexpr std::array<std::pair<ArtifactKind, std::string_view>, 10> kKindNames{{
    {ArtifactKind::kPublicParams, "pp"},
    {ArtifactKind::kMasterKey, "mk"},
    {ArtifactKind::kPrivateKey, "sk"},
    {ArtifactKind::kKeyUpdate, "ku"},
    {ArtifactKind::kDecryptionKey, "dk"},
    {ArtifactKind::kOriginalCiphertext, "ct-original"},
    {ArtifactKind::kUpdatedCiphertext, "ct-updated"},
    {ArtifactKind::kCenterState, "state"},
    {ArtifactKind::kTranscript, "transcript"},
    {ArtifactKind::kMessage, "message"},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

void write_mirrored(ByteWriter& w, const MirroredElement& m) {
  w.element(m.one);
  w.element(m.two);
}

MirroredElement read_mirrored(ByteReader& r, const BilinearContext& ctx) {
  GroupElement one = r.element(ctx, Side::kSourceOne);
  GroupElement two = r.element(ctx, Side::kSourceTwo);
  return {std::move(one), std::move(two)};
}

void write_attrs(ByteWriter& w, const AttributeSet& attrs) {
  w.u32(static_cast<std::uint32_t>(attrs.size()));
  for (Attribute a : attrs) w.u32(a);
}

AttributeSet read_attrs(ByteReader& r, const PublicParams& pp) {
  AttributeSet attrs;
  std::uint32_t n = r.count(pp.limits().max_attributes);
  for (std::uint32_t i = 0; i < n; ++i) {
    Attribute a = r.u32();
    if (a < 1 || a > pp.limits().max_attributes || !attrs.insert(a).second) {
      throw Error(ErrorCode::kDecode, "invalid or repeated attribute in payload");
    }
  }
  if (attrs.empty()) throw Error(ErrorCode::kDecode, "empty attribute set in payload");
  return attrs;
}

void write_c2(ByteWriter& w, const std::map<Attribute, GroupElement>& c2) {
  w.u32(static_cast<std::uint32_t>(c2.size()));
  for (const auto& [x, e] : c2) {
    w.u32(x);
    w.element(e);
  }
}

std::map<Attribute, GroupElement> read_c2(ByteReader& r, const PublicParams& pp, const AttributeSet& attrs) {
  std::map<Attribute, GroupElement> c2;
  std::uint32_t n = r.count(pp.limits().max_attributes);
  for (std::uint32_t i = 0; i < n; ++i) {
    Attribute x = r.u32();
    if (!c2.emplace(x, r.element(pp.context(), Side::kSourceOne)).second) {
      throw Error(ErrorCode::kDecode, "repeated attribute component");
    }
  }
  AttributeSet keys;
  for (const auto& [x, e] : c2) keys.insert(x);
  if (keys != attrs) throw Error(ErrorCode::kDecode, "attribute components do not match the attribute set");
  return c2;
}

void check_epoch(const PublicParams& pp, std::uint64_t t) {
  if (t < 1 || t >= pp.limits().max_time) throw Error(ErrorCode::kDecode, "epoch out of range in payload");
}

void write_rows(ByteWriter& w, const PartialPrivateKey& part) {
  w.u32(static_cast<std::uint32_t>(part.rows.size()));
  for (const auto& row : part.rows) {
    w.element(row.k0);
    w.element(row.k1);
  }
}

PartialPrivateKey read_rows(ByteReader& r, const BilinearContext& ctx, std::size_t expected) {
  PartialPrivateKey part;
  std::uint32_t n = r.count();
  if (n != expected) throw Error(ErrorCode::kDecode, "key row count does not match the policy");
  for (std::uint32_t i = 0; i < n; ++i) {
    GroupElement k0 = r.element(ctx, Side::kSourceTwo);
    GroupElement k1 = r.element(ctx, Side::kSourceTwo);
    part.rows.push_back({std::move(k0), std::move(k1)});
  }
  return part;
}

}  // namespace

std::string_view kind_name(ArtifactKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ArtifactKind> parse_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string envelope_to_text(const Envelope& env) {
  std::string s;
  s += kBegin;
  s += "\nkind: ";
  s += kind_name(env.kind);
  s += "\nversion: " + std::to_string(env.version);
  s += "\nbackend: ";
  s += backend_name(env.backend);
  s += "\nparams-hash: " + env.params_hash;
  s += "\npayload: " + base64_encode(env.payload);
  s += "\n";
  s += kEnd;
  s += "\n";
  return s;
}

Envelope envelope_from_text(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    if (!line.empty()) lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  if (lines.size() != 7 || lines.front() != kBegin || lines.back() != kEnd) {
    throw Error(ErrorCode::kDecode, "not a RABE envelope");
  }
  std::map<std::string_view, std::string_view> fields;
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    auto colon = lines[i].find(':');
    if (colon == std::string_view::npos) throw Error(ErrorCode::kDecode, "malformed envelope field");
    if (!fields.emplace(trim(lines[i].substr(0, colon)), trim(lines[i].substr(colon + 1))).second) {
      throw Error(ErrorCode::kDecode, "repeated envelope field");
    }
  }
  auto field = [&](std::string_view key) {
    auto it = fields.find(key);
    if (it == fields.end()) throw Error(ErrorCode::kDecode, "envelope lacks field '" + std::string(key) + "'");
    return it->second;
  };
  auto kind = parse_kind(field("kind"));
  if (!kind) throw Error(ErrorCode::kDecode, "unknown envelope kind '" + std::string(field("kind")) + "'");
  if (field("version") != std::to_string(kFormatVersion)) {
    throw Error(ErrorCode::kDecode, "unsupported envelope version " + std::string(field("version")));
  }
  auto backend = parse_backend(field("backend"));
  if (!backend) throw Error(ErrorCode::kDecode, "unknown backend '" + std::string(field("backend")) + "'");
  std::string_view hash = field("params-hash");
  if (hash.size() != 64) throw Error(ErrorCode::kDecode, "params-hash must be 64 hex digits");
  hex_decode(hash);
  return Envelope{*kind, kFormatVersion, *backend, std::string(hash), base64_decode(field("payload"))};
}

std::string base64_encode(std::span<const std::uint8_t> data) {
  std::string out(4 * ((data.size() + 2) / 3), '\0');
  int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), data.data(), static_cast<int>(data.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw Error(ErrorCode::kDecode, "base64 length is not a multiple of 4");
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '/' ||
              (c == '=' && i + 2 >= text.size());
    if (!ok) throw Error(ErrorCode::kDecode, "invalid base64 character");
  }
  std::vector<std::uint8_t> out(3 * (text.size() / 4));
  int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()),
                          static_cast<int>(text.size()));
  if (n < 0) throw Error(ErrorCode::kDecode, "invalid base64");
  std::size_t pad = 0;
  if (!text.empty() && text.back() == '=') ++pad;
  if (text.size() >= 2 && text[text.size() - 2] == '=') ++pad;
  out.resize(static_cast<std::size_t>(n) - pad);
  return out;
}

std::string hex_encode(std::span<const std::uint8_t> data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * data.size());
  for (std::uint8_t b : data) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 15]);
  }
  return s;
}

std::vector<std::uint8_t> hex_decode(std::string_view text) {
  if (text.size() % 2 != 0) throw Error(ErrorCode::kDecode, "hex string has odd length");
  auto digit = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw Error(ErrorCode::kDecode, "invalid hex digit");
  };
  std::vector<std::uint8_t> out;
  out.reserve(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); i += 2) {
    out.push_back(static_cast<std::uint8_t>(digit(text[i]) << 4 | digit(text[i + 1])));
  }
  return out;
}

void ByteWriter::u32(std::uint32_t v) {
  for (int i = 3; i >= 0; --i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(std::uint64_t v) {
  for (int i = 7; i >= 0; --i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void ByteWriter::bytes(std::span<const std::uint8_t> data) {
  u32(static_cast<std::uint32_t>(data.size()));
  out_.insert(out_.end(), data.begin(), data.end());
}

void ByteWriter::scalar(const Scalar& s) {
  auto b = s.to_bytes();
  out_.insert(out_.end(), b.begin(), b.end());
}

std::span<const std::uint8_t> ByteReader::take(std::size_t n) {
  if (data_.size() - pos_ < n) throw Error(ErrorCode::kDecode, "payload truncated");
  auto s = data_.subspan(pos_, n);
  pos_ += n;
  return s;
}

std::uint8_t ByteReader::u8() { return take(1)[0]; }

std::uint32_t ByteReader::u32() {
  std::uint32_t v = 0;
  for (std::uint8_t b : take(4)) v = (v << 8) | b;
  return v;
}

std::uint64_t ByteReader::u64() {
  std::uint64_t v = 0;
  for (std::uint8_t b : take(8)) v = (v << 8) | b;
  return v;
}

std::vector<std::uint8_t> ByteReader::bytes() {
  std::uint32_t n = u32();
  auto s = take(n);
  return {s.begin(), s.end()};
}

std::string ByteReader::string() {
  auto b = bytes();
  return {b.begin(), b.end()};
}

Scalar ByteReader::scalar(const BilinearContext& ctx) { return ctx.scalar_from_bytes(take(Scalar::kBytes)); }

GroupElement ByteReader::element(const BilinearContext& ctx, Side expected) {
  auto b = bytes();
  GroupElement e = ctx.decode(b);
  if (e.side() != expected) {
    throw Error(ErrorCode::kDecode, "expected an element of " + std::string(side_name(expected)));
  }
  return e;
}

std::uint32_t ByteReader::count(std::uint32_t limit) {
  std::uint32_t n = u32();
  if (n > limit) throw Error(ErrorCode::kDecode, "element count exceeds limit");
  return n;
}

void ByteReader::expect_end() const {
  if (pos_ != data_.size()) throw Error(ErrorCode::kDecode, "trailing bytes after payload");
}

std::vector<std::uint8_t> encode_public_params(const PublicParams& pp) {
  ByteWriter w;
  w.bytes(pp.context().descriptor());
  w.u64(pp.limits().max_users);
  w.u64(pp.limits().max_time);
  w.u32(pp.limits().max_attributes);
  w.element(pp.g1());
  write_mirrored(w, pp.g2());
  w.u32(static_cast<std::uint32_t>(pp.t_gens().size()));
  for (const auto& t : pp.t_gens()) write_mirrored(w, t);
  write_mirrored(w, pp.u0());
  w.u32(static_cast<std::uint32_t>(pp.u_gens().size()));
  for (const auto& u : pp.u_gens()) write_mirrored(w, u);
  return w.take();
}

PublicParams decode_public_params(std::span<const std::uint8_t> payload) {
  ByteReader r(payload);
  BilinearContext ctx = BilinearContext::from_descriptor(r.bytes());
  SchemeLimits limits;
  limits.max_users = r.u64();
  limits.max_time = r.u64();
  limits.max_attributes = r.u32();
  try {
    limits.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kDecode, std::string("invalid limits: ") + e.what());
  }
  GroupElement g1 = r.element(ctx, Side::kSourceOne);
  MirroredElement g2 = read_mirrored(r, ctx);
  std::vector<MirroredElement> t_gens;
  for (std::uint32_t i = 0, n = r.count(1025); i < n; ++i) t_gens.push_back(read_mirrored(r, ctx));
  MirroredElement u0 = read_mirrored(r, ctx);
  std::vector<MirroredElement> u_gens;
  for (std::uint32_t i = 0, n = r.count(64); i < n; ++i) u_gens.push_back(read_mirrored(r, ctx));
  r.expect_end();
  return PublicParams(ctx, limits, std::move(g1), std::move(g2), std::move(t_gens), std::move(u0),
                      std::move(u_gens));
}

std::string params_hash(const PublicParams& pp) {
  auto digest = sha256(encode_public_params(pp));
  return hex_encode(digest);
}

void write_policy(ByteWriter& w, const AccessPolicy& policy) {
  w.string(policy.formula());
  w.u32(static_cast<std::uint32_t>(policy.rows()));
  w.u32(static_cast<std::uint32_t>(policy.cols()));
  for (std::size_t i = 0; i < policy.rows(); ++i) {
    for (const auto& x : policy.row(i)) w.scalar(x);
  }
  for (Attribute a : policy.row_attributes()) w.u32(a);
}

AccessPolicy read_policy(ByteReader& r, const BilinearContext& ctx) {
  std::string formula = r.string();
  std::uint32_t rows = r.count(4096);
  std::uint32_t cols = r.count(4096);
  if (rows == 0 || cols == 0) throw Error(ErrorCode::kDecode, "empty policy matrix");
  std::vector<std::vector<Scalar>> matrix;
  for (std::uint32_t i = 0; i < rows; ++i) {
    std::vector<Scalar> row;
    for (std::uint32_t j = 0; j < cols; ++j) row.push_back(r.scalar(ctx));
    matrix.push_back(std::move(row));
  }
  std::vector<Attribute> attrs;
  for (std::uint32_t i = 0; i < rows; ++i) attrs.push_back(r.u32());
  try {
    AccessPolicy policy(std::move(matrix), std::move(attrs), formula);
    if (!formula.empty() && !(parse_policy(formula, ctx.scalar_field()) == policy)) {
      throw Error(ErrorCode::kDecode, "policy matrix does not match its formula");
    }
    return policy;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDecode) throw;
    throw Error(ErrorCode::kDecode, std::string("invalid policy: ") + e.what());
  }
}

std::vector<std::uint8_t> encode_master_key(const MasterKey& mk) {
  ByteWriter w;
  w.scalar(mk.alpha);
  return w.take();
}

MasterKey decode_master_key(std::span<const std::uint8_t> payload, const BilinearContext& ctx) {
  ByteReader r(payload);
  MasterKey mk{r.scalar(ctx)};
  r.expect_end();
  return mk;
}

std::vector<std::uint8_t> encode_private_key(const PrivateKey& sk) {
  ByteWriter w;
  w.string(sk.id);
  write_policy(w, sk.policy);
  w.u64(sk.leaf);
  w.u32(static_cast<std::uint32_t>(sk.parts.size()));
  for (const auto& [node, part] : sk.parts) {
    w.u64(node);
    write_rows(w, part);
  }
  return w.take();
}

PrivateKey decode_private_key(std::span<const std::uint8_t> payload, const PublicParams& pp) {
  ByteReader r(payload);
  const auto& ctx = pp.context();
  std::string id = r.string();
  AccessPolicy policy = read_policy(r, ctx);
  NodeId leaf = r.u64();
  TreeState shape(pp.limits().max_users);
  if (!shape.is_leaf(leaf)) throw Error(ErrorCode::kDecode, "private key leaf is not a leaf of the tree");
  auto path = shape.path(leaf);
  PrivateKey sk{std::move(id), policy, leaf, {}};
  std::uint32_t n = r.count(64);
  if (n != path.size()) throw Error(ErrorCode::kDecode, "private key does not cover its leaf's path");
  for (std::uint32_t i = 0; i < n; ++i) {
    NodeId node = r.u64();
    if (std::find(path.begin(), path.end(), node) == path.end() || sk.parts.contains(node)) {
      throw Error(ErrorCode::kDecode, "private key part for a node off the path");
    }
    sk.parts.emplace(node, read_rows(r, ctx, policy.rows()));
  }
  r.expect_end();
  return sk;
}

std::vector<std::uint8_t> encode_key_update(const KeyUpdate& ku) {
  ByteWriter w;
  w.u64(ku.epoch);
  w.u32(static_cast<std::uint32_t>(ku.parts.size()));
  for (const auto& [node, part] : ku.parts) {
    w.u64(node);
    w.element(part.d0);
    w.element(part.d1);
  }
  return w.take();
}

KeyUpdate decode_key_update(std::span<const std::uint8_t> payload, const PublicParams& pp) {
  ByteReader r(payload);
  const auto& ctx = pp.context();
  KeyUpdate ku{r.u64(), {}};
  check_epoch(pp, ku.epoch);
  TreeState shape(pp.limits().max_users);
  std::uint32_t n = r.count(static_cast<std::uint32_t>(shape.capacity()));
  for (std::uint32_t i = 0; i < n; ++i) {
    NodeId node = r.u64();
    if (!shape.is_valid_node(node)) throw Error(ErrorCode::kDecode, "key update part for an invalid node");
    GroupElement d0 = r.element(ctx, Side::kSourceTwo);
    GroupElement d1 = r.element(ctx, Side::kSourceTwo);
    if (!ku.parts.emplace(node, KeyUpdatePart{std::move(d0), std::move(d1)}).second) {
      throw Error(ErrorCode::kDecode, "repeated key update node");
    }
  }
  r.expect_end();
  return ku;
}

std::vector<std::uint8_t> encode_decryption_key(const DecryptionKey& dk) {
  ByteWriter w;
  w.string(dk.id);
  w.u64(dk.epoch);
  w.u64(dk.node);
  write_policy(w, dk.policy);
  write_rows(w, dk.psk);
  w.element(dk.pku.d0);
  w.element(dk.pku.d1);
  return w.take();
}

DecryptionKey decode_decryption_key(std::span<const std::uint8_t> payload, const PublicParams& pp) {
  ByteReader r(payload);
  const auto& ctx = pp.context();
  std::string id = r.string();
  std::uint64_t epoch = r.u64();
  check_epoch(pp, epoch);
  NodeId node = r.u64();
  if (!TreeState(pp.limits().max_users).is_valid_node(node)) throw Error(ErrorCode::kDecode, "invalid node");
  AccessPolicy policy = read_policy(r, ctx);
  PartialPrivateKey psk = read_rows(r, ctx, policy.rows());
  GroupElement d0 = r.element(ctx, Side::kSourceTwo);
  GroupElement d1 = r.element(ctx, Side::kSourceTwo);
  r.expect_end();
  return DecryptionKey{std::move(id), epoch, node, std::move(policy), std::move(psk),
                       KeyUpdatePart{std::move(d0), std::move(d1)}};
}

std::vector<std::uint8_t> encode_original_ciphertext(const OriginalCiphertext& ct) {
  ByteWriter w;
  write_attrs(w, ct.attrs);
  w.u64(ct.epoch);
  w.element(ct.c);
  w.element(ct.c1);
  write_c2(w, ct.c2);
  w.element(ct.e1);
  w.u32(static_cast<std::uint32_t>(ct.e2.size()));
  for (const auto& [j, e] : ct.e2) {
    w.u32(static_cast<std::uint32_t>(j));
    w.element(e);
  }
  return w.take();
}

OriginalCiphertext decode_original_ciphertext(std::span<const std::uint8_t> payload, const PublicParams& pp) {
  ByteReader r(payload);
  const auto& ctx = pp.context();
  AttributeSet attrs = read_attrs(r, pp);
  std::uint64_t epoch = r.u64();
  check_epoch(pp, epoch);
  GroupElement c = r.element(ctx, Side::kTarget);
  GroupElement c1 = r.element(ctx, Side::kSourceOne);
  auto c2 = read_c2(r, pp, attrs);
  GroupElement e1 = r.element(ctx, Side::kSourceOne);
  std::map<std::size_t, GroupElement> e2;
  std::uint32_t n = r.count(64);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::size_t j = r.u32();
    if (!e2.emplace(j, r.element(ctx, Side::kSourceOne)).second) throw Error(ErrorCode::kDecode, "repeated E2 index");
  }
  std::vector<std::size_t> keys;
  for (const auto& [j, e] : e2) keys.push_back(j);
  if (ZeroIndexSet(keys) != zero_set(ctencode(pp.epoch(epoch)))) {
    throw Error(ErrorCode::kDecode, "E2 indices do not match the ciphertext epoch");
  }
  r.expect_end();
  return OriginalCiphertext{std::move(attrs), epoch, std::move(c), std::move(c1), std::move(c2), std::move(e1),
                            std::move(e2)};
}

std::vector<std::uint8_t> encode_updated_ciphertext(const UpdatedCiphertext& ct) {
  ByteWriter w;
  write_attrs(w, ct.attrs);
  w.u64(ct.epoch);
  w.element(ct.c);
  w.element(ct.c1);
  write_c2(w, ct.c2);
  w.element(ct.et);
  return w.take();
}

UpdatedCiphertext decode_updated_ciphertext(std::span<const std::uint8_t> payload, const PublicParams& pp) {
  ByteReader r(payload);
  const auto& ctx = pp.context();
  AttributeSet attrs = read_attrs(r, pp);
  std::uint64_t epoch = r.u64();
  check_epoch(pp, epoch);
  GroupElement c = r.element(ctx, Side::kTarget);
  GroupElement c1 = r.element(ctx, Side::kSourceOne);
  auto c2 = read_c2(r, pp, attrs);
  GroupElement et = r.element(ctx, Side::kSourceOne);
  r.expect_end();
  return UpdatedCiphertext{std::move(attrs), epoch, std::move(c), std::move(c1), std::move(c2), std::move(et)};
}

std::vector<std::uint8_t> encode_message(const GroupElement& m) {
  ByteWriter w;
  w.element(m);
  return w.take();
}

GroupElement decode_message(std::span<const std::uint8_t> payload, const PublicParams& pp) {
  ByteReader r(payload);
  GroupElement m = r.element(pp.context(), Side::kTarget);
  r.expect_end();
  return m;
}

Envelope make_envelope(ArtifactKind kind, const PublicParams& pp, std::vector<std::uint8_t> payload) {
  return Envelope{kind, kFormatVersion, pp.context().backend(), params_hash(pp), std::move(payload)};
}

const std::vector<std::uint8_t>& open_envelope(const Envelope& env, ArtifactKind expected, const PublicParams& pp) {
  if (env.kind != expected) {
    throw Error(ErrorCode::kDecode, "expected a '" + std::string(kind_name(expected)) + "' envelope, got '" +
                                        std::string(kind_name(env.kind)) + "'");
  }
  if (env.backend != pp.context().backend()) {
    throw Error(ErrorCode::kBackendMismatch, "envelope backend does not match the public parameters");
  }
  if (env.params_hash != params_hash(pp)) {
    throw Error(ErrorCode::kHashMismatch, "'" + std::string(kind_name(env.kind)) +
                                              "' envelope was made under different public parameters");
  }
  return env.payload;
}

}  // namespace rabe
