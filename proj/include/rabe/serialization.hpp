#pragma once

// Versioned text envelopes around canonical binary payloads. The payload
// layouts are listed in docs/FORMATS.md.
//
//   -----BEGIN RABE ENVELOPE-----
//   kind: ct-original
//   version: 1
//   backend: transparent
//   params-hash: <hex SHA-256 of the public-parameter payload>
//   payload: <base64>
//   -----END RABE ENVELOPE-----

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rabe/scheme.hpp"

namespace rabe {

inline constexpr unsigned kFormatVersion = 1;

enum class ArtifactKind {
  kPublicParams,
  kMasterKey,
  kPrivateKey,
  kKeyUpdate,
  kDecryptionKey,
  kOriginalCiphertext,
  kUpdatedCiphertext,
  kCenterState,
  kTranscript,
  kMessage,
};

std::string_view kind_name(ArtifactKind kind);
std::optional<ArtifactKind> parse_kind(std::string_view name);

struct Envelope {
  ArtifactKind kind;
  unsigned version = kFormatVersion;
  Backend backend;
  std::string params_hash;
  std::vector<std::uint8_t> payload;

  bool operator==(const Envelope&) const = default;
};

std::string envelope_to_text(const Envelope& env);
// kDecode on malformed text or an unsupported version.
Envelope envelope_from_text(std::string_view text);

std::string base64_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> base64_decode(std::string_view text);
std::string hex_encode(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> hex_decode(std::string_view text);

class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void bytes(std::span<const std::uint8_t> data);  // u32 length prefix
  void string(std::string_view s) { bytes({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}); }
  void scalar(const Scalar& s);
  void element(const GroupElement& e) { bytes(e.encode()); }

  const std::vector<std::uint8_t>& data() const { return out_; }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

// Every read throws kDecode on truncation.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  std::vector<std::uint8_t> bytes();
  std::string string();
  Scalar scalar(const BilinearContext& ctx);
  GroupElement element(const BilinearContext& ctx, Side expected);
  // Element counts are bounded so a corrupt length cannot exhaust memory.
  std::uint32_t count(std::uint32_t limit = 1u << 20);
  void expect_end() const;

 private:
  std::span<const std::uint8_t> take(std::size_t n);

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> encode_public_params(const PublicParams& pp);
PublicParams decode_public_params(std::span<const std::uint8_t> payload);
// Hex SHA-256 of encode_public_params(pp).
std::string params_hash(const PublicParams& pp);

void write_policy(ByteWriter& w, const AccessPolicy& policy);
AccessPolicy read_policy(ByteReader& r, const BilinearContext& ctx);

std::vector<std::uint8_t> encode_master_key(const MasterKey& mk);
MasterKey decode_master_key(std::span<const std::uint8_t> payload, const BilinearContext& ctx);

std::vector<std::uint8_t> encode_private_key(const PrivateKey& sk);
PrivateKey decode_private_key(std::span<const std::uint8_t> payload, const PublicParams& pp);

std::vector<std::uint8_t> encode_key_update(const KeyUpdate& ku);
KeyUpdate decode_key_update(std::span<const std::uint8_t> payload, const PublicParams& pp);

std::vector<std::uint8_t> encode_decryption_key(const DecryptionKey& dk);
DecryptionKey decode_decryption_key(std::span<const std::uint8_t> payload, const PublicParams& pp);

std::vector<std::uint8_t> encode_original_ciphertext(const OriginalCiphertext& ct);
OriginalCiphertext decode_original_ciphertext(std::span<const std::uint8_t> payload, const PublicParams& pp);

std::vector<std::uint8_t> encode_updated_ciphertext(const UpdatedCiphertext& ct);
UpdatedCiphertext decode_updated_ciphertext(std::span<const std::uint8_t> payload, const PublicParams& pp);

std::vector<std::uint8_t> encode_message(const GroupElement& m);
GroupElement decode_message(std::span<const std::uint8_t> payload, const PublicParams& pp);

// Wraps a payload bound to pp.
Envelope make_envelope(ArtifactKind kind, const PublicParams& pp, std::vector<std::uint8_t> payload);
// kDecode on kind mismatch; kHashMismatch when the envelope was made for other parameters.
const std::vector<std::uint8_t>& open_envelope(const Envelope& env, ArtifactKind expected, const PublicParams& pp);

}  // namespace rabe
