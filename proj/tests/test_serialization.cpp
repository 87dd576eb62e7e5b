#include <gtest/gtest.h>

#include "rabe/center.hpp"
#include "rabe/error.hpp"
#include "rabe/serialization.hpp"

using rabe::ArtifactKind;
using rabe::Backend;

namespace {

class SerializationBothBackends : public ::testing::TestWithParam<Backend> {
 protected:
  void SetUp() override {
    ctx = rabe::BilinearContext::create(GetParam(), rabe::seed_bytes(5));
    sys.emplace(rabe::setup(*ctx, {}, rng));
  }
  const rabe::PublicParams& pp() const { return sys->pp; }

  rabe::SeededRng rng{5};
  std::optional<rabe::BilinearContext> ctx;
  std::optional<rabe::SetupResult> sys;
};

std::string backend_label(const ::testing::TestParamInfo<Backend>& info) {
  return std::string(rabe::backend_name(info.param));
}

template <class T, class Enc, class Dec>
void expect_round_trip(const T& value, Enc encode, Dec decode) {
  auto bytes = encode(value);
  auto back = decode(bytes);
  EXPECT_EQ(encode(back), bytes);
  // Truncation and trailing garbage are both rejected.
  auto shorter = bytes;
  shorter.pop_back();
  EXPECT_THROW(decode(shorter), rabe::Error);
  auto longer = bytes;
  longer.push_back(0);
  EXPECT_THROW(decode(longer), rabe::Error);
}

}  // namespace

TEST_P(SerializationBothBackends, PublicParamsRoundTrip) {
  auto bytes = rabe::encode_public_params(pp());
  auto back = rabe::decode_public_params(bytes);
  EXPECT_TRUE(back == pp());
  EXPECT_EQ(rabe::encode_public_params(back), bytes);
  EXPECT_EQ(rabe::params_hash(back), rabe::params_hash(pp()));
  EXPECT_EQ(rabe::params_hash(pp()).size(), 64u);
}

TEST_P(SerializationBothBackends, EveryArtifactRoundTripsBitExact) {
  auto& s = *sys;
  auto policy = rabe::parse_policy("1 AND (2 OR 3)", ctx->scalar_field());
  auto sk = rabe::gen_key("alice", policy, s.mk, s.state, s.pp, rng);
  auto ku = rabe::update_key(6, s.rl, s.mk, s.state, s.pp, rng);
  auto dk = *rabe::derive_dk(sk, ku);
  auto m = rabe::random_message(s.pp, rng);
  auto ct = rabe::encrypt({1, 2}, 5, m, s.pp, rng);
  auto updated = *rabe::update_ct(ct, 6, s.pp, rng);

  expect_round_trip(sk, rabe::encode_private_key, [&](auto b) { return rabe::decode_private_key(b, s.pp); });
  expect_round_trip(ku, rabe::encode_key_update, [&](auto b) { return rabe::decode_key_update(b, s.pp); });
  expect_round_trip(dk, rabe::encode_decryption_key, [&](auto b) { return rabe::decode_decryption_key(b, s.pp); });
  expect_round_trip(ct, rabe::encode_original_ciphertext,
                    [&](auto b) { return rabe::decode_original_ciphertext(b, s.pp); });
  expect_round_trip(updated, rabe::encode_updated_ciphertext,
                    [&](auto b) { return rabe::decode_updated_ciphertext(b, s.pp); });
  expect_round_trip(m, rabe::encode_message, [&](auto b) { return rabe::decode_message(b, s.pp); });
  expect_round_trip(s.mk, rabe::encode_master_key, [&](auto b) { return rabe::decode_master_key(b, s.pp.context()); });

  // A decoded key still decrypts.
  auto dk2 = rabe::decode_decryption_key(rabe::encode_decryption_key(dk), s.pp);
  auto ct2 = rabe::decode_updated_ciphertext(rabe::encode_updated_ciphertext(updated), s.pp);
  EXPECT_EQ(rabe::decrypt(ct2, dk2, s.pp), m);
}

TEST_P(SerializationBothBackends, EnvelopeBindsToParameters) {
  auto m = rabe::random_message(pp(), rng);
  auto env = rabe::make_envelope(ArtifactKind::kMessage, pp(), rabe::encode_message(m));
  auto text = rabe::envelope_to_text(env);
  auto back = rabe::envelope_from_text(text);
  EXPECT_EQ(back, env);
  EXPECT_EQ(rabe::open_envelope(back, ArtifactKind::kMessage, pp()), env.payload);
  EXPECT_THROW(rabe::open_envelope(back, ArtifactKind::kPrivateKey, pp()), rabe::Error);

  rabe::SeededRng other_rng(99);
  auto other = rabe::setup(rabe::BilinearContext::create(GetParam(), rabe::seed_bytes(99)), {}, other_rng);
  try {
    rabe::open_envelope(back, ArtifactKind::kMessage, other.pp);
    ADD_FAILURE() << "envelope opened under foreign parameters";
  } catch (const rabe::Error& e) {
    EXPECT_EQ(e.code(), rabe::ErrorCode::kHashMismatch);
  }
}

INSTANTIATE_TEST_SUITE_P(Serialization, SerializationBothBackends,
                         ::testing::Values(Backend::kRealCurve, Backend::kTransparent), backend_label);

TEST(Envelope, TextLayout) {
  rabe::Envelope env{ArtifactKind::kOriginalCiphertext, 1, Backend::kTransparent, std::string(64, 'a'), {1, 2, 3}};
  EXPECT_EQ(rabe::envelope_to_text(env),
            "-----BEGIN RABE ENVELOPE-----\n"
            "kind: ct-original\n"
            "version: 1\n"
            "backend: transparent\n"
            "params-hash: " + std::string(64, 'a') + "\n"
            "payload: AQID\n"
            "-----END RABE ENVELOPE-----\n");
}

TEST(Envelope, RejectsMalformedText) {
  rabe::Envelope env{ArtifactKind::kMessage, 1, Backend::kRealCurve, std::string(64, '0'), {9, 9}};
  const std::string good = rabe::envelope_to_text(env);
  auto replace = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  EXPECT_NO_THROW(rabe::envelope_from_text(good));
  EXPECT_THROW(rabe::envelope_from_text(""), rabe::Error);
  EXPECT_THROW(rabe::envelope_from_text(replace("version: 1", "version: 2")), rabe::Error);
  EXPECT_THROW(rabe::envelope_from_text(replace("kind: message", "kind: blob")), rabe::Error);
  EXPECT_THROW(rabe::envelope_from_text(replace("backend: real", "backend: fake")), rabe::Error);
  EXPECT_THROW(rabe::envelope_from_text(replace(std::string(64, '0'), "00")), rabe::Error);
  EXPECT_THROW(rabe::envelope_from_text(replace("payload: CQk=", "payload: CQk")), rabe::Error);
  EXPECT_THROW(rabe::envelope_from_text(replace("payload: CQk=", "payload: C*k=")), rabe::Error);
  EXPECT_THROW(rabe::envelope_from_text(replace("kind: message", "kind: message\nextra: 1")), rabe::Error);
}

TEST(Encoding, Base64AndHex) {
  for (std::size_t n = 0; n < 40; ++n) {
    std::vector<std::uint8_t> data(n);
    for (std::size_t i = 0; i < n; ++i) data[i] = static_cast<std::uint8_t>(i * 37 + n);
    EXPECT_EQ(rabe::base64_decode(rabe::base64_encode(data)), data);
    EXPECT_EQ(rabe::hex_decode(rabe::hex_encode(data)), data);
  }
  EXPECT_EQ(rabe::base64_encode(std::vector<std::uint8_t>{'f', 'o', 'o', 'b'}), "Zm9vYg==");
  EXPECT_EQ(rabe::hex_encode(std::vector<std::uint8_t>{0x00, 0xab, 0xff}), "00abff");
  EXPECT_THROW(rabe::hex_decode("abc"), rabe::Error);
  EXPECT_THROW(rabe::hex_decode("zz"), rabe::Error);
}

TEST(Encoding, WriterLayout) {
  auto ctx = rabe::BilinearContext::transparent_with_modulus(4294967291ULL);
  rabe::ByteWriter w;
  w.u32(0x01020304);
  w.u64(5);
  w.string("ab");
  w.scalar(ctx.scalar(0x0102));
  auto d = w.take();
  std::vector<std::uint8_t> want{1, 2, 3, 4, 0, 0, 0, 0, 0, 0, 0, 5, 0, 0, 0, 2, 'a', 'b', 0x02, 0x01};
  want.resize(want.size() + 30, 0);
  EXPECT_EQ(d, want);

  rabe::ByteReader r(d);
  EXPECT_EQ(r.u32(), 0x01020304u);
  EXPECT_EQ(r.u64(), 5u);
  EXPECT_EQ(r.string(), "ab");
  EXPECT_EQ(r.scalar(ctx), ctx.scalar(0x0102));
  EXPECT_NO_THROW(r.expect_end());
  EXPECT_THROW(r.u8(), rabe::Error);
}

TEST(Encoding, NonCanonicalScalarIsRejected) {
  auto ctx = rabe::BilinearContext::transparent_with_modulus(4294967291ULL);
  rabe::ByteWriter w;
  std::vector<std::uint8_t> big(32, 0);
  big[0] = 0xfb;  // 4294967291 = 0xfffffffb, the modulus itself
  big[1] = big[2] = big[3] = 0xff;
  for (auto b : big) w.u8(b);
  rabe::ByteReader r(w.data());
  EXPECT_THROW(r.scalar(ctx), rabe::Error);
}

TEST(Encoding, PolicyTextMustMatchMatrix) {
  auto ctx = rabe::BilinearContext::create(Backend::kTransparent, rabe::seed_bytes(1));
  auto p = rabe::parse_policy("1 AND 2", ctx.scalar_field());
  rabe::ByteWriter w;
  rabe::write_policy(w, p);
  auto bytes = w.take();
  {
    rabe::ByteReader r(bytes);
    EXPECT_EQ(rabe::read_policy(r, ctx), p);
  }
  // "1 AND 2" -> "1 OR 2" keeps the length but no longer matches the matrix.
  auto pos = std::search(bytes.begin(), bytes.end(), std::begin("AND"), std::begin("AND") + 3);
  ASSERT_NE(pos, bytes.end());
  std::copy_n(" OR", 3, pos);
  rabe::ByteReader r(bytes);
  EXPECT_THROW(rabe::read_policy(r, ctx), rabe::Error);
}

TEST(Center, SeededStateIsReproducibleAndRoundTrips) {
  auto a = rabe::CenterState::create(Backend::kTransparent, {}, rabe::seed_bytes(3));
  auto b = rabe::CenterState::create(Backend::kTransparent, {}, rabe::seed_bytes(3));
  auto policy = rabe::parse_policy("1", a.pp().context().scalar_field());
  auto ska = a.keygen("alice", policy);
  auto skb = b.keygen("alice", policy);
  EXPECT_EQ(rabe::encode_private_key(ska), rabe::encode_private_key(skb));
  a.revoke("alice", 4);
  EXPECT_EQ(a.epoch(), 4u);
  a.update_key(2);
  EXPECT_EQ(a.epoch(), 4u);

  auto bytes = a.encode();
  auto restored = rabe::CenterState::decode(bytes);
  EXPECT_EQ(restored.encode(), bytes);
  // The restored state continues the same random stream.
  auto ku1 = a.update_key(9);
  auto ku2 = restored.update_key(9);
  EXPECT_EQ(rabe::encode_key_update(ku1), rabe::encode_key_update(ku2));
}

TEST(Center, RejectsCorruptState) {
  auto a = rabe::CenterState::create(Backend::kTransparent, {}, rabe::seed_bytes(3));
  auto bytes = a.encode();
  bytes.pop_back();
  EXPECT_THROW(rabe::CenterState::decode(bytes), rabe::Error);
  EXPECT_THROW(a.revoke("ghost", 3), rabe::Error);
  EXPECT_THROW(a.keygen("", rabe::parse_policy("1", a.pp().context().scalar_field())), rabe::Error);
}
