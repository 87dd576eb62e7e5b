#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <unistd.h>

#include "rabe/rabe.h"

namespace {

struct Owned {
  rabe_artifact* p = nullptr;
  ~Owned() { rabe_artifact_free(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  rabe_string_free(s);
  return out;
}

class CApi : public ::testing::Test {
 protected:
  void SetUp() override {
    const char* seed = "capi";
    ASSERT_EQ(rabe_center_setup("transparent", 8, 32, 4, reinterpret_cast<const uint8_t*>(seed), 4, &center),
              RABE_OK);
    ASSERT_EQ(rabe_center_public_params(center, &pp.p), RABE_OK);
    ASSERT_EQ(rabe_rng_new_seeded(reinterpret_cast<const uint8_t*>("r"), 1, &rng), RABE_OK);
  }
  void TearDown() override {
    rabe_center_free(center);
    rabe_rng_free(rng);
  }

  rabe_center* center = nullptr;
  rabe_rng* rng = nullptr;
  Owned pp;
};

}  // namespace

TEST_F(CApi, EndToEndDecryptMatches) {
  Owned sk, m, ct, ku, dk, updated, out;
  ASSERT_EQ(rabe_center_keygen(center, "alice", "1 AND (2 OR 3)", &sk.p), RABE_OK);
  EXPECT_STREQ(rabe_artifact_kind(sk.p), "sk");
  ASSERT_EQ(rabe_random_message(pp.p, rng, &m.p), RABE_OK);
  ASSERT_EQ(rabe_encrypt(pp.p, "1,2", 5, m.p, rng, &ct.p), RABE_OK);
  ASSERT_EQ(rabe_center_update_key(center, 6, &ku.p), RABE_OK);
  ASSERT_EQ(rabe_derive_dk(pp.p, sk.p, ku.p, &dk.p), RABE_OK);
  ASSERT_EQ(rabe_update_ct(pp.p, ct.p, 6, rng, &updated.p), RABE_OK);
  ASSERT_EQ(rabe_decrypt(pp.p, updated.p, dk.p, &out.p), RABE_OK);
  int equal = 0;
  ASSERT_EQ(rabe_message_equal(pp.p, out.p, m.p, &equal), RABE_OK);
  EXPECT_EQ(equal, 1);
  char* hex = nullptr;
  ASSERT_EQ(rabe_message_hex(pp.p, out.p, &hex), RABE_OK);
  EXPECT_FALSE(take(hex).empty());
}

TEST_F(CApi, BottomOutcomes) {
  Owned sk, m, ct, ku, dk, updated;
  ASSERT_EQ(rabe_center_keygen(center, "bob", "1", &sk.p), RABE_OK);
  ASSERT_EQ(rabe_center_revoke(center, "bob", 4), RABE_OK);
  ASSERT_EQ(rabe_center_update_key(center, 4, &ku.p), RABE_OK);
  EXPECT_EQ(rabe_derive_dk(pp.p, sk.p, ku.p, &dk.p), RABE_BOTTOM);
  EXPECT_EQ(dk.p, nullptr);
  ASSERT_EQ(rabe_random_message(pp.p, rng, &m.p), RABE_OK);
  ASSERT_EQ(rabe_encrypt(pp.p, "1", 9, m.p, rng, &ct.p), RABE_OK);
  EXPECT_EQ(rabe_update_ct(pp.p, ct.p, 8, rng, &updated.p), RABE_BOTTOM);
  EXPECT_NE(std::string(rabe_last_error()).find("precedes"), std::string::npos);
}

TEST_F(CApi, ErrorsCarryCodesAndMessages) {
  Owned sk, ct, m;
  EXPECT_EQ(rabe_center_keygen(center, "x", "1 AND NOT 2", &sk.p), RABE_ERR_NON_MONOTONE);
  EXPECT_EQ(rabe_center_keygen(center, "x", "1 AND", &sk.p), RABE_ERR_PARSE);
  EXPECT_EQ(rabe_center_revoke(center, "ghost", 3), RABE_ERR_UNKNOWN_IDENTITY);
  EXPECT_EQ(rabe_center_update_key(center, 32, &sk.p), RABE_ERR_OUT_OF_RANGE);
  EXPECT_EQ(rabe_artifact_load("/nonexistent/file", &ct.p), RABE_ERR_IO);
  EXPECT_EQ(rabe_artifact_parse("garbage", &ct.p), RABE_ERR_DECODE);
  EXPECT_EQ(rabe_encrypt(pp.p, "1", 3, nullptr, rng, &ct.p), RABE_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(rabe_random_message(pp.p, rng, &m.p), RABE_OK);
  // A message is not a pp artifact.
  EXPECT_EQ(rabe_encrypt(m.p, "1", 3, m.p, rng, &ct.p), RABE_ERR_INVALID_ARGUMENT);
  EXPECT_STRNE(rabe_last_error(), "");
  EXPECT_STREQ(rabe_status_name(RABE_ERR_HASH_MISMATCH), "hash-mismatch");
  EXPECT_STREQ(rabe_status_name(RABE_BOTTOM), "bottom");
  rabe_center* bad = nullptr;
  EXPECT_EQ(rabe_center_setup("quantum", 8, 32, 4, nullptr, 0, &bad), RABE_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(rabe_center_setup("transparent", 8, 30, 4, nullptr, 0, &bad), RABE_ERR_INVALID_ARGUMENT);
}

TEST_F(CApi, ForeignParametersAreDetected) {
  rabe_center* other = nullptr;
  ASSERT_EQ(rabe_center_setup("transparent", 8, 32, 4, reinterpret_cast<const uint8_t*>("z"), 1, &other), RABE_OK);
  Owned other_pp, m, ct;
  ASSERT_EQ(rabe_center_public_params(other, &other_pp.p), RABE_OK);
  ASSERT_EQ(rabe_random_message(pp.p, rng, &m.p), RABE_OK);
  EXPECT_EQ(rabe_encrypt(other_pp.p, "1", 3, m.p, rng, &ct.p), RABE_ERR_HASH_MISMATCH);
  rabe_center_free(other);
}

TEST_F(CApi, FilesRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / ("rabe_capi_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto state = (dir / "c.rabe").string();
  auto pp_path = (dir / "pp.rabe").string();
  ASSERT_EQ(rabe_center_save(center, state.c_str()), RABE_OK);
  ASSERT_EQ(rabe_artifact_save(pp.p, pp_path.c_str()), RABE_OK);
  rabe_center* loaded = nullptr;
  ASSERT_EQ(rabe_center_load(state.c_str(), &loaded), RABE_OK);
  Owned a, b, pp2;
  ASSERT_EQ(rabe_center_keygen(center, "u", "1", &a.p), RABE_OK);
  ASSERT_EQ(rabe_center_keygen(loaded, "u", "1", &b.p), RABE_OK);
  char *ta = nullptr, *tb = nullptr;
  ASSERT_EQ(rabe_artifact_to_text(a.p, &ta), RABE_OK);
  ASSERT_EQ(rabe_artifact_to_text(b.p, &tb), RABE_OK);
  EXPECT_EQ(take(ta), take(tb));
  ASSERT_EQ(rabe_artifact_load(pp_path.c_str(), &pp2.p), RABE_OK);
  char* desc = nullptr;
  ASSERT_EQ(rabe_artifact_describe(a.p, pp2.p, &desc), RABE_OK);
  EXPECT_NE(take(desc).find("id: u"), std::string::npos);
  rabe_center_free(loaded);
  std::filesystem::remove_all(dir);
}

TEST(CApiAttack, DemoAndLemmaCheck) {
  rabe_attack_options o;
  rabe_attack_options_default(&o);
  o.t = 5;
  o.t_star = 7;
  o.trials = 4;
  o.seed = reinterpret_cast<const uint8_t*>("s");
  o.seed_len = 1;
  char *narrative = nullptr, *json = nullptr;
  uint32_t wins = 0;
  ASSERT_EQ(rabe_attack_demo(&o, &narrative, nullptr, &json, &wins), RABE_OK);
  EXPECT_EQ(wins, 4u);
  EXPECT_NE(take(narrative).find("{1, 2, 4}"), std::string::npos);
  EXPECT_NE(take(json).find("\"wins\":4"), std::string::npos);

  o.t = 3;
  o.t_star = 16;
  EXPECT_EQ(rabe_attack_demo(&o, nullptr, nullptr, nullptr, nullptr), RABE_ERR_NOT_VULNERABLE);
  EXPECT_NE(std::string(rabe_last_error()).find("try"), std::string::npos);

  char* table = nullptr;
  int hold = 0;
  ASSERT_EQ(rabe_lemma_check(2, 6, &table, &hold), RABE_OK);
  EXPECT_EQ(hold, 1);
  EXPECT_NE(take(table).find("t* = 7: t in {1, 2, 3, 4, 5, 6}"), std::string::npos);
  EXPECT_EQ(rabe_lemma_check(2, 17, nullptr, nullptr), RABE_ERR_BUDGET_EXCEEDED);
}
