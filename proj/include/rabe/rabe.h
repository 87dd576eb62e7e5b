#ifndef RABE_RABE_H
#define RABE_RABE_H

/* C interface to the revocable ABE library. Every function returns a
 * rabe_status; on failure rabe_last_error() describes the problem for the
 * calling thread. Objects returned through out-parameters are owned by the
 * caller and released with the matching *_free function. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define RABE_API __declspec(dllexport)
#else
#define RABE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rabe_status {
  RABE_OK = 0,
  RABE_BOTTOM = 1, /* the algorithm returned bottom (revoked key, t' < t) */

  RABE_ERR_INVALID_ARGUMENT = 10,
  RABE_ERR_OUT_OF_RANGE = 11,
  RABE_ERR_SIDE_MISMATCH = 12,
  RABE_ERR_BACKEND_MISMATCH = 13,
  RABE_ERR_DIVISION_BY_ZERO = 14,
  RABE_ERR_PARSE = 15,
  RABE_ERR_NON_MONOTONE = 16,
  RABE_ERR_CAPACITY_EXHAUSTED = 17,
  RABE_ERR_INVALID_NODE = 18,
  RABE_ERR_UNKNOWN_IDENTITY = 19,
  RABE_ERR_UNSATISFIED_POLICY = 20,
  RABE_ERR_MISSING_COMPONENT = 21,
  RABE_ERR_DECODE = 22,
  RABE_ERR_HASH_MISMATCH = 23,
  RABE_ERR_CONSTRAINT_VIOLATION = 24,
  RABE_ERR_BUDGET_EXCEEDED = 25,
  RABE_ERR_EMPTY_INPUT = 26,
  RABE_ERR_NOT_VULNERABLE = 27,

  RABE_ERR_IO = 40,
  RABE_ERR_INTERNAL = 50
} rabe_status;

typedef struct rabe_center rabe_center;     /* trusted-center state */
typedef struct rabe_artifact rabe_artifact; /* one envelope: pp, sk, ku, dk, ct-*, message, ... */
typedef struct rabe_rng rabe_rng;

RABE_API const char* rabe_last_error(void);
RABE_API const char* rabe_status_name(rabe_status status);
RABE_API void rabe_string_free(char* s);

/* Deterministic stream from a byte seed, or the OS generator. */
RABE_API rabe_status rabe_rng_new_seeded(const uint8_t* seed, size_t seed_len, rabe_rng** out);
RABE_API rabe_status rabe_rng_new_system(rabe_rng** out);
RABE_API void rabe_rng_free(rabe_rng* rng);

/* backend: "real" or "transparent". seed may be NULL for OS randomness. */
RABE_API rabe_status rabe_center_setup(const char* backend, uint64_t max_users, uint64_t max_time,
                                       uint32_t max_attributes, const uint8_t* seed, size_t seed_len,
                                       rabe_center** out);
RABE_API rabe_status rabe_center_load(const char* path, rabe_center** out);
RABE_API rabe_status rabe_center_save(const rabe_center* center, const char* path);
RABE_API void rabe_center_free(rabe_center* center);
RABE_API rabe_status rabe_center_public_params(const rabe_center* center, rabe_artifact** out);
RABE_API rabe_status rabe_center_describe(const rabe_center* center, char** out);
RABE_API rabe_status rabe_center_keygen(rabe_center* center, const char* id, const char* policy,
                                        rabe_artifact** out);
RABE_API rabe_status rabe_center_update_key(rabe_center* center, uint64_t epoch, rabe_artifact** out);
RABE_API rabe_status rabe_center_revoke(rabe_center* center, const char* id, uint64_t epoch);

RABE_API rabe_status rabe_artifact_load(const char* path, rabe_artifact** out);
RABE_API rabe_status rabe_artifact_parse(const char* text, rabe_artifact** out);
RABE_API rabe_status rabe_artifact_save(const rabe_artifact* artifact, const char* path);
RABE_API rabe_status rabe_artifact_to_text(const rabe_artifact* artifact, char** out);
/* "pp", "sk", "ku", "dk", "ct-original", "ct-updated", "message", ... */
RABE_API const char* rabe_artifact_kind(const rabe_artifact* artifact);
/* One-line-per-field summary; pp is required for every kind except pp itself. */
RABE_API rabe_status rabe_artifact_describe(const rabe_artifact* artifact, const rabe_artifact* pp, char** out);
RABE_API void rabe_artifact_free(rabe_artifact* artifact);

RABE_API rabe_status rabe_random_message(const rabe_artifact* pp, rabe_rng* rng, rabe_artifact** out);
/* attrs: "1,2,3" */
RABE_API rabe_status rabe_encrypt(const rabe_artifact* pp, const char* attrs, uint64_t epoch,
                                  const rabe_artifact* message, rabe_rng* rng, rabe_artifact** out);
/* RABE_BOTTOM when new_epoch precedes the ciphertext epoch. */
RABE_API rabe_status rabe_update_ct(const rabe_artifact* pp, const rabe_artifact* ct_original, uint64_t new_epoch,
                                    rabe_rng* rng, rabe_artifact** out);
/* RABE_BOTTOM when the key is revoked at the key update's epoch. */
RABE_API rabe_status rabe_derive_dk(const rabe_artifact* pp, const rabe_artifact* sk, const rabe_artifact* ku,
                                    rabe_artifact** out);
RABE_API rabe_status rabe_decrypt(const rabe_artifact* pp, const rabe_artifact* ct_updated,
                                  const rabe_artifact* dk, rabe_artifact** message_out);
/* Hex of the canonical element encoding. */
RABE_API rabe_status rabe_message_hex(const rabe_artifact* pp, const rabe_artifact* message, char** out);
RABE_API rabe_status rabe_message_equal(const rabe_artifact* pp, const rabe_artifact* a, const rabe_artifact* b,
                                        int* equal);

typedef struct rabe_attack_options {
  const char* backend; /* "real" | "transparent" */
  uint64_t max_users;
  uint64_t max_time;
  uint32_t max_attributes;
  uint64_t t;      /* 0: choose automatically */
  uint64_t t_star; /* 0: choose automatically */
  uint32_t trials;
  int weaker_model;
  int null_adversary; /* random guessing instead of the outdate attack */
  const uint8_t* seed; /* NULL: OS randomness */
  size_t seed_len;
  unsigned threads;
} rabe_attack_options;

RABE_API void rabe_attack_options_default(rabe_attack_options* options);
/* narrative: per-step story of the first trial; table: summary; json: the
 * machine-readable record. RABE_ERR_NOT_VULNERABLE lists suggested pairs in
 * rabe_last_error(). Any out-pointer may be NULL. */
RABE_API rabe_status rabe_attack_demo(const rabe_attack_options* options, char** narrative, char** table,
                                      char** json, uint32_t* wins);
/* Writes one envelope (kind transcript) per trial of a demo into text,
 * concatenated. */
RABE_API rabe_status rabe_attack_transcripts(const rabe_attack_options* options, char** text);

/* Vulnerable-pair census for tau in [tau_min, tau_max] (at most 16). */
RABE_API rabe_status rabe_lemma_check(unsigned tau_min, unsigned tau_max, char** table, int* all_hold);

#ifdef __cplusplus
}
#endif

#endif /* RABE_RABE_H */
