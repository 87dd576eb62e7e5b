#pragma once

#include <span>
#include <utility>

#include "rabe/bls12_381/curve.hpp"

namespace rabe::bls12_381 {

// Optimal ate pairing e: G1 x G2 -> GT (a subgroup of Fp12^*).
Fp12 miller_loop(const G1& p, const G2& q);
Fp12 final_exponentiation(const Fp12& f);
Fp12 pairing(const G1& p, const G2& q);

// prod_i e(p_i, q_i) with a single final exponentiation.
Fp12 multi_pairing(std::span<const std::pair<G1, G2>> terms);

// True when f has order dividing r.
bool in_target_subgroup(const Fp12& f);

}  // namespace rabe::bls12_381
