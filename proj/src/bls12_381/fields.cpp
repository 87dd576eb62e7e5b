#include "rabe/bls12_381/fields.hpp"

namespace rabe::bls12_381 {
namespace {

template <std::size_t N>
constexpr Limbs<N> shr(Limbs<N> a, unsigned k) {
  for (unsigned s = 0; s < k; ++s) {
    for (std::size_t i = 0; i < N; ++i) {
      a[i] = (a[i] >> 1) | (i + 1 < N ? a[i + 1] << 63 : 0);
    }
  }
  return a;
}

template <std::size_t N>
constexpr Limbs<N> sub_small(Limbs<N> a, std::uint64_t k) {
  Limbs<N> b{};
  b[0] = k;
  limbs_sub(a, b);
  return a;
}

template <std::size_t N>
constexpr Limbs<N> add_small(Limbs<N> a, std::uint64_t k) {
  Limbs<N> b{};
  b[0] = k;
  limbs_add(a, b);
  return a;
}

template <std::size_t N>
constexpr Limbs<N> div_small(const Limbs<N>& a, std::uint64_t d) {
  Limbs<N> q{};
  u128 rem = 0;
  for (std::size_t i = N; i-- > 0;) {
    u128 cur = (rem << 64) | a[i];
    q[i] = static_cast<std::uint64_t>(cur / d);
    rem = cur % d;
  }
  return q;
}

constexpr Limbs<6> kPMinus2 = sub_small(kFieldModulus, 2);
constexpr Limbs<6> kPPlus1Div4 = shr(add_small(kFieldModulus, 1), 2);
constexpr Limbs<6> kPMinus3Div4 = shr(sub_small(kFieldModulus, 3), 2);
constexpr Limbs<6> kPMinus1Div2 = shr(sub_small(kFieldModulus, 1), 1);
constexpr Limbs<6> kPMinus1Div6 = div_small(sub_small(kFieldModulus, 1), 6);

// gamma[k] = (u + 1)^(k (p - 1) / 6), the Frobenius twist for w^k.
struct FrobeniusTable {
  std::array<Fp2, 6> gamma;
  FrobeniusTable() {
    Fp2 xi(Fp::one(), Fp::one());
    Fp2 base = xi.pow(kPMinus1Div6);
    gamma[0] = Fp2::one();
    for (std::size_t k = 1; k < 6; ++k) gamma[k] = gamma[k - 1] * base;
  }
};

const FrobeniusTable& frobenius_table() {
  static const FrobeniusTable table;
  return table;
}

}  // namespace

Fp Fp::inverse() const { return pow(kPMinus2); }

std::optional<Fp> Fp::sqrt() const {
  Fp r = pow(kPPlus1Div4);
  if (r.square() == *this) return r;
  return std::nullopt;
}

bool Fp::lexicographically_largest() const {
  return limbs_compare(canonical(), kPMinus1Div2) > 0;
}

void Fp::to_bytes(std::span<std::uint8_t, kFpBytes> out) const {
  Limbs<6> v = canonical();
  for (std::size_t i = 0; i < kFpBytes; ++i) {
    out[kFpBytes - 1 - i] = static_cast<std::uint8_t>(v[i / 8] >> (8 * (i % 8)));
  }
}

std::optional<Fp> Fp::from_bytes(std::span<const std::uint8_t, kFpBytes> in) {
  Limbs<6> v{};
  for (std::size_t i = 0; i < kFpBytes; ++i) {
    v[i / 8] |= static_cast<std::uint64_t>(in[kFpBytes - 1 - i]) << (8 * (i % 8));
  }
  if (limbs_compare(v, kFieldModulus) >= 0) return std::nullopt;
  return from_canonical(v);
}

Fp2 Fp2::inverse() const {
  Fp norm_inv = (c0.square() + c1.square()).inverse();
  return {c0 * norm_inv, -(c1 * norm_inv)};
}

// Square root for p = 3 mod 4 over a quadratic extension (Adj and
// Rodriguez-Henriquez, algorithm 9).
std::optional<Fp2> Fp2::sqrt() const {
  if (is_zero()) return Fp2::zero();
  Fp2 a1 = pow(kPMinus3Div4);
  Fp2 alpha = a1 * (a1 * *this);
  Fp2 a0 = alpha.conjugate() * alpha;
  Fp2 minus_one = -Fp2::one();
  if (a0 == minus_one) return std::nullopt;
  Fp2 x0 = a1 * *this;
  Fp2 x;
  if (alpha == minus_one) {
    x = Fp2(Fp::zero(), Fp::one()) * x0;
  } else {
    Fp2 b = (Fp2::one() + alpha).pow(kPMinus1Div2);
    x = b * x0;
  }
  if (x.square() == *this) return x;
  return std::nullopt;
}

bool Fp2::lexicographically_largest() const {
  if (!c1.is_zero()) return c1.lexicographically_largest();
  return c0.lexicographically_largest();
}

Fp6 Fp6::inverse() const {
  Fp2 a = c0.square() - (c1 * c2).mul_by_nonresidue();
  Fp2 b = c2.square().mul_by_nonresidue() - c0 * c1;
  Fp2 c = c1.square() - c0 * c2;
  Fp2 f = c0 * a + (c2 * b + c1 * c).mul_by_nonresidue();
  Fp2 f_inv = f.inverse();
  return {a * f_inv, b * f_inv, c * f_inv};
}

Fp12 Fp12::inverse() const {
  Fp6 t = (c0.square() - c1.square().mul_by_nonresidue()).inverse();
  return {c0 * t, -(c1 * t)};
}

Fp12 Fp12::frobenius() const {
  const auto& g = frobenius_table().gamma;
  return {{c0.c0.conjugate() * g[0], c0.c1.conjugate() * g[2], c0.c2.conjugate() * g[4]},
          {c1.c0.conjugate() * g[1], c1.c1.conjugate() * g[3], c1.c2.conjugate() * g[5]}};
}

Fp12 Fp12::pow(std::span<const std::uint64_t> e) const {
  // 4-bit fixed window
  std::array<Fp12, 16> table;
  table[0] = one();
  for (std::size_t i = 1; i < 16; ++i) table[i] = table[i - 1] * *this;
  Fp12 acc = one();
  bool started = false;
  for (std::size_t limb = e.size(); limb-- > 0;) {
    for (int nib = 15; nib >= 0; --nib) {
      unsigned d = static_cast<unsigned>((e[limb] >> (4 * nib)) & 0xf);
      if (started) {
        acc = acc.square().square().square().square();
      }
      if (d != 0) {
        acc = started ? acc * table[d] : table[d];
        started = true;
      }
    }
  }
  return acc;
}

std::array<std::uint8_t, Fp12::kBytes> Fp12::to_bytes() const {
  std::array<std::uint8_t, kBytes> out{};
  const Fp* coeffs[12] = {&c0.c0.c0, &c0.c0.c1, &c0.c1.c0, &c0.c1.c1, &c0.c2.c0, &c0.c2.c1,
                          &c1.c0.c0, &c1.c0.c1, &c1.c1.c0, &c1.c1.c1, &c1.c2.c0, &c1.c2.c1};
  for (std::size_t i = 0; i < 12; ++i) {
    coeffs[i]->to_bytes(std::span<std::uint8_t, kFpBytes>(out.data() + i * kFpBytes, kFpBytes));
  }
  return out;
}

std::optional<Fp12> Fp12::from_bytes(std::span<const std::uint8_t> in) {
  if (in.size() != kBytes) return std::nullopt;
  Fp12 r;
  Fp* coeffs[12] = {&r.c0.c0.c0, &r.c0.c0.c1, &r.c0.c1.c0, &r.c0.c1.c1, &r.c0.c2.c0, &r.c0.c2.c1,
                    &r.c1.c0.c0, &r.c1.c0.c1, &r.c1.c1.c0, &r.c1.c1.c1, &r.c1.c2.c0, &r.c1.c2.c1};
  for (std::size_t i = 0; i < 12; ++i) {
    auto f = Fp::from_bytes(std::span<const std::uint8_t, kFpBytes>(in.data() + i * kFpBytes, kFpBytes));
    if (!f) return std::nullopt;
    *coeffs[i] = *f;
  }
  return r;
}

}  // namespace rabe::bls12_381
