#pragma once

// Fixed-width Montgomery arithmetic over 64-bit limbs (little-endian limb
// order). The modulus is a runtime value so the same code backs the
// BLS12-381 base field, the curve order and the small transparent moduli.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace rabe::bls12_381 {

template <std::size_t N>
using Limbs = std::array<std::uint64_t, N>;

using u128 = unsigned __int128;

template <std::size_t N>
constexpr bool limbs_is_zero(const Limbs<N>& a) {
  std::uint64_t acc = 0;
  for (auto l : a) acc |= l;
  return acc == 0;
}

// -1, 0, 1
template <std::size_t N>
constexpr int limbs_compare(const Limbs<N>& a, const Limbs<N>& b) {
  for (std::size_t i = N; i-- > 0;) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

// a += b, returns carry
template <std::size_t N>
constexpr std::uint64_t limbs_add(Limbs<N>& a, const Limbs<N>& b) {
  u128 carry = 0;
  for (std::size_t i = 0; i < N; ++i) {
    carry += static_cast<u128>(a[i]) + b[i];
    a[i] = static_cast<std::uint64_t>(carry);
    carry >>= 64;
  }
  return static_cast<std::uint64_t>(carry);
}

// a -= b, returns borrow
template <std::size_t N>
constexpr std::uint64_t limbs_sub(Limbs<N>& a, const Limbs<N>& b) {
  std::uint64_t borrow = 0;
  for (std::size_t i = 0; i < N; ++i) {
    u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
    a[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1;
  }
  return borrow;
}

template <std::size_t N>
constexpr bool limbs_bit(const Limbs<N>& a, std::size_t i) {
  return (a[i / 64] >> (i % 64)) & 1;
}

template <std::size_t N>
constexpr std::size_t limbs_bit_length(const Limbs<N>& a) {
  for (std::size_t i = N; i-- > 0;) {
    if (a[i] != 0) return i * 64 + 64 - static_cast<std::size_t>(__builtin_clzll(a[i]));
  }
  return 0;
}

// Parses a big-endian hex string (optional 0x prefix). Throws nothing;
// non-hex characters are treated as zero, so callers pass constants only.
template <std::size_t N>
constexpr Limbs<N> limbs_from_hex(std::string_view hex) {
  if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
  Limbs<N> out{};
  std::size_t bit = 0;
  for (std::size_t k = hex.size(); k-- > 0 && bit < 64 * N; bit += 4) {
    char c = hex[k];
    std::uint64_t v = (c >= '0' && c <= '9')   ? static_cast<std::uint64_t>(c - '0')
                      : (c >= 'a' && c <= 'f') ? static_cast<std::uint64_t>(c - 'a' + 10)
                      : (c >= 'A' && c <= 'F') ? static_cast<std::uint64_t>(c - 'A' + 10)
                                               : 0;
    out[bit / 64] |= v << (bit % 64);
  }
  return out;
}

template <std::size_t N>
struct MontgomeryModulus {
  Limbs<N> p{};
  std::uint64_t n0inv = 0;  // -p^{-1} mod 2^64
  Limbs<N> one{};           // R mod p
  Limbs<N> r2{};            // R^2 mod p

  // p must be odd and below 2^(64N).
  static constexpr MontgomeryModulus make(const Limbs<N>& modulus) {
    MontgomeryModulus m;
    m.p = modulus;
    std::uint64_t inv = 1;
    for (int i = 0; i < 7; ++i) inv *= 2 - modulus[0] * inv;
    m.n0inv = ~inv + 1;
    Limbs<N> x{};
    x[0] = 1;
    for (std::size_t i = 0; i < 64 * N; ++i) m.double_mod(x);
    m.one = x;
    for (std::size_t i = 0; i < 64 * N; ++i) m.double_mod(x);
    m.r2 = x;
    return m;
  }

  constexpr void double_mod(Limbs<N>& x) const {
    Limbs<N> y = x;
    std::uint64_t carry = limbs_add(x, y);
    if (carry || limbs_compare(x, p) >= 0) limbs_sub(x, p);
  }

  constexpr Limbs<N> add(Limbs<N> a, const Limbs<N>& b) const {
    std::uint64_t carry = limbs_add(a, b);
    if (carry || limbs_compare(a, p) >= 0) limbs_sub(a, p);
    return a;
  }

  constexpr Limbs<N> sub(Limbs<N> a, const Limbs<N>& b) const {
    if (limbs_sub(a, b)) limbs_add(a, p);
    return a;
  }

  constexpr Limbs<N> neg(const Limbs<N>& a) const {
    if (limbs_is_zero(a)) return a;
    Limbs<N> r = p;
    limbs_sub(r, a);
    return r;
  }

  // CIOS Montgomery product a*b*R^{-1} mod p. Valid whenever a*b < p*R.
  constexpr Limbs<N> mul(const Limbs<N>& a, const Limbs<N>& b) const {
    std::uint64_t t[N + 2] = {};
    for (std::size_t i = 0; i < N; ++i) {
      u128 c = 0;
      for (std::size_t j = 0; j < N; ++j) {
        c += static_cast<u128>(a[j]) * b[i] + t[j];
        t[j] = static_cast<std::uint64_t>(c);
        c >>= 64;
      }
      c += t[N];
      t[N] = static_cast<std::uint64_t>(c);
      t[N + 1] = static_cast<std::uint64_t>(c >> 64);

      std::uint64_t m = t[0] * n0inv;
      c = static_cast<u128>(m) * p[0] + t[0];
      c >>= 64;
      for (std::size_t j = 1; j < N; ++j) {
        c += static_cast<u128>(m) * p[j] + t[j];
        t[j - 1] = static_cast<std::uint64_t>(c);
        c >>= 64;
      }
      c += t[N];
      t[N - 1] = static_cast<std::uint64_t>(c);
      t[N] = t[N + 1] + static_cast<std::uint64_t>(c >> 64);
    }
    Limbs<N> r{};
    for (std::size_t i = 0; i < N; ++i) r[i] = t[i];
    if (t[N] != 0 || limbs_compare(r, p) >= 0) limbs_sub(r, p);
    return r;
  }

  // Canonical value (< R) into Montgomery form, reducing modulo p.
  constexpr Limbs<N> to_mont(const Limbs<N>& a) const { return mul(a, r2); }

  constexpr Limbs<N> from_mont(const Limbs<N>& a) const {
    Limbs<N> unit{};
    unit[0] = 1;
    return mul(a, unit);
  }

  // Montgomery-form power with a canonical exponent.
  template <std::size_t M>
  constexpr Limbs<N> pow(const Limbs<N>& base, const Limbs<M>& e) const {
    Limbs<N> acc = one;
    for (std::size_t i = limbs_bit_length(e); i-- > 0;) {
      acc = mul(acc, acc);
      if (limbs_bit(e, i)) acc = mul(acc, base);
    }
    return acc;
  }
};

}  // namespace rabe::bls12_381
