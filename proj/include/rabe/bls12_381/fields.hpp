#pragma once

// BLS12-381 base field and the tower
//   Fp2  = Fp[u]  / (u^2 + 1)
//   Fp6  = Fp2[v] / (v^3 - (u + 1))
//   Fp12 = Fp6[w] / (w^2 - v)

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rabe/bls12_381/montgomery.hpp"

namespace rabe::bls12_381 {

inline constexpr std::size_t kFpBytes = 48;

inline constexpr Limbs<6> kFieldModulus = limbs_from_hex<6>(
    "1a0111ea397fe69a4b1ba7b6434bacd764774b84f38512bf6730d2a0f6b0f6241eabfffeb153ffffb9feffffffffaaab");

inline constexpr MontgomeryModulus<6> kFpMont = MontgomeryModulus<6>::make(kFieldModulus);

class Fp {
 public:
  constexpr Fp() = default;

  static constexpr Fp zero() { return Fp(); }
  static constexpr Fp one() { return from_mont(kFpMont.one); }
  static constexpr Fp from_u64(std::uint64_t v) {
    Limbs<6> l{};
    l[0] = v;
    return from_canonical(l);
  }
  // Input must already be below p.
  static constexpr Fp from_canonical(const Limbs<6>& v) { return from_mont(kFpMont.to_mont(v)); }
  static constexpr Fp from_mont(const Limbs<6>& m) {
    Fp f;
    f.m_ = m;
    return f;
  }

  constexpr Limbs<6> canonical() const { return kFpMont.from_mont(m_); }
  constexpr bool is_zero() const { return limbs_is_zero(m_); }

  constexpr Fp operator+(const Fp& o) const { return from_mont(kFpMont.add(m_, o.m_)); }
  constexpr Fp operator-(const Fp& o) const { return from_mont(kFpMont.sub(m_, o.m_)); }
  constexpr Fp operator-() const { return from_mont(kFpMont.neg(m_)); }
  constexpr Fp operator*(const Fp& o) const { return from_mont(kFpMont.mul(m_, o.m_)); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  constexpr bool operator==(const Fp& o) const { return m_ == o.m_; }

  constexpr Fp square() const { return *this * *this; }
  constexpr Fp dbl() const { return *this + *this; }

  template <std::size_t M>
  Fp pow(const Limbs<M>& e) const {
    return from_mont(kFpMont.pow(m_, e));
  }

  Fp inverse() const;                 // zero maps to zero
  std::optional<Fp> sqrt() const;     // p = 3 mod 4
  bool lexicographically_largest() const;  // value > (p-1)/2

  void to_bytes(std::span<std::uint8_t, kFpBytes> out) const;  // big-endian
  static std::optional<Fp> from_bytes(std::span<const std::uint8_t, kFpBytes> in);

 private:
  Limbs<6> m_{};
};

class Fp2 {
 public:
  Fp c0, c1;

  constexpr Fp2() = default;
  constexpr Fp2(const Fp& a, const Fp& b) : c0(a), c1(b) {}

  static constexpr Fp2 zero() { return {}; }
  static constexpr Fp2 one() { return {Fp::one(), Fp::zero()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  bool operator==(const Fp2& o) const { return c0 == o.c0 && c1 == o.c1; }

  Fp2 operator+(const Fp2& o) const { return {c0 + o.c0, c1 + o.c1}; }
  Fp2 operator-(const Fp2& o) const { return {c0 - o.c0, c1 - o.c1}; }
  Fp2 operator-() const { return {-c0, -c1}; }
  Fp2 operator*(const Fp2& o) const {
    Fp t0 = c0 * o.c0;
    Fp t1 = c1 * o.c1;
    return {t0 - t1, (c0 + c1) * (o.c0 + o.c1) - t0 - t1};
  }
  Fp2 operator*(const Fp& k) const { return {c0 * k, c1 * k}; }
  Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
  Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
  Fp2& operator*=(const Fp2& o) { return *this = *this * o; }

  Fp2 square() const {
    Fp a = (c0 + c1) * (c0 - c1);
    Fp b = c0 * c1;
    return {a, b + b};
  }
  Fp2 dbl() const { return *this + *this; }
  Fp2 conjugate() const { return {c0, -c1}; }
  // multiply by u + 1
  Fp2 mul_by_nonresidue() const { return {c0 - c1, c0 + c1}; }

  Fp2 inverse() const;
  template <std::size_t M>
  Fp2 pow(const Limbs<M>& e) const {
    Fp2 acc = one();
    for (std::size_t i = limbs_bit_length(e); i-- > 0;) {
      acc = acc.square();
      if (limbs_bit(e, i)) acc = acc * *this;
    }
    return acc;
  }
  std::optional<Fp2> sqrt() const;
  bool lexicographically_largest() const;
};

class Fp6 {
 public:
  Fp2 c0, c1, c2;

  static Fp6 zero() { return {}; }
  static Fp6 one() { return {Fp2::one(), Fp2::zero(), Fp2::zero()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
  bool operator==(const Fp6& o) const { return c0 == o.c0 && c1 == o.c1 && c2 == o.c2; }

  Fp6 operator+(const Fp6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
  Fp6 operator-(const Fp6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
  Fp6 operator-() const { return {-c0, -c1, -c2}; }
  Fp6 operator*(const Fp6& o) const {
    Fp2 t0 = c0 * o.c0;
    Fp2 t1 = c1 * o.c1;
    Fp2 t2 = c2 * o.c2;
    return {t0 + ((c1 + c2) * (o.c1 + o.c2) - t1 - t2).mul_by_nonresidue(),
            (c0 + c1) * (o.c0 + o.c1) - t0 - t1 + t2.mul_by_nonresidue(),
            (c0 + c2) * (o.c0 + o.c2) - t0 - t2 + t1};
  }
  Fp6 square() const { return *this * *this; }
  // multiply by v
  Fp6 mul_by_nonresidue() const { return {c2.mul_by_nonresidue(), c0, c1}; }
  Fp6 inverse() const;
};

class Fp12 {
 public:
  Fp6 c0, c1;

  static Fp12 one() { return {Fp6::one(), Fp6::zero()}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  bool is_one() const { return *this == one(); }
  bool operator==(const Fp12& o) const { return c0 == o.c0 && c1 == o.c1; }

  Fp12 operator*(const Fp12& o) const {
    Fp6 t0 = c0 * o.c0;
    Fp6 t1 = c1 * o.c1;
    return {t0 + t1.mul_by_nonresidue(), (c0 + c1) * (o.c0 + o.c1) - t0 - t1};
  }
  Fp12& operator*=(const Fp12& o) { return *this = *this * o; }
  Fp12 square() const {
    Fp6 ab = c0 * c1;
    Fp6 s = (c0 + c1) * (c0 + c1.mul_by_nonresidue()) - ab - ab.mul_by_nonresidue();
    return {s, ab + ab};
  }
  Fp12 conjugate() const { return {c0, -c1}; }
  Fp12 inverse() const;
  Fp12 frobenius() const;  // x -> x^p

  Fp12 pow(std::span<const std::uint64_t> e) const;
  template <std::size_t M>
  Fp12 pow(const Limbs<M>& e) const {
    return pow(std::span<const std::uint64_t>(e.data(), M));
  }

  static constexpr std::size_t kBytes = 12 * kFpBytes;
  // Coefficients in the order c0.c0.c0, c0.c0.c1, c0.c1.c0, ... , c1.c2.c1.
  std::array<std::uint8_t, kBytes> to_bytes() const;
  static std::optional<Fp12> from_bytes(std::span<const std::uint8_t> in);
};

}  // namespace rabe::bls12_381
