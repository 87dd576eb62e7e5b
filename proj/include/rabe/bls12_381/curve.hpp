#pragma once

// Short Weierstrass points y^2 = x^3 + b in Jacobian coordinates.
// G1 lives on E(Fp) with b = 4, G2 on the sextic twist E'(Fp2) with
// b = 4(u + 1).

#include <array>
#include <optional>
#include <span>

#include "rabe/bls12_381/fields.hpp"

namespace rabe::bls12_381 {

inline constexpr Limbs<4> kCurveOrder =
    limbs_from_hex<4>("73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001");

struct G1Curve {
  using Field = Fp;
  static Fp b() { return Fp::from_u64(4); }
  static Fp gen_x();
  static Fp gen_y();
};

struct G2Curve {
  using Field = Fp2;
  static Fp2 b() { return {Fp::from_u64(4), Fp::from_u64(4)}; }
  static Fp2 gen_x();
  static Fp2 gen_y();
};

template <class Curve>
class Point {
 public:
  using F = typename Curve::Field;

  F x, y, z;  // z == 0 marks the point at infinity

  static Point identity() { return {F::one(), F::one(), F::zero()}; }
  static Point from_affine(const F& ax, const F& ay) { return {ax, ay, F::one()}; }
  static Point generator() { return from_affine(Curve::gen_x(), Curve::gen_y()); }

  bool is_identity() const { return z.is_zero(); }

  Point operator-() const { return {x, -y, z}; }

  Point dbl() const {
    if (is_identity() || y.is_zero()) return identity();
    F a = x.square();
    F b = y.square();
    F c = b.square();
    F d = ((x + b).square() - a - c).dbl();
    F e = a.dbl() + a;
    F f = e.square();
    F x3 = f - d.dbl();
    F c8 = c.dbl().dbl().dbl();
    return {x3, e * (d - x3) - c8, (y * z).dbl()};
  }

  Point operator+(const Point& o) const {
    if (is_identity()) return o;
    if (o.is_identity()) return *this;
    F z1z1 = z.square();
    F z2z2 = o.z.square();
    F u1 = x * z2z2;
    F u2 = o.x * z1z1;
    F s1 = y * o.z * z2z2;
    F s2 = o.y * z * z1z1;
    F h = u2 - u1;
    F r = (s2 - s1).dbl();
    if (h.is_zero()) {
      if (r.is_zero()) return dbl();
      return identity();
    }
    F i = h.dbl().square();
    F j = h * i;
    F v = u1 * i;
    F x3 = r.square() - j - v.dbl();
    F y3 = r * (v - x3) - (s1 * j).dbl();
    F z3 = ((z + o.z).square() - z1z1 - z2z2) * h;
    return {x3, y3, z3};
  }
  Point operator-(const Point& o) const { return *this + (-o); }

  template <std::size_t M>
  Point mul(const Limbs<M>& k) const {
    std::array<Point, 16> table;
    table[0] = identity();
    for (std::size_t i = 1; i < 16; ++i) table[i] = table[i - 1] + *this;
    Point acc = identity();
    for (std::size_t limb = M; limb-- > 0;) {
      for (int nib = 15; nib >= 0; --nib) {
        acc = acc.dbl().dbl().dbl().dbl();
        unsigned d = static_cast<unsigned>((k[limb] >> (4 * nib)) & 0xf);
        if (d != 0) acc = acc + table[d];
      }
    }
    return acc;
  }

  bool operator==(const Point& o) const {
    if (is_identity() || o.is_identity()) return is_identity() && o.is_identity();
    F z1z1 = z.square();
    F z2z2 = o.z.square();
    return x * z2z2 == o.x * z1z1 && y * o.z * z2z2 == o.y * z * z1z1;
  }

  // Affine coordinates; undefined for the identity.
  std::pair<F, F> to_affine() const {
    F zi = z.inverse();
    F zi2 = zi.square();
    return {x * zi2, y * zi2 * zi};
  }

  bool on_curve() const {
    if (is_identity()) return true;
    F z2 = z.square();
    F z6 = z2.square() * z2;
    return y.square() == x.square() * x + Curve::b() * z6;
  }

  bool in_subgroup() const { return mul(kCurveOrder).is_identity(); }
};

using G1 = Point<G1Curve>;
using G2 = Point<G2Curve>;

// Compressed encodings with the flag bits in the top byte:
// 0x80 compressed, 0x40 infinity, 0x20 y is lexicographically largest.
inline constexpr std::size_t kG1CompressedBytes = 48;
inline constexpr std::size_t kG2CompressedBytes = 96;

std::array<std::uint8_t, kG1CompressedBytes> compress(const G1& p);
std::array<std::uint8_t, kG2CompressedBytes> compress(const G2& p);
// Rejects non-canonical encodings, off-curve points and points outside
// the prime-order subgroup.
std::optional<G1> decompress_g1(std::span<const std::uint8_t> in);
std::optional<G2> decompress_g2(std::span<const std::uint8_t> in);

}  // namespace rabe::bls12_381
