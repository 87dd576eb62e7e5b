#pragma once

// Abstract bilinear-group arithmetic with two backends:
//   * kRealCurve   - BLS12-381 (type-3 pairing, ~128-bit security)
//   * kTransparent - every element is stored as its discrete logarithm
//                    modulo a small prime; pairing multiplies logarithms.
// The transparent backend is a homomorphic image of the real one, so every
// algebraic identity of the scheme can be checked exactly on exponents.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rabe/bls12_381/curve.hpp"
#include "rabe/bls12_381/fields.hpp"
#include "rabe/random.hpp"

namespace rabe {

enum class Backend : std::uint8_t { kRealCurve = 0x01, kTransparent = 0x02 };
enum class Side : std::uint8_t { kSourceOne = 0x01, kSourceTwo = 0x02, kTarget = 0x03 };

std::string_view backend_name(Backend b);  // "real" | "transparent"
std::optional<Backend> parse_backend(std::string_view name);
std::string_view side_name(Side s);

class ScalarField {
 public:
  explicit ScalarField(const bls12_381::Limbs<4>& modulus);

  const bls12_381::Limbs<4>& modulus() const { return mont_.p; }
  const bls12_381::MontgomeryModulus<4>& mont() const { return mont_; }
  bool operator==(const ScalarField& o) const { return mont_.p == o.mont_.p; }

 private:
  bls12_381::MontgomeryModulus<4> mont_;
};

using FieldPtr = std::shared_ptr<const ScalarField>;

// An integer modulo the group order. Values are immutable; arithmetic
// between scalars of different fields throws kBackendMismatch.
class Scalar {
 public:
  static constexpr std::size_t kBytes = 32;

  Scalar(FieldPtr field, std::uint64_t value);
  static Scalar from_signed(FieldPtr field, std::int64_t value);
  // Reduces an arbitrary little-endian byte string modulo the order.
  static Scalar from_wide_bytes(FieldPtr field, std::span<const std::uint8_t> le_bytes);
  // Canonical decoding: exactly 32 little-endian bytes with value < order.
  static Scalar from_bytes(FieldPtr field, std::span<const std::uint8_t> le_bytes);
  static Scalar random(FieldPtr field, Rng& rng);

  std::array<std::uint8_t, kBytes> to_bytes() const;
  bls12_381::Limbs<4> value() const;
  std::string to_decimal() const;
  bool is_zero() const { return bls12_381::limbs_is_zero(mont_); }

  const ScalarField& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;  // kDivisionByZero on zero
  Scalar pow(std::uint64_t e) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

 private:
  Scalar(FieldPtr field, const bls12_381::Limbs<4>& mont, int) : field_(std::move(field)), mont_(mont) {}
  void check_same_field(const Scalar& o) const;

  FieldPtr field_;
  bls12_381::Limbs<4> mont_{};
};

class GroupElement {
 public:
  Backend backend() const { return backend_; }
  Side side() const { return side_; }

  GroupElement operator*(const GroupElement& o) const;  // group operation
  GroupElement operator/(const GroupElement& o) const;
  GroupElement& operator*=(const GroupElement& o) { return *this = *this * o; }
  GroupElement pow(const Scalar& e) const;
  GroupElement inverse() const;
  bool is_identity() const;

  // Elements with different backend or side tags compare unequal.
  bool operator==(const GroupElement& o) const;
  bool operator!=(const GroupElement& o) const { return !(*this == o); }

  // backend tag || side tag || body. Body: fixed-width 8-byte big-endian
  // logarithm (transparent) or compressed point / 576-byte Fp12 (real).
  std::vector<std::uint8_t> encode() const;

  // Discrete logarithm to the side's generator; transparent backend only.
  const Scalar& transparent_log() const;

 private:
  friend class BilinearContext;
  friend GroupElement pair(const GroupElement& a, const GroupElement& b);
  friend GroupElement pair_product(std::span<const std::pair<GroupElement, GroupElement>> terms);
  using Rep = std::variant<Scalar, bls12_381::G1, bls12_381::G2, bls12_381::Fp12>;

  GroupElement(Backend b, Side s, Rep rep) : backend_(b), side_(s), rep_(std::move(rep)) {}
  void check_compatible(const GroupElement& o) const;

  Backend backend_;
  Side side_;
  Rep rep_;
};

// e(a, b) for a in source group one and b in source group two.
GroupElement pair(const GroupElement& a, const GroupElement& b);

// prod_i e(a_i, b_i); one final exponentiation on the real curve.
// kEmptyInput on an empty list.
GroupElement pair_product(std::span<const std::pair<GroupElement, GroupElement>> terms);

// The pairing group handle. Cheap to copy; immutable and thread-safe.
class BilinearContext {
 public:
  // Transparent mode derives a prime modulus in [2^31, 2^32) from the seed.
  static BilinearContext create(Backend backend, std::span<const std::uint8_t> seed = {});
  static BilinearContext transparent_with_modulus(std::uint64_t modulus);

  Backend backend() const;
  const FieldPtr& scalar_field() const;
  bls12_381::Limbs<4> prime_order() const { return scalar_field()->modulus(); }

  // g, its mirror g~ in source group two, and e(g, g~).
  const GroupElement& generator(Side side) const;
  GroupElement identity(Side side) const;

  Scalar scalar(std::uint64_t v) const { return Scalar(scalar_field(), v); }
  Scalar scalar_signed(std::int64_t v) const { return Scalar::from_signed(scalar_field(), v); }
  Scalar random_scalar(Rng& rng) const { return Scalar::random(scalar_field(), rng); }
  Scalar scalar_from_bytes(std::span<const std::uint8_t> le) const {
    return Scalar::from_bytes(scalar_field(), le);
  }
  Scalar hash_to_scalar(std::string_view label, std::span<const std::uint8_t> data) const;

  GroupElement decode(std::span<const std::uint8_t> bytes) const;
  // Encoded size (including the two tag bytes) for elements of `side`.
  std::size_t encoded_size(Side side) const;

  // backend tag || 8-byte big-endian modulus (transparent only).
  std::vector<std::uint8_t> descriptor() const;
  static BilinearContext from_descriptor(std::span<const std::uint8_t> bytes);

  bool operator==(const BilinearContext& o) const;

 private:
  struct Impl;
  explicit BilinearContext(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Delta_{i,J}(x) = prod_{j in J, j != i} (x - j) / (i - j).
Scalar lagrange_coefficient(const Scalar& i, std::span<const Scalar> set, const Scalar& x);

}  // namespace rabe
