#include "rabe/group.hpp"

#include <algorithm>

#include "rabe/bls12_381/pairing.hpp"
#include "rabe/error.hpp"

namespace rabe {

namespace bls = bls12_381;

namespace {

using bls::Limbs;

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<bls::u128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t acc = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) acc = mulmod_u64(acc, base, m);
    base = mulmod_u64(base, base, m);
    e >>= 1;
  }
  return acc;
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t transparent_modulus_from_seed(std::span<const std::uint8_t> seed) {
  auto h = shake256(labels::kTransparentModulus, seed, 4);
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 4; ++i) v |= static_cast<std::uint64_t>(h[i]) << (8 * i);
  std::uint64_t candidate = (std::uint64_t{1} << 31) | (v & 0x7fffffffULL);
  for (;;) {
    if (candidate >= (std::uint64_t{1} << 32)) candidate = (std::uint64_t{1} << 31) + 1;
    if (is_prime_u64(candidate)) return candidate;
    ++candidate;
  }
}

const FieldPtr& curve_order_field() {
  static const FieldPtr field = std::make_shared<const ScalarField>(bls::kCurveOrder);
  return field;
}

void check_side(Side s) {
  if (s != Side::kSourceOne && s != Side::kSourceTwo && s != Side::kTarget) {
    throw Error(ErrorCode::kDecode, "unknown side tag");
  }
}

}  // namespace

std::string_view backend_name(Backend b) {
  return b == Backend::kRealCurve ? "real" : "transparent";
}

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "real") return Backend::kRealCurve;
  if (name == "transparent") return Backend::kTransparent;
  return std::nullopt;
}

std::string_view side_name(Side s) {
  switch (s) {
    case Side::kSourceOne: return "source-one";
    case Side::kSourceTwo: return "source-two";
    case Side::kTarget: return "target";
  }
  return "unknown";
}

// ---- ScalarField / Scalar -------------------------------------------------

ScalarField::ScalarField(const Limbs<4>& modulus) : mont_(bls::MontgomeryModulus<4>::make(modulus)) {
  if ((modulus[0] & 1) == 0) throw Error(ErrorCode::kInvalidArgument, "scalar modulus must be odd");
}

Scalar::Scalar(FieldPtr field, std::uint64_t value) : field_(std::move(field)) {
  Limbs<4> v{value, 0, 0, 0};
  mont_ = field_->mont().to_mont(v);
}

Scalar Scalar::from_signed(FieldPtr field, std::int64_t value) {
  if (value >= 0) return Scalar(std::move(field), static_cast<std::uint64_t>(value));
  std::uint64_t mag = ~static_cast<std::uint64_t>(value) + 1;
  return -Scalar(std::move(field), mag);
}

Scalar Scalar::from_wide_bytes(FieldPtr field, std::span<const std::uint8_t> le_bytes) {
  const auto& m = field->mont();
  Limbs<4> acc{};
  std::size_t chunks = (le_bytes.size() + 31) / 32;
  for (std::size_t c = chunks; c-- > 0;) {
    Limbs<4> chunk{};
    for (std::size_t i = 0; i < 32 && c * 32 + i < le_bytes.size(); ++i) {
      chunk[i / 8] |= static_cast<std::uint64_t>(le_bytes[c * 32 + i]) << (8 * (i % 8));
    }
    acc = m.add(m.mul(acc, m.r2), m.to_mont(chunk));
  }
  return Scalar(std::move(field), acc, 0);
}

Scalar Scalar::from_bytes(FieldPtr field, std::span<const std::uint8_t> le_bytes) {
  if (le_bytes.size() != kBytes) throw Error(ErrorCode::kDecode, "scalar encoding must be 32 bytes");
  Limbs<4> v{};
  for (std::size_t i = 0; i < kBytes; ++i) v[i / 8] |= static_cast<std::uint64_t>(le_bytes[i]) << (8 * (i % 8));
  if (bls::limbs_compare(v, field->modulus()) >= 0) {
    throw Error(ErrorCode::kDecode, "scalar encoding is not reduced");
  }
  Limbs<4> mont = field->mont().to_mont(v);
  return Scalar(std::move(field), mont, 0);
}

Scalar Scalar::random(FieldPtr field, Rng& rng) {
  std::array<std::uint8_t, 64> buf;
  rng.fill(buf);
  return from_wide_bytes(std::move(field), buf);
}

std::array<std::uint8_t, Scalar::kBytes> Scalar::to_bytes() const {
  Limbs<4> v = value();
  std::array<std::uint8_t, kBytes> out{};
  for (std::size_t i = 0; i < kBytes; ++i) out[i] = static_cast<std::uint8_t>(v[i / 8] >> (8 * (i % 8)));
  return out;
}

Limbs<4> Scalar::value() const { return field_->mont().from_mont(mont_); }

std::string Scalar::to_decimal() const {
  Limbs<4> v = value();
  if (bls::limbs_is_zero(v)) return "0";
  std::string digits;
  while (!bls::limbs_is_zero(v)) {
    bls::u128 rem = 0;
    for (std::size_t i = 4; i-- > 0;) {
      bls::u128 cur = (rem << 64) | v[i];
      v[i] = static_cast<std::uint64_t>(cur / 10);
      rem = cur % 10;
    }
    digits.push_back(static_cast<char>('0' + static_cast<int>(rem)));
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

void Scalar::check_same_field(const Scalar& o) const {
  if (field_ != o.field_ && !(*field_ == *o.field_)) {
    throw Error(ErrorCode::kBackendMismatch, "scalars belong to different fields");
  }
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same_field(o);
  return Scalar(field_, field_->mont().add(mont_, o.mont_), 0);
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same_field(o);
  return Scalar(field_, field_->mont().sub(mont_, o.mont_), 0);
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same_field(o);
  return Scalar(field_, field_->mont().mul(mont_, o.mont_), 0);
}

Scalar Scalar::operator-() const { return Scalar(field_, field_->mont().neg(mont_), 0); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::kDivisionByZero, "inverse of zero scalar");
  Limbs<4> e = field_->modulus();
  Limbs<4> two{2, 0, 0, 0};
  bls::limbs_sub(e, two);
  return Scalar(field_, field_->mont().pow(mont_, e), 0);
}

Scalar Scalar::pow(std::uint64_t e) const {
  Limbs<1> exp{e};
  return Scalar(field_, field_->mont().pow(mont_, exp), 0);
}

bool Scalar::operator==(const Scalar& o) const {
  if (field_ != o.field_ && !(*field_ == *o.field_)) return false;
  return mont_ == o.mont_;
}

// ---- GroupElement ---------------------------------------------------------

void GroupElement::check_compatible(const GroupElement& o) const {
  if (backend_ != o.backend_) throw Error(ErrorCode::kBackendMismatch, "group elements from different backends");
  if (side_ != o.side_) {
    throw Error(ErrorCode::kSideMismatch, "group operation between " + std::string(side_name(side_)) + " and " +
                                              std::string(side_name(o.side_)));
  }
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
  check_compatible(o);
  Rep rep = std::visit(
      [&](const auto& a) -> Rep {
        using T = std::decay_t<decltype(a)>;
        const auto& b = std::get<T>(o.rep_);
        if constexpr (std::is_same_v<T, Scalar>) {
          return a + b;
        } else if constexpr (std::is_same_v<T, bls::Fp12>) {
          return a * b;
        } else {
          return a + b;
        }
      },
      rep_);
  return GroupElement(backend_, side_, std::move(rep));
}

GroupElement GroupElement::operator/(const GroupElement& o) const { return *this * o.inverse(); }

GroupElement GroupElement::inverse() const {
  Rep rep = std::visit(
      [](const auto& a) -> Rep {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, bls::Fp12>) {
          return a.conjugate();  // unitary: GT sits in the cyclotomic subgroup
        } else {
          return -a;
        }
      },
      rep_);
  return GroupElement(backend_, side_, std::move(rep));
}

GroupElement GroupElement::pow(const Scalar& e) const {
  Rep rep = std::visit(
      [&](const auto& a) -> Rep {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Scalar>) {
          return a * e;
        } else {
          if (!(e.field() == *curve_order_field())) {
            throw Error(ErrorCode::kBackendMismatch, "exponent is not modulo the curve order");
          }
          if constexpr (std::is_same_v<T, bls::Fp12>) {
            return a.pow(e.value());
          } else {
            return a.mul(e.value());
          }
        }
      },
      rep_);
  return GroupElement(backend_, side_, std::move(rep));
}

bool GroupElement::is_identity() const {
  return std::visit(
      [](const auto& a) -> bool {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Scalar>) {
          return a.is_zero();
        } else if constexpr (std::is_same_v<T, bls::Fp12>) {
          return a.is_one();
        } else {
          return a.is_identity();
        }
      },
      rep_);
}

bool GroupElement::operator==(const GroupElement& o) const {
  if (backend_ != o.backend_ || side_ != o.side_) return false;
  return std::visit(
      [&](const auto& a) -> bool {
        using T = std::decay_t<decltype(a)>;
        return a == std::get<T>(o.rep_);
      },
      rep_);
}

std::vector<std::uint8_t> GroupElement::encode() const {
  std::vector<std::uint8_t> out{static_cast<std::uint8_t>(backend_), static_cast<std::uint8_t>(side_)};
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Scalar>) {
          std::uint64_t v = a.value()[0];
          for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        } else if constexpr (std::is_same_v<T, bls::Fp12>) {
          auto bytes = a.to_bytes();
          out.insert(out.end(), bytes.begin(), bytes.end());
        } else {
          auto bytes = bls::compress(a);
          out.insert(out.end(), bytes.begin(), bytes.end());
        }
      },
      rep_);
  return out;
}

const Scalar& GroupElement::transparent_log() const {
  if (backend_ != Backend::kTransparent) {
    throw Error(ErrorCode::kBackendMismatch, "discrete logarithms are only stored by the transparent backend");
  }
  return std::get<Scalar>(rep_);
}

GroupElement pair(const GroupElement& a, const GroupElement& b) {
  if (a.backend_ != b.backend_) throw Error(ErrorCode::kBackendMismatch, "pairing inputs from different backends");
  if (a.side_ != Side::kSourceOne || b.side_ != Side::kSourceTwo) {
    throw Error(ErrorCode::kSideMismatch, "pairing expects (source-one, source-two), got (" +
                                              std::string(side_name(a.side_)) + ", " +
                                              std::string(side_name(b.side_)) + ")");
  }
  if (a.backend_ == Backend::kTransparent) {
    return GroupElement(a.backend_, Side::kTarget, std::get<Scalar>(a.rep_) * std::get<Scalar>(b.rep_));
  }
  return GroupElement(a.backend_, Side::kTarget,
                      bls::pairing(std::get<bls::G1>(a.rep_), std::get<bls::G2>(b.rep_)));
}

GroupElement pair_product(std::span<const std::pair<GroupElement, GroupElement>> terms) {
  if (terms.empty()) throw Error(ErrorCode::kEmptyInput, "pairing product over no terms");
  const Backend backend = terms.front().first.backend_;
  for (const auto& [a, b] : terms) {
    if (a.backend_ != backend || b.backend_ != backend) {
      throw Error(ErrorCode::kBackendMismatch, "pairing inputs from different backends");
    }
    if (a.side_ != Side::kSourceOne || b.side_ != Side::kSourceTwo) {
      throw Error(ErrorCode::kSideMismatch, "pairing expects (source-one, source-two) inputs");
    }
  }
  if (backend == Backend::kTransparent) {
    Scalar acc = std::get<Scalar>(terms.front().first.rep_) * std::get<Scalar>(terms.front().second.rep_);
    for (std::size_t i = 1; i < terms.size(); ++i) {
      acc += std::get<Scalar>(terms[i].first.rep_) * std::get<Scalar>(terms[i].second.rep_);
    }
    return GroupElement(backend, Side::kTarget, acc);
  }
  std::vector<std::pair<bls::G1, bls::G2>> points;
  points.reserve(terms.size());
  for (const auto& [a, b] : terms) points.emplace_back(std::get<bls::G1>(a.rep_), std::get<bls::G2>(b.rep_));
  return GroupElement(backend, Side::kTarget, bls::multi_pairing(points));
}

// ---- BilinearContext ------------------------------------------------------

struct BilinearContext::Impl {
  Backend backend;
  FieldPtr field;
  std::uint64_t transparent_modulus = 0;
  std::array<std::optional<GroupElement>, 3> generators;
  std::array<std::optional<GroupElement>, 3> identities;
};

namespace {

std::size_t side_index(Side s) {
  check_side(s);
  return static_cast<std::size_t>(s) - 1;
}

}  // namespace

BilinearContext BilinearContext::create(Backend backend, std::span<const std::uint8_t> seed) {
  if (backend == Backend::kTransparent) return transparent_with_modulus(transparent_modulus_from_seed(seed));
  // The real context is the same for every seed; build it once.
  static const std::shared_ptr<const Impl> real = [] {
    auto impl = std::make_shared<Impl>();
    impl->backend = Backend::kRealCurve;
    impl->field = curve_order_field();
    auto g1 = bls::G1::generator();
    auto g2 = bls::G2::generator();
    impl->generators[0] = GroupElement(Backend::kRealCurve, Side::kSourceOne, g1);
    impl->generators[1] = GroupElement(Backend::kRealCurve, Side::kSourceTwo, g2);
    impl->generators[2] = GroupElement(Backend::kRealCurve, Side::kTarget, bls::pairing(g1, g2));
    impl->identities[0] = GroupElement(Backend::kRealCurve, Side::kSourceOne, bls::G1::identity());
    impl->identities[1] = GroupElement(Backend::kRealCurve, Side::kSourceTwo, bls::G2::identity());
    impl->identities[2] = GroupElement(Backend::kRealCurve, Side::kTarget, bls::Fp12::one());
    return std::shared_ptr<const Impl>(std::move(impl));
  }();
  return BilinearContext(real);
}

BilinearContext BilinearContext::transparent_with_modulus(std::uint64_t modulus) {
  if (modulus < 3 || modulus >= (std::uint64_t{1} << 63) || !is_prime_u64(modulus)) {
    throw Error(ErrorCode::kInvalidArgument, "transparent modulus must be an odd prime below 2^63");
  }
  auto impl = std::make_shared<Impl>();
  impl->backend = Backend::kTransparent;
  impl->transparent_modulus = modulus;
  impl->field = std::make_shared<const ScalarField>(Limbs<4>{modulus, 0, 0, 0});
  for (Side s : {Side::kSourceOne, Side::kSourceTwo, Side::kTarget}) {
    std::size_t i = side_index(s);
    impl->generators[i] = GroupElement(Backend::kTransparent, s, Scalar(impl->field, 1));
    impl->identities[i] = GroupElement(Backend::kTransparent, s, Scalar(impl->field, 0));
  }
  return BilinearContext(std::move(impl));
}

Backend BilinearContext::backend() const { return impl_->backend; }
const FieldPtr& BilinearContext::scalar_field() const { return impl_->field; }

const GroupElement& BilinearContext::generator(Side side) const { return *impl_->generators[side_index(side)]; }
GroupElement BilinearContext::identity(Side side) const { return *impl_->identities[side_index(side)]; }

Scalar BilinearContext::hash_to_scalar(std::string_view label, std::span<const std::uint8_t> data) const {
  auto wide = shake256(label, data, 64);
  return Scalar::from_wide_bytes(scalar_field(), wide);
}

std::size_t BilinearContext::encoded_size(Side side) const {
  check_side(side);
  if (impl_->backend == Backend::kTransparent) return 2 + 8;
  switch (side) {
    case Side::kSourceOne: return 2 + bls::kG1CompressedBytes;
    case Side::kSourceTwo: return 2 + bls::kG2CompressedBytes;
    case Side::kTarget: return 2 + bls::Fp12::kBytes;
  }
  return 0;
}

GroupElement BilinearContext::decode(std::span<const std::uint8_t> bytes) const {
  if (bytes.size() < 2) throw Error(ErrorCode::kDecode, "group element encoding too short");
  if (bytes[0] != static_cast<std::uint8_t>(impl_->backend)) {
    throw Error(ErrorCode::kBackendMismatch, "group element encoded for a different backend");
  }
  Side side = static_cast<Side>(bytes[1]);
  check_side(side);
  if (bytes.size() != encoded_size(side)) throw Error(ErrorCode::kDecode, "group element encoding has wrong length");
  auto body = bytes.subspan(2);
  if (impl_->backend == Backend::kTransparent) {
    std::uint64_t v = 0;
    for (std::uint8_t b : body) v = (v << 8) | b;
    if (v >= impl_->transparent_modulus) throw Error(ErrorCode::kDecode, "transparent element out of range");
    return GroupElement(Backend::kTransparent, side, Scalar(impl_->field, v));
  }
  switch (side) {
    case Side::kSourceOne: {
      auto p = bls::decompress_g1(body);
      if (!p) throw Error(ErrorCode::kDecode, "invalid G1 point encoding");
      return GroupElement(Backend::kRealCurve, side, *p);
    }
    case Side::kSourceTwo: {
      auto p = bls::decompress_g2(body);
      if (!p) throw Error(ErrorCode::kDecode, "invalid G2 point encoding");
      return GroupElement(Backend::kRealCurve, side, *p);
    }
    case Side::kTarget: {
      auto f = bls::Fp12::from_bytes(body);
      if (!f || !bls::in_target_subgroup(*f)) throw Error(ErrorCode::kDecode, "invalid target group encoding");
      return GroupElement(Backend::kRealCurve, side, *f);
    }
  }
  throw Error(ErrorCode::kDecode, "unknown side tag");
}

std::vector<std::uint8_t> BilinearContext::descriptor() const {
  std::vector<std::uint8_t> out{static_cast<std::uint8_t>(impl_->backend)};
  if (impl_->backend == Backend::kTransparent) {
    for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(impl_->transparent_modulus >> (8 * i)));
  }
  return out;
}

BilinearContext BilinearContext::from_descriptor(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw Error(ErrorCode::kDecode, "empty context descriptor");
  if (bytes[0] == static_cast<std::uint8_t>(Backend::kRealCurve) && bytes.size() == 1) {
    return create(Backend::kRealCurve);
  }
  if (bytes[0] == static_cast<std::uint8_t>(Backend::kTransparent) && bytes.size() == 9) {
    std::uint64_t m = 0;
    for (std::size_t i = 1; i < 9; ++i) m = (m << 8) | bytes[i];
    return transparent_with_modulus(m);
  }
  throw Error(ErrorCode::kDecode, "malformed context descriptor");
}

bool BilinearContext::operator==(const BilinearContext& o) const {
  return impl_->backend == o.impl_->backend && *impl_->field == *o.impl_->field;
}

Scalar lagrange_coefficient(const Scalar& i, std::span<const Scalar> set, const Scalar& x) {
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      if (set[a] == set[b]) throw Error(ErrorCode::kDivisionByZero, "interpolation set has duplicate points");
    }
  }
  if (std::find(set.begin(), set.end(), i) == set.end()) {
    throw Error(ErrorCode::kInvalidArgument, "interpolation index is not in the set");
  }
  Scalar num(i.field_ptr(), 1);
  Scalar den(i.field_ptr(), 1);
  for (const Scalar& j : set) {
    if (j == i) continue;
    num *= x - j;
    den *= i - j;
  }
  return num * den.inverse();
}

}  // namespace rabe
