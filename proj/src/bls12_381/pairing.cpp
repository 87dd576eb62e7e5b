#include "rabe/bls12_381/pairing.hpp"


namespace rabe::bls12_381 {
namespace {

// |x| for the BLS parameter x = -0xd201000000010000.
constexpr std::uint64_t kAteLoop = 0xd201000000010000ULL;

// f^x for the negative BLS parameter; f must lie in the cyclotomic subgroup
// so that inversion is conjugation.
Fp12 pow_x(const Fp12& f) {
  const std::uint64_t e[1] = {kAteLoop};
  return f.pow(std::span<const std::uint64_t>(e, 1)).conjugate();
}

// Line through the twisted point with slope `lambda`, evaluated at (xp, yp)
// and scaled by w^3 (the factor vanishes under the final exponentiation).
Fp12 line(const Fp2& lambda, const Fp2& xt, const Fp2& yt, const Fp& xp, const Fp& yp) {
  Fp12 l;
  l.c0.c0 = lambda * xt - yt;
  l.c0.c1 = -(lambda * xp);
  l.c1.c1 = Fp2(yp, Fp::zero());
  return l;
}

}  // namespace

Fp12 miller_loop(const G1& p, const G2& q) {
  if (p.is_identity() || q.is_identity()) return Fp12::one();
  auto [xp, yp] = p.to_affine();
  auto [xq, yq] = q.to_affine();
  Fp2 xt = xq;
  Fp2 yt = yq;
  Fp12 f = Fp12::one();
  int top = 63 - __builtin_clzll(kAteLoop);
  for (int i = top - 1; i >= 0; --i) {
    Fp2 xt2 = xt.square();
    Fp2 lambda = (xt2.dbl() + xt2) * yt.dbl().inverse();
    f = f.square() * line(lambda, xt, yt, xp, yp);
    Fp2 x3 = lambda.square() - xt.dbl();
    yt = lambda * (xt - x3) - yt;
    xt = x3;
    if ((kAteLoop >> i) & 1) {
      lambda = (yq - yt) * (xq - xt).inverse();
      f = f * line(lambda, xt, yt, xp, yp);
      x3 = lambda.square() - xt - xq;
      yt = lambda * (xt - x3) - yt;
      xt = x3;
    }
  }
  // x < 0
  return f.conjugate();
}

Fp12 final_exponentiation(const Fp12& f) {
  Fp12 t = f.conjugate() * f.inverse();  // ^(p^6 - 1)
  t = t.frobenius().frobenius() * t;     // ^(p^2 + 1)
  // Hard part raised to 3 (p^4 - p^2 + 1) / r, written as
  // (x - 1)^2 (x + p) (x^2 + p^2 - 1) + 3. The extra cube keeps the map
  // bilinear and non-degenerate since 3 does not divide r.
  Fp12 a = pow_x(t) * t.conjugate();
  a = pow_x(a) * a.conjugate();
  a = pow_x(a) * a.frobenius();
  a = pow_x(pow_x(a)) * a.frobenius().frobenius() * a.conjugate();
  return a * t.square() * t;
}

Fp12 pairing(const G1& p, const G2& q) { return final_exponentiation(miller_loop(p, q)); }

Fp12 multi_pairing(std::span<const std::pair<G1, G2>> terms) {
  Fp12 f = Fp12::one();
  for (const auto& [p, q] : terms) f = f * miller_loop(p, q);
  return final_exponentiation(f);
}

bool in_target_subgroup(const Fp12& f) {
  if (f.is_zero()) return false;
  return f.pow(kCurveOrder).is_one();
}

}  // namespace rabe::bls12_381
