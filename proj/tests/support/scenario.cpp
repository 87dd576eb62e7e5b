#include "scenario.hpp"

#include "oracle.hpp"
#include "rabe/attack.hpp"
#include "rabe/lsss.hpp"

namespace scenario {

bool Formula::eval(const rabe::AttributeSet& s) const {
  if (op == kLeaf) return s.count(attr) > 0;
  bool any = false, all = true;
  for (const auto& k : kids) {
    bool v = k->eval(s);
    any = any || v;
    all = all && v;
  }
  return op == kAnd ? all : any;
}

std::string Formula::text() const {
  if (op == kLeaf) return std::to_string(attr);
  std::string s = "(";
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (i) s += op == kAnd ? " AND " : " OR ";
    s += kids[i]->text();
  }
  return s + ")";
}

std::size_t Formula::leaves() const {
  if (op == kLeaf) return 1;
  std::size_t n = 0;
  for (const auto& k : kids) n += k->leaves();
  return n;
}

namespace {

std::unique_ptr<Formula> grow(rabe::Rng& rng, unsigned universe, int depth) {
  auto f = std::make_unique<Formula>();
  if (depth == 0 || rng.uniform(3) == 0) {
    f->attr = 1 + static_cast<rabe::Attribute>(rng.uniform(universe));
    return f;
  }
  f->op = rng.next_bit() ? Formula::kAnd : Formula::kOr;
  std::size_t n = 2 + rng.uniform(2);
  for (std::size_t i = 0; i < n; ++i) f->kids.push_back(grow(rng, universe, depth - 1));
  return f;
}

void append(std::vector<std::string>& out, const std::vector<std::string>& more, const std::string& prefix) {
  for (const auto& m : more) out.push_back(prefix + m);
}

rabe::SchemeLimits limits_for(unsigned tau, std::uint32_t attributes) {
  return rabe::SchemeLimits{8, std::uint64_t{1} << tau, attributes};
}

}  // namespace

std::unique_ptr<Formula> random_formula(rabe::Rng& rng, unsigned universe, int depth, std::size_t max_leaves) {
  for (;;) {
    auto f = grow(rng, universe, depth);
    if (f->leaves() <= max_leaves) return f;
  }
}

rabe::AttributeSet random_subset(rabe::Rng& rng, unsigned universe) {
  rabe::AttributeSet s;
  for (unsigned a = 1; a <= universe; ++a) {
    if (rng.next_bit()) s.insert(a);
  }
  return s;
}

Outcome correctness(rabe::Backend backend, std::uint64_t seed, bool audit) {
  Outcome out;
  rabe::SeededRng rng(seed);
  const unsigned universe = 8;
  const auto limits = limits_for(5, universe);
  auto ctx = rabe::BilinearContext::create(backend, rabe::seed_bytes(seed));
  auto sys = rabe::setup(ctx, limits, rng);

  auto formula = random_formula(rng, universe, 3);
  rabe::AttributeSet attrs;
  do {
    attrs = random_subset(rng, universe);
  } while (attrs.empty() || !formula->eval(attrs));
  const std::uint64_t T = limits.max_time;
  std::uint64_t t = 1 + rng.uniform(T - 2);
  std::uint64_t t_prime = t + rng.uniform(T - t);
  out.description = formula->text() + " / {" + rabe::format_attributes(attrs) + "} / t = " + std::to_string(t) +
                    ", t' = " + std::to_string(t_prime);

  auto policy = rabe::parse_policy(formula->text(), ctx.scalar_field());
  // A few other users so the user's leaf is not always the first one.
  std::size_t others = rng.uniform(limits.max_users);
  for (std::size_t i = 0; i < others; ++i) sys.state.assign_leaf("other-" + std::to_string(i));
  auto sk = rabe::gen_key("user", policy, sys.mk, sys.state, sys.pp, rng);
  auto m = rabe::random_message(sys.pp, rng);
  auto ct = rabe::encrypt(attrs, t, m, sys.pp, rng);
  auto ku = rabe::update_key(t_prime, sys.rl, sys.mk, sys.state, sys.pp, rng);
  auto dk = rabe::derive_dk(sk, ku);
  auto updated = rabe::update_ct(ct, t_prime, sys.pp, rng);
  if (!dk || !updated) return out;
  out.decrypted = rabe::decrypt(*updated, *dk, sys.pp) == m;

  if (audit && backend == rabe::Backend::kTransparent) {
    oracle::Auditor a(sys.pp, sys.mk);
    append(out.audit, a.public_params(), "pp: ");
    append(out.audit, a.private_key(sk, sys.state), "sk: ");
    append(out.audit, a.key_update(ku, sys.state), "ku: ");
    append(out.audit, a.decryption_key(*dk, sys.state), "dk: ");
    append(out.audit, a.original_ciphertext(ct, m), "ct: ");
    append(out.audit, a.updated_ciphertext(*updated, m, t_prime), "ct': ");
  }
  return out;
}

Outcome outdate(unsigned tau, std::uint64_t t, std::uint64_t t_star, std::uint64_t seed, bool audit) {
  Outcome out;
  out.description = "tau = " + std::to_string(tau) + ", (t, t*) = (" + std::to_string(t) + ", " +
                    std::to_string(t_star) + ")";
  rabe::SeededRng rng(seed);
  const std::uint32_t universe = 4;
  auto ctx = rabe::BilinearContext::create(rabe::Backend::kTransparent, rabe::seed_bytes(seed));
  auto sys = rabe::setup(ctx, limits_for(tau, universe), rng);
  rabe::AttributeSet attrs;
  while (attrs.empty()) attrs = random_subset(rng, universe);
  std::string policy_text;
  for (auto a : attrs) policy_text += (policy_text.empty() ? "" : " AND ") + std::to_string(a);
  auto policy = rabe::parse_policy(policy_text, ctx.scalar_field());

  auto sk = rabe::gen_key("holder", policy, sys.mk, sys.state, sys.pp, rng);
  auto ku = rabe::update_key(t, sys.rl, sys.mk, sys.state, sys.pp, rng);
  auto dk = rabe::derive_dk(sk, ku);
  auto m = rabe::random_message(sys.pp, rng);
  auto ct = rabe::encrypt(attrs, t_star, m, sys.pp, rng);
  auto outdated = rabe::derive_outdated_ciphertext(ct, t, sys.pp, rng);
  if (!dk) return out;
  out.decrypted = rabe::decrypt(outdated, *dk, sys.pp) == m;
  if (audit) {
    oracle::Auditor a(sys.pp, sys.mk);
    append(out.audit, a.public_params(), "pp: ");
    append(out.audit, a.private_key(sk, sys.state), "sk: ");
    append(out.audit, a.key_update(ku, sys.state), "ku: ");
    append(out.audit, a.decryption_key(*dk, sys.state), "dk: ");
    append(out.audit, a.original_ciphertext(ct, m), "ct*: ");
    append(out.audit, a.updated_ciphertext(outdated, m, t), "outdated: ");
  }
  return out;
}

}  // namespace scenario
