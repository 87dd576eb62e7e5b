#pragma once

// Randomized end-to-end runs of the scheme, shared by the unit tests and the
// acceptance binary.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "rabe/scheme.hpp"

namespace scenario {

// A random monotone formula with its own evaluator, independent of the LSSS code.
struct Formula {
  enum Op { kLeaf, kAnd, kOr } op = kLeaf;
  rabe::Attribute attr = 0;
  std::vector<std::unique_ptr<Formula>> kids;

  bool eval(const rabe::AttributeSet& s) const;
  std::string text() const;
  std::size_t leaves() const;
};

std::unique_ptr<Formula> random_formula(rabe::Rng& rng, unsigned universe, int depth, std::size_t max_leaves = 8);
rabe::AttributeSet random_subset(rabe::Rng& rng, unsigned universe);

struct Outcome {
  bool decrypted = false;
  std::vector<std::string> audit;  // exponent mismatches; transparent backend only
  std::string description;
};

// setup -> keygen -> encrypt(t) -> update-key(t') -> derive-dk -> update-ct(t') -> decrypt
// with a random policy over at most 8 attributes and a random satisfying set.
Outcome correctness(rabe::Backend backend, std::uint64_t seed, bool audit);

// Key for epoch t, challenge ciphertext for t*, outdated to t and decrypted.
Outcome outdate(unsigned tau, std::uint64_t t, std::uint64_t t_star, std::uint64_t seed, bool audit);

}  // namespace scenario
