#include "rabe/time_encoding.hpp"

#include <algorithm>

#include "rabe/error.hpp"

namespace rabe {

bool is_valid_max_time(std::uint64_t max_time) {
  return max_time >= 4 && (max_time & (max_time - 1)) == 0;
}

unsigned log2_exact(std::uint64_t power_of_two) {
  return static_cast<unsigned>(63 - __builtin_clzll(power_of_two));
}

TimeEpoch::TimeEpoch(std::uint64_t value, std::uint64_t max_time) : value_(value), max_time_(max_time) {
  if (!is_valid_max_time(max_time)) {
    throw Error(ErrorCode::kInvalidArgument, "max time must be a power of two >= 4, got " + std::to_string(max_time));
  }
  if (value >= max_time) {
    throw Error(ErrorCode::kOutOfRange,
                "epoch " + std::to_string(value) + " outside [0, " + std::to_string(max_time) + ")");
  }
}

unsigned TimeEpoch::bit_length() const { return log2_exact(max_time_); }

BitString::BitString(std::vector<std::uint8_t> bits, Kind kind) : bits_(std::move(bits)), kind_(kind) {
  for (auto& b : bits_) b = b ? 1 : 0;
  if (kind_ == Kind::kCiphertextEncoded) {
    auto first_zero = std::find(bits_.begin(), bits_.end(), 0);
    if (std::find(first_zero, bits_.end(), 1) != bits_.end()) {
      throw Error(ErrorCode::kInvalidArgument, "ciphertext-encoded strings are a ones-prefix followed by zeros");
    }
  }
}

BitString BitString::parse(std::string_view text, Kind kind) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw Error(ErrorCode::kParse, "bit strings contain only '0' and '1'");
    bits.push_back(c == '1');
  }
  return BitString(std::move(bits), kind);
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

bool ZeroIndexSet::contains(std::size_t j) const {
  return std::binary_search(positions_.begin(), positions_.end(), j);
}

bool ZeroIndexSet::is_subset_of(const ZeroIndexSet& other) const {
  return std::includes(other.positions_.begin(), other.positions_.end(), positions_.begin(), positions_.end());
}

std::string ZeroIndexSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(positions_[i]);
  }
  return s + "}";
}

BitString tencode(const TimeEpoch& t) {
  // binary digits of t, then left-pad with zeros while shorter than log2 T
  std::vector<std::uint8_t> bt;
  for (std::uint64_t v = t.value(); v != 0; v >>= 1) bt.push_back(v & 1);
  std::reverse(bt.begin(), bt.end());
  while (bt.size() < t.bit_length()) bt.insert(bt.begin(), 0);
  return BitString(std::move(bt), BitString::Kind::kPlain);
}

BitString ctencode(const TimeEpoch& t) {
  BitString bt = tencode(t);
  std::vector<std::uint8_t> et(bt.size(), 0);
  bool chk = false;
  for (std::size_t j = 1; j <= bt.size(); ++j) {
    if (bt.bit(j) && !chk) {
      et[j - 1] = 1;
    } else {
      chk = true;
      et[j - 1] = 0;
    }
  }
  return BitString(std::move(et), BitString::Kind::kCiphertextEncoded);
}

ZeroIndexSet zero_set(const BitString& b) {
  std::vector<std::size_t> positions;
  for (std::size_t j = 1; j <= b.size(); ++j) {
    if (!b.bit(j)) positions.push_back(j);
  }
  return ZeroIndexSet(std::move(positions));
}

std::vector<TimeEpoch> find_outdate_pairs(const TimeEpoch& t_star) {
  ZeroIndexSet target = zero_set(ctencode(t_star));
  std::vector<TimeEpoch> out;
  for (std::uint64_t t = 1; t < t_star.value(); ++t) {
    TimeEpoch candidate(t, t_star.max_time());
    if (zero_set(tencode(candidate)).is_subset_of(target)) out.push_back(candidate);
  }
  return out;
}

OutdatePairCensus outdate_pair_census(unsigned tau, std::size_t max_examples) {
  if (tau < 2) throw Error(ErrorCode::kInvalidArgument, "tau must be at least 2");
  if (tau > kMaxCensusTau) {
    throw Error(ErrorCode::kBudgetExceeded,
                "tau " + std::to_string(tau) + " exceeds the enumeration budget of " + std::to_string(kMaxCensusTau));
  }
  const std::uint64_t max_time = std::uint64_t{1} << tau;
  const std::uint64_t half = max_time >> 1;
  const std::uint32_t full = static_cast<std::uint32_t>(max_time - 1);

  // Zero sets as bitmasks: bit (tau - j) stands for position j. The masks
  // are built from the encoders so the census exercises them directly.
  std::vector<std::uint32_t> plain_zeros(max_time);
  std::vector<std::uint32_t> ct_zeros(max_time);
  for (std::uint64_t t = 0; t < max_time; ++t) {
    TimeEpoch epoch(t, max_time);
    std::uint32_t pz = 0;
    std::uint32_t cz = 0;
    ZeroIndexSet plain = zero_set(tencode(epoch));
    ZeroIndexSet ct = zero_set(ctencode(epoch));
    for (std::size_t j : plain.positions()) pz |= 1u << (tau - j);
    for (std::size_t j : ct.positions()) cz |= 1u << (tau - j);
    plain_zeros[t] = pz;
    ct_zeros[t] = cz;
  }

  OutdatePairCensus census;
  census.tau = tau;
  for (std::uint64_t t_star = 2; t_star < max_time; ++t_star) {
    const std::uint32_t outside = full & ~ct_zeros[t_star];
    std::uint64_t vulnerable = 0;
    for (std::uint64_t t = 1; t < t_star; ++t) vulnerable += (plain_zeros[t] & outside) == 0;
    const std::uint64_t pairs = t_star - 1;
    if (t_star < half) {
      census.regime_pairs += pairs;
      census.regime_vulnerable += vulnerable;
      census.regime_counterexamples += pairs - vulnerable;
    } else {
      census.outside_pairs += pairs;
      census.outside_vulnerable += vulnerable;
      if (vulnerable && census.outside_examples.size() < max_examples) {
        for (std::uint64_t t = 1; t < t_star && census.outside_examples.size() < max_examples; ++t) {
          if ((plain_zeros[t] & outside) == 0) census.outside_examples.emplace_back(t, t_star);
        }
      }
    }
  }
  return census;
}

}  // namespace rabe
