#pragma once

// Epoch-to-bitstring encodings used by key updates (tencode) and original
// ciphertexts (ctencode), and the zero-position sets they induce.
// Bit positions are 1-based with position 1 the most significant bit.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rabe {

class TimeEpoch {
 public:
  // max_time must be a power of two >= 4 (kInvalidArgument);
  // value must be below max_time (kOutOfRange).
  TimeEpoch(std::uint64_t value, std::uint64_t max_time);

  std::uint64_t value() const { return value_; }
  std::uint64_t max_time() const { return max_time_; }
  unsigned bit_length() const;  // log2(max_time)

  bool operator==(const TimeEpoch&) const = default;

 private:
  std::uint64_t value_;
  std::uint64_t max_time_;
};

bool is_valid_max_time(std::uint64_t max_time);
unsigned log2_exact(std::uint64_t power_of_two);

class BitString {
 public:
  enum class Kind { kPlain, kCiphertextEncoded };

  BitString(std::vector<std::uint8_t> bits, Kind kind);
  // Parses the ASCII display form ("00101"); kParse on other characters.
  static BitString parse(std::string_view text, Kind kind);

  std::size_t size() const { return bits_.size(); }
  // 1-based, position 1 = most significant.
  bool bit(std::size_t position) const { return bits_.at(position - 1) != 0; }
  Kind kind() const { return kind_; }
  std::string to_string() const;

  bool operator==(const BitString&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
  Kind kind_;
};

class ZeroIndexSet {
 public:
  ZeroIndexSet() = default;
  explicit ZeroIndexSet(std::vector<std::size_t> sorted_positions) : positions_(std::move(sorted_positions)) {}

  const std::vector<std::size_t>& positions() const { return positions_; }
  bool contains(std::size_t j) const;
  bool is_subset_of(const ZeroIndexSet& other) const;
  bool empty() const { return positions_.empty(); }
  std::string to_string() const;  // "{1, 2, 4}"

  bool operator==(const ZeroIndexSet&) const = default;

 private:
  std::vector<std::size_t> positions_;
};

BitString tencode(const TimeEpoch& t);
BitString ctencode(const TimeEpoch& t);
ZeroIndexSet zero_set(const BitString& b);

// Every epoch 1 <= t < t_star whose key-update zero set is contained in the
// ciphertext zero set of t_star, ascending.
std::vector<TimeEpoch> find_outdate_pairs(const TimeEpoch& t_star);

// Vulnerable-pair census for one tau over epochs 1 <= t < t* < 2^tau.
struct OutdatePairCensus {
  unsigned tau = 0;
  std::uint64_t regime_pairs = 0;          // pairs with t* < 2^(tau-1)
  std::uint64_t regime_vulnerable = 0;
  std::uint64_t regime_counterexamples = 0;
  std::uint64_t outside_pairs = 0;         // pairs with t* >= 2^(tau-1)
  std::uint64_t outside_vulnerable = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> outside_examples;  // first few (t, t*)
};

inline constexpr unsigned kMaxCensusTau = 16;

// kBudgetExceeded for tau > kMaxCensusTau; kInvalidArgument for tau < 2.
OutdatePairCensus outdate_pair_census(unsigned tau, std::size_t max_examples = 5);

}  // namespace rabe
