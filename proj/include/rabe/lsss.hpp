#pragma once

// Monotone access policies as LSSS matrices (M, rho). A set S is authorized
// iff (1, 0, ..., 0) lies in the span of the rows labelled by S.
//
// Policy grammar (whitespace-insensitive, operators case-insensitive):
//   expr   := term   { "OR"  term }
//   term   := factor { "AND" factor }
//   factor := ATTRIBUTE | "(" expr ")"
//   ATTRIBUTE := positive decimal integer

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rabe/group.hpp"

namespace rabe {

using Attribute = std::uint32_t;
using AttributeSet = std::set<Attribute>;

class AccessPolicy {
 public:
  AccessPolicy(std::vector<std::vector<Scalar>> matrix, std::vector<Attribute> row_attributes, std::string formula);

  std::size_t rows() const { return matrix_.size(); }
  std::size_t cols() const { return matrix_.front().size(); }
  const std::vector<Scalar>& row(std::size_t i) const { return matrix_.at(i); }
  Attribute attribute(std::size_t i) const { return row_attr_.at(i); }
  const std::vector<Attribute>& row_attributes() const { return row_attr_; }
  // Normalized formula text, or empty when the policy was built from a matrix.
  const std::string& formula() const { return formula_; }
  const FieldPtr& field() const { return matrix_.front().front().field_ptr(); }
  Attribute max_attribute() const;

  bool operator==(const AccessPolicy& o) const;

 private:
  std::vector<std::vector<Scalar>> matrix_;
  std::vector<Attribute> row_attr_;
  std::string formula_;
};

// Row index (0-based) -> w_i, only for rows that take part.
using ReconstructionCoefficients = std::map<std::size_t, Scalar>;

// kParse on malformed input, kNonMonotone on NOT / ! / ~.
AccessPolicy parse_policy(std::string_view formula, const FieldPtr& field);

bool satisfies(const AccessPolicy& policy, const AttributeSet& attrs);

// Per-row shares M_i . u with u[0] = secret and the rest uniform.
std::vector<Scalar> share_secret(const AccessPolicy& policy, const Scalar& secret, Rng& rng);

// Gaussian elimination over Z_p on the rows labelled by attrs, in ascending
// row order; the first pivot wins and free rows are left out.
// kUnsatisfiedPolicy when attrs is not authorized.
ReconstructionCoefficients reconstruct(const AccessPolicy& policy, const AttributeSet& attrs);

std::string format_attributes(const AttributeSet& attrs);  // "1,2"
AttributeSet parse_attributes(std::string_view text);      // "1,2" / "1 2"

}  // namespace rabe
