#include "rabe/lsss.hpp"

#include <cctype>
#include <memory>
#include <optional>

#include "rabe/error.hpp"

namespace rabe {
namespace {

struct FormulaNode {
  enum class Kind { kLeaf, kAnd, kOr };
  Kind kind = Kind::kLeaf;
  Attribute attr = 0;
  std::unique_ptr<FormulaNode> left, right;
};

struct Token {
  enum class Kind { kAttr, kAnd, kOr, kOpen, kClose, kEnd };
  Kind kind;
  Attribute attr = 0;
  std::size_t pos = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(' || c == ')') {
      tokens.push_back({c == '(' ? Token::Kind::kOpen : Token::Kind::kClose, 0, i});
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > 0xffffffffULL) throw Error(ErrorCode::kParse, "attribute literal too large");
        ++i;
      }
      if (v == 0) throw Error(ErrorCode::kParse, "attributes are positive integers (at offset " + std::to_string(start) + ")");
      tokens.push_back({Token::Kind::kAttr, static_cast<Attribute>(v), start});
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i;
      std::string word;
      while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) {
        word.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(text[i]))));
        ++i;
      }
      if (word == "AND") {
        tokens.push_back({Token::Kind::kAnd, 0, start});
      } else if (word == "OR") {
        tokens.push_back({Token::Kind::kOr, 0, start});
      } else if (word == "NOT") {
        throw Error(ErrorCode::kNonMonotone, "NOT is not allowed in monotone policies");
      } else {
        throw Error(ErrorCode::kParse, "unknown word '" + word + "' at offset " + std::to_string(start));
      }
    } else if (c == '!' || c == '~') {
      throw Error(ErrorCode::kNonMonotone, std::string("negation '") + c + "' is not allowed in monotone policies");
    } else {
      throw Error(ErrorCode::kParse, std::string("unexpected character '") + c + "' at offset " + std::to_string(i));
    }
  }
  tokens.push_back({Token::Kind::kEnd, 0, text.size()});
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  std::unique_ptr<FormulaNode> parse() {
    auto node = expr();
    if (peek().kind != Token::Kind::kEnd) fail("trailing input");
    return node;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kParse, what + " at offset " + std::to_string(peek().pos));
  }

  std::unique_ptr<FormulaNode> gate(FormulaNode::Kind kind, std::unique_ptr<FormulaNode> l,
                                    std::unique_ptr<FormulaNode> r) {
    auto n = std::make_unique<FormulaNode>();
    n->kind = kind;
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
  }

  std::unique_ptr<FormulaNode> expr() {
    auto node = term();
    while (peek().kind == Token::Kind::kOr) {
      ++pos_;
      node = gate(FormulaNode::Kind::kOr, std::move(node), term());
    }
    return node;
  }

  std::unique_ptr<FormulaNode> term() {
    auto node = factor();
    while (peek().kind == Token::Kind::kAnd) {
      ++pos_;
      node = gate(FormulaNode::Kind::kAnd, std::move(node), factor());
    }
    return node;
  }

  std::unique_ptr<FormulaNode> factor() {
    const Token& t = peek();
    if (t.kind == Token::Kind::kAttr) {
      ++pos_;
      auto n = std::make_unique<FormulaNode>();
      n->attr = t.attr;
      return n;
    }
    if (t.kind == Token::Kind::kOpen) {
      ++pos_;
      auto n = expr();
      if (peek().kind != Token::Kind::kClose) fail("expected ')'");
      ++pos_;
      return n;
    }
    fail(t.kind == Token::Kind::kEnd ? "unexpected end of policy" : "expected attribute or '('");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

int precedence(FormulaNode::Kind k) {
  switch (k) {
    case FormulaNode::Kind::kOr: return 1;
    case FormulaNode::Kind::kAnd: return 2;
    case FormulaNode::Kind::kLeaf: return 3;
  }
  return 3;
}

// Left-associative printing: the right operand of a gate of equal
// precedence keeps its parentheses so the tree shape survives a reparse.
std::string to_text(const FormulaNode& n, int parent, bool right_child) {
  if (n.kind == FormulaNode::Kind::kLeaf) return std::to_string(n.attr);
  int p = precedence(n.kind);
  std::string op = n.kind == FormulaNode::Kind::kAnd ? " AND " : " OR ";
  std::string s = to_text(*n.left, p, false) + op + to_text(*n.right, p, true);
  if (p < parent || (p == parent && right_child)) return "(" + s + ")";
  return s;
}

struct MatrixBuilder {
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<Attribute> attrs;
  std::size_t counter = 1;

  void assign(const FormulaNode& n, std::vector<std::int64_t> v) {
    switch (n.kind) {
      case FormulaNode::Kind::kLeaf:
        rows.push_back(std::move(v));
        attrs.push_back(n.attr);
        return;
      case FormulaNode::Kind::kOr:
        assign(*n.left, v);
        assign(*n.right, std::move(v));
        return;
      case FormulaNode::Kind::kAnd: {
        v.resize(counter, 0);
        std::vector<std::int64_t> left = v;
        left.push_back(1);
        std::vector<std::int64_t> right(counter, 0);
        right.push_back(-1);
        ++counter;
        assign(*n.left, std::move(left));
        assign(*n.right, std::move(right));
        return;
      }
    }
  }
};

// Solves sum_c w_c * M_{rows[c]} = (1, 0, ..., 0). Returns pivot columns
// mapped to their coefficients, or nullopt when no solution exists.
std::optional<ReconstructionCoefficients> solve(const AccessPolicy& policy, const AttributeSet& attrs) {
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < policy.rows(); ++i) {
    if (attrs.contains(policy.attribute(i))) selected.push_back(i);
  }
  const FieldPtr& field = policy.field();
  const std::size_t l = policy.cols();
  const std::size_t k = selected.size();
  Scalar zero(field, 0);
  std::vector<std::vector<Scalar>> a(l, std::vector<Scalar>(k + 1, zero));
  for (std::size_t r = 0; r < l; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = policy.row(selected[c])[r];
    a[r][k] = Scalar(field, r == 0 ? 1 : 0);
  }

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (column, row)
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < k && pivot_row < l; ++c) {
    std::size_t r = pivot_row;
    while (r < l && a[r][c].is_zero()) ++r;
    if (r == l) continue;
    std::swap(a[r], a[pivot_row]);
    Scalar inv = a[pivot_row][c].inverse();
    for (auto& x : a[pivot_row]) x *= inv;
    for (std::size_t rr = 0; rr < l; ++rr) {
      if (rr == pivot_row || a[rr][c].is_zero()) continue;
      Scalar f = a[rr][c];
      for (std::size_t cc = c; cc <= k; ++cc) a[rr][cc] -= f * a[pivot_row][cc];
    }
    pivots.emplace_back(c, pivot_row);
    ++pivot_row;
  }
  for (std::size_t r = pivot_row; r < l; ++r) {
    if (!a[r][k].is_zero()) return std::nullopt;
  }
  ReconstructionCoefficients w;
  for (auto [c, r] : pivots) w.emplace(selected[c], a[r][k]);
  return w;
}

}  // namespace

AccessPolicy::AccessPolicy(std::vector<std::vector<Scalar>> matrix, std::vector<Attribute> row_attributes,
                           std::string formula)
    : matrix_(std::move(matrix)), row_attr_(std::move(row_attributes)), formula_(std::move(formula)) {
  if (matrix_.empty() || matrix_.front().empty()) throw Error(ErrorCode::kInvalidArgument, "policy matrix is empty");
  if (matrix_.size() != row_attr_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "every policy row needs exactly one attribute");
  }
  for (const auto& r : matrix_) {
    if (r.size() != matrix_.front().size()) throw Error(ErrorCode::kInvalidArgument, "ragged policy matrix");
    for (const auto& x : r) {
      if (!(x.field() == matrix_.front().front().field())) {
        throw Error(ErrorCode::kBackendMismatch, "policy entries from different fields");
      }
    }
  }
  for (Attribute a : row_attr_) {
    if (a == 0) throw Error(ErrorCode::kInvalidArgument, "attributes are positive integers");
  }
}

Attribute AccessPolicy::max_attribute() const {
  Attribute m = 0;
  for (Attribute a : row_attr_) m = std::max(m, a);
  return m;
}

bool AccessPolicy::operator==(const AccessPolicy& o) const {
  return matrix_ == o.matrix_ && row_attr_ == o.row_attr_ && formula_ == o.formula_;
}

AccessPolicy parse_policy(std::string_view formula, const FieldPtr& field) {
  auto root = Parser(tokenize(formula)).parse();
  MatrixBuilder b;
  b.assign(*root, {1});
  std::vector<std::vector<Scalar>> matrix;
  matrix.reserve(b.rows.size());
  for (auto& r : b.rows) {
    r.resize(b.counter, 0);
    std::vector<Scalar> row;
    row.reserve(r.size());
    for (auto v : r) row.push_back(Scalar::from_signed(field, v));
    matrix.push_back(std::move(row));
  }
  return AccessPolicy(std::move(matrix), std::move(b.attrs), to_text(*root, 0, false));
}

bool satisfies(const AccessPolicy& policy, const AttributeSet& attrs) { return solve(policy, attrs).has_value(); }

std::vector<Scalar> share_secret(const AccessPolicy& policy, const Scalar& secret, Rng& rng) {
  std::vector<Scalar> u{secret};
  for (std::size_t j = 1; j < policy.cols(); ++j) u.push_back(Scalar::random(secret.field_ptr(), rng));
  std::vector<Scalar> shares;
  shares.reserve(policy.rows());
  for (std::size_t i = 0; i < policy.rows(); ++i) {
    Scalar acc(secret.field_ptr(), 0);
    for (std::size_t j = 0; j < u.size(); ++j) acc += policy.row(i)[j] * u[j];
    shares.push_back(acc);
  }
  return shares;
}

ReconstructionCoefficients reconstruct(const AccessPolicy& policy, const AttributeSet& attrs) {
  auto w = solve(policy, attrs);
  if (!w) {
    throw Error(ErrorCode::kUnsatisfiedPolicy,
                "attributes {" + format_attributes(attrs) + "} do not satisfy policy '" + policy.formula() + "'");
  }
  return *w;
}

std::string format_attributes(const AttributeSet& attrs) {
  std::string s;
  for (Attribute a : attrs) {
    if (!s.empty()) s += ",";
    s += std::to_string(a);
  }
  return s;
}

AttributeSet parse_attributes(std::string_view text) {
  AttributeSet out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) throw Error(ErrorCode::kParse, "attribute lists hold integers");
    std::uint64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
      if (v > 0xffffffffULL) throw Error(ErrorCode::kParse, "attribute too large");
      ++i;
    }
    if (v == 0) throw Error(ErrorCode::kParse, "attributes are positive integers");
    out.insert(static_cast<Attribute>(v));
  }
  if (out.empty()) throw Error(ErrorCode::kParse, "attribute set is empty");
  return out;
}

}  // namespace rabe
