#include <gtest/gtest.h>

#include <functional>
#include <memory>
#include <optional>

#include "oracle.hpp"
#include "rabe/error.hpp"
#include "rabe/lsss.hpp"

using rabe::AttributeSet;

namespace {

struct Formula {
  enum Op { kLeaf, kAnd, kOr } op = kLeaf;
  rabe::Attribute attr = 0;
  std::vector<std::unique_ptr<Formula>> kids;

  bool eval(const AttributeSet& s) const {
    if (op == kLeaf) return s.count(attr) > 0;
    bool any = false, all = true;
    for (const auto& k : kids) {
      bool v = k->eval(s);
      any = any || v;
      all = all && v;
    }
    return op == kAnd ? all : any;
  }

  std::string text() const {
    if (op == kLeaf) return std::to_string(attr);
    std::string s = "(";
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i) s += op == kAnd ? " and " : " OR ";
      s += kids[i]->text();
    }
    return s + ")";
  }
};

std::unique_ptr<Formula> random_formula(rabe::Rng& rng, unsigned universe, int depth) {
  auto f = std::make_unique<Formula>();
  if (depth == 0 || rng.uniform(3) == 0) {
    f->attr = 1 + static_cast<rabe::Attribute>(rng.uniform(universe));
    return f;
  }
  f->op = rng.next_bit() ? Formula::kAnd : Formula::kOr;
  std::size_t n = 2 + rng.uniform(2);
  for (std::size_t i = 0; i < n; ++i) f->kids.push_back(random_formula(rng, universe, depth - 1));
  return f;
}

AttributeSet subset(unsigned mask, unsigned universe) {
  AttributeSet s;
  for (unsigned a = 1; a <= universe; ++a) {
    if (mask >> (a - 1) & 1) s.insert(a);
  }
  return s;
}

std::vector<std::vector<std::uint64_t>> as_matrix(const rabe::AccessPolicy& p) {
  std::vector<std::vector<std::uint64_t>> m;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    std::vector<std::uint64_t> row;
    for (const auto& v : p.row(i)) row.push_back(oracle::value(v));
    m.push_back(row);
  }
  return m;
}

class Lsss : public ::testing::Test {
 protected:
  rabe::BilinearContext ctx = rabe::BilinearContext::create(rabe::Backend::kTransparent, rabe::seed_bytes(3));
  const rabe::FieldPtr& field = ctx.scalar_field();
};

}  // namespace

TEST_F(Lsss, RandomFormulasAgreeWithBooleanEvaluation) {
  rabe::SeededRng rng(42);
  oracle::Zp f(ctx.prime_order()[0]);
  const unsigned universe = 8;
  for (int n = 0; n < 500; ++n) {
    auto formula = random_formula(rng, universe, 3);
    auto policy = rabe::parse_policy(formula->text(), field);
    auto matrix = as_matrix(policy);
    for (unsigned mask = 0; mask < (1u << universe); ++mask) {
      AttributeSet s = subset(mask, universe);
      bool want = formula->eval(s);
      ASSERT_EQ(rabe::satisfies(policy, s), want) << formula->text() << " / " << rabe::format_attributes(s);
      std::vector<std::size_t> rows;
      for (std::size_t i = 0; i < policy.rows(); ++i) {
        if (s.count(policy.attribute(i))) rows.push_back(i);
      }
      ASSERT_EQ(oracle::in_row_span(f, matrix, rows), want);
      if (!want) continue;
      // sum w_i M_i = (1, 0, ..., 0)
      auto w = rabe::reconstruct(policy, s);
      std::vector<std::uint64_t> acc(policy.cols(), 0);
      for (const auto& [i, wi] : w) {
        ASSERT_TRUE(s.count(policy.attribute(i)));
        for (std::size_t j = 0; j < policy.cols(); ++j) acc[j] = f.add(acc[j], f.mul(oracle::value(wi), matrix[i][j]));
      }
      ASSERT_EQ(acc[0], 1u);
      for (std::size_t j = 1; j < acc.size(); ++j) ASSERT_EQ(acc[j], 0u);
    }
  }
}

TEST_F(Lsss, SharesReconstructTheSecret) {
  rabe::SeededRng rng(7);
  auto policy = rabe::parse_policy("(1 AND 2) OR (3 AND (4 OR 5))", field);
  for (int i = 0; i < 50; ++i) {
    auto secret = ctx.random_scalar(rng);
    auto shares = rabe::share_secret(policy, secret, rng);
    ASSERT_EQ(shares.size(), policy.rows());
    for (const AttributeSet& s : {AttributeSet{1, 2}, AttributeSet{3, 5}, AttributeSet{1, 3, 4}}) {
      rabe::Scalar acc = ctx.scalar(0);
      for (const auto& [row, w] : rabe::reconstruct(policy, s)) acc += w * shares[row];
      ASSERT_EQ(acc, secret);
    }
  }
  EXPECT_THROW(rabe::reconstruct(policy, {1, 3}), rabe::Error);
}

TEST_F(Lsss, MatrixShapeFollowsFormula) {
  auto p = rabe::parse_policy("1 AND (2 OR 3)", field);
  EXPECT_EQ(p.rows(), 3u);
  EXPECT_EQ(p.cols(), 2u);
  EXPECT_EQ(p.row_attributes(), (std::vector<rabe::Attribute>{1, 2, 3}));
  auto single = rabe::parse_policy("4", field);
  EXPECT_EQ(single.rows(), 1u);
  EXPECT_EQ(single.cols(), 1u);
  EXPECT_EQ(p.max_attribute(), 3u);
}

TEST_F(Lsss, NormalizesFormulaText) {
  EXPECT_EQ(rabe::parse_policy("1 and (2 or 3)", field).formula(), "1 AND (2 OR 3)");
  EXPECT_EQ(rabe::parse_policy("((1))", field).formula(), "1");
  EXPECT_EQ(rabe::parse_policy("1 OR 2 AND 3", field).formula(), "1 OR 2 AND 3");
  EXPECT_EQ(rabe::parse_policy("(1 OR 2) AND 3", field).formula(), "(1 OR 2) AND 3");
}

TEST_F(Lsss, RejectsMalformedAndNonMonotonePolicies) {
  auto code = [&](const char* text) -> std::optional<rabe::ErrorCode> {
    try {
      rabe::parse_policy(text, field);
    } catch (const rabe::Error& e) {
      return e.code();
    }
    return std::nullopt;
  };
  EXPECT_EQ(code("1 AND"), rabe::ErrorCode::kParse);
  EXPECT_EQ(code("(1 OR 2"), rabe::ErrorCode::kParse);
  EXPECT_EQ(code(""), rabe::ErrorCode::kParse);
  EXPECT_EQ(code("0"), rabe::ErrorCode::kParse);
  EXPECT_EQ(code("a OR b"), rabe::ErrorCode::kParse);
  EXPECT_EQ(code("NOT 1"), rabe::ErrorCode::kNonMonotone);
  EXPECT_EQ(code("1 AND !2"), rabe::ErrorCode::kNonMonotone);
  EXPECT_EQ(code("~3"), rabe::ErrorCode::kNonMonotone);
}

TEST_F(Lsss, AttributeListParsing) {
  EXPECT_EQ(rabe::parse_attributes("1,2, 4"), (AttributeSet{1, 2, 4}));
  EXPECT_EQ(rabe::parse_attributes("3 1"), (AttributeSet{1, 3}));
  EXPECT_EQ(rabe::format_attributes({4, 1}), "1,4");
  EXPECT_THROW(rabe::parse_attributes(""), rabe::Error);
  EXPECT_THROW(rabe::parse_attributes("0"), rabe::Error);
  EXPECT_THROW(rabe::parse_attributes("1,x"), rabe::Error);
}
