#include <gtest/gtest.h>

#include "lfp/combinators.hpp"
#include "lfp/syntax.hpp"
#include "random_terms.hpp"

using namespace lfp;

TEST(Parse, Basics) {
  EXPECT_TRUE(alpha_eq(parse("\\x.x"), lam("x", var("x"))));
  EXPECT_TRUE(alpha_eq(parse("λx.x"), lam("x", var("x"))));
  EXPECT_TRUE(alpha_eq(parse("a b c"), app(app(var("a"), var("b")), var("c"))));
  EXPECT_TRUE(alpha_eq(parse("a (b c)"), app(var("a"), app(var("b"), var("c")))));
  EXPECT_TRUE(alpha_eq(parse("\\x y.x"), lam("x", lam("y", var("x")))));
  EXPECT_TRUE(alpha_eq(parse("\\x.x y"), lam("x", app(var("x"), var("y")))));
  EXPECT_TRUE(alpha_eq(parse("f \\x.x"), app(var("f"), lam("x", var("x")))));
  EXPECT_TRUE(alpha_eq(parse("  a  # comment\n b"), app(var("a"), var("b"))));
  EXPECT_TRUE(alpha_eq(parse("x' x_1"), app(var("x'"), var("x_1"))));
}

TEST(Parse, BuiltIns) {
  EXPECT_TRUE(alpha_eq(parse("Y"), y_combinator()));
  EXPECT_TRUE(alpha_eq(parse("THETA"), theta()));
  EXPECT_TRUE(alpha_eq(parse("Y_0"), y_n(0)));
  EXPECT_TRUE(alpha_eq(parse("Y_3"), y_n(3)));
  EXPECT_TRUE(alpha_eq(y_combinator(), parse("\\f.(\\g.f (g g)) (\\g.f (g g))")));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse(""), SyntaxError);
  EXPECT_THROW(parse("\\.x"), SyntaxError);
  EXPECT_THROW(parse("(a"), SyntaxError);
  EXPECT_THROW(parse("a)"), SyntaxError);
  EXPECT_THROW(parse("\\x x"), SyntaxError);
  EXPECT_THROW(parse("K"), UnboundConstant);
  try {
    parse("a\n  (b");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Parse, Definitions) {
  Definitions d = parse_definitions("# combinators\nI = \\x.x\nK = \\x y.x\nKI = K I\n");
  ASSERT_EQ(d.entries().size(), 3u);
  EXPECT_TRUE(alpha_eq(parse("KI", d), parse("(\\x y.x) (\\x.x)")));
  EXPECT_THROW(parse_definitions("I = \\x.x\nI = \\y.y\n"), SyntaxError);
  EXPECT_THROW(parse_definitions("Y = \\x.x\n"), SyntaxError);
  EXPECT_THROW(parse_definitions("A = B\nB = \\x.x\n"), UnboundConstant);
  EXPECT_THROW(parse_definitions("a = \\x.x\n"), SyntaxError);
}

TEST(Print, MinimalParentheses) {
  EXPECT_EQ(print(parse("(\\x.x) y")), "(\\x.x) y");
  EXPECT_EQ(print(parse("a (b c)")), "a (b c)");
  EXPECT_EQ(print(parse("(a b) c")), "a b c");
  EXPECT_EQ(print(parse("f (\\x.x)")), "f (\\x.x)");
  EXPECT_EQ(print(parse("\\x.\\y.x y")), "\\x.\\y.x y");
  EXPECT_EQ(print(y_combinator()), "\\f.(\\g.f (g g)) (\\g.f (g g))");
}

TEST(Print, TrackedNeedsTable) {
  struct Tag final : TrackedTag {
    bool same_variable(const TrackedTag& o) const override { return &o == this; }
    std::string describe() const override { return "t"; }
  };
  auto tag = std::make_shared<Tag>();
  Term t = app(Term::tracked(tag), var("x"));
  EXPECT_THROW(print(t), std::invalid_argument);
  DescriptorTable table;
  EXPECT_EQ(print(t, table), "⟨υ:0⟩ x");
  EXPECT_EQ(table.tags().size(), 1u);
}

TEST(SyntaxProperty, PrintParseRoundTrip) {
  lfp::testkit::TermGen gen(lfp::testkit::seed_from_env() + 10);
  for (int i = 0; i < 1000; ++i) {
    Term t = gen.open(1 + gen.below(14), {"a", "w"});
    std::string s = print(t);
    Term back = parse(s);
    EXPECT_TRUE(alpha_eq(back, t)) << s;
    EXPECT_EQ(print(back), s);
  }
}
