#include <gtest/gtest.h>

#include "lfp/checker.hpp"
#include "lfp/syntax.hpp"

using namespace lfp;

namespace {
Term P(const char* s) { return parse(s); }
const RuleSet kBeta = RuleSet::beta();
}  // namespace

TEST(Checker, Steps) {
  Step s = contract(P("(\\x.x) y"), {}, RedexKind::Beta, kBeta);
  EXPECT_TRUE(check_step(s, kBeta));

  Step bad = contract(P("(\\x.x x) z"), {}, RedexKind::Beta, kBeta);
  bad.target = P("z w");
  EXPECT_FALSE(check_step(bad, kBeta));

  Step wrong_kind = s;
  wrong_kind.kind = RedexKind::Eta;
  EXPECT_FALSE(check_step(wrong_kind, RuleSet::beta_eta()));

  Step bad_path = s;
  bad_path.path = {Dir::Body};
  EXPECT_FALSE(check_step(bad_path, kBeta));

  Step eta = contract(P("\\x.w x"), {}, RedexKind::Eta, RuleSet::beta_eta());
  EXPECT_TRUE(check_step(eta, RuleSet::beta_eta()));
  EXPECT_FALSE(check_step(eta, kBeta));

  // The target is accepted up to alpha.
  Step renamed = contract(P("(\\x.\\y.x) z"), {}, RedexKind::Beta, kBeta);
  renamed.target = P("\\q.z");
  EXPECT_TRUE(check_step(renamed, kBeta));
}

TEST(Checker, FixStepsOnlyOnFreeOccurrences) {
  RuleSet fix = kBeta.with_fix("y", P("\\f.f"));
  Step ok{P("\\x.y"), {Dir::Body}, RedexKind::Fix, P("\\x.(\\f.f) y")};
  EXPECT_TRUE(check_step(ok, fix));
  Step shadowed{P("\\y.y"), {Dir::Body}, RedexKind::Fix, P("\\y.(\\f.f) y")};
  EXPECT_FALSE(check_step(shadowed, fix));
  EXPECT_FALSE(check_step(ok, kBeta));
}

TEST(Checker, Conversions) {
  // w <-beta (\v.w) u ->beta w
  Step s = contract(P("(\\v.w) u"), {}, RedexKind::Beta, kBeta);
  Conversion c{P("w"), P("w"), {{Direction::Backward, s}, {Direction::Forward, s}}};
  EXPECT_TRUE(check_conversion(c, kBeta));

  Conversion wrong_dir{P("w"), P("w"), {{Direction::Forward, s}, {Direction::Forward, s}}};
  auto rep = diagnose_conversion(wrong_dir, kBeta);
  EXPECT_FALSE(rep.ok);
  ASSERT_TRUE(rep.failing_index);
  EXPECT_EQ(*rep.failing_index, 0u);

  Conversion bad_end = c;
  bad_end.finish = P("u");
  rep = diagnose_conversion(bad_end, kBeta);
  EXPECT_FALSE(rep.ok);
  EXPECT_FALSE(rep.failing_index);

  Conversion tampered = c;
  tampered.steps[1].step.target = P("u");
  tampered.finish = P("u");
  rep = diagnose_conversion(tampered, kBeta);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(rep.failing_index.value_or(99), 1u);

  EXPECT_TRUE(check_conversion(Conversion::empty(P("a")), kBeta));
  EXPECT_FALSE(check_conversion(Conversion{P("a"), P("b"), {}}, kBeta));
}

TEST(Checker, Reductions) {
  auto r = normalize(P("(\\x.x) ((\\x.x) q)"), kBeta, 10);
  EXPECT_TRUE(diagnose_reduction(P("(\\x.x) ((\\x.x) q)"), r.steps, P("q"), kBeta).ok);
  EXPECT_FALSE(diagnose_reduction(P("(\\x.x) ((\\x.x) q)"), r.steps, P("z"), kBeta).ok);
  auto rev = r.steps;
  std::swap(rev[0], rev[1]);
  EXPECT_FALSE(diagnose_reduction(P("(\\x.x) ((\\x.x) q)"), rev, P("q"), kBeta).ok);
}
