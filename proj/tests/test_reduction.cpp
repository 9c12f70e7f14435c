#include <gtest/gtest.h>

#include "lfp/checker.hpp"
#include "lfp/combinators.hpp"
#include "lfp/reduction.hpp"
#include "lfp/syntax.hpp"
#include "random_terms.hpp"

using namespace lfp;

namespace {

Term P(const char* s) { return parse(s); }

const RuleSet kBeta = RuleSet::beta();
const RuleSet kBetaEta = RuleSet::beta_eta();

// All (path, kind) pairs found by testing every subterm against the rule definitions directly.
std::vector<Redex> brute_redexes(const Term& t, const RuleSet& rules) {
  std::vector<Redex> out;
  std::function<void(const Term&, Path&, bool)> go = [&](const Term& s, Path& p, bool shadowed) {
    if (s.is_app() && s.fun().is_lam()) out.push_back({p, RedexKind::Beta});
    if (rules.base() == Base::BetaEta && s.is_lam() && s.body().is_app() && s.body().arg().is_var() &&
        s.body().arg().name() == s.binder() && !s.body().fun().has_free(s.binder())) {
      out.push_back({p, RedexKind::Eta});
    }
    if (rules.fix() && s.is_var() && !shadowed && s.name() == rules.fix()->y) out.push_back({p, RedexKind::Fix});
    if (s.is_app()) {
      p.push_back(Dir::Fun);
      go(s.fun(), p, shadowed);
      p.back() = Dir::Arg;
      go(s.arg(), p, shadowed);
      p.pop_back();
    } else if (s.is_lam()) {
      p.push_back(Dir::Body);
      go(s.body(), p, shadowed || (rules.fix() && s.binder() == rules.fix()->y));
      p.pop_back();
    }
  };
  Path p;
  go(t, p, false);
  return out;
}

bool contains(const std::vector<Redex>& rs, const Redex& r) { return std::find(rs.begin(), rs.end(), r) != rs.end(); }

}  // namespace

TEST(Redexes, SpecExamples) {
  EXPECT_EQ(enumerate_redexes(P("(\\x.x) y"), kBeta), (std::vector<Redex>{{{}, RedexKind::Beta}}));
  EXPECT_EQ(enumerate_redexes(P("\\x.y x"), kBetaEta), (std::vector<Redex>{{{}, RedexKind::Eta}}));
  EXPECT_TRUE(enumerate_redexes(P("\\x.y x"), kBeta).empty());
  EXPECT_TRUE(enumerate_redexes(P("\\x.x x"), kBetaEta).empty());
  RuleSet fix = kBeta.with_fix("y", P("\\f.f"));
  EXPECT_EQ(enumerate_redexes(var("y"), fix), (std::vector<Redex>{{{}, RedexKind::Fix}}));
  EXPECT_TRUE(enumerate_redexes(P("\\y.y"), fix).empty());
  EXPECT_THROW(kBeta.with_fix("y", P("y")), std::invalid_argument);
}

TEST(Redexes, PreorderOrder) {
  auto rs = enumerate_redexes(P("(\\x.(\\y.y) x) ((\\z.z) w)"), kBeta);
  ASSERT_EQ(rs.size(), 3u);
  EXPECT_EQ(rs[0].path, Path{});
  EXPECT_EQ(rs[1].path, (Path{Dir::Fun, Dir::Body}));
  EXPECT_EQ(rs[2].path, (Path{Dir::Arg}));
}

TEST(Contract, SpecExamples) {
  Step s = contract(P("(\\x.x x) z"), {}, RedexKind::Beta, kBeta);
  EXPECT_TRUE(alpha_eq(s.target, P("z z")));
  Step e = contract(P("\\x.w x"), {}, RedexKind::Eta, kBetaEta);
  EXPECT_TRUE(alpha_eq(e.target, P("w")));
  Term f = P("\\f.\\x.x");
  Step fx = contract(var("y"), {}, RedexKind::Fix, kBeta.with_fix("y", f));
  EXPECT_TRUE(alpha_eq(fx.target, app(f, var("y"))));
  EXPECT_THROW(contract(P("\\x.w x"), {}, RedexKind::Eta, kBeta), NotARedex);
  EXPECT_THROW(contract(P("x y"), {}, RedexKind::Beta, kBeta), NotARedex);
}

TEST(Reduced, SpecExamples) {
  EXPECT_TRUE(is_reduced(P("\\x.x"), kBeta));
  EXPECT_FALSE(is_reduced(P("(\\x.x) y"), kBeta));
  EXPECT_FALSE(is_reduced(var("y"), kBeta.with_fix("y", P("\\f.f"))));
}

TEST(Normalize, SpecExamples) {
  auto r = normalize(P("(\\x.x) (\\x.x)"), kBeta, 10);
  ASSERT_TRUE(r.normal);
  EXPECT_EQ(r.steps.size(), 1u);
  EXPECT_TRUE(alpha_eq(r.term, P("\\x.x")));

  for (std::size_t fuel : {1u, 7u, 100u}) {
    auto omega = normalize(P("(\\x.x x) (\\x.x x)"), kBeta, fuel);
    EXPECT_TRUE(omega.exhausted());
    EXPECT_EQ(omega.steps.size(), fuel);
  }

  auto y = normalize(app(y_combinator(), P("\\f.\\x.x")), kBeta, 100);
  ASSERT_TRUE(y.normal);
  EXPECT_TRUE(alpha_eq(y.term, P("\\x.x")));
  EXPECT_EQ(y.steps.size(), 3u);
}

TEST(Normalize, NormalOrderReachesNormalForm) {
  // K I Omega: an innermost strategy would diverge.
  auto r = normalize(P("(\\x y.x) (\\x.x) ((\\x.x x) (\\x.x x))"), kBeta, 50);
  ASSERT_TRUE(r.normal);
  EXPECT_TRUE(alpha_eq(r.term, P("\\x.x")));
}

TEST(Normalize, BetaBeforeEtaOnSharedShape) {
  Term t = P("\\v.(\\u.u u) v");
  auto first = first_redex(t, kBetaEta);
  ASSERT_TRUE(first);
  EXPECT_EQ(first->kind, RedexKind::Beta);
  EXPECT_EQ(first->path, Path{Dir::Body});
  auto b = normalize(t, kBeta, 10);
  auto be = normalize(t, kBetaEta, 10);
  ASSERT_FALSE(be.steps.empty());
  EXPECT_TRUE(alpha_eq(b.steps[0].target, be.steps[0].target));
}

TEST(Normalize, EtaSteps) {
  auto r = normalize(P("\\x.\\y.z x y"), kBetaEta, 10);
  ASSERT_TRUE(r.normal);
  EXPECT_TRUE(alpha_eq(r.term, P("z")));
  EXPECT_EQ(r.steps.size(), 2u);
  for (const auto& s : r.steps) EXPECT_EQ(s.kind, RedexKind::Eta);
}

TEST(Join, SpecExamples) {
  auto a = join(P("(\\x.x) w"), P("w"), kBeta, 100);
  EXPECT_EQ(a.status, JoinStatus::Joined);
  EXPECT_TRUE(alpha_eq(*a.common, P("w")));
  EXPECT_TRUE(check_conversion(a.left, kBeta));
  EXPECT_TRUE(check_conversion(a.right, kBeta));

  Definitions d = parse_definitions("K = \\x.\\y.x\nI = \\x.x\n");
  auto b = join(parse("K I", d), parse("\\y.I", d), kBeta, 100);
  EXPECT_EQ(b.status, JoinStatus::Joined);
  EXPECT_TRUE(alpha_eq(*b.common, P("\\y.\\x.x")));

  EXPECT_EQ(join(P("\\x.x"), P("\\x.\\y.y"), kBeta, 100).status, JoinStatus::Refuted);
  EXPECT_EQ(join(P("(\\x.x x) (\\x.x x)"), P("w"), kBeta, 100).status, JoinStatus::Inconclusive);
}

TEST(Conversions, LiftConversion) {
  Step s = contract(P("(\\x.x) y"), {}, RedexKind::Beta, kBeta);
  Conversion c = Conversion::forward(s.source, {s});
  Term outer = P("w ((\\x.x) y)");
  Conversion l = lift_conversion(c, outer, {Dir::Arg});
  EXPECT_TRUE(alpha_eq(l.start, outer));
  EXPECT_TRUE(alpha_eq(l.finish, P("w y")));
  EXPECT_TRUE(check_conversion(l, kBeta));

  Conversion e = lift_conversion(Conversion::empty(P("q")), P("a q"), {Dir::Arg});
  EXPECT_TRUE(e.steps.empty());
  EXPECT_TRUE(alpha_eq(e.start, P("a q")));
  EXPECT_TRUE(alpha_eq(e.finish, P("a q")));

  Conversion under = lift_conversion(c, lam("z", s.source), {Dir::Body});
  ASSERT_EQ(under.steps.size(), 1u);
  EXPECT_EQ(under.steps[0].step.path, Path{Dir::Body});
  EXPECT_TRUE(check_conversion(under, kBeta));
}

TEST(Conversions, SubstConversion) {
  Conversion empty = Conversion::empty(P("x x"));
  Conversion c0 = subst_conversion(empty, "x", P("w"), kBeta);
  EXPECT_EQ(c0.steps.size(), 2u);
  EXPECT_EQ(c0.steps[0].direction, Direction::Backward);
  EXPECT_TRUE(alpha_eq(c0.start, P("w w")));
  EXPECT_TRUE(alpha_eq(c0.finish, P("w w")));
  EXPECT_TRUE(check_conversion(c0, kBeta));

  Step s = contract(P("(\\u.u) x"), {}, RedexKind::Beta, kBeta);
  Conversion c = Conversion::forward(s.source, {s}).reversed();  // x ≈ (\u.u) x
  Conversion c1 = subst_conversion(c, "x", P("w"), kBeta);
  EXPECT_TRUE(alpha_eq(c1.start, P("w")));
  EXPECT_TRUE(alpha_eq(c1.finish, P("(\\u.u) w")));
  EXPECT_TRUE(check_conversion(c1, kBeta));
}

TEST(Conversions, ReplaySubstituted) {
  auto r = normalize(P("(\\u.x u) z"), kBeta, 10);
  auto replay = replay_substituted(r.steps, "x", P("\\q.q"), kBeta);
  ASSERT_EQ(replay.size(), 1u);
  EXPECT_TRUE(alpha_eq(replay[0].target, P("(\\q.q) z")));
}

TEST(ReductionProperty, EnumerateMatchesBruteForce) {
  lfp::testkit::TermGen gen(lfp::testkit::seed_from_env() + 20);
  Term f = P("\\f.\\x.f x");
  for (int i = 0; i < 600; ++i) {
    Term t = gen.open(1 + gen.below(14), {"y", "w"});
    for (const RuleSet& rules : {kBeta, kBetaEta, kBeta.with_fix("y", f), kBetaEta.with_fix("y", f)}) {
      auto fast = enumerate_redexes(t, rules);
      auto slow = brute_redexes(t, rules);
      EXPECT_EQ(fast, slow) << print(t);
      for (const auto& r : fast) {
        EXPECT_TRUE(is_redex(t, r.path, r.kind, rules));
        Step s = contract(t, r.path, r.kind, rules);
        EXPECT_TRUE(check_step(s, rules)) << print(t);
      }
    }
  }
}

TEST(ReductionProperty, CompatibilityClosure) {
  lfp::testkit::TermGen gen(lfp::testkit::seed_from_env() + 21);
  for (int i = 0; i < 500; ++i) {
    Term t = gen.closed(2 + gen.below(8));
    Term u = gen.closed(3 + gen.below(8));
    // Embed t at a random position of u.
    std::vector<Path> paths{{}};
    for (std::size_t k = 0; k < paths.size(); ++k) {
      const Term& s = subterm_at(u, paths[k]);
      if (s.is_app()) {
        paths.push_back(concat(paths[k], {Dir::Fun}));
        paths.push_back(concat(paths[k], {Dir::Arg}));
      } else if (s.is_lam()) {
        paths.push_back(concat(paths[k], {Dir::Body}));
      }
    }
    const Path& q = paths[gen.below(paths.size())];
    Term embedded = replace_at(u, q, t);
    for (const RuleSet& rules : {kBeta, kBetaEta}) {
      auto outer = enumerate_redexes(embedded, rules);
      for (const auto& r : enumerate_redexes(t, rules)) {
        EXPECT_TRUE(contains(outer, Redex{concat(q, r.path), r.kind})) << print(embedded);
      }
    }
  }
}

TEST(ReductionProperty, NormalFormUniqueness) {
  lfp::testkit::TermGen gen(lfp::testkit::seed_from_env() + 22);
  for (int i = 0; i < 500; ++i) {
    Term t = gen.closed(2 + gen.below(11));
    for (const RuleSet& rules : {kBeta, kBetaEta}) {
      auto lo = normalize(t, rules, 200);
      // A second order: always contract the last redex in preorder.
      Term cur = t;
      bool reduced = false;
      for (int k = 0; k < 200; ++k) {
        auto rs = enumerate_redexes(cur, rules);
        if (rs.empty()) {
          reduced = true;
          break;
        }
        cur = contract(cur, rs.back().path, rs.back().kind, rules).target;
      }
      if (lo.normal && reduced) {
        EXPECT_TRUE(alpha_eq(lo.term, cur)) << print(t);
      }
      if (lo.normal) {
        EXPECT_TRUE(diagnose_reduction(t, lo.steps, lo.term, rules).ok);
      }
    }
  }
}
