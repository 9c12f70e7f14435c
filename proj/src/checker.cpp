#include "lfp/checker.hpp"

namespace lfp {

namespace {

CheckReport fail(std::optional<std::size_t> index, std::string message) {
  return CheckReport{false, index, std::move(message)};
}

// The contractum the step claims, or nullopt when the position holds no
// redex of the claimed kind.
std::optional<Term> expected_contractum(const Step& s, const RuleSet& rules, std::string& why) {
  const Term* cur = &s.source;
  bool fix_bound = false;
  for (Dir d : s.path) {
    if (d == Dir::Body) {
      if (!cur->is_lam()) {
        why = "path leaves the term";
        return std::nullopt;
      }
      if (rules.fix() && cur->binder() == rules.fix()->y) fix_bound = true;
      cur = &cur->body();
    } else {
      if (!cur->is_app()) {
        why = "path leaves the term";
        return std::nullopt;
      }
      cur = d == Dir::Fun ? &cur->fun() : &cur->arg();
    }
  }
  const Term& sub = *cur;
  switch (s.kind) {
    case RedexKind::Beta:
      if (sub.is_app() && sub.fun().is_lam()) {
        const Term& abs = sub.fun();
        return substitute(abs.body(), abs.binder(), sub.arg());
      }
      why = "not a beta redex";
      return std::nullopt;
    case RedexKind::Eta: {
      if (rules.base() != Base::BetaEta) {
        why = "eta step under a beta-only rule set";
        return std::nullopt;
      }
      if (sub.is_lam() && sub.body().is_app()) {
        const Term& inner = sub.body();
        if (inner.arg().is_var() && inner.arg().name() == sub.binder() && !inner.fun().has_free(sub.binder())) {
          return inner.fun();
        }
      }
      why = "not an eta redex";
      return std::nullopt;
    }
    case RedexKind::Fix:
      if (!rules.fix()) {
        why = "fixed-point step without a fixed-point rule";
        return std::nullopt;
      }
      if (sub.is_var() && sub.name() == rules.fix()->y && !fix_bound) {
        return Term::app(rules.fix()->f, Term::var(rules.fix()->y));
      }
      why = "not a free occurrence of the fixed-point variable";
      return std::nullopt;
  }
  why = "unknown rule";
  return std::nullopt;
}

}  // namespace

CheckReport diagnose_step(const Step& s, const RuleSet& rules) {
  std::string why;
  auto contractum = expected_contractum(s, rules, why);
  if (!contractum) return fail(0, why);
  if (!alpha_eq(replace_at(s.source, s.path, *contractum), s.target)) {
    return fail(0, "target is not the contraction of the source");
  }
  return {};
}

bool check_step(const Step& s, const RuleSet& rules) { return diagnose_step(s, rules).ok; }

CheckReport diagnose_conversion(const Conversion& c, const RuleSet& rules) {
  const Term* at = &c.start;
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const ConversionStep& cs = c.steps[i];
    if (!alpha_eq(*at, cs.from())) return fail(i, "step does not continue from the previous endpoint");
    CheckReport r = diagnose_step(cs.step, rules);
    if (!r.ok) return fail(i, r.message);
    at = &cs.to();
  }
  if (!alpha_eq(*at, c.finish)) return fail(std::nullopt, "chain does not end at the stated finish");
  return {};
}

bool check_conversion(const Conversion& c, const RuleSet& rules) { return diagnose_conversion(c, rules).ok; }

CheckReport diagnose_reduction(const Term& start, const std::vector<Step>& steps, const Term& finish,
                               const RuleSet& rules) {
  Conversion c{start, finish, {}};
  c.steps.reserve(steps.size());
  for (const auto& s : steps) c.steps.push_back({Direction::Forward, s});
  return diagnose_conversion(c, rules);
}

}  // namespace lfp
