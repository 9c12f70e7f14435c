#include "lfp/reduction.hpp"

#include <algorithm>
#include <utility>

namespace lfp {

RuleSet::RuleSet(Base base, FixVar fix) : base_(base), fix_(std::move(fix)) {
  if (fix_->f.has_free(fix_->y)) {
    throw std::invalid_argument("fixed-point variable '" + fix_->y + "' occurs free in F");
  }
}

const char* base_tag(Base b) { return b == Base::Beta ? "beta" : "beta-eta"; }

std::optional<Base> parse_base(const std::string& s) {
  if (s == "beta") return Base::Beta;
  if (s == "beta-eta") return Base::BetaEta;
  return std::nullopt;
}

const char* redex_tag(RedexKind k) {
  switch (k) {
    case RedexKind::Beta:
      return "beta";
    case RedexKind::Eta:
      return "eta";
    case RedexKind::Fix:
      return "fix";
  }
  return "?";
}

std::optional<RedexKind> parse_redex_tag(const std::string& s) {
  if (s == "beta") return RedexKind::Beta;
  if (s == "eta") return RedexKind::Eta;
  if (s == "fix") return RedexKind::Fix;
  return std::nullopt;
}

const char* join_status_tag(JoinStatus s) {
  switch (s) {
    case JoinStatus::Joined:
      return "JOINED";
    case JoinStatus::Refuted:
      return "REFUTED";
    case JoinStatus::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

Conversion Conversion::forward(const Term& start, const std::vector<Step>& steps) {
  Conversion c{start, steps.empty() ? start : steps.back().target, {}};
  c.steps.reserve(steps.size());
  for (const auto& s : steps) c.steps.push_back({Direction::Forward, s});
  return c;
}

Conversion Conversion::reversed() const {
  Conversion c{finish, start, {}};
  c.steps.reserve(steps.size());
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    c.steps.push_back({it->direction == Direction::Forward ? Direction::Backward : Direction::Forward, it->step});
  }
  return c;
}

Conversion& Conversion::append(const Conversion& next) {
  steps.insert(steps.end(), next.steps.begin(), next.steps.end());
  finish = next.finish;
  return *this;
}

namespace {

// The kind of redex rooted at t, given whether the fixed-point variable is
// shadowed by an enclosing binder.
std::optional<RedexKind> root_redex(const Term& t, const RuleSet& rules, bool fix_shadowed) {
  switch (t.kind()) {
    case Term::Kind::App:
      if (t.fun().is_lam()) return RedexKind::Beta;
      return std::nullopt;
    case Term::Kind::Lam: {
      if (rules.base() != Base::BetaEta) return std::nullopt;
      const Term& b = t.body();
      if (b.is_app() && b.arg().is_var() && b.arg().name() == t.binder() && !b.fun().has_free(t.binder())) {
        return RedexKind::Eta;
      }
      return std::nullopt;
    }
    case Term::Kind::Var:
      if (rules.fix() && !fix_shadowed && t.name() == rules.fix()->y) return RedexKind::Fix;
      return std::nullopt;
    case Term::Kind::Tracked:
      return std::nullopt;
  }
  return std::nullopt;
}

// Whether a node can contain a redex at all.
bool may_contain(const Term& t, const RuleSet& rules) {
  if (t.has_beta_redex()) return true;
  if (rules.base() == Base::BetaEta && t.has_eta_redex()) return true;
  return rules.fix() && t.has_free(rules.fix()->y);
}

template <typename Visit>
bool walk(const Term& t, const RuleSet& rules, Path& path, int shadow, Visit&& visit) {
  if (!may_contain(t, rules)) return true;
  if (auto k = root_redex(t, rules, shadow > 0)) {
    if (!visit(path, *k)) return false;
  }
  switch (t.kind()) {
    case Term::Kind::App:
      path.push_back(Dir::Fun);
      if (!walk(t.fun(), rules, path, shadow, visit)) return false;
      path.back() = Dir::Arg;
      if (!walk(t.arg(), rules, path, shadow, visit)) return false;
      path.pop_back();
      return true;
    case Term::Kind::Lam: {
      bool shadows = rules.fix() && t.binder() == rules.fix()->y;
      path.push_back(Dir::Body);
      if (!walk(t.body(), rules, path, shadow + (shadows ? 1 : 0), visit)) return false;
      path.pop_back();
      return true;
    }
    default:
      return true;
  }
}

bool shadowed_along(const Term& t, const Path& p, const Name& y) {
  const Term* cur = &t;
  for (Dir d : p) {
    if (cur->is_lam() && cur->binder() == y) return true;
    cur = d == Dir::Fun ? &cur->fun() : d == Dir::Arg ? &cur->arg() : &cur->body();
  }
  return false;
}

}  // namespace

std::vector<Redex> enumerate_redexes(const Term& t, const RuleSet& rules) {
  std::vector<Redex> out;
  Path path;
  walk(t, rules, path, 0, [&](const Path& p, RedexKind k) {
    out.push_back({p, k});
    return true;
  });
  return out;
}

std::optional<Redex> first_redex(const Term& t, const RuleSet& rules) {
  std::optional<Redex> out;
  Path path;
  walk(t, rules, path, 0, [&](const Path& p, RedexKind k) {
    out = Redex{p, k};
    return false;
  });
  // \v.((\u.M) v): take the beta inside rather than the eta here.
  if (out && out->kind == RedexKind::Eta) {
    const Term& body = subterm_at(t, out->path).body();
    if (body.fun().is_lam()) out = Redex{concat(out->path, {Dir::Body}), RedexKind::Beta};
  }
  return out;
}

bool is_redex(const Term& t, const Path& p, RedexKind k, const RuleSet& rules) {
  if (!valid_path(t, p)) return false;
  const Term& sub = subterm_at(t, p);
  bool shadowed = rules.fix() && shadowed_along(t, p, rules.fix()->y);
  auto found = root_redex(sub, rules, shadowed);
  return found && *found == k;
}

namespace {

Term contract_unchecked(const Term& t, const Path& p, RedexKind k, const RuleSet& rules) {
  const Term& sub = subterm_at(t, p);
  Term contractum = sub;
  switch (k) {
    case RedexKind::Beta:
      contractum = substitute(sub.fun().body(), sub.fun().binder(), sub.arg());
      break;
    case RedexKind::Eta:
      contractum = sub.body().fun();
      break;
    case RedexKind::Fix:
      contractum = app(rules.fix()->f, sub);
      break;
  }
  return replace_at(t, p, contractum);
}

}  // namespace

Step contract(const Term& t, const Path& p, RedexKind k, const RuleSet& rules) {
  if (!is_redex(t, p, k, rules)) {
    throw NotARedex(std::string("no ") + redex_tag(k) + " redex at the given position");
  }
  return Step{t, p, k, contract_unchecked(t, p, k, rules)};
}

bool is_reduced(const Term& t, const RuleSet& rules) { return !first_redex(t, rules).has_value(); }

NormalizeResult normalize(const Term& t, const RuleSet& rules, std::size_t fuel, bool keep_steps) {
  NormalizeResult r{false, t, {}};
  for (std::size_t spent = 0;; ++spent) {
    auto redex = first_redex(r.term, rules);
    if (!redex) {
      r.normal = true;
      return r;
    }
    if (spent >= fuel) return r;
    Term next = contract_unchecked(r.term, redex->path, redex->kind, rules);
    if (keep_steps) r.steps.push_back(Step{r.term, std::move(redex->path), redex->kind, next});
    r.term = std::move(next);
  }
}

JoinResult join(const Term& a, const Term& b, const RuleSet& rules, std::size_t fuel) {
  JoinResult out{JoinStatus::Inconclusive, std::nullopt, Conversion::empty(a), Conversion::empty(b)};
  if (alpha_eq(a, b)) {
    out.status = JoinStatus::Joined;
    out.common = a;
    return out;
  }
  NormalizeResult pa = normalize(a, rules, fuel, false);
  if (pa.exhausted()) return out;
  NormalizeResult pb = normalize(b, rules, fuel, false);
  if (pb.exhausted()) return out;
  if (!alpha_eq(pa.term, pb.term)) {
    out.status = JoinStatus::Refuted;
    return out;
  }
  NormalizeResult na = normalize(a, rules, fuel);
  NormalizeResult nb = normalize(b, rules, fuel);
  out.status = JoinStatus::Joined;
  out.common = na.term;
  out.left = Conversion::forward(a, na.steps);
  out.right = Conversion::forward(b, nb.steps);
  return out;
}

std::vector<Step> lift_steps(const std::vector<Step>& steps, const Term& outer, const Path& p) {
  std::vector<Step> out;
  out.reserve(steps.size());
  for (const auto& s : steps) {
    out.push_back(Step{replace_at(outer, p, s.source), concat(p, s.path), s.kind, replace_at(outer, p, s.target)});
  }
  return out;
}

std::vector<Step> replay_substituted(const std::vector<Step>& steps, const Name& v, const Term& n,
                                     const RuleSet& rules) {
  std::vector<Step> out;
  out.reserve(steps.size());
  for (const auto& s : steps) {
    Step replayed = contract(substitute(s.source, v, n), s.path, s.kind, rules);
    if (!alpha_eq(replayed.target, substitute(s.target, v, n))) {
      throw InvariantBreach("replayed step does not reach the substituted target");
    }
    out.push_back(std::move(replayed));
  }
  return out;
}

Conversion lift_conversion(const Conversion& c, const Term& outer, const Path& p) {
  if (!alpha_eq(subterm_at(outer, p), c.start)) {
    throw EndpointMismatch("conversion start does not match the subterm at the lifting position");
  }
  Conversion out{outer, replace_at(outer, p, c.finish), {}};
  out.steps.reserve(c.steps.size());
  for (const auto& cs : c.steps) {
    const Step& s = cs.step;
    out.steps.push_back(
        {cs.direction,
         Step{replace_at(outer, p, s.source), concat(p, s.path), s.kind, replace_at(outer, p, s.target)}});
  }
  return out;
}

Conversion subst_conversion(const Conversion& c, const Name& v, const Term& n, const RuleSet& rules) {
  RuleSet plain = rules.plain();
  Term opened = app(lam(v, c.start), n);
  Term closed = app(lam(v, c.finish), n);
  Step expand = contract(opened, {}, RedexKind::Beta, plain);
  Step collapse = contract(closed, {}, RedexKind::Beta, plain);
  Conversion out{expand.target, collapse.target, {}};
  out.steps.push_back({Direction::Backward, expand});
  out.append(lift_conversion(c, opened, {Dir::Fun, Dir::Body}));
  out.steps.push_back({Direction::Forward, collapse});
  out.finish = collapse.target;
  return out;
}

}  // namespace lfp
