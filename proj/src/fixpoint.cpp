#include "lfp/fixpoint.hpp"

#include <utility>

#include "lfp/syntax.hpp"

namespace lfp {

const char* family_tag(Family f) { return f == Family::CurryY ? "y" : "theta"; }

std::optional<Family> parse_family(const std::string& s) {
  if (s == "y") return Family::CurryY;
  if (s == "theta") return Family::TuringTheta;
  return std::nullopt;
}

Term family_combinator(Family f) { return f == Family::CurryY ? y_combinator() : theta(); }

namespace {

Term realize_form(const UpsilonForm& form, const Name& hole) {
  if (const auto* y = std::get_if<YnForm>(&form)) return app(y_n(y->n), y->f_reduct);
  if (const auto* t = std::get_if<ThetaForm>(&form)) return app(t->theta_reduct, t->f_reduct);
  const auto& pf = std::get<PairForm>(form);
  Name g = fresh_name(
      [&](const Name& c) { return c == hole || pf.left.has_free(c) || pf.right.has_free(c); }, "g");
  Term gg = app(var(g), var(g));
  return app(lam(g, substitute(pf.left, hole, gg)), lam(g, substitute(pf.right, hole, gg)));
}

Path arg_spine(std::size_t depth) { return Path(depth, Dir::Arg); }

Path drop(const Path& p, std::size_t n) { return Path(p.begin() + static_cast<std::ptrdiff_t>(n), p.end()); }

// Replays w : F ->> F' at each of the n copies of F in F^(n) z.
std::vector<Step> replicate_witness(const Term& f, const std::vector<Step>& w, std::size_t n, const Name& hole) {
  std::vector<Step> out;
  Term cur = iterate_app(f, n, var(hole));
  for (std::size_t j = 0; j < n && !w.empty(); ++j) {
    Path at = arg_spine(j);
    at.push_back(Dir::Fun);
    auto lifted = lift_steps(w, cur, at);
    cur = lifted.back().target;
    out.insert(out.end(), lifted.begin(), lifted.end());
  }
  return out;
}

std::vector<Step> extended(std::vector<Step> w, Step s) {
  w.push_back(std::move(s));
  return w;
}

}  // namespace

UpsilonElem::UpsilonElem(Family family, Term f, Name hole, UpsilonForm form)
    : family_(family),
      f_(std::move(f)),
      hole_(std::move(hole)),
      form_(std::move(form)),
      realized_(realize_form(form_, hole_)) {
  bool theta_form = std::holds_alternative<ThetaForm>(form_);
  if (theta_form != (family_ == Family::TuringTheta)) {
    throw std::invalid_argument("element shape does not belong to the family");
  }
  if (f_.has_free(hole_)) throw std::invalid_argument("hole variable occurs free in F");
}

Term UpsilonElem::hole_application() const { return app(f_, var(hole_)); }

bool UpsilonElem::same_element(const UpsilonElem& other) const {
  return family_ == other.family_ && alpha_eq(realized_, other.realized_);
}

UpsilonElem initial_elem(Family family, const Term& f) {
  Name hole = fresh_name(named_free_vars(f), "z");
  if (family == Family::CurryY) return UpsilonElem(family, f, hole, YnForm{0, f, {}});
  return UpsilonElem(family, f, hole, ThetaForm{theta(), {}, f, {}});
}

UpsilonElem pair_elem(const UpsilonElem& like, const Term& f1, const std::vector<Step>& w1, const Term& f2,
                      const std::vector<Step>& w2) {
  Term fz = like.hole_application();
  Term z = var(like.hole());
  return UpsilonElem(like.family(), like.base_f(), like.hole(),
                     PairForm{app(f1, z), lift_steps(w1, fz, {Dir::Fun}), app(f2, z), lift_steps(w2, fz, {Dir::Fun})});
}

Term realize(const UpsilonElem& e) { return e.realized(); }

bool UpsilonTag::same_variable(const TrackedTag& other) const {
  const auto* o = dynamic_cast<const UpsilonTag*>(&other);
  return o != nullptr && elem_.same_element(o->elem_);
}

std::string UpsilonTag::describe() const {
  const auto& form = elem_.form();
  if (const auto* y = std::get_if<YnForm>(&form)) {
    return "yn\t" + std::to_string(y->n) + "\t" + print(y->f_reduct);
  }
  if (const auto* t = std::get_if<ThetaForm>(&form)) {
    return "theta\t0\t" + print(t->theta_reduct) + "\t" + print(t->f_reduct);
  }
  const auto& p = std::get<PairForm>(form);
  return "pair\t0\t" + print(p.left) + "\t" + print(p.right) + "\thole=" + elem_.hole();
}

Term tracked_var(const UpsilonElem& e) { return Term::tracked(std::make_shared<UpsilonTag>(e)); }

const UpsilonElem& upsilon_of(const TrackedTag& tag) {
  const auto* u = dynamic_cast<const UpsilonTag*>(&tag);
  if (!u) throw std::invalid_argument("tracked variable is not an element of Υ_F");
  return u->elem();
}

Term StepDecomposition::assemble() const { return substitute(context, hole, realize(next)); }

std::vector<Step> StepDecomposition::phi_steps(const Name& y, Base base) const {
  RuleSet rules(base, FixVar{y, next.base_f()});
  std::vector<Step> out;
  Term cur = var(y);
  for (std::size_t i = 0; i < unfoldings; ++i) {
    out.push_back(contract(cur, arg_spine(i), RedexKind::Fix, rules));
    cur = out.back().target;
  }
  auto rest = replay_substituted(context_witness, hole, var(y), rules);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

namespace {

StepDecomposition internal_step(const UpsilonElem& e, UpsilonElem next, const Term& f_reduct) {
  return StepDecomposition{var(e.hole()), e.hole(), IteratedView{0, f_reduct}, std::move(next), 0, {}};
}

StepDecomposition step_yn(const UpsilonElem& e, const YnForm& y, const Path& p, RedexKind k, const RuleSet& plain) {
  if (p.empty()) {
    const Term& f = e.base_f();
    return StepDecomposition{iterate_app(y.f_reduct, y.n, var(e.hole())),
                             e.hole(),
                             IteratedView{y.n, y.f_reduct},
                             pair_elem(e, y.f_reduct, y.f_witness, y.f_reduct, y.f_witness),
                             y.n,
                             replicate_witness(f, y.f_witness, y.n, e.hole())};
  }
  if (p.front() == Dir::Fun) {
    UpsilonElem next(e.family(), e.base_f(), e.hole(), YnForm{y.n + 1, y.f_reduct, y.f_witness});
    return internal_step(e, std::move(next), y.f_reduct);
  }
  Step s = contract(y.f_reduct, drop(p, 1), k, plain);
  Term reduct = s.target;
  UpsilonElem next(e.family(), e.base_f(), e.hole(), YnForm{y.n, reduct, extended(y.f_witness, std::move(s))});
  return internal_step(e, std::move(next), reduct);
}

StepDecomposition step_pair(const UpsilonElem& e, const PairForm& pf, const Path& p, RedexKind k,
                            const RuleSet& plain) {
  if (p.empty()) {
    std::optional<IteratedView> iterated;
    if (pf.left.is_app() && pf.left.arg().is_var() && pf.left.arg().name() == e.hole() &&
        !pf.left.fun().has_free(e.hole())) {
      iterated = IteratedView{1, pf.left.fun()};
    }
    UpsilonElem next(e.family(), e.base_f(), e.hole(), PairForm{pf.right, pf.right_witness, pf.right, pf.right_witness});
    return StepDecomposition{pf.left, e.hole(), iterated, std::move(next), 1, pf.left_witness};
  }
  if (p.size() < 2 || p[1] != Dir::Body) throw InvariantBreach("redex outside the pair-form shape");
  PairForm updated = pf;
  if (p.front() == Dir::Fun) {
    Step s = contract(pf.left, drop(p, 2), k, plain);
    updated.left = s.target;
    updated.left_witness.push_back(std::move(s));
  } else {
    Step s = contract(pf.right, drop(p, 2), k, plain);
    updated.right = s.target;
    updated.right_witness.push_back(std::move(s));
  }
  return internal_step(e, UpsilonElem(e.family(), e.base_f(), e.hole(), std::move(updated)), e.base_f());
}

// A reduct of Θ other than Θ itself has the shape \b. b^(k) (X b) with k >= 1
// and X a closed reduct of Θ.
struct ThetaShape {
  Name binder;
  std::size_t k;
  Term inner;
};

ThetaShape theta_shape(const Term& x) {
  if (!x.is_lam()) throw InvariantBreach("reduct of THETA is neither THETA nor an abstraction");
  const Name& b = x.binder();
  Term body = x.body();
  std::size_t k = 0;
  while (body.is_app() && body.fun().is_var() && body.fun().name() == b) {
    ++k;
    body = body.arg();
  }
  if (k == 0 || !body.is_app() || !body.arg().is_var() || body.arg().name() != b || body.fun().has_free(b)) {
    throw InvariantBreach("abstraction is not of the shape of a THETA reduct");
  }
  return ThetaShape{b, k, body.fun()};
}

StepDecomposition step_theta(const UpsilonElem& e, const ThetaForm& t, const Path& p, RedexKind k,
                             const RuleSet& plain) {
  if (p.empty()) {
    ThetaShape shape = theta_shape(t.theta_reduct);
    UpsilonElem next(e.family(), e.base_f(), e.hole(),
                     ThetaForm{shape.inner, theta_witness(shape.inner, plain.base()), t.f_reduct, t.f_witness});
    return StepDecomposition{iterate_app(t.f_reduct, shape.k, var(e.hole())),
                             e.hole(),
                             IteratedView{shape.k, t.f_reduct},
                             std::move(next),
                             shape.k,
                             replicate_witness(e.base_f(), t.f_witness, shape.k, e.hole())};
  }
  ThetaForm updated = t;
  if (p.front() == Dir::Fun) {
    Step s = contract(t.theta_reduct, drop(p, 1), k, plain);
    updated.theta_reduct = s.target;
    updated.t_witness.push_back(std::move(s));
  } else {
    Step s = contract(t.f_reduct, drop(p, 1), k, plain);
    updated.f_reduct = s.target;
    updated.f_witness.push_back(std::move(s));
  }
  Term f_reduct = updated.f_reduct;
  return internal_step(e, UpsilonElem(e.family(), e.base_f(), e.hole(), std::move(updated)), f_reduct);
}

}  // namespace

StepDecomposition upsilon_step(const UpsilonElem& e, const Path& p, RedexKind k, const RuleSet& rules) {
  RuleSet plain = rules.plain();
  Step whole = contract(e.realized(), p, k, plain);
  StepDecomposition d = std::visit(
      [&](const auto& form) -> StepDecomposition {
        using F = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<F, YnForm>) return step_yn(e, form, p, k, plain);
        if constexpr (std::is_same_v<F, PairForm>) return step_pair(e, form, p, k, plain);
        if constexpr (std::is_same_v<F, ThetaForm>) return step_theta(e, form, p, k, plain);
      },
      e.form());
  if (!alpha_eq(d.assemble(), whole.target)) {
    throw InvariantBreach("decomposition does not reassemble to the contracted realization");
  }
  return d;
}

std::vector<Step> theta_witness(const Term& x, Base base) {
  RuleSet plain(base);
  Term th = theta();
  if (alpha_eq(x, th)) return {};
  ThetaShape shape = theta_shape(x);
  std::vector<Step> out{contract(th, {}, RedexKind::Beta, plain)};
  Term cur = out.back().target;  // \y.y (Θ y)
  Term goal = shape.k == 1
                  ? shape.inner
                  : lam(shape.binder, iterate_app(var(shape.binder), shape.k - 1, app(shape.inner, var(shape.binder))));
  auto inner = lift_steps(theta_witness(goal, base), cur, {Dir::Body, Dir::Arg, Dir::Fun});
  if (!inner.empty()) cur = inner.back().target;
  out.insert(out.end(), inner.begin(), inner.end());
  if (shape.k > 1) {
    out.push_back(contract(cur, {Dir::Body, Dir::Arg}, RedexKind::Beta, plain));
    cur = out.back().target;
  }
  if (!alpha_eq(cur, x)) throw InvariantBreach("rebuilt THETA witness misses its target");
  return out;
}

}  // namespace lfp
