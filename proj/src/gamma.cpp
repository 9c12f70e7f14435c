#include "lfp/gamma.hpp"

#include <utility>

#include "lfp/checker.hpp"

namespace lfp {

Term rho(const Term& t) {
  return replace_tracked(t, [](const TagPtr& tag) { return realize(upsilon_of(*tag)); });
}

Term phi(const Term& t, const Name& y) {
  if (binds(t, y)) throw BoundCollision("flattening variable '" + y + "' is bound in the term");
  Term flat = var(y);
  return replace_tracked(t, [&](const TagPtr&) { return flat; });
}

namespace {

Path drop(const Path& p, std::size_t n) { return Path(p.begin() + static_cast<std::ptrdiff_t>(n), p.end()); }

class Lifter {
 public:
  explicit Lifter(const LiftContext& ctx) : ctx_(ctx), plain_(ctx.plain_rules()) {}

  GammaResult run(const Term& m, const Step& s, std::size_t depth) {
    if (m.is_tracked()) return lift_tracked(m, s, depth);
    if (depth == s.path.size()) return lift_root(m, s);
    switch (s.path[depth]) {
      case Dir::Fun: {
        if (!m.is_app()) throw GammaMismatch("step path does not follow the tracked term");
        GammaResult r = run(m.fun(), s, depth + 1);
        Term outer = app(placeholder(), phi(m.arg(), ctx_.y));
        return {app(r.lifted, m.arg()), lift_steps(r.phi_steps, outer, {Dir::Fun})};
      }
      case Dir::Arg: {
        if (!m.is_app()) throw GammaMismatch("step path does not follow the tracked term");
        GammaResult r = run(m.arg(), s, depth + 1);
        Term outer = app(phi(m.fun(), ctx_.y), placeholder());
        return {app(m.fun(), r.lifted), lift_steps(r.phi_steps, outer, {Dir::Arg})};
      }
      case Dir::Body: {
        if (!m.is_lam()) throw GammaMismatch("step path does not follow the tracked term");
        Term abs = clean_binder(m);
        GammaResult r = run(abs.body(), s, depth + 1);
        Term outer = lam(abs.binder(), placeholder());
        return {lam(abs.binder(), r.lifted), lift_steps(r.phi_steps, outer, {Dir::Body})};
      }
    }
    throw GammaMismatch("bad path token");
  }

 private:
  Term placeholder() const { return var(ctx_.y); }

  // Binders in {y} ∪ FV(F) are renamed before any case that relies on them.
  Term clean_binder(const Term& abs) const {
    const Name& v = abs.binder();
    if (v != ctx_.y && !ctx_.f.has_free(v)) return abs;
    const Term& body = abs.body();
    Name fresh = fresh_name(
        [&](const Name& c) { return c == ctx_.y || ctx_.f.has_free(c) || body.has_free(c) || binds(body, c); }, v);
    return lam(fresh, substitute(body, v, var(fresh)));
  }

  // Case (i): the step happens inside the realization of a tracked variable.
  GammaResult lift_tracked(const Term& m, const Step& s, std::size_t depth) {
    const UpsilonElem& e = upsilon_of(m.tag());
    StepDecomposition d = upsilon_step(e, drop(s.path, depth), s.kind, plain_);
    Term lifted = substitute(d.context, d.hole, tracked_var(d.next));
    return {lifted, d.phi_steps(ctx_.y, ctx_.base)};
  }

  GammaResult lift_root(const Term& m, const Step& s) {
    if (s.kind == RedexKind::Beta) {
      // Case (ii-a).
      if (!m.is_app()) throw GammaMismatch("beta step at a non-application");
      if (m.fun().is_tracked()) throw InvariantBreach("tracked variable in head position of a beta redex");
      if (!m.fun().is_lam()) throw GammaMismatch("beta step without an abstraction in head position");
      Term abs = clean_binder(m.fun());
      Term lifted = substitute(abs.body(), abs.binder(), m.arg());
      return {lifted, {flat_step(app(abs, m.arg()), RedexKind::Beta, lifted)}};
    }
    if (s.kind == RedexKind::Eta) {
      // Case (iii-a).
      if (!m.is_lam()) throw GammaMismatch("eta step at a non-abstraction");
      Term abs = clean_binder(m);
      const Term& body = abs.body();
      if (!body.is_app() || !body.arg().is_var() || body.arg().name() != abs.binder() ||
          body.fun().has_free(abs.binder())) {
        throw GammaMismatch("eta step at a tracked term that is not an eta redex");
      }
      Term lifted = body.fun();
      return {lifted, {flat_step(abs, RedexKind::Eta, lifted)}};
    }
    throw GammaMismatch("fixed-point steps are not lifted");
  }

  Step flat_step(const Term& m, RedexKind k, const Term& lifted) const {
    Step st = contract(phi(m, ctx_.y), {}, k, plain_);
    if (!alpha_eq(st.target, phi(lifted, ctx_.y))) {
      throw InvariantBreach("flattened contraction does not match the flattened lifted term");
    }
    return st;
  }

  const LiftContext& ctx_;
  RuleSet plain_;
};

}  // namespace

GammaResult gamma(const Term& m, const Step& s, const LiftContext& ctx) {
  if (!alpha_eq(rho(m), s.source)) throw GammaMismatch("rho(m) is not the source of the step");
  GammaResult r = Lifter(ctx).run(m, s, 0);
  if (!alpha_eq(rho(r.lifted), s.target)) throw InvariantBreach("rho of the lifted term misses the step target");
  return r;
}

LiftResult lift_normalization(const Term& f, Family family, const Term& l, const Name& y, Base base,
                              std::size_t fuel, bool keep_states) {
  if (f.has_free(y)) throw std::invalid_argument("flattening variable occurs free in F");
  if (binds(l, y)) throw BoundCollision("flattening variable is bound in l");
  LiftContext ctx{family, f, y, base};
  Term tracked = substitute(l, y, tracked_var(initial_elem(family, f)));
  Term start = rho(tracked);
  NormalizeResult probe = normalize(start, ctx.plain_rules(), fuel, false);
  if (!probe.normal) return LiftResult{false, probe.term, start, {}, {}, {}};
  NormalizeResult nr = normalize(start, ctx.plain_rules(), fuel);
  LiftResult out{nr.normal, nr.term, start, nr.steps, {}, {}};
  if (keep_states) out.states.push_back({tracked, start});
  for (const Step& s : nr.steps) {
    GammaResult g = gamma(tracked, s, ctx);
    out.lifted_steps.insert(out.lifted_steps.end(), g.phi_steps.begin(), g.phi_steps.end());
    tracked = std::move(g.lifted);
    if (keep_states) out.states.push_back({tracked, s.target});
  }
  if (tracked.has_tracked()) throw InvariantBreach("normal form still carries tracked variables");
  return out;
}

Conversion substitute_fixed_point(const Term& l, const std::vector<Step>& lifted_steps, const Name& y,
                                  const Term& m, const Conversion& fixpoint_witness, Base base) {
  if (m.has_free(y)) throw std::invalid_argument("flattening variable occurs free in the fixed point");
  RuleSet plain(base);
  Conversion unfold = fixpoint_witness.reversed();  // M ≈ F M
  Conversion out = Conversion::empty(substitute(l, y, m));
  for (const Step& s : lifted_steps) {
    if (s.kind == RedexKind::Fix) {
      Term source = substitute(s.source, y, m);
      Conversion piece = lift_conversion(unfold, source, s.path);
      if (!alpha_eq(piece.finish, substitute(s.target, y, m))) {
        throw InvariantBreach("unfolded fixed point does not match the substituted step target");
      }
      out.append(piece);
    } else {
      auto replayed = replay_substituted({s}, y, m, plain);
      out.steps.push_back({Direction::Forward, replayed.front()});
      out.finish = replayed.front().target;
    }
  }
  return out;
}

FixpointSearch find_fixpoint_witness(const Term& f, const Term& m, Base base, std::size_t fuel) {
  JoinResult j = join(app(f, m), m, RuleSet(base), fuel);
  FixpointSearch out{j.status, std::nullopt};
  if (j.status != JoinStatus::Joined) return out;
  Conversion c = j.left;
  c.append(j.right.reversed());
  out.witness = std::move(c);
  return out;
}

Name choose_flat_var(const std::vector<Term>& terms, const std::set<Name>& reserved) {
  std::set<Name> stems;
  for (const auto& n : reserved) stems.insert(name_stem(n));
  for (const auto& t : terms) {
    for (const auto& n : all_names(t)) stems.insert(name_stem(n));
  }
  Name candidate = "y";
  while (stems.count(candidate)) candidate += "y";
  return candidate;
}

const char* certify_failure_tag(CertifyFailure f) {
  switch (f) {
    case CertifyFailure::None:
      return "none";
    case CertifyFailure::NoFixpointWitness:
      return "no-fixpoint-witness";
    case CertifyFailure::CombinatorDiverges:
      return "combinator-application-does-not-normalize";
    case CertifyFailure::InternalCheckFailure:
      return "internal-check-failure";
  }
  return "?";
}

CertifyResult certify_least(const Term& f, const Term& m, const Term& n, const CertifyOptions& options) {
  if (f.has_tracked() || m.has_tracked() || n.has_tracked()) {
    throw std::invalid_argument("certify_least takes plain terms");
  }
  CertifyResult out;
  RuleSet plain(options.base);

  Conversion witness = Conversion::empty(m);
  if (options.fixpoint_witness) {
    const Conversion& given = *options.fixpoint_witness;
    if (!alpha_eq(given.start, app(f, m)) || !alpha_eq(given.finish, m) || !check_conversion(given, plain)) {
      out.failure = CertifyFailure::NoFixpointWitness;
      out.detail = "supplied fixed-point witness does not check";
      return out;
    }
    witness = given;
  } else {
    FixpointSearch search = find_fixpoint_witness(f, m, options.base, options.fuel);
    if (!search.witness) {
      out.failure = CertifyFailure::NoFixpointWitness;
      out.detail = join_status_tag(search.status);
      return out;
    }
    witness = *search.witness;
  }

  Term combinator = family_combinator(options.family);
  Name hole = initial_elem(options.family, f).hole();
  Name y = choose_flat_var({f, m, n, combinator}, {hole, "g"});
  Term l = app(var(y), n);

  try {
    LiftResult lifted = lift_normalization(f, options.family, l, y, options.base, options.fuel);
    if (!lifted.normal) {
      out.failure = CertifyFailure::CombinatorDiverges;
      out.detail = "no normal form within " + std::to_string(options.fuel) + " steps";
      return out;
    }
    Conversion main = substitute_fixed_point(l, lifted.lifted_steps, y, m, witness, options.base);
    LeastFixpointCertificate cert{options.family, options.base, f, m, n, y, lifted.normal_form, witness, main,
                                  lifted.plain_steps, lifted.lifted_steps};
    CertificateReport report = verify_certificate(cert);
    if (!report.ok) {
      out.failure = CertifyFailure::InternalCheckFailure;
      out.detail = report.section + ": " + report.message;
      return out;
    }
    out.certificate = std::move(cert);
  } catch (const InvariantBreach& e) {
    out.failure = CertifyFailure::InternalCheckFailure;
    out.detail = e.what();
  } catch (const std::invalid_argument& e) {
    // GammaMismatch, BoundCollision, EndpointMismatch, NotARedex: all mean the
    // pipeline disagreed with itself.
    out.failure = CertifyFailure::InternalCheckFailure;
    out.detail = e.what();
  }
  return out;
}

namespace {

CertificateReport section_failure(const std::string& section, const CheckReport& r) {
  return CertificateReport{false, section, r.failing_index, r.message};
}

CertificateReport endpoint_failure(const std::string& section, const std::string& what) {
  return CertificateReport{false, section, std::nullopt, what};
}

}  // namespace

CertificateReport verify_certificate(const LeastFixpointCertificate& cert) {
  RuleSet plain(cert.base);

  const Conversion& fw = cert.fixpoint_witness;
  if (!alpha_eq(fw.start, app(cert.f, cert.m)) || !alpha_eq(fw.finish, cert.m)) {
    return endpoint_failure("fixpoint-witness", "endpoints are not F M and M");
  }
  if (auto r = diagnose_conversion(fw, plain); !r.ok) return section_failure("fixpoint-witness", r);

  const Conversion& mc = cert.main_conversion;
  if (!alpha_eq(mc.start, app(cert.m, cert.n)) || !alpha_eq(mc.finish, cert.normal_form)) {
    return endpoint_failure("main-conversion", "endpoints are not M N and the normal form");
  }
  if (auto r = diagnose_conversion(mc, plain); !r.ok) return section_failure("main-conversion", r);

  if (cert.normal_form.has_tracked() || !is_reduced(cert.normal_form, plain)) {
    return endpoint_failure("normal-form", "normal form is not reduced");
  }

  Term start = app(app(family_combinator(cert.family), cert.f), cert.n);
  if (auto r = diagnose_reduction(start, cert.combinator_trace, cert.normal_form, plain); !r.ok) {
    return section_failure("combinator-trace", r);
  }

  if (cert.f.has_free(cert.y) || cert.m.has_free(cert.y) || cert.n.has_free(cert.y)) {
    return endpoint_failure("lifted-trace", "fixed-point variable is not fresh");
  }
  if (auto r = diagnose_reduction(app(var(cert.y), cert.n), cert.lifted_trace, cert.normal_form,
                                  RuleSet(cert.base, FixVar{cert.y, cert.f}));
      !r.ok) {
    return section_failure("lifted-trace", r);
  }
  return {};
}

}  // namespace lfp
