#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lfp/combinators.hpp"
#include "lfp/reduction.hpp"
#include "lfp/term.hpp"

namespace lfp {

enum class Family { CurryY, TuringTheta };
const char* family_tag(Family f);
std::optional<Family> parse_family(const std::string& s);

// The combinator whose application to F starts the family: Y or THETA.
Term family_combinator(Family f);

// Y_n F' with F ->> F' witnessed by f_witness.
struct YnForm {
  std::size_t n;
  Term f_reduct;
  std::vector<Step> f_witness;
};

// (\g.P[z:=g g]) (\g.Q[z:=g g]) where P and Q are reducts of `F z` for the
// hole variable z. Y-pair(F', F'') is the case P = F' z, Q = F'' z.
struct PairForm {
  Term left;
  std::vector<Step> left_witness;
  Term right;
  std::vector<Step> right_witness;
};

// Θ' F' with Θ ->> Θ' and F ->> F'.
struct ThetaForm {
  Term theta_reduct;
  std::vector<Step> t_witness;
  Term f_reduct;
  std::vector<Step> f_witness;
};

using UpsilonForm = std::variant<YnForm, PairForm, ThetaForm>;

// An element of Υ_F, held intensionally: it is only ever built from the
// initial element and one-step classification, so membership holds by
// construction and every reduct carries its witness chain.
class UpsilonElem {
 public:
  UpsilonElem(Family family, Term f, Name hole, UpsilonForm form);

  Family family() const { return family_; }
  const Term& base_f() const { return f_; }
  const Name& hole() const { return hole_; }
  const UpsilonForm& form() const { return form_; }
  const Term& realized() const { return realized_; }

  // `F z` for the hole z; the start of PairForm witnesses.
  Term hole_application() const;

  bool same_element(const UpsilonElem& other) const;

 private:
  Family family_;
  Term f_;
  Name hole_;
  UpsilonForm form_;
  Term realized_;
};

UpsilonElem initial_elem(Family family, const Term& f);
UpsilonElem pair_elem(const UpsilonElem& like, const Term& f1, const std::vector<Step>& w1, const Term& f2,
                      const std::vector<Step>& w2);
Term realize(const UpsilonElem& e);

// Tracked-variable descriptor wrapping an Υ element.
class UpsilonTag final : public TrackedTag {
 public:
  explicit UpsilonTag(UpsilonElem elem) : elem_(std::move(elem)) {}
  const UpsilonElem& elem() const { return elem_; }
  bool same_variable(const TrackedTag& other) const override;
  std::string describe() const override;

 private:
  UpsilonElem elem_;
};

Term tracked_var(const UpsilonElem& e);
// Throws std::invalid_argument for descriptors not produced here.
const UpsilonElem& upsilon_of(const TrackedTag& tag);

struct IteratedView {
  std::size_t n;
  Term f_reduct;
};

// The reduct of realize(e) written as context[hole := realize(next)].
struct StepDecomposition {
  Term context;
  Name hole;
  std::optional<IteratedView> iterated;  // present when context = f_reduct^(n) hole
  UpsilonElem next;

  // phi-side recipe: `unfoldings` fixed-point steps take y to F^(k) y, then
  // context_witness (plain steps over the hole) takes F^(k) z to context.
  std::size_t unfoldings = 0;
  std::vector<Step> context_witness;

  Term assemble() const;
  // The R_{F,y}-reduction y ->> context[hole := y].
  std::vector<Step> phi_steps(const Name& y, Base base) const;
};

StepDecomposition upsilon_step(const UpsilonElem& e, const Path& p, RedexKind k, const RuleSet& rules);

// Θ ->> x for a reduct x of Θ, built from the shape of x.
std::vector<Step> theta_witness(const Term& x, Base base);

}  // namespace lfp
