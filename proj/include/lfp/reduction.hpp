#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfp/term.hpp"

namespace lfp {

enum class Base { Beta, BetaEta };

// The formal fixed-point rule y -> F y.
struct FixVar {
  Name y;
  Term f;
};

class RuleSet {
 public:
  static RuleSet beta() { return RuleSet(Base::Beta); }
  static RuleSet beta_eta() { return RuleSet(Base::BetaEta); }
  explicit RuleSet(Base base) : base_(base) {}
  RuleSet(Base base, FixVar fix);

  Base base() const { return base_; }
  const std::optional<FixVar>& fix() const { return fix_; }
  RuleSet plain() const { return RuleSet(base_); }
  RuleSet with_fix(const Name& y, const Term& f) const { return RuleSet(base_, FixVar{y, f}); }

 private:
  Base base_;
  std::optional<FixVar> fix_;
};

const char* base_tag(Base b);
std::optional<Base> parse_base(const std::string& s);

enum class RedexKind { Beta, Eta, Fix };
const char* redex_tag(RedexKind k);
std::optional<RedexKind> parse_redex_tag(const std::string& s);

struct Redex {
  Path path;
  RedexKind kind;
  friend bool operator==(const Redex&, const Redex&) = default;
};

// One contraction: subterm_at(source, path) is a redex of `kind` and
// target = replace_at(source, path, contractum).
struct Step {
  Term source;
  Path path;
  RedexKind kind;
  Term target;
};

enum class Direction { Forward, Backward };

struct ConversionStep {
  Direction direction;
  Step step;

  // Endpoints in reading order: Forward reads source -> target, Backward target -> source.
  const Term& from() const { return direction == Direction::Forward ? step.source : step.target; }
  const Term& to() const { return direction == Direction::Forward ? step.target : step.source; }
};

// Witness of start ≈ finish: each element chains from the previous endpoint
// up to alpha-equivalence.
struct Conversion {
  Term start;
  Term finish;
  std::vector<ConversionStep> steps;

  static Conversion empty(const Term& at) { return Conversion{at, at, {}}; }
  static Conversion forward(const Term& start, const std::vector<Step>& steps);
  Conversion reversed() const;
  Conversion& append(const Conversion& next);
};

class NotARedex : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EndpointMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal consistency check failed; indicates a bug, never bad input.
class InvariantBreach : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Leftmost-outermost order: preorder over paths, Fun < Arg < Body.
// first_redex prefers beta over eta on \v.((\u.M) v), where both contract to the same term.
std::vector<Redex> enumerate_redexes(const Term& t, const RuleSet& rules);
std::optional<Redex> first_redex(const Term& t, const RuleSet& rules);
bool is_redex(const Term& t, const Path& p, RedexKind k, const RuleSet& rules);
Step contract(const Term& t, const Path& p, RedexKind k, const RuleSet& rules);
bool is_reduced(const Term& t, const RuleSet& rules);

struct NormalizeResult {
  bool normal = false;  // false: fuel exhausted
  Term term;            // normal form, or the last term reached
  std::vector<Step> steps;

  bool exhausted() const { return !normal; }
};

// Contracts the leftmost-outermost redex until reduced or `fuel` steps spent.
// With keep_steps false only the outcome is kept, so memory stays linear in the term size.
NormalizeResult normalize(const Term& t, const RuleSet& rules, std::size_t fuel, bool keep_steps = true);

enum class JoinStatus { Joined, Refuted, Inconclusive };
const char* join_status_tag(JoinStatus s);

struct JoinResult {
  JoinStatus status = JoinStatus::Inconclusive;
  std::optional<Term> common;
  Conversion left;   // a ->> common, forward only
  Conversion right;  // b ->> common, forward only
};

// Normalize-and-compare. Refuted only when both sides reach distinct normal forms.
JoinResult join(const Term& a, const Term& b, const RuleSet& rules, std::size_t fuel);

// Embeds every step of c at position p of outer.
Conversion lift_conversion(const Conversion& c, const Term& outer, const Path& p);
std::vector<Step> lift_steps(const std::vector<Step>& steps, const Term& outer, const Path& p);

// Replays each step on its source with v := n, recomputing the contraction at
// the same position; throws InvariantBreach if it misses the substituted target.
std::vector<Step> replay_substituted(const std::vector<Step>& steps, const Name& v, const Term& n,
                                     const RuleSet& rules);

// From c : M ≈ M', builds M[v:=n] ←β (λv.M) n ≈ (λv.M') n →β M'[v:=n].
Conversion subst_conversion(const Conversion& c, const Name& v, const Term& n, const RuleSet& rules);

}  // namespace lfp
