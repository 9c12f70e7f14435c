#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lfp/fixpoint.hpp"
#include "lfp/reduction.hpp"
#include "lfp/term.hpp"

namespace lfp {

// Realization: every tracked variable becomes the Υ_F element it denotes.
Term rho(const Term& t);

class BoundCollision : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Flattening: every tracked variable becomes the plain variable y.
Term phi(const Term& t, const Name& y);

// The data fixed for one lifting run.
struct LiftContext {
  Family family;
  Term f;
  Name y;
  Base base;

  RuleSet plain_rules() const { return RuleSet(base); }
  RuleSet fix_rules() const { return RuleSet(base, FixVar{y, f}); }
};

struct GammaResult {
  Term lifted;                  // M' with rho(M') = s.target
  std::vector<Step> phi_steps;  // phi(M) ->> phi(M') under R_{F,y}
};

class GammaMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Transports the plain step s (whose source is rho(m)) to the tracked side.
GammaResult gamma(const Term& m, const Step& s, const LiftContext& ctx);

// One stage of the lifted normalization: rho(tracked) = plain.
struct LiftState {
  Term tracked;
  Term plain;
};

struct LiftResult {
  bool normal = false;              // false: fuel exhausted
  Term normal_form;                 // or the last plain term reached
  Term start;                       // N_0 = l[y := combinator application]
  std::vector<Step> plain_steps;    // N_0 ->> N_n under the plain base; empty when not normal
  std::vector<Step> lifted_steps;   // l ->> N_n under R_{F,y}
  std::vector<LiftState> states;    // M_0 .. M_n, only when requested
};

// Normalizes l[y := C F] (C the family combinator) and lifts every step
// through gamma, yielding an R_{F,y}-reduction of l to the same normal form.
LiftResult lift_normalization(const Term& f, Family family, const Term& l, const Name& y, Base base,
                              std::size_t fuel, bool keep_states = false);

// Maps an R_{F,y}-reduction of l through y := m: plain steps are replayed in
// place and each fixed-point step y -> F y becomes the reversed fixed-point
// witness (M ≈ F M) lifted to its position.
Conversion substitute_fixed_point(const Term& l, const std::vector<Step>& lifted_steps, const Name& y,
                                  const Term& m, const Conversion& fixpoint_witness, Base base);

struct FixpointSearch {
  JoinStatus status = JoinStatus::Inconclusive;
  std::optional<Conversion> witness;  // F M ≈ M
};

FixpointSearch find_fixpoint_witness(const Term& f, const Term& m, Base base, std::size_t fuel);

// A name whose digit-stripped stem differs from the stem of every name in
// `terms` and `reserved`, so no binder renaming during a run can produce it.
Name choose_flat_var(const std::vector<Term>& terms, const std::set<Name>& reserved = {});

struct LeastFixpointCertificate {
  Family family;
  Base base;
  Term f;
  Term m;
  Term n;
  Name y;
  Term normal_form;
  Conversion fixpoint_witness;         // F M ≈ M
  Conversion main_conversion;          // M N ≈ normal_form
  std::vector<Step> combinator_trace;  // (C F) N ->> normal_form
  std::vector<Step> lifted_trace;      // y N ->> normal_form under R_{F,y}
};

enum class CertifyFailure { None, NoFixpointWitness, CombinatorDiverges, InternalCheckFailure };
const char* certify_failure_tag(CertifyFailure f);

struct CertifyResult {
  CertifyFailure failure = CertifyFailure::None;
  std::string detail;
  std::optional<LeastFixpointCertificate> certificate;

  bool ok() const { return failure == CertifyFailure::None; }
};

struct CertifyOptions {
  Family family = Family::CurryY;
  Base base = Base::Beta;
  std::size_t fuel = 10000;
  std::optional<Conversion> fixpoint_witness;
};

CertifyResult certify_least(const Term& f, const Term& m, const Term& n, const CertifyOptions& options);

struct CertificateReport {
  bool ok = true;
  std::string section;
  std::optional<std::size_t> index;
  std::string message;
};

// Revalidates every section with the independent checker.
CertificateReport verify_certificate(const LeastFixpointCertificate& cert);

}  // namespace lfp
