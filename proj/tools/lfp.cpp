#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lfp/checker.hpp"
#include "lfp/gamma.hpp"
#include "lfp/records.hpp"
#include "lfp/syntax.hpp"

namespace {

using namespace lfp;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string rule = "beta";
  std::string family = "y";
  std::size_t fuel = 10000;
  std::string defs_file;
  std::string out_file;
  bool json_lines = false;
  std::string fix_var;
  std::string fix_term;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Session {
 public:
  explicit Session(const Options& o) : opts_(o) {
    if (o.fuel == 0) throw UsageError("--fuel must be positive");
    auto b = parse_base(o.rule);
    if (!b) throw UsageError("unknown rule set '" + o.rule + "'");
    base_ = *b;
    auto f = parse_family(o.family);
    if (!f) throw UsageError("unknown family '" + o.family + "'");
    family_ = *f;
    if (!o.defs_file.empty()) defs_ = parse_definitions(read_file(o.defs_file));
    if (o.fix_var.empty() != o.fix_term.empty()) throw UsageError("--fix-var and --fix-term go together");
    if (!o.fix_var.empty() && !is_identifier(o.fix_var)) throw UsageError("--fix-var must be an identifier");
  }

  Term term(const std::string& src) const { return parse(src, defs_); }

  RuleSet rules() const {
    if (opts_.fix_var.empty()) return RuleSet(base_);
    try {
      return RuleSet(base_, FixVar{opts_.fix_var, term(opts_.fix_term)});
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  Base base() const { return base_; }
  Family family() const { return family_; }
  std::size_t fuel() const { return opts_.fuel; }
  RecordFormat format() const { return opts_.json_lines ? RecordFormat::JsonLines : RecordFormat::Text; }

  void emit(const std::string& records) const {
    if (opts_.out_file.empty()) {
      std::cout << records;
      return;
    }
    std::ofstream out(opts_.out_file, std::ios::binary);
    if (!out) throw UsageError("cannot write " + opts_.out_file);
    out << records;
  }

  bool to_file() const { return !opts_.out_file.empty(); }
  const std::string& out_file() const { return opts_.out_file; }

 private:
  Options opts_;
  Base base_ = Base::Beta;
  Family family_ = Family::CurryY;
  Definitions defs_;
};

int cmd_normalize(const Session& s, const std::string& src) {
  NormalizeResult r = normalize(s.term(src), s.rules(), s.fuel(), false);
  if (!r.normal) {
    std::cout << "FUEL-EXHAUSTED\n";
    return kInconclusive;
  }
  s.emit(print(r.term) + "\n");
  return kOk;
}

int cmd_trace(const Session& s, const std::string& src) {
  Term t = s.term(src);
  RuleSet rules = s.rules();
  NormalizeResult r = normalize(t, rules, s.fuel());
  s.emit(render_trace(t, r, rules, s.format()));
  return r.normal ? kOk : kInconclusive;
}

int cmd_joinable(const Session& s, const std::string& a, const std::string& b) {
  JoinResult r = join(s.term(a), s.term(b), s.rules(), s.fuel());
  std::string out = join_status_tag(r.status);
  if (r.common) out += "\t" + print(*r.common);
  std::cout << out << "\n";
  switch (r.status) {
    case JoinStatus::Joined:
      return kOk;
    case JoinStatus::Refuted:
      return kInvalid;
    default:
      return kInconclusive;
  }
}

int cmd_fixpoint_check(const Session& s, const std::string& f, const std::string& m) {
  FixpointSearch r = find_fixpoint_witness(s.term(f), s.term(m), s.base(), s.fuel());
  std::cout << join_status_tag(r.status) << "\n";
  if (r.witness) s.emit(render_conversion("fixpoint-witness", *r.witness, s.format()));
  switch (r.status) {
    case JoinStatus::Joined:
      return kOk;
    case JoinStatus::Refuted:
      return kInvalid;
    default:
      return kInconclusive;
  }
}

int cmd_certify(const Session& s, const std::string& f, const std::string& m, const std::string& n) {
  CertifyOptions o;
  o.family = s.family();
  o.base = s.base();
  o.fuel = s.fuel();
  Term ft = s.term(f);
  Term mt = s.term(m);
  CertifyResult r = certify_least(ft, mt, s.term(n), o);
  if (r.ok()) {
    s.emit(render_certificate(*r.certificate, s.format()));
    std::ostream& verdict = s.to_file() ? std::cout : std::cerr;
    verdict << "CERTIFIED\t" << print(r.certificate->normal_form) << "\n";
    return kOk;
  }
  std::cerr << "NOT-CERTIFIED\t" << certify_failure_tag(r.failure) << "\t" << r.detail << "\n";
  switch (r.failure) {
    case CertifyFailure::NoFixpointWitness: {
      auto search = find_fixpoint_witness(ft, mt, s.base(), s.fuel());
      return search.status == JoinStatus::Refuted ? kInvalid : kInconclusive;
    }
    case CertifyFailure::CombinatorDiverges:
      return kInconclusive;
    default:
      return kInvalid;
  }
}

int cmd_check_cert(const std::string& path) {
  LeastFixpointCertificate cert = read_certificate(read_file(path));
  CertificateReport rep = verify_certificate(cert);
  if (rep.ok) {
    std::cout << "VALID\n";
    return kOk;
  }
  std::cout << "INVALID\t" << rep.section;
  if (rep.index) std::cout << "\tstep " << *rep.index;
  std::cout << "\t" << rep.message << "\n";
  return kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lfp: lambda terms, reduction traces and least fixed-point certificates"};
  app.require_subcommand(1);
  Options opts;

  auto common = [&](CLI::App* sub, bool fix) {
    sub->add_option("--rule", opts.rule, "beta | beta-eta")->check(CLI::IsMember({"beta", "beta-eta"}));
    sub->add_option("--fuel", opts.fuel, "step budget");
    sub->add_option("--defs", opts.defs_file, "definitions file (NAME = term lines)");
    sub->add_option("--out", opts.out_file, "write output records to FILE");
    sub->add_flag("--json-lines", opts.json_lines, "json-lines records");
    if (fix) {
      sub->add_option("--fix-var", opts.fix_var, "formal fixed-point variable");
      sub->add_option("--fix-term", opts.fix_term, "its fixed-point term F (y -> F y)");
    }
  };

  std::string term_a, term_b, f_src, m_src, n_src, cert_path;

  auto* normalize_cmd = app.add_subcommand("normalize", "print the normal form");
  normalize_cmd->add_option("term", term_a)->required();
  common(normalize_cmd, true);

  auto* trace_cmd = app.add_subcommand("trace", "stream normal-order step records");
  trace_cmd->add_option("term", term_a)->required();
  common(trace_cmd, true);

  auto* join_cmd = app.add_subcommand("joinable", "JOINED / REFUTED / INCONCLUSIVE");
  join_cmd->add_option("left", term_a)->required();
  join_cmd->add_option("right", term_b)->required();
  common(join_cmd, true);

  auto* fix_cmd = app.add_subcommand("fixpoint-check", "search a witness of F M = M");
  fix_cmd->add_option("--f", f_src)->required();
  fix_cmd->add_option("--m", m_src)->required();
  common(fix_cmd, false);

  auto* cert_cmd = app.add_subcommand("certify", "certify M N against the least fixed point of F");
  cert_cmd->add_option("--f", f_src)->required();
  cert_cmd->add_option("--m", m_src)->required();
  cert_cmd->add_option("--n", n_src)->required();
  cert_cmd->add_option("--family", opts.family, "y | theta")->check(CLI::IsMember({"y", "theta"}));
  common(cert_cmd, false);

  auto* check_cmd = app.add_subcommand("check-cert", "revalidate a certificate");
  check_cmd->add_option("file", cert_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check_cmd) return cmd_check_cert(cert_path);
    Session s(opts);
    if (*normalize_cmd) return cmd_normalize(s, term_a);
    if (*trace_cmd) return cmd_trace(s, term_a);
    if (*join_cmd) return cmd_joinable(s, term_a, term_b);
    if (*fix_cmd) return cmd_fixpoint_check(s, f_src, m_src);
    if (*cert_cmd) return cmd_certify(s, f_src, m_src, n_src);
  } catch (const SyntaxError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const RecordError& e) {
    std::cerr << "bad certificate: " << e.what() << "\n";
    return kInvalid;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
