#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lfp {

using Name = std::string;

class InvalidPath : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Opaque descriptor carried by a tracked variable. Tracked variables are
// never bound; two of them denote the same variable iff same_variable holds.
class TrackedTag {
 public:
  virtual ~TrackedTag() = default;
  virtual bool same_variable(const TrackedTag& other) const = 0;
  virtual std::string describe() const = 0;
};

using TagPtr = std::shared_ptr<const TrackedTag>;

enum class Dir : std::uint8_t { Fun, Arg, Body };
using Path = std::vector<Dir>;

const char* dir_token(Dir d);
Path concat(const Path& prefix, const Path& suffix);

// Immutable lambda term with shared structure. Copies are cheap.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Tracked, App, Lam };

  static Term var(Name name);
  static Term tracked(TagPtr tag);
  static Term app(Term fun, Term arg);
  static Term lam(Name binder, Term body);

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_tracked() const { return kind() == Kind::Tracked; }
  bool is_app() const { return kind() == Kind::App; }
  bool is_lam() const { return kind() == Kind::Lam; }

  // Var: the variable name. Lam: the binder.
  const Name& name() const;
  const Name& binder() const { return name(); }
  const Term& fun() const;
  const Term& arg() const;
  const Term& body() const;
  const TrackedTag& tag() const;
  const TagPtr& tag_ptr() const;

  // Sorted, duplicate-free named free variables.
  const std::vector<Name>& free_names() const;
  bool has_free(const Name& v) const;
  bool has_tracked() const;
  std::size_t size() const;
  // Whether some subterm is a beta (resp. eta) redex.
  bool has_beta_redex() const;
  bool has_eta_redex() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  struct Node;
  Term() = default;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Term app(Term fun, Term arg);
Term apps(Term head, std::initializer_list<Term> args);
Term lam(Name binder, Term body);
Term var(Name name);

struct FreeVars {
  std::set<Name> named;
  std::vector<TagPtr> tracked;  // duplicate-free under same_variable
};

FreeVars free_vars(const Term& t);
std::set<Name> named_free_vars(const Term& t);
std::vector<TagPtr> tracked_free_vars(const Term& t);

// Every identifier occurring in t, free or bound.
std::set<Name> all_names(const Term& t);
bool binds(const Term& t, const Name& v);

// Counter scheme: the hint with trailing digits stripped, then stem1, stem2, ...
// The first candidate not rejected by `taken` is returned.
Name fresh_name(const std::function<bool(const Name&)>& taken, const Name& hint = "x");
Name fresh_name(const std::set<Name>& avoid, const Name& hint = "x");
Name name_stem(const Name& n);

// m[v := n], capture-avoiding. Tracked variables are atomic and never
// substituted into.
Term substitute(const Term& m, const Name& v, const Term& n);

// Replaces every tracked variable by the term `fill` returns for it,
// renaming binders that would capture free names of the replacement.
Term replace_tracked(const Term& t, const std::function<Term(const TagPtr&)>& fill);

bool alpha_eq(const Term& a, const Term& b);

const Term& subterm_at(const Term& t, const Path& p);
Term replace_at(const Term& t, const Path& p, const Term& s);
bool valid_path(const Term& t, const Path& p);

}  // namespace lfp
