#include "lfp/term.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <utility>

namespace lfp {

struct Term::Node {
  Kind kind;
  Name name;
  TagPtr tag;
  Term a;
  Term b;
  std::vector<Name> fv;
  bool tracked = false;
  bool beta = false;  // subtree holds a beta redex
  bool eta = false;   // subtree holds an eta redex
  std::size_t size = 1;
};

namespace {

std::vector<Name> merge_names(const std::vector<Name>& x, const std::vector<Name>& y) {
  std::vector<Name> out;
  out.reserve(x.size() + y.size());
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

}  // namespace

const char* dir_token(Dir d) {
  switch (d) {
    case Dir::Fun:
      return "fun";
    case Dir::Arg:
      return "arg";
    case Dir::Body:
      return "body";
  }
  return "?";
}

Path concat(const Path& prefix, const Path& suffix) {
  Path out = prefix;
  out.insert(out.end(), suffix.begin(), suffix.end());
  return out;
}

Term Term::var(Name name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->fv = {name};
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::tracked(TagPtr tag) {
  if (!tag) throw std::invalid_argument("tracked variable without descriptor");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Tracked;
  n->tag = std::move(tag);
  n->tracked = true;
  return Term(std::move(n));
}

Term Term::app(Term fun, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->fv = merge_names(fun.node_->fv, arg.node_->fv);
  n->tracked = fun.node_->tracked || arg.node_->tracked;
  n->size = 1 + fun.node_->size + arg.node_->size;
  n->beta = fun.node_->kind == Kind::Lam || fun.node_->beta || arg.node_->beta;
  n->eta = fun.node_->eta || arg.node_->eta;
  n->a = std::move(fun);
  n->b = std::move(arg);
  return Term(std::move(n));
}

Term Term::lam(Name binder, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lam;
  n->fv = body.node_->fv;
  auto it = std::lower_bound(n->fv.begin(), n->fv.end(), binder);
  if (it != n->fv.end() && *it == binder) n->fv.erase(it);
  n->tracked = body.node_->tracked;
  n->size = 1 + body.node_->size;
  n->beta = body.node_->beta;
  const Node& b = *body.node_;
  n->eta = b.eta || (b.kind == Kind::App && b.b.node_->kind == Kind::Var && b.b.node_->name == binder &&
                     !b.a.has_free(binder));
  n->name = std::move(binder);
  n->a = std::move(body);
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }

const Name& Term::name() const {
  if (node_->kind != Kind::Var && node_->kind != Kind::Lam) throw std::logic_error("term has no name");
  return node_->name;
}

const Term& Term::fun() const {
  if (node_->kind != Kind::App) throw std::logic_error("fun() of non-application");
  return node_->a;
}

const Term& Term::arg() const {
  if (node_->kind != Kind::App) throw std::logic_error("arg() of non-application");
  return node_->b;
}

const Term& Term::body() const {
  if (node_->kind != Kind::Lam) throw std::logic_error("body() of non-abstraction");
  return node_->a;
}

const TrackedTag& Term::tag() const { return *tag_ptr(); }

const TagPtr& Term::tag_ptr() const {
  if (node_->kind != Kind::Tracked) throw std::logic_error("tag() of non-tracked term");
  return node_->tag;
}

const std::vector<Name>& Term::free_names() const { return node_->fv; }

bool Term::has_free(const Name& v) const {
  return std::binary_search(node_->fv.begin(), node_->fv.end(), v);
}

bool Term::has_tracked() const { return node_->tracked; }
std::size_t Term::size() const { return node_->size; }
bool Term::has_beta_redex() const { return node_->beta; }
bool Term::has_eta_redex() const { return node_->eta; }

Term app(Term fun, Term arg) { return Term::app(std::move(fun), std::move(arg)); }

Term apps(Term head, std::initializer_list<Term> args) {
  for (const auto& a : args) head = Term::app(std::move(head), a);
  return head;
}

Term lam(Name binder, Term body) { return Term::lam(std::move(binder), std::move(body)); }
Term var(Name name) { return Term::var(std::move(name)); }

namespace {

void collect_tracked(const Term& t, std::vector<TagPtr>& out) {
  if (!t.has_tracked()) return;
  switch (t.kind()) {
    case Term::Kind::Tracked: {
      const auto& tag = t.tag_ptr();
      bool seen = std::any_of(out.begin(), out.end(), [&](const TagPtr& o) {
        return o == tag || o->same_variable(*tag);
      });
      if (!seen) out.push_back(tag);
      return;
    }
    case Term::Kind::App:
      collect_tracked(t.fun(), out);
      collect_tracked(t.arg(), out);
      return;
    case Term::Kind::Lam:
      collect_tracked(t.body(), out);
      return;
    case Term::Kind::Var:
      return;
  }
}

void collect_names(const Term& t, std::set<Name>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out.insert(t.name());
      return;
    case Term::Kind::Tracked:
      return;
    case Term::Kind::App:
      collect_names(t.fun(), out);
      collect_names(t.arg(), out);
      return;
    case Term::Kind::Lam:
      out.insert(t.binder());
      collect_names(t.body(), out);
      return;
  }
}

}  // namespace

FreeVars free_vars(const Term& t) {
  FreeVars fv;
  fv.named.insert(t.free_names().begin(), t.free_names().end());
  collect_tracked(t, fv.tracked);
  return fv;
}

std::set<Name> named_free_vars(const Term& t) {
  return {t.free_names().begin(), t.free_names().end()};
}

std::vector<TagPtr> tracked_free_vars(const Term& t) {
  std::vector<TagPtr> out;
  collect_tracked(t, out);
  return out;
}

std::set<Name> all_names(const Term& t) {
  std::set<Name> out;
  collect_names(t, out);
  return out;
}

bool binds(const Term& t, const Name& v) {
  switch (t.kind()) {
    case Term::Kind::Var:
    case Term::Kind::Tracked:
      return false;
    case Term::Kind::App:
      return binds(t.fun(), v) || binds(t.arg(), v);
    case Term::Kind::Lam:
      return t.binder() == v || binds(t.body(), v);
  }
  return false;
}

Name name_stem(const Name& n) {
  std::size_t end = n.size();
  while (end > 1 && std::isdigit(static_cast<unsigned char>(n[end - 1]))) --end;
  return n.substr(0, end);
}

Name fresh_name(const std::function<bool(const Name&)>& taken, const Name& hint) {
  Name stem = hint.empty() ? Name("x") : name_stem(hint);
  if (!taken(stem)) return stem;
  for (std::size_t i = 1;; ++i) {
    Name candidate = stem + std::to_string(i);
    if (!taken(candidate)) return candidate;
  }
}

Name fresh_name(const std::set<Name>& avoid, const Name& hint) {
  return fresh_name([&](const Name& n) { return avoid.count(n) > 0; }, hint);
}

namespace {

bool sorted_contains(const std::vector<Name>& v, const Name& n) {
  return std::binary_search(v.begin(), v.end(), n);
}

Term subst_rec(const Term& m, const Name& v, const Term& n) {
  if (!m.has_free(v)) return m;
  switch (m.kind()) {
    case Term::Kind::Var:
      return n;  // has_free(v) on a variable means it is v
    case Term::Kind::Tracked:
      return m;
    case Term::Kind::App:
      return Term::app(subst_rec(m.fun(), v, n), subst_rec(m.arg(), v, n));
    case Term::Kind::Lam: {
      const Name& u = m.binder();
      if (!sorted_contains(n.free_names(), u)) return Term::lam(u, subst_rec(m.body(), v, n));
      const Term& body = m.body();
      Name fresh = fresh_name(
          [&](const Name& c) {
            return c == v || body.has_free(c) || sorted_contains(n.free_names(), c);
          },
          u);
      Term renamed = subst_rec(body, u, Term::var(fresh));
      return Term::lam(fresh, subst_rec(renamed, v, n));
    }
  }
  return m;
}

}  // namespace

Term substitute(const Term& m, const Name& v, const Term& n) { return subst_rec(m, v, n); }

namespace {

struct TrackedFiller {
  const std::function<Term(const TagPtr&)>& fill;
  std::unordered_map<const TrackedTag*, Term> cache;

  const Term& get(const TagPtr& tag) {
    auto it = cache.find(tag.get());
    if (it == cache.end()) it = cache.emplace(tag.get(), fill(tag)).first;
    return it->second;
  }

  // Whether any replacement under t has u free.
  bool captures(const Term& t, const Name& u) {
    if (!t.has_tracked()) return false;
    switch (t.kind()) {
      case Term::Kind::Tracked:
        return get(t.tag_ptr()).has_free(u);
      case Term::Kind::App:
        return captures(t.fun(), u) || captures(t.arg(), u);
      case Term::Kind::Lam:
        return t.binder() != u && captures(t.body(), u);
      case Term::Kind::Var:
        return false;
    }
    return false;
  }

  void replacement_names(const Term& t, std::set<Name>& out) {
    if (!t.has_tracked()) return;
    switch (t.kind()) {
      case Term::Kind::Tracked: {
        const auto& r = get(t.tag_ptr());
        out.insert(r.free_names().begin(), r.free_names().end());
        return;
      }
      case Term::Kind::App:
        replacement_names(t.fun(), out);
        replacement_names(t.arg(), out);
        return;
      case Term::Kind::Lam:
        replacement_names(t.body(), out);
        return;
      case Term::Kind::Var:
        return;
    }
  }

  Term run(const Term& t) {
    if (!t.has_tracked()) return t;
    switch (t.kind()) {
      case Term::Kind::Tracked:
        return get(t.tag_ptr());
      case Term::Kind::App:
        return Term::app(run(t.fun()), run(t.arg()));
      case Term::Kind::Lam: {
        const Name& u = t.binder();
        if (!captures(t.body(), u)) return Term::lam(u, run(t.body()));
        std::set<Name> avoid;
        replacement_names(t.body(), avoid);
        avoid.insert(t.body().free_names().begin(), t.body().free_names().end());
        Name fresh = fresh_name(avoid, u);
        return Term::lam(fresh, run(substitute(t.body(), u, Term::var(fresh))));
      }
      case Term::Kind::Var:
        return t;
    }
    return t;
  }
};

}  // namespace

Term replace_tracked(const Term& t, const std::function<Term(const TagPtr&)>& fill) {
  TrackedFiller filler{fill, {}};
  return filler.run(t);
}

namespace {

// Innermost binding depth of n in env, or -1 when free.
long bound_index(const std::vector<const Name*>& env, const Name& n) {
  for (std::size_t i = env.size(); i-- > 0;) {
    if (*env[i] == n) return static_cast<long>(env.size() - 1 - i);
  }
  return -1;
}

bool alpha_rec(const Term& a, const Term& b, std::vector<const Name*>& ea, std::vector<const Name*>& eb) {
  if (a.same_node(b) && ea.empty() && eb.empty()) return true;
  if (a.kind() != b.kind()) return false;
  if (a.size() != b.size()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      long ia = bound_index(ea, a.name());
      long ib = bound_index(eb, b.name());
      if (ia != ib) return false;
      return ia >= 0 || a.name() == b.name();
    }
    case Term::Kind::Tracked:
      return a.tag_ptr() == b.tag_ptr() || a.tag().same_variable(b.tag());
    case Term::Kind::App:
      return alpha_rec(a.fun(), b.fun(), ea, eb) && alpha_rec(a.arg(), b.arg(), ea, eb);
    case Term::Kind::Lam: {
      ea.push_back(&a.binder());
      eb.push_back(&b.binder());
      bool ok = alpha_rec(a.body(), b.body(), ea, eb);
      ea.pop_back();
      eb.pop_back();
      return ok;
    }
  }
  return false;
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  if (a.free_names() != b.free_names()) return false;
  std::vector<const Name*> ea;
  std::vector<const Name*> eb;
  return alpha_rec(a, b, ea, eb);
}

const Term& subterm_at(const Term& t, const Path& p) {
  const Term* cur = &t;
  for (std::size_t i = 0; i < p.size(); ++i) {
    switch (p[i]) {
      case Dir::Fun:
        if (!cur->is_app()) throw InvalidPath("path leaves the term at index " + std::to_string(i));
        cur = &cur->fun();
        break;
      case Dir::Arg:
        if (!cur->is_app()) throw InvalidPath("path leaves the term at index " + std::to_string(i));
        cur = &cur->arg();
        break;
      case Dir::Body:
        if (!cur->is_lam()) throw InvalidPath("path leaves the term at index " + std::to_string(i));
        cur = &cur->body();
        break;
    }
  }
  return *cur;
}

bool valid_path(const Term& t, const Path& p) {
  try {
    subterm_at(t, p);
    return true;
  } catch (const InvalidPath&) {
    return false;
  }
}

namespace {

Term replace_rec(const Term& t, const Path& p, std::size_t i, const Term& s) {
  if (i == p.size()) return s;
  switch (p[i]) {
    case Dir::Fun:
      if (!t.is_app()) break;
      return Term::app(replace_rec(t.fun(), p, i + 1, s), t.arg());
    case Dir::Arg:
      if (!t.is_app()) break;
      return Term::app(t.fun(), replace_rec(t.arg(), p, i + 1, s));
    case Dir::Body:
      if (!t.is_lam()) break;
      return Term::lam(t.binder(), replace_rec(t.body(), p, i + 1, s));
  }
  throw InvalidPath("path leaves the term at index " + std::to_string(i));
}

}  // namespace

Term replace_at(const Term& t, const Path& p, const Term& s) { return replace_rec(t, p, 0, s); }

}  // namespace lfp
