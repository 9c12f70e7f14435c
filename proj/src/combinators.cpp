#include "lfp/combinators.hpp"

namespace lfp {

Term y_combinator() {
  Term half = lam("g", app(var("f"), app(var("g"), var("g"))));
  return lam("f", app(half, half));
}

Term y_pair(const Term& m, const Term& n) {
  Name g = fresh_name([&](const Name& c) { return m.has_free(c) || n.has_free(c); }, "g");
  Term gg = app(var(g), var(g));
  return app(lam(g, app(m, gg)), lam(g, app(n, gg)));
}

Term iterate_app(const Term& m, std::size_t n, const Term& t) {
  Term out = t;
  for (std::size_t i = 0; i < n; ++i) out = app(m, out);
  return out;
}

Term y_n(std::size_t n) {
  Term f = var("f");
  return lam("f", iterate_app(f, n, y_pair(f, f)));
}

Term theta() {
  Term half = lam("x", lam("y", app(var("y"), apps(var("x"), {var("x"), var("y")}))));
  return app(half, half);
}

}  // namespace lfp
