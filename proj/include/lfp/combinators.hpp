#pragma once

#include <cstddef>

#include "lfp/term.hpp"

namespace lfp {

// Curry's Y: \f.(\g.f (g g)) (\g.f (g g)).
Term y_combinator();

// (\g.m (g g)) (\g.n (g g)) with g chosen outside FV(m) and FV(n).
Term y_pair(const Term& m, const Term& n);

// m applied n times around t: iterate_app(m, 0, t) = t, iterate_app(m, k+1, t) = m (iterate_app(m, k, t)).
Term iterate_app(const Term& m, std::size_t n, const Term& t);

// \f. f^(n) (Y-pair of f with itself); y_n(0) is Y.
Term y_n(std::size_t n);

// Turing's combinator (\x.\y.y (x x y)) (\x.\y.y (x x y)).
Term theta();

}  // namespace lfp
