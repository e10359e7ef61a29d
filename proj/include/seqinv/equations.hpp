#pragma once

// Algebraic relations P(X, Y) = 0 satisfied by the generating series of the
// sequences in sequences.hpp.  Each is assembled from its factored form so
// the expansion is done by the polynomial arithmetic, not by hand.

#include "seqinv/series.hpp"

namespace seqinv::equations {

namespace detail {
struct Vars {
  BivariatePoly X, Y, one;
  explicit Vars(Prime p) : X(BivariatePoly::x(p)), Y(BivariatePoly::y(p)), one(BivariatePoly::constant(p, 1)) {}
};
}  // namespace detail

/// (1 - X)^(p+1) F^p - (1 - X)^2 F + X, root F = sum t_n X^n (digit sums mod p).
inline BivariatePoly thue(Prime p) {
  detail::Vars v(p);
  return (v.one - v.X).pow(p + 1) * v.Y.pow(p) - (v.one - v.X).pow(2) * v.Y + v.X;
}

/// (1 - C)^(p+1) X^p - (1 - C)^2 X + C, root C = compositional inverse of F.
inline BivariatePoly thue_inverse(Prime p) {
  detail::Vars v(p);
  return (v.one - v.Y).pow(p + 1) * v.X.pow(p) - (v.one - v.Y).pow(2) * v.X + v.Y;
}

/// S^(p+1) - S^2 - S + X, root S = X (1 - C).
inline BivariatePoly thue_inverse_shifted(Prime p) {
  detail::Vars v(p);
  return v.Y.pow(p + 1) - v.Y.pow(2) - v.Y + v.X;
}

/// (1 + X)^5 R^2 + (1 + X)^4 R + X^3 over F_2, root R = 0/1 Rudin-Shapiro.
inline BivariatePoly rudin() {
  detail::Vars v(Prime(2));
  return (v.one + v.X).pow(5) * v.Y.pow(2) + (v.one + v.X).pow(4) * v.Y + v.X.pow(3);
}

/// Relation for R_1 = R + 1 (first term zeroed).
inline BivariatePoly rudin_zeroed() {
  detail::Vars v(Prime(2));
  const auto& X = v.X;
  const auto& R = v.Y;
  return (R.pow(2) + v.one) * X.pow(5) + (R.pow(2) + R) * X.pow(4) + X.pow(3) + (R.pow(2) + v.one) * X +
         R.pow(2) + R;
}

/// Relation for U, the compositional inverse of R_1.
inline BivariatePoly rudin_zeroed_inverse() {
  detail::Vars v(Prime(2));
  const auto& X = v.X;
  const auto& U = v.Y;
  return (X.pow(2) + v.one) * U.pow(5) + (X.pow(2) + X) * U.pow(4) + U.pow(3) + (X.pow(2) + v.one) * U +
         X.pow(2) + X;
}

/// Relation for R_2 = X R (sequence shifted right).
inline BivariatePoly rudin_shifted() {
  detail::Vars v(Prime(2));
  const auto& X = v.X;
  const auto& R = v.Y;
  return (R.pow(2) + R + v.one) * X.pow(5) + R.pow(2) * X.pow(4) + (R.pow(2) + R) * X + R.pow(2);
}

/// Relation for V, the compositional inverse of R_2.
inline BivariatePoly rudin_shifted_inverse() {
  detail::Vars v(Prime(2));
  const auto& X = v.X;
  const auto& V = v.Y;
  return (X.pow(2) + X + v.one) * V.pow(5) + X.pow(2) * V.pow(4) + (X.pow(2) + X) * V + X.pow(2);
}

}  // namespace seqinv::equations
