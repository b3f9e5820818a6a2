#pragma once

#include <vector>

#include "linform/ecf.hpp"
#include "linform/grid.hpp"

namespace linform {

// Functional equations whose residuals we evaluate, written LHS - RHS:
//   Eq2:     (f(t) + 1)/2 - f(t/2)^2
//   EqOddN:  f(t)^n - sum_k C(n,k)/2^(n-1) f((n-2k) t),        k = 0..(n-1)/2
//   EqEvenN: f(t)^n - sum_k C(n,k)/2^(n-1) f((n-2k) t) - C(n,n/2)/2^n,
//                                                              k = 0..n/2-1
//   Eq21:    diagonal s = t of (f(s+t) + f(s-t))/2 - f(s) f(t), i.e. the
//            residual (f(2s) + 1)/2 - f(s)^2 reported at s
//   Eq31:    (f(t) + f(t/2))/2 * f(t/4)^2 - f(t/2)^3
//   Eq35:    K(t) - 2 K(t/2)^2 + 1
//   EqT4:    (f(t) + f(t/2))/2 * f(t/2)^2 - f(t) f(t/4)^2
// EqT4 is the equation forced by the fourth pair of linear forms; it holds
// identically for f(t) = t/sinh t (half-angle identity
// (1 + cosh(t/2))/2 = cosh^2(t/4)).
struct EquationId {
  enum class Kind { Eq2, EqOddN, EqEvenN, Eq21, Eq31, Eq35, EqT4 };
  Kind kind;
  int n = 0;  // EqOddN / EqEvenN only

  static EquationId eq2() { return {Kind::Eq2}; }
  static EquationId eq_n(int n);  // picks EqOddN / EqEvenN by parity
  static EquationId eq21() { return {Kind::Eq21}; }
  static EquationId eq31() { return {Kind::Eq31}; }
  static EquationId eq35() { return {Kind::Eq35}; }
  static EquationId eq_t4() { return {Kind::EqT4}; }
};

const char* equation_name(EquationId::Kind kind);

// Residual curve. The output grid is derived from the input grid by exact
// index arithmetic (never interpolation):
//   Eq2, Eq35          -> half()               (residual at t = t[2i] needs f(t[i]))
//   Eq31, EqT4         -> half().half()        (needs quarter points)
//   Eq21               -> prefix((m-1)/2 + 1)  (diagonal needs f(2s))
//   EqOddN, EqEvenN    -> prefix((m-1)/n + 1)  (needs f((n-2k) t)); truncated
//                         is set since multiples of larger t leave the grid
// se is empty for exact inputs; for ECF inputs it carries first-order
// delta-method propagation of the pointwise ECF standard errors.
struct ResidualCurve {
  GridFunction curve;
  std::vector<double> se;
  bool truncated = false;
};

ResidualCurve residual(const EquationId& eq, const GridFunction& f);
ResidualCurve residual_with_se(const EquationId& eq, const ECFEstimate& f);

// Entry (i,j) = joint(i,j) - m1(s_i) m2(t_j); zero iff the joint ECF factors.
std::vector<double> independence_residual(const JointEcf& joint, const ECFEstimate& m1,
                                          const ECFEstimate& m2);

// K(t) = f(t)/f(t/2) on the largest prefix of the half grid where
// |f(t/2)| >= floor at every needed half point; K(0) = 1 exactly.
GridFunction k_ratio(const GridFunction& f, double floor_value = 0.1);

}  // namespace linform
