#include "linform/func_equations.hpp"

#include <cmath>
#include <stdexcept>

#include "linform/distributions.hpp"

namespace linform {

namespace {

// Deterministic small-integer power (fixed multiplication order).
double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

void require_dyadic(const Grid& grid, const char* who) {
  if (!grid.dyadic) throw std::invalid_argument(std::string(who) + ": needs a dyadic grid");
}

struct Engine {
  const Grid& grid;
  const std::vector<double>& f;
  const std::vector<double>* var;  // sigma^2 per input point, or nullptr

  ResidualCurve out;

  void init(const Grid& g, std::size_t count, bool truncated) {
    out.curve.grid = g;
    out.curve.values.resize(count);
    if (var) out.se.resize(count);
    out.truncated = truncated;
  }

  // var_of(i) guards the exact-zero point t = 0.
  double v(std::size_t i) const { return (*var)[i]; }
};

ResidualCurve compute(const EquationId& eq, const Grid& grid, const std::vector<double>& f,
                      const std::vector<double>* var) {
  require_dyadic(grid, "residual");
  if (f.size() != grid.size()) throw std::invalid_argument("residual: value/grid size mismatch");
  const std::size_t m = grid.size();
  Engine e{grid, f, var, {}};

  switch (eq.kind) {
    case EquationId::Kind::Eq2:
    case EquationId::Kind::Eq21: {
      if (m < 3) throw std::invalid_argument("residual: grid too short");
      const std::size_t count = (m - 1) / 2 + 1;
      // Eq2 reports at t[2i]; the Eq21 diagonal reports the same numbers at
      // s = t[i] (the equation at (s,s) involves f(2s)), hence the grids.
      e.init(eq.kind == EquationId::Kind::Eq2 ? grid.half() : grid.prefix(count), count, false);
      for (std::size_t i = 0; i < count; ++i) {
        e.out.curve.values[i] = 0.5 * (f[2 * i] + 1.0) - f[i] * f[i];
        if (var)
          e.out.se[i] = std::sqrt(0.25 * e.v(2 * i) + (2.0 * f[i]) * (2.0 * f[i]) * e.v(i));
      }
      return std::move(e.out);
    }
    case EquationId::Kind::Eq35: {
      if (m < 3) throw std::invalid_argument("residual: grid too short");
      const std::size_t count = (m - 1) / 2 + 1;
      e.init(grid.half(), count, false);
      for (std::size_t i = 0; i < count; ++i) {
        e.out.curve.values[i] = f[2 * i] - 2.0 * f[i] * f[i] + 1.0;
        if (var)
          e.out.se[i] = std::sqrt(e.v(2 * i) + (4.0 * f[i]) * (4.0 * f[i]) * e.v(i));
      }
      return std::move(e.out);
    }
    case EquationId::Kind::Eq31: {
      if (m < 5) throw std::invalid_argument("residual: grid too short");
      const std::size_t count = (m - 1) / 4 + 1;
      e.init(grid.half().half(), count, false);
      for (std::size_t i = 0; i < count; ++i) {
        const double x = f[4 * i], y = f[2 * i], z = f[i];
        e.out.curve.values[i] = 0.5 * (x + y) * z * z - y * y * y;
        if (var) {
          const double px = 0.5 * z * z;
          const double py = 0.5 * z * z - 3.0 * y * y;
          const double pz = (x + y) * z;
          e.out.se[i] = std::sqrt(px * px * e.v(4 * i) + py * py * e.v(2 * i) + pz * pz * e.v(i));
        }
      }
      return std::move(e.out);
    }
    case EquationId::Kind::EqT4: {
      if (m < 5) throw std::invalid_argument("residual: grid too short");
      const std::size_t count = (m - 1) / 4 + 1;
      e.init(grid.half().half(), count, false);
      for (std::size_t i = 0; i < count; ++i) {
        const double x = f[4 * i], y = f[2 * i], z = f[i];
        e.out.curve.values[i] = 0.5 * (x + y) * y * y - x * z * z;
        if (var) {
          const double px = 0.5 * y * y - z * z;
          const double py = 0.5 * y * y + (x + y) * y;
          const double pz = -2.0 * x * z;
          e.out.se[i] = std::sqrt(px * px * e.v(4 * i) + py * py * e.v(2 * i) + pz * pz * e.v(i));
        }
      }
      return std::move(e.out);
    }
    case EquationId::Kind::EqOddN:
    case EquationId::Kind::EqEvenN: {
      const int n = eq.n;
      const bool odd = eq.kind == EquationId::Kind::EqOddN;
      if (n < 2) throw std::invalid_argument("residual: equation order must be >= 2");
      if (odd != (n % 2 == 1)) throw std::invalid_argument("residual: equation parity mismatch");
      if (m - 1 < std::size_t(n)) throw std::invalid_argument("residual: grid too short for order n");
      const CoefficientLaw law = epsilon_n_pmf(n);
      const std::size_t jmax = (m - 1) / std::size_t(n);
      // multiples (n-2k) t leave the grid past jmax: output is a truncated prefix
      e.init(grid.prefix(jmax + 1), jmax + 1, true);
      for (std::size_t j = 0; j <= jmax; ++j) {
        double r = ipow(f[j], n);
        double pd_j = double(n) * ipow(f[j], n - 1);  // d/d f[j], power term
        double var_acc = 0.0;
        for (std::size_t i = 0; i < law.atoms.size(); ++i) {
          const double p = law.probability(i);
          const int value = int(law.atoms[i].value);
          if (value == 0) {
            r -= p;  // even-n constant term
          } else {
            r -= p * f[std::size_t(value) * j];
            if (var) {
              if (value == 1) {
                pd_j -= p;  // same grid point as the power term
              } else {
                var_acc += p * p * e.v(std::size_t(value) * j);
              }
            }
          }
        }
        e.out.curve.values[j] = r;
        if (var) e.out.se[j] = std::sqrt(var_acc + pd_j * pd_j * e.v(j));
      }
      return std::move(e.out);
    }
  }
  throw std::logic_error("unreachable equation");
}

}  // namespace

EquationId EquationId::eq_n(int n) {
  if (n < 2) throw std::invalid_argument("eq_n: n must be >= 2");
  return {n % 2 == 1 ? Kind::EqOddN : Kind::EqEvenN, n};
}

const char* equation_name(EquationId::Kind kind) {
  switch (kind) {
    case EquationId::Kind::Eq2: return "eq2";
    case EquationId::Kind::EqOddN: return "eqn-odd";
    case EquationId::Kind::EqEvenN: return "eqn-even";
    case EquationId::Kind::Eq21: return "eq21";
    case EquationId::Kind::Eq31: return "eq31";
    case EquationId::Kind::Eq35: return "eq35";
    case EquationId::Kind::EqT4: return "eqt4";
  }
  return "?";
}

ResidualCurve residual(const EquationId& eq, const GridFunction& f) {
  return compute(eq, f.grid, f.values, nullptr);
}

ResidualCurve residual_with_se(const EquationId& eq, const ECFEstimate& f) {
  std::vector<double> var(f.se.size());
  for (std::size_t k = 0; k < var.size(); ++k) var[k] = f.se[k] * f.se[k];
  return compute(eq, f.grid, f.values, &var);
}

std::vector<double> independence_residual(const JointEcf& joint, const ECFEstimate& m1,
                                          const ECFEstimate& m2) {
  if (!(m1.grid == joint.s_grid) || !(m2.grid == joint.t_grid))
    throw std::invalid_argument("independence_residual: grid mismatch");
  const std::size_t ms = joint.s_grid.size();
  const std::size_t mt = joint.t_grid.size();
  std::vector<double> res(ms * mt);
  for (std::size_t i = 0; i < ms; ++i)
    for (std::size_t j = 0; j < mt; ++j)
      res[i * mt + j] = joint.at(i, j) - m1.values[i] * m2.values[j];
  return res;
}

GridFunction k_ratio(const GridFunction& f, double floor_value) {
  require_dyadic(f.grid, "k_ratio");
  if (!(floor_value > 0.0)) throw std::invalid_argument("k_ratio: floor must be positive");
  if (f.grid.size() < 3) throw std::invalid_argument("k_ratio: grid too short");
  if (f.values.size() != f.grid.size()) throw std::invalid_argument("k_ratio: size mismatch");
  const std::size_t hmax = (f.grid.size() - 1) / 2;
  if (std::fabs(f.values[0]) < floor_value)
    throw std::domain_error("k_ratio: |f| below floor at t = 0, empty domain");
  // Largest prefix of half points where the denominator stays above the floor.
  std::size_t imax = 0;
  while (imax + 1 <= hmax && std::fabs(f.values[imax + 1]) >= floor_value) ++imax;
  if (imax == 0) throw std::domain_error("k_ratio: |f| below floor at the first grid point");
  GridFunction k;
  k.grid = f.grid.half().prefix(imax + 1);
  k.values.resize(imax + 1);
  k.values[0] = 1.0;
  for (std::size_t i = 1; i <= imax; ++i) k.values[i] = f.values[2 * i] / f.values[i];
  return k;
}

}  // namespace linform
