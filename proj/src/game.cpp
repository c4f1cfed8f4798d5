#include "franchise/game.hpp"

#include <cmath>

#include "franchise/errors.hpp"

namespace franchise {

const char* institution_name(Institution v) {
  return v == Institution::Public ? "public" : "steal";
}

void validate(const GameParams& p) {
  if (!std::isfinite(p.n) || p.n < 2.0 || std::floor(p.n) != p.n)
    throw_domain("n must be an integral value >= 2");
  if (!std::isfinite(p.e0) || p.e0 <= 0.0 || p.e0 > p.n)
    throw_domain("e0 must satisfy 0 < e0 <= n");
  if (!std::isfinite(p.m) || p.m <= 0.0) throw_domain("m must be positive");
  if (!std::isfinite(p.a) || p.a <= 0.0) throw_domain("a must be positive");
  if (!std::isfinite(p.g) || p.g <= 1.0 / p.n || p.g >= 1.0)
    throw_domain("g must lie strictly between 1/n and 1");
  validate(p.production);
}

Investments optimal_investments(const GameParams& p) {
  validate(p);
  Investments inv;
  inv.i_e = invert_f_prime(p.production, 1.0 / p.a);
  inv.i_d_public = invert_f_prime(p.production, 1.0 / (p.g * p.a));
  return inv;
}

Payoffs material_payoffs(const GameParams& p, double elite, double i_e, double i_d, Institution v) {
  validate(p);
  if (!std::isfinite(elite) || elite < p.e0 || elite > p.n)
    throw_domain("elite size must lie in [e0, n]");
  if (!std::isfinite(i_e) || i_e < 0.0 || !std::isfinite(i_d) || i_d < 0.0)
    throw_domain("investments must be finite and non-negative");

  const double r_e = p.a * eval_f(p.production, i_e) + p.m;
  const double r_d = p.a * eval_f(p.production, i_d) + p.m;
  const double pool = (p.n - elite) * r_d;

  Payoffs out;
  if (v == Institution::Public) {
    out.pi_e = pool * p.g + r_e - i_e;
    out.pi_d = pool * p.g - i_d;
  } else {
    out.pi_e = pool / elite + r_e - i_e;
    out.pi_d = 0.0 - i_d;
  }
  return out;
}

Institution stage3_choice(const GameParams& p, double elite, double r_d) {
  validate(p);
  if (!std::isfinite(elite) || elite < p.e0 || elite > p.n)
    throw_domain("elite size must lie in [e0, n]");
  if (!std::isfinite(r_d) || r_d < 0.0) throw_domain("r_d must be finite and non-negative");
  // Public yields pool * g, stealing pool / e; public weakly wins iff g >= 1/e,
  // the pool is empty, or nobody is left to steal from.
  if (r_d == 0.0 || elite >= p.n || elite >= 1.0 / p.g) return Institution::Public;
  return Institution::Steal;
}

double threshold_lhs(const GameParams& p) {
  validate(p);
  const double i_d = invert_f_prime(p.production, 1.0 / (p.g * p.a));
  return p.e0 * (p.g + (p.g - 1.0 / p.n) * (p.a * eval_f(p.production, i_d)) / p.m);
}

double total_output(double elite, double pi_e, double pi_d, double population) {
  return elite * pi_e + (population - elite) * pi_d;
}

EquilibriumOutcome solve_equilibrium(const GameParams& p) {
  validate(p);
  const Investments inv = optimal_investments(p);
  const double e_commit = 1.0 / p.g;

  EquilibriumOutcome out;
  out.threshold_lhs = threshold_lhs(p);
  out.i_e = inv.i_e;

  if (p.e0 >= e_commit) {
    // Public provision is already credible: no extension needed.
    out.no_commitment_problem = true;
    out.e_star = p.e0;
    out.v_star = Institution::Public;
    out.i_d = inv.i_d_public;
  } else if (out.threshold_lhs >= 1.0) {
    out.e_star = e_commit;
    out.v_star = Institution::Public;
    out.i_d = inv.i_d_public;
  } else {
    out.e_star = p.e0;
    out.v_star = Institution::Steal;
    out.i_d = 0.0;
  }

  const Payoffs pay = material_payoffs(p, out.e_star, out.i_e, out.i_d, out.v_star);
  out.pi_e = pay.pi_e;
  out.pi_d = pay.pi_d;
  out.y = total_output(out.e_star, out.pi_e, out.pi_d, p.n);
  out.inclusive = out.v_star == Institution::Public;
  return out;
}

std::vector<std::pair<double, double>> comparative_static_elite_size(
    const GameParams& p, const std::vector<double>& g_grid) {
  std::vector<std::pair<double, double>> out;
  out.reserve(g_grid.size());
  for (double g : g_grid) {
    GameParams q = p;
    q.g = g;
    out.emplace_back(g, solve_equilibrium(q).e_star);
  }
  return out;
}

}  // namespace franchise
