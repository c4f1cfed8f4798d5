#include "franchise/identity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "franchise/errors.hpp"
#include "franchise/roots.hpp"

namespace franchise {

void validate(const IdentityParams& p) {
  validate(p.base);
  if (!std::isfinite(p.alpha) || p.alpha < 0.0 || p.alpha >= 1.0)
    throw_domain("alpha must lie in [0, 1)");
  if (!std::isfinite(p.p_tot) || p.p_tot <= 0.0 || p.p_tot > 1.0)
    throw_domain("p_tot must lie in (0, 1]");
  if (p.base.e0 > p.p_tot * p.base.n)
    throw_domain("p_tot too small: the focal group must contain the whole elite (e0 <= p_tot * n)");
}

double q_fraction(double elite, const IdentityParams& p) {
  validate(p);
  return std::clamp(elite / (p.p_tot * p.base.n), 0.0, 1.0);
}

GroupUtilities altruistic_utilities(const IdentityParams& p, double elite, Institution v,
                                    double i_e, double i_d) {
  validate(p);
  const Payoffs pay = material_payoffs(p.base, elite, i_e, i_d, v);
  const double q = q_fraction(elite, p);
  const double group_avg = q * pay.pi_e + (1.0 - q) * pay.pi_d;

  GroupUtilities u;
  u.u_e = pay.pi_e + p.alpha * group_avg;
  u.u_d_group = pay.pi_d + p.alpha * group_avg;
  u.u_d_other = pay.pi_d + p.alpha * pay.pi_d;  // outsider group is all-disenfranchised
  return u;
}

namespace {

// Stage-3 preference gap for public over steal at fixed first-order
// investments; its smallest zero on [e0, n] is the credible elite size.
double preference_gap(const IdentityParams& p, const Investments& inv, double elite) {
  const Payoffs pub = material_payoffs(p.base, elite, inv.i_e, inv.i_d_public, Institution::Public);
  const Payoffs stl = material_payoffs(p.base, elite, inv.i_e, inv.i_d_public, Institution::Steal);
  const double q = q_fraction(elite, p);
  const double u_pub = pub.pi_e + p.alpha * (q * pub.pi_e + (1.0 - q) * pub.pi_d);
  const double u_stl = stl.pi_e + p.alpha * (q * stl.pi_e + (1.0 - q) * stl.pi_d);
  return u_pub - u_stl;
}

}  // namespace

double min_commitment_size_bisect(const IdentityParams& p) {
  validate(p);
  const Investments inv = optimal_investments(p.base);
  auto h = [&](double e) { return preference_gap(p, inv, e); };

  if (h(p.base.e0) >= 0.0) return p.base.e0;

  // The root never exceeds 1/g, so any point strictly between 1/g and n has
  // h > 0; walk toward n defensively in case of unforeseen flatness.
  double hi = 0.5 * (1.0 / p.base.g + p.base.n);
  int guard = 0;
  while (h(hi) <= 0.0) {
    hi = 0.5 * (hi + p.base.n);
    if (++guard > 100)
      throw_domain("identity: no elite size on [e0, n) makes public provision credible");
  }
  return bisect(h, p.base.e0, hi, {1e-10, 200});
}

double min_commitment_size(const IdentityParams& p) {
  validate(p);
  const double group = p.p_tot * p.base.n;
  const double c = p.base.g * (1.0 + p.alpha) - p.alpha / group;
  double root;
  if (c > 0.0 && 1.0 / c <= group) {
    root = 1.0 / c;            // q unclamped at the root
  } else {
    root = 1.0 / p.base.g;     // q clamps to 1 before the unclamped root
  }
  const double closed = std::min(std::max(root, p.base.e0), p.base.n);

  const double bis = min_commitment_size_bisect(p);
  if (std::abs(closed - bis) <= 1e-9) return closed;
  std::fprintf(stderr,
               "warning: closed-form commitment size %.17g disagreed with bisection %.17g; "
               "using bisection\n",
               closed, bis);
  return bis;
}

IdentityOutcome solve_equilibrium_identity(const IdentityParams& p) {
  validate(p);
  IdentityOutcome out;
  out.e_p = min_commitment_size(p);

  const Investments inv = optimal_investments(p.base);
  out.u_e_incl =
      altruistic_utilities(p, out.e_p, Institution::Public, inv.i_e, inv.i_d_public).u_e;
  out.u_e_extr = altruistic_utilities(p, p.base.e0, Institution::Steal, inv.i_e, 0.0).u_e;
  out.extends = out.u_e_incl >= out.u_e_extr;

  EquilibriumOutcome& eq = out.outcome;
  eq.threshold_lhs = threshold_lhs(p.base);
  eq.no_commitment_problem = p.base.e0 >= 1.0 / p.base.g;
  eq.i_e = inv.i_e;
  if (out.extends) {
    eq.e_star = out.e_p;
    eq.v_star = Institution::Public;
    eq.i_d = inv.i_d_public;
  } else {
    eq.e_star = p.base.e0;
    eq.v_star = Institution::Steal;
    eq.i_d = 0.0;
  }
  const Payoffs pay = material_payoffs(p.base, eq.e_star, eq.i_e, eq.i_d, eq.v_star);
  eq.pi_e = pay.pi_e;
  eq.pi_d = pay.pi_d;
  eq.y = total_output(eq.e_star, eq.pi_e, eq.pi_d, p.base.n);
  eq.inclusive = eq.v_star == Institution::Public;

  out.utilities = altruistic_utilities(p, eq.e_star, eq.v_star, eq.i_e, eq.i_d);
  return out;
}

std::vector<GroupSizePoint> sweep_group_size(const IdentityParams& p,
                                             const std::vector<double>& p_grid) {
  validate(IdentityParams{p.base, p.alpha, 1.0});  // grid supplies p_tot per point
  std::vector<double> grid = p_grid;
  std::sort(grid.begin(), grid.end());

  std::vector<GroupSizePoint> out;
  out.reserve(grid.size());
  for (double p_tot : grid) {
    GroupSizePoint pt;
    pt.p_tot = p_tot;
    pt.alpha = p.alpha;
    IdentityParams q = p;
    q.p_tot = p_tot;
    try {
      validate(q);
      pt.degenerate = std::abs(p_tot * p.base.n - p.base.e0) <= 1e-12 * p.base.n;
      const IdentityOutcome res = solve_equilibrium_identity(q);
      pt.e_p = res.e_p;
      pt.extends = res.extends;
      pt.u_e_incl = res.u_e_incl;
      pt.u_e_extr = res.u_e_extr;
    } catch (const error& e) {
      pt.error = e.what();
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace franchise
