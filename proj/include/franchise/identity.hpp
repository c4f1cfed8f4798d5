#pragma once

#include <optional>
#include <string>
#include <vector>

#include "franchise/game.hpp"

namespace franchise {

// Identity extension of the one-shot game: one focal group contains the whole
// elite (group share of the elite is 1) plus a slice of the disenfranchised.
// Members weigh their own material payoff plus alpha times the group-average
// material payoff; with elite size e the elite's in-group weight on elite
// payoffs is q = clamp(e / (p_tot * n), 0, 1).
struct IdentityParams {
  GameParams base;
  double alpha = 0.5;  // in-group altruism, in [0, 1); 0 recovers the base game
  double p_tot = 1.0;  // focal group's population share, in (0, 1]; needs e0 <= p_tot * n
};

void validate(const IdentityParams& p);

// Elite share of the focal group at elite size e, clamped into [0, 1].
// (e = 0 is unreachable because e >= e0 > 0, but the clamp covers it.)
double q_fraction(double elite, const IdentityParams& p);

struct GroupUtilities {
  double u_e = 0.0;        // elite member (all elites are in the focal group)
  double u_d_group = 0.0;  // disenfranchised member of the focal group
  double u_d_other = 0.0;  // disenfranchised outsider
};

GroupUtilities altruistic_utilities(const IdentityParams& p, double elite, Institution v,
                                    double i_e, double i_d);

// Smallest elite size at which an altruistic elite weakly prefers public
// provision at fixed first-order investments; bisection on the preference gap
// h(e) = u_e(public) - u_e(steal), fast-pathed through the closed form
//   e = 1 / (g * (1 + alpha) - alpha / (p_tot * n))
// when that root is interior, falling back to 1/g in the clamped-q region.
// The closed form is only trusted when it agrees with bisection to 1e-9.
double min_commitment_size(const IdentityParams& p);
double min_commitment_size_bisect(const IdentityParams& p);

struct IdentityOutcome {
  EquilibriumOutcome outcome;  // chosen arrangement in base-game terms
  double e_p = 0.0;            // minimal credible elite size
  bool extends = false;        // u_e_incl >= u_e_extr (ties extend)
  double u_e_incl = 0.0;       // elite utility: extend to e_p, public, full investment
  double u_e_extr = 0.0;       // elite utility: stay at e0, steal, no outsider investment
  GroupUtilities utilities;    // at the chosen arrangement
};

IdentityOutcome solve_equilibrium_identity(const IdentityParams& p);

struct GroupSizePoint {
  double p_tot = 0.0;
  double alpha = 0.0;
  double e_p = 0.0;
  bool extends = false;
  double u_e_incl = 0.0;
  double u_e_extr = 0.0;
  bool degenerate = false;  // p_tot * n == e0: the group is exactly the elite
  std::optional<std::string> error;  // invalid grid point, skipped by emitters
};

// Solve across a grid of group sizes; output sorted by p_tot ascending.
std::vector<GroupSizePoint> sweep_group_size(const IdentityParams& p,
                                             const std::vector<double>& p_grid);

}  // namespace franchise
