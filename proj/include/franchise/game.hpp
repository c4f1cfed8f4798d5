#pragma once

#include <utility>
#include <vector>

#include "franchise/production.hpp"

namespace franchise {

// Stage-3 institutional choice of the elite: provide the pooled resources of
// the disenfranchised as a public good, or expropriate them.
enum class Institution { Public, Steal };

const char* institution_name(Institution v);

// One-shot three-stage game.
//   n  : population count (integral value, >= 2)
//   e0 : initial elite size, 0 < e0 <= n (fractional sizes allowed)
//   m  : raw-materials endowment per agent, > 0
//   a  : total factor productivity, > 0
//   g  : public-good productivity, 1/n < g < 1
//
// Per-agent resources are r = a * f(i) + m.  With elite size e and symmetric
// investments (i_e, i_d):
//   public:  pi_e = (n - e) * r_d * g + r_e - i_e,   pi_d = (n - e) * r_d * g - i_d
//   steal:   pi_e = (n - e) * r_d / e + r_e - i_e,   pi_d = -i_d
struct GameParams {
  double n = 10.0;
  double e0 = 1.0;
  double m = 1.0;
  double a = 1.0;
  double g = 0.5;
  ProductionSpec production;
};

void validate(const GameParams& p);  // throws errc::domain_error

struct Investments {
  double i_e = 0.0;         // elite member, a * f'(i) = 1
  double i_d_public = 0.0;  // disenfranchised under anticipated public provision, g * a * f'(i) = 1
};

struct Payoffs {
  double pi_e = 0.0;
  double pi_d = 0.0;
};

struct EquilibriumOutcome {
  double e_star = 0.0;
  Institution v_star = Institution::Steal;
  double i_e = 0.0;
  double i_d = 0.0;
  double pi_e = 0.0;
  double pi_d = 0.0;
  double y = 0.0;              // total realized output, e*pi_e + (n-e)*pi_d
  double threshold_lhs = 0.0;  // extension pays iff this is >= 1
  bool inclusive = false;      // v_star == Public
  bool no_commitment_problem = false;  // e0 >= 1/g: public provision credible without extension
};

// Interior first-order investments (corner 0 where the marginal never reaches 1).
Investments optimal_investments(const GameParams& p);

// Material payoffs at elite size e in [e0, n], fixed investments, fixed choice v.
Payoffs material_payoffs(const GameParams& p, double elite, double i_e, double i_d, Institution v);

// Elite's stage-3 best response given disenfranchised per-agent resources r_d.
// Public iff e >= 1/g, or r_d == 0, or e == n; indifference resolves to Public.
Institution stage3_choice(const GameParams& p, double elite, double r_d);

// Left-hand side of the extension condition:
//   e0 * (g + (g - 1/n) * a * f(i_d*) / m)  with  i_d* = invert_f_prime(1/(g*a)).
// The elite extends to 1/g exactly when this is >= 1.
double threshold_lhs(const GameParams& p);

double total_output(double elite, double pi_e, double pi_d, double population);

// Subgame-perfect outcome by backward induction:
//   e0 >= 1/g            -> stay at e0, public provision, everyone invests
//   threshold_lhs >= 1   -> extend to exactly 1/g, public provision
//   otherwise            -> stay at e0, steal, disenfranchised do not invest
EquilibriumOutcome solve_equilibrium(const GameParams& p);

// Equilibrium elite size as g varies; returns (g, e_star) pairs in grid order.
std::vector<std::pair<double, double>> comparative_static_elite_size(
    const GameParams& p, const std::vector<double>& g_grid);

}  // namespace franchise
