#pragma once

#include <utility>
#include <vector>

#include "franchise/game.hpp"
#include "franchise/random.hpp"

namespace franchise {

// Brute-force check of the analytic solver: discretize the extensive form and
// run backward induction on the grids.  The elite-size grid spans [e0, n]
// uniformly with the knife-edge size 1/g injected exactly; efforts live on a
// uniform grid over [0, i_max].
struct GridSpec {
  int e_steps = 500;
  double i_max = 0.0;          // <= 0: auto, 4x the interior elite effort (1.0 at corners)
  int i_steps = 0;             // <= 0: auto from target_i_step
  double target_i_step = 1e-3;
};

struct OracleReport {
  double e_star_grid = 0.0;
  Institution v_star = Institution::Steal;
  double i_e_grid = 0.0;
  double i_d_grid = 0.0;
  double pi_e_grid = 0.0;
  double pi_d_grid = 0.0;
  bool agrees = false;          // institution matches, |e gap| <= one e-step, payoff gap small
  double max_payoff_gap = 0.0;  // max relative payoff gap vs the analytic solver
  double e_step = 0.0;          // resolved grid resolutions
  double i_step = 0.0;
};

// Grid best responses of stage 2 at a fixed elite size: the elite maximizes
// a*f(i) - i; the disenfranchised maximize g*a*f(i) - i when the stage-3
// choice at the implied resources is Public, and invest nothing otherwise.
Investments stage2_best_responses(const GameParams& p, double elite, const GridSpec& grid);

// Elite payoff at each elite-size grid point, with stage-2/stage-3 play
// resolved on the grid.  Useful for plotting and for checking that the
// maximum only ever sits at e0 or 1/g.
std::vector<std::pair<double, double>> elite_payoff_on_grid(const GameParams& p,
                                                            const GridSpec& grid);

OracleReport solve_by_backward_induction(const GameParams& p, const GridSpec& grid);

// Random valid parameter draw for verification sweeps.  g keeps a small margin
// inside (1/n, 1) and e0 inside (0, 1/g) so draws stay clear of degenerate
// boundaries; families rotate uniformly.
struct DrawRanges {
  int n_min = 3, n_max = 20;
  double m_min = 0.1, m_max = 5.0;
  double a_min = 0.5, a_max = 5.0;
  double beta_min = 0.3, beta_max = 0.7;
  double kappa_min = 0.5, kappa_max = 2.0;
  double margin = 0.02;  // relative margin kept at open interval ends
};

GameParams random_game_params(RngStream& rng, const DrawRanges& ranges = {});

}  // namespace franchise
