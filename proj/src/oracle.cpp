#include "franchise/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "franchise/errors.hpp"

namespace franchise {

namespace {

struct ResolvedGrid {
  std::vector<double> e_points;
  double i_max = 0.0;
  int i_steps = 0;
  double e_step = 0.0;
  double i_step = 0.0;
  double i_e = 0.0;         // grid argmax of a*f(i) - i
  double i_d_public = 0.0;  // grid argmax of g*a*f(i) - i
};

void check_grid(const GridSpec& grid) {
  if (grid.e_steps < 2) throw_domain("grid: e_steps must be >= 2");
  if (grid.i_steps > 0 && grid.i_steps < 2) throw_domain("grid: i_steps must be >= 2");
  if (grid.i_max < 0.0 || !std::isfinite(grid.i_max)) throw_domain("grid: i_max must be finite and >= 0");
  if (grid.i_steps <= 0 && !(grid.target_i_step > 0.0))
    throw_domain("grid: target_i_step must be positive");
}

// Largest objective wins; ties resolve to the smallest effort.
template <class Obj>
double argmax_effort(Obj&& obj, double i_max, int i_steps) {
  double best_i = 0.0;
  double best_v = obj(0.0);
  for (int k = 1; k < i_steps; ++k) {
    const double i = i_max * static_cast<double>(k) / static_cast<double>(i_steps - 1);
    const double v = obj(i);
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  return best_i;
}

ResolvedGrid resolve_grid(const GameParams& p, const GridSpec& grid) {
  validate(p);
  check_grid(grid);

  ResolvedGrid rg;
  if (grid.i_max > 0.0) {
    rg.i_max = grid.i_max;
  } else {
    const double interior = invert_f_prime(p.production, 1.0 / p.a);
    rg.i_max = interior > 0.0 ? 4.0 * interior : 1.0;
  }
  rg.i_steps = grid.i_steps > 0
                   ? grid.i_steps
                   : std::max(2, static_cast<int>(std::ceil(rg.i_max / grid.target_i_step)) + 1);
  rg.i_step = rg.i_max / static_cast<double>(rg.i_steps - 1);

  rg.e_points.reserve(static_cast<std::size_t>(grid.e_steps) + 1);
  for (int k = 0; k < grid.e_steps; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(grid.e_steps - 1);
    rg.e_points.push_back(p.e0 + t * (p.n - p.e0));
  }
  rg.e_step = (p.n - p.e0) / static_cast<double>(grid.e_steps - 1);
  const double e_commit = 1.0 / p.g;
  if (e_commit > p.e0 && e_commit < p.n) {
    auto pos = std::lower_bound(rg.e_points.begin(), rg.e_points.end(), e_commit);
    if (pos == rg.e_points.end() || *pos != e_commit) rg.e_points.insert(pos, e_commit);
  }

  rg.i_e = argmax_effort(
      [&](double i) { return p.a * eval_f(p.production, i) - i; }, rg.i_max, rg.i_steps);
  rg.i_d_public = argmax_effort(
      [&](double i) { return p.g * p.a * eval_f(p.production, i) - i; }, rg.i_max, rg.i_steps);
  return rg;
}

// Stage-2/3 play at a fixed elite size, using precomputed effort argmaxes.
// r_d >= m > 0 for every effort level, so the stage-3 branch at a given elite
// size does not depend on the effort candidate.
struct NodeOutcome {
  Institution v;
  double i_d;
  Payoffs pay;
};

NodeOutcome play_subgame(const GameParams& p, const ResolvedGrid& rg, double elite) {
  NodeOutcome node;
  const bool public_branch = stage3_choice(p, elite, p.m) == Institution::Public;
  node.i_d = public_branch ? rg.i_d_public : 0.0;
  const double r_d = p.a * eval_f(p.production, node.i_d) + p.m;
  node.v = stage3_choice(p, elite, r_d);
  node.pay = material_payoffs(p, elite, rg.i_e, node.i_d, node.v);
  return node;
}

}  // namespace

Investments stage2_best_responses(const GameParams& p, double elite, const GridSpec& grid) {
  const ResolvedGrid rg = resolve_grid(p, grid);
  if (!(elite >= p.e0 && elite <= p.n)) throw_domain("elite size must lie in [e0, n]");
  Investments inv;
  inv.i_e = rg.i_e;
  const NodeOutcome node = play_subgame(p, rg, elite);
  inv.i_d_public = node.i_d;
  return inv;
}

std::vector<std::pair<double, double>> elite_payoff_on_grid(const GameParams& p,
                                                            const GridSpec& grid) {
  const ResolvedGrid rg = resolve_grid(p, grid);
  std::vector<std::pair<double, double>> curve;
  curve.reserve(rg.e_points.size());
  for (double e : rg.e_points) curve.emplace_back(e, play_subgame(p, rg, e).pay.pi_e);
  return curve;
}

OracleReport solve_by_backward_induction(const GameParams& p, const GridSpec& grid) {
  const ResolvedGrid rg = resolve_grid(p, grid);

  // Stage 1: scan elite sizes; strict improvement keeps the smallest tied size.
  double best_e = rg.e_points.front();
  NodeOutcome best = play_subgame(p, rg, best_e);
  for (std::size_t k = 1; k < rg.e_points.size(); ++k) {
    const NodeOutcome node = play_subgame(p, rg, rg.e_points[k]);
    if (node.pay.pi_e > best.pay.pi_e) {
      best = node;
      best_e = rg.e_points[k];
    }
  }

  OracleReport rep;
  rep.e_star_grid = best_e;
  rep.v_star = best.v;
  rep.i_e_grid = rg.i_e;
  rep.i_d_grid = best.i_d;
  rep.pi_e_grid = best.pay.pi_e;
  rep.pi_d_grid = best.pay.pi_d;
  rep.e_step = rg.e_step;
  rep.i_step = rg.i_step;

  const EquilibriumOutcome eq = solve_equilibrium(p);
  const double gap_e = std::abs(rep.pi_e_grid - eq.pi_e) / std::max(1.0, std::abs(eq.pi_e));
  const double gap_d = std::abs(rep.pi_d_grid - eq.pi_d) / std::max(1.0, std::abs(eq.pi_d));
  rep.max_payoff_gap = std::max(gap_e, gap_d);
  rep.agrees = rep.v_star == eq.v_star &&
               std::abs(rep.e_star_grid - eq.e_star) <= rg.e_step &&
               rep.max_payoff_gap <= 1e-2;
  return rep;
}

GameParams random_game_params(RngStream& rng, const DrawRanges& ranges) {
  GameParams p;
  p.n = rng.uniform_int(ranges.n_min, ranges.n_max);
  const double m = ranges.margin;
  const double g_lo = 1.0 / p.n;
  p.g = g_lo + (m + (1.0 - 2.0 * m) * rng.unit()) * (1.0 - g_lo);
  p.e0 = (m + (1.0 - 2.0 * m) * rng.unit()) * (1.0 / p.g);
  p.m = rng.uniform(ranges.m_min, ranges.m_max);
  p.a = rng.uniform(ranges.a_min, ranges.a_max);
  switch (rng.uniform_int(0, 2)) {
    case 0:
      p.production = ProductionSpec::isoelastic(rng.uniform(ranges.beta_min, ranges.beta_max));
      break;
    case 1:
      p.production = ProductionSpec::logarithmic();
      break;
    default:
      p.production = ProductionSpec::saturating(rng.uniform(ranges.kappa_min, ranges.kappa_max));
      break;
  }
  validate(p);
  return p;
}

}  // namespace franchise
