#include "franchise/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "franchise/errors.hpp"
#include "franchise/roots.hpp"

namespace franchise {

const char* terminal_name(Terminal t) {
  switch (t) {
    case Terminal::Converged: return "converged";
    case Terminal::MaxPeriods: return "max_periods";
    case Terminal::Diverged: return "diverged";
    case Terminal::CollapsedToZero: return "collapsed_to_zero";
  }
  return "unknown";
}

const char* stability_name(Stability s) {
  return s == Stability::Stable ? "stable" : "unstable";
}

const char* regime_name(Regime r) { return r == Regime::Low ? "low" : "high"; }

const char* long_run_name(LongRun r) {
  switch (r) {
    case LongRun::LowTrap: return "low_trap";
    case LongRun::TransitionExpected: return "transition_expected";
    case LongRun::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

void validate(const DynParams& p) {
  validate(p.base);
  if (!std::isfinite(p.delta) || p.delta <= 0.0 || p.delta >= 1.0)
    throw_domain("delta must lie in (0, 1)");
  if (!std::isfinite(p.a_coef) || p.a_coef < 0.0) throw_domain("a_coef must be >= 0");
  if (p.t_max < 1) throw_domain("t_max must be >= 1");
  if (!std::isfinite(p.conv_tol) || p.conv_tol <= 0.0) throw_domain("conv_tol must be positive");
  if (!std::isfinite(p.a_blowup) || p.a_blowup <= p.conv_tol)
    throw_domain("a_blowup must exceed conv_tol");
}

StepResult step(const DynParams& p, double a_t, double e0_t, long t) {
  validate(p);
  if (!std::isfinite(a_t) || a_t <= 0.0) throw_domain("a_t must be positive");

  GameParams stage = p.base;
  stage.a = a_t;
  stage.e0 = e0_t;
  const EquilibriumOutcome eq = solve_equilibrium(stage);

  StepResult out;
  out.record.t = t;
  out.record.a = a_t;
  out.record.e0 = e0_t;
  out.record.e = eq.e_star;
  out.record.v = eq.v_star;
  out.record.i_e = eq.i_e;
  out.record.i_d = eq.i_d;
  out.record.i_bar = eq.e_star * eq.i_e + (p.base.n - eq.e_star) * eq.i_d;
  out.record.y = eq.y;
  out.record.inclusive = eq.inclusive;
  out.a_next = (1.0 - p.delta) * a_t + p.a_coef * out.record.i_bar;
  out.e0_next = eq.e_star;
  return out;
}

Trajectory simulate(const DynParams& p) {
  validate(p);
  const double collapse_floor = p.conv_tol / p.delta;

  Trajectory traj;
  traj.periods.reserve(static_cast<std::size_t>(std::min<long>(p.t_max, 4096)));
  double a = p.base.a;
  double e0 = p.base.e0;
  for (long t = 1; t <= p.t_max; ++t) {
    const StepResult s = step(p, a, e0, t);
    traj.periods.push_back(s.record);
    if (!traj.transition_period && s.record.inclusive) traj.transition_period = t;
    traj.a_final = s.a_next;
    if (s.a_next > p.a_blowup) {
      traj.terminal = Terminal::Diverged;
      return traj;
    }
    if (s.a_next < collapse_floor) {
      traj.terminal = Terminal::CollapsedToZero;
      return traj;
    }
    if (std::abs(s.a_next - a) < p.conv_tol) {
      traj.terminal = Terminal::Converged;
      return traj;
    }
    a = s.a_next;
    e0 = s.e0_next;
  }
  traj.terminal = Terminal::MaxPeriods;
  return traj;
}

namespace {

// Aggregate investment at productivity level a under each permanent regime.
double aggregate_low(const DynParams& p, double a) {
  return p.base.e0 * invert_f_prime(p.base.production, 1.0 / a);
}

double aggregate_high(const DynParams& p, double a) {
  const double e = 1.0 / p.base.g;
  return e * invert_f_prime(p.base.production, 1.0 / a) +
         (p.base.n - e) * invert_f_prime(p.base.production, 1.0 / (p.base.g * a));
}

template <class Agg>
SteadyStateReport find_steady_states(const DynParams& p, Regime regime, Agg&& agg) {
  validate(p);
  SteadyStateReport rep;
  rep.regime = regime;
  rep.bracket_lo = std::max(p.conv_tol, 1e-12);
  rep.bracket_hi = p.a_blowup;
  if (p.a_coef == 0.0) return rep;  // pure decay: no interior fixed point

  auto phi = [&](double a) { return (p.a_coef / p.delta) * agg(p, a) - a; };
  auto map = [&](double a) { return (1.0 - p.delta) * a + p.a_coef * agg(p, a); };

  const int scan_points = 2000;
  std::vector<double> pts;
  pts.reserve(scan_points);
  const double ratio = rep.bracket_hi / rep.bracket_lo;
  for (int k = 0; k < scan_points; ++k)
    pts.push_back(rep.bracket_lo *
                  std::pow(ratio, static_cast<double>(k) / static_cast<double>(scan_points - 1)));

  for (const auto& [lo, hi] : scan_sign_changes(phi, pts)) {
    const double root =
        lo == hi ? lo : bisect(phi, lo, hi, {1e-13 * std::max(1.0, hi), 200});
    FixedPoint fp;
    fp.a_ss = root;
    fp.residual = phi(root);
    const double h = 1e-6 * std::max(1.0, root);
    const double t_prime = (map(root + h) - map(root - h)) / (2.0 * h);
    fp.stability = std::abs(t_prime) < 1.0 ? Stability::Stable : Stability::Unstable;
    rep.fixed_points.push_back(fp);
  }
  return rep;
}

}  // namespace

SteadyStateReport low_steady_states(const DynParams& p) {
  return find_steady_states(p, Regime::Low, aggregate_low);
}

SteadyStateReport high_steady_states(const DynParams& p) {
  return find_steady_states(p, Regime::High, aggregate_high);
}

Classification classify_long_run(const DynParams& p) {
  validate(p);
  Classification c;

  const Trajectory traj = simulate(p);
  c.sim_terminal = traj.terminal;
  c.sim_transition = traj.transition_period;

  const SteadyStateReport low = low_steady_states(p);
  const bool any_stable =
      std::any_of(low.fixed_points.begin(), low.fixed_points.end(),
                  [](const FixedPoint& fp) { return fp.stability == Stability::Stable; });

  // Where does the economy settle if it stays extractive forever?
  const double collapse_floor = p.conv_tol / p.delta;
  double a = p.base.a;
  std::optional<double> a_lim;
  for (long it = 0; it < p.t_max; ++it) {
    const double nxt = (1.0 - p.delta) * a + p.a_coef * aggregate_low(p, a);
    if (nxt > p.a_blowup || nxt < collapse_floor) break;
    if (std::abs(nxt - a) < p.conv_tol) {
      a_lim = nxt;
      break;
    }
    a = nxt;
  }

  if (!any_stable || !a_lim) {
    c.regime = LongRun::Indeterminate;
    c.note = !any_stable ? "no stable extractive steady state"
                         : "extractive path did not settle at an interior steady state";
    c.consistent = true;  // no analytic prediction to contradict
    return c;
  }

  c.a_ss_low = *a_lim;
  GameParams at_ss = p.base;
  at_ss.a = *a_lim;
  c.criterion_lhs = threshold_lhs(at_ss);
  c.regime = *c.criterion_lhs < 1.0 ? LongRun::LowTrap : LongRun::TransitionExpected;
  c.consistent =
      (c.regime == LongRun::TransitionExpected) == c.sim_transition.has_value();
  return c;
}

}  // namespace franchise
