#pragma once

#include <optional>
#include <string>
#include <vector>

#include "franchise/game.hpp"

namespace franchise {

// Repeated game with myopic players and capital accumulation:
//   a_{t+1}  = (1 - delta) * a_t + a_coef * ibar_t,
//   ibar_t   = e_t * i_e_t + (n - e_t) * i_d_t,
//   e0_{t+1} = e_t   (extensions are irreversible).
// base.a seeds a_1 and base.e0 seeds the period-1 elite.
struct DynParams {
  GameParams base;
  double delta = 0.2;      // depreciation, in (0, 1)
  double a_coef = 0.5;     // accumulation coefficient, >= 0
  long t_max = 100000;
  double conv_tol = 1e-10;
  double a_blowup = 1e9;
};

void validate(const DynParams& p);

struct PeriodRecord {
  long t = 0;
  double a = 0.0;   // productivity at the start of the period
  double e0 = 0.0;  // elite inherited into the period
  double e = 0.0;   // elite after the extension stage
  Institution v = Institution::Steal;
  double i_e = 0.0;
  double i_d = 0.0;
  double i_bar = 0.0;
  double y = 0.0;
  bool inclusive = false;
};

enum class Terminal { Converged, MaxPeriods, Diverged, CollapsedToZero };
const char* terminal_name(Terminal t);

struct Trajectory {
  std::vector<PeriodRecord> periods;
  Terminal terminal = Terminal::MaxPeriods;
  double a_final = 0.0;                    // first productivity level not played out
  std::optional<long> transition_period;   // first period with an inclusive outcome
};

struct StepResult {
  PeriodRecord record;
  double a_next = 0.0;
  double e0_next = 0.0;
};

// One period: play the one-shot game at (a_t, e0_t), then accumulate.
StepResult step(const DynParams& p, double a_t, double e0_t, long t);

// Iterate until |a_{t+1} - a_t| < conv_tol (Converged), a exceeds a_blowup
// (Diverged), a falls below conv_tol / delta (CollapsedToZero; pure decay can
// never trip the convergence test first, so the floor is checked before it),
// or t_max periods elapse (MaxPeriods).
Trajectory simulate(const DynParams& p);

enum class Stability { Stable, Unstable };
const char* stability_name(Stability s);

enum class Regime { Low, High };
const char* regime_name(Regime r);

struct FixedPoint {
  double a_ss = 0.0;
  Stability stability = Stability::Unstable;  // |T'(a_ss)| < 1 is stable
  double residual = 0.0;                      // (a_coef/delta) * ibar(a_ss) - a_ss
};

struct SteadyStateReport {
  Regime regime = Regime::Low;
  std::vector<FixedPoint> fixed_points;  // ascending; may be empty
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

// Interior fixed points of the one-period productivity map under permanently
// extractive play (elite e0, only the elite invests) ...
SteadyStateReport low_steady_states(const DynParams& p);
// ... and under inclusive play (elite 1/g, everyone invests).
SteadyStateReport high_steady_states(const DynParams& p);

enum class LongRun { LowTrap, TransitionExpected, Indeterminate };
const char* long_run_name(LongRun r);

struct Classification {
  LongRun regime = LongRun::Indeterminate;
  std::optional<double> a_ss_low;       // stable extractive steady state reached from a_1
  std::optional<double> criterion_lhs;  // threshold_lhs evaluated at a_ss_low
  Terminal sim_terminal = Terminal::MaxPeriods;
  std::optional<long> sim_transition;
  bool consistent = false;  // analytic classification agrees with the simulated path
  std::string note;
};

// Would the economy ever escape extraction?  Evaluates the extension threshold
// at the stable extractive steady state reached from a_1, then cross-checks
// against a full simulation.
Classification classify_long_run(const DynParams& p);

}  // namespace franchise
