#include "franchise/production.hpp"

#include <cmath>

#include "franchise/errors.hpp"
#include "franchise/roots.hpp"

namespace franchise {

const char* family_name(Family f) {
  switch (f) {
    case Family::Isoelastic: return "isoelastic";
    case Family::Log: return "log";
    case Family::Saturating: return "saturating";
  }
  return "unknown";
}

std::optional<Family> family_from_name(const std::string& name) {
  if (name == "isoelastic") return Family::Isoelastic;
  if (name == "log") return Family::Log;
  if (name == "saturating") return Family::Saturating;
  return std::nullopt;
}

ProductionSpec ProductionSpec::isoelastic(double beta) {
  ProductionSpec s;
  s.family = Family::Isoelastic;
  s.beta = beta;
  return s;
}

ProductionSpec ProductionSpec::logarithmic() {
  ProductionSpec s;
  s.family = Family::Log;
  return s;
}

ProductionSpec ProductionSpec::saturating(double kappa) {
  ProductionSpec s;
  s.family = Family::Saturating;
  s.kappa = kappa;
  return s;
}

void validate(const ProductionSpec& spec) {
  if (spec.family == Family::Isoelastic && !(std::isfinite(spec.beta) && spec.beta > 0.0 && spec.beta < 1.0))
    throw_domain("production: beta must lie in (0, 1)");
  if (spec.family == Family::Saturating && !(std::isfinite(spec.kappa) && spec.kappa > 0.0))
    throw_domain("production: kappa must be positive");
}

namespace {

void check_effort(double effort) {
  if (!std::isfinite(effort) || effort < 0.0)
    throw_domain("production: effort must be finite and non-negative");
}

}  // namespace

double eval_f(const ProductionSpec& spec, double effort) {
  validate(spec);
  check_effort(effort);
  switch (spec.family) {
    case Family::Isoelastic: return std::pow(effort, spec.beta);
    case Family::Log: return std::log1p(effort);
    case Family::Saturating: return spec.kappa * effort / (1.0 + effort);
  }
  throw_domain("production: unknown family");
}

std::optional<double> eval_f_prime(const ProductionSpec& spec, double effort) {
  validate(spec);
  check_effort(effort);
  switch (spec.family) {
    case Family::Isoelastic:
      if (effort == 0.0) return std::nullopt;  // infinite marginal product
      return spec.beta * std::pow(effort, spec.beta - 1.0);
    case Family::Log:
      return 1.0 / (1.0 + effort);
    case Family::Saturating:
      return spec.kappa / ((1.0 + effort) * (1.0 + effort));
  }
  throw_domain("production: unknown family");
}

std::optional<double> f_prime_at_zero(const ProductionSpec& spec) {
  validate(spec);
  switch (spec.family) {
    case Family::Isoelastic: return std::nullopt;
    case Family::Log: return 1.0;
    case Family::Saturating: return spec.kappa;
  }
  throw_domain("production: unknown family");
}

namespace {

void check_marginal(double y) {
  if (!std::isfinite(y) || y <= 0.0)
    throw_domain("production: target marginal product must be finite and positive");
}

bool at_corner(const ProductionSpec& spec, double y) {
  auto fp0 = f_prime_at_zero(spec);
  return fp0.has_value() && y >= *fp0;
}

}  // namespace

double invert_f_prime(const ProductionSpec& spec, double marginal) {
  validate(spec);
  check_marginal(marginal);
  if (at_corner(spec, marginal)) return 0.0;
  switch (spec.family) {
    case Family::Isoelastic:
      return std::pow(marginal / spec.beta, 1.0 / (spec.beta - 1.0));
    case Family::Log:
      return 1.0 / marginal - 1.0;
    case Family::Saturating:
      return std::sqrt(spec.kappa / marginal) - 1.0;
  }
  throw_domain("production: unknown family");
}

double invert_f_prime_bisect(const ProductionSpec& spec, double marginal) {
  validate(spec);
  check_marginal(marginal);
  if (at_corner(spec, marginal)) return 0.0;
  // f' is strictly decreasing, so f'(I) - y changes sign once on (0, inf).
  auto gap = [&](double i) { return *eval_f_prime(spec, i) - marginal; };
  const double lo = 1e-12;
  if (gap(lo) <= 0.0) return lo;  // root below the smallest representable bracket
  auto bracket = expand_bracket_up(gap, lo, 1.0);
  if (!bracket) throw_domain("production: failed to bracket marginal-product inversion");
  return bisect(gap, bracket->first, bracket->second, {1e-12, 200});
}

AssumptionReport validate_assumptions(const ProductionSpec& spec, double tfp) {
  validate(spec);
  if (!std::isfinite(tfp) || tfp <= 0.0) throw_domain("production: tfp must be positive");
  AssumptionReport rep;

  auto fp0 = f_prime_at_zero(spec);
  rep.marginal_at_zero_ok = !fp0.has_value() || tfp * *fp0 > 1.0;
  if (!rep.marginal_at_zero_ok)
    rep.violations.push_back("a * f'(0) <= 1: investment never pays at this tfp (corner solutions)");

  rep.marginal_tail_ok = false;
  for (double i = 1.0; i <= 1e12; i *= 2.0) {
    if (tfp * *eval_f_prime(spec, i) < 1.0) {
      rep.marginal_tail_ok = true;
      break;
    }
  }
  if (!rep.marginal_tail_ok)
    rep.violations.push_back("a * f'(I) >= 1 everywhere scanned: no finite interior optimum");
  return rep;
}

}  // namespace franchise
