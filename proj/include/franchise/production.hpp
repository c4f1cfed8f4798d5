#pragma once

#include <optional>
#include <string>
#include <vector>

namespace franchise {

// Concave production technologies f with f(0) = 0, f' > 0, f'' < 0:
//
//   isoelastic:  f(I) = I^beta,            0 < beta < 1   (f'(0+) = +inf)
//   log:         f(I) = ln(1 + I)                         (f'(0)  = 1)
//   saturating:  f(I) = kappa * I / (1 + I),  kappa > 0   (f'(0)  = kappa)
enum class Family { Isoelastic, Log, Saturating };

const char* family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

struct ProductionSpec {
  Family family = Family::Isoelastic;
  double beta = 0.5;   // isoelastic exponent
  double kappa = 1.0;  // saturating scale

  static ProductionSpec isoelastic(double beta);
  static ProductionSpec logarithmic();
  static ProductionSpec saturating(double kappa);
};

void validate(const ProductionSpec& spec);  // throws errc::domain_error

double eval_f(const ProductionSpec& spec, double effort);

// Marginal product f'(I).  An engaged nullopt encodes an infinite marginal
// product (isoelastic family at I = 0); finite values never travel as inf/nan.
std::optional<double> eval_f_prime(const ProductionSpec& spec, double effort);

// f'(0+); nullopt = infinite.
std::optional<double> f_prime_at_zero(const ProductionSpec& spec);

// Smallest effort I >= 0 with f'(I) = y, via the per-family closed form.
// Returns 0 when y >= f'(0+) (corner: no interior solution).
double invert_f_prime(const ProductionSpec& spec, double marginal);

// Same inversion via bracketed bisection on f' (bracket grows from 1e-12 by
// doubling until a sign change; 200 iterations max, abs tol 1e-12).  Kept as
// an independent route against the closed forms.
double invert_f_prime_bisect(const ProductionSpec& spec, double marginal);

// Interior-solution checks for a given TFP level a:
//   - a * f'(0+) > 1   (some investment is ever worthwhile)
//   - a * f'(I)  < 1 for some finite I (investment saturates)
struct AssumptionReport {
  bool marginal_at_zero_ok = false;
  bool marginal_tail_ok = false;
  std::vector<std::string> violations;
  bool ok() const { return marginal_at_zero_ok && marginal_tail_ok; }
};

AssumptionReport validate_assumptions(const ProductionSpec& spec, double tfp);

}  // namespace franchise
