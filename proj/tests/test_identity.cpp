#include <cmath>
#include <vector>

#include "doctest.h"
#include "franchise/errors.hpp"
#include "franchise/identity.hpp"
#include "franchise/oracle.hpp"
#include "franchise/random.hpp"
#include "test_support.hpp"

using namespace franchise;
using namespace testsupport;

namespace {

GameParams base_params() {
  GameParams p;
  p.n = 10;
  p.e0 = 1.0;
  p.m = 0.5;
  p.a = 2.0;
  p.g = 0.5;
  p.production = ProductionSpec::isoelastic(0.5);
  return p;
}

IdentityParams base_identity() {
  IdentityParams ip;
  ip.base = base_params();
  ip.alpha = 0.5;
  ip.p_tot = 0.5;
  return ip;
}

// Instance whose extend-or-extract decision flips with the group size.
IdentityParams flip_identity(double p_tot) {
  IdentityParams ip;
  ip.base = base_params();
  ip.base.m = 2.0;
  ip.alpha = 0.5;
  ip.p_tot = p_tot;
  return ip;
}

IdentityParams random_identity(RngStream& rng) {
  IdentityParams ip;
  ip.base = random_game_params(rng, DrawRanges{});
  ip.alpha = rng.uniform(0.0, 0.9);
  const double p_lo = std::min(1.0, ip.base.e0 / ip.base.n + 0.01);
  ip.p_tot = rng.uniform(p_lo, 1.0);
  return ip;
}

// Independent route to the minimal credible elite size: root of the
// public-minus-steal utility gap at fixed first-order investments, found with
// the test-local bisection over [e0, n].
double commitment_size_oracle(const IdentityParams& ip) {
  const Investments inv = optimal_investments(ip.base);
  const auto gap = [&](double e) {
    const double pub = altruistic_utilities(ip, e, Institution::Public, inv.i_e, inv.i_d_public).u_e;
    const double steal = altruistic_utilities(ip, e, Institution::Steal, inv.i_e, inv.i_d_public).u_e;
    return pub - steal;
  };
  if (gap(ip.base.e0) >= 0.0) return ip.base.e0;
  double hi = (1.0 / ip.base.g + ip.base.n) / 2.0;
  int guard = 0;
  while (gap(hi) < 0.0 && guard++ < 200) hi = (hi + ip.base.n) / 2.0;
  REQUIRE(gap(hi) >= 0.0);
  return bisect_root(gap, ip.base.e0, hi);
}

}  // namespace

TEST_CASE("identity: elite share of the focal group") {
  IdentityParams ip = base_identity();
  CHECK(q_fraction(2.0, ip) == 0.4);
  CHECK(q_fraction(0.0, ip) == 0.0);
  ip.p_tot = 0.15;  // group smaller than the elite candidate: share clamps
  CHECK(q_fraction(2.0, ip) == 1.0);
}

TEST_CASE("identity: utilities at the pinned inclusive outcome") {
  const IdentityParams ip = base_identity();
  const GroupUtilities u = altruistic_utilities(ip, 2.0, Institution::Public, 1.0, 0.25);
  // material payoffs 7.5 / 5.75, q = 0.4
  CHECK(u.u_e == doctest::Approx(10.725).epsilon(1e-12));
  CHECK(u.u_d_other == doctest::Approx(5.75 * 1.5).epsilon(1e-12));
  CHECK(u.u_d_group == doctest::Approx(5.75 + 0.5 * (0.4 * 7.5 + 0.6 * 5.75)).epsilon(1e-12));
}

TEST_CASE("identity: zero altruism leaves utilities material") {
  RngStream rng(404);
  for (int k = 0; k < 200; ++k) {
    IdentityParams ip = random_identity(rng);
    ip.alpha = 0.0;
    const Investments inv = optimal_investments(ip.base);
    const double elite = std::min(2.0 * ip.base.e0, ip.base.n);
    for (Institution v : {Institution::Public, Institution::Steal}) {
      const Payoffs mat = material_payoffs(ip.base, elite, inv.i_e, inv.i_d_public, v);
      const GroupUtilities u = altruistic_utilities(ip, elite, v, inv.i_e, inv.i_d_public);
      CHECK(u.u_e == mat.pi_e);
      CHECK(u.u_d_other == mat.pi_d);
      CHECK(u.u_d_group == mat.pi_d);
    }
  }
}

TEST_CASE("identity: minimal credible elite size, pinned values") {
  const IdentityParams ip = base_identity();
  // 1 / (g (1 + alpha) - alpha / (p_tot n)) = 1 / 0.65
  CHECK(min_commitment_size(ip) == doctest::Approx(1.5384615384615385).epsilon(1e-12));

  IdentityParams material = ip;
  material.alpha = 0.0;
  CHECK(min_commitment_size(material) == 1.0 / material.base.g);  // exact reduction

  CHECK(min_commitment_size(flip_identity(0.9)) == doctest::Approx(1.44).epsilon(1e-12));
  CHECK(min_commitment_size(flip_identity(0.3)) == doctest::Approx(12.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("identity: closed form agrees with two independent bisection routes") {
  RngStream rng(405);
  for (int k = 0; k < 400; ++k) {
    const IdentityParams ip = random_identity(rng);
    const double closed = min_commitment_size(ip);
    CHECK(std::abs(closed - min_commitment_size_bisect(ip)) <= 1e-9);
    CHECK(std::abs(closed - commitment_size_oracle(ip)) <= 2e-9);
    CHECK(closed >= ip.base.e0);
    CHECK(closed <= 1.0 / ip.base.g + 1e-12);
  }
}

TEST_CASE("identity: commitment size shrinks as the group widens") {
  std::vector<double> grid = {0.2, 0.4, 0.6, 0.8, 1.0};
  double prev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    IdentityParams ip = base_identity();
    ip.p_tot = grid[i];
    const double e_p = min_commitment_size(ip);
    if (i > 0) CHECK(e_p < prev);
    prev = e_p;
  }
  // At p_tot = 1/(g n) the interior formula touches the clamped-q answer 1/g.
  IdentityParams edge = base_identity();
  edge.p_tot = 0.2;
  CHECK(min_commitment_size(edge) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("identity: a tiny group pins the commitment size at 1/g") {
  IdentityParams ip = base_identity();
  ip.p_tot = 0.15;  // p_tot * n = 1.5 < 1/g: q clamps at 1 over the whole range
  CHECK(min_commitment_size(ip) == doctest::Approx(1.0 / ip.base.g).epsilon(1e-12));
}

TEST_CASE("identity: already-credible founding elite needs no extension") {
  IdentityParams ip = base_identity();
  ip.base.e0 = 3.0;  // e0 > 1/g = 2: the gap is non-negative at e0
  CHECK(min_commitment_size(ip) == 3.0);
}

TEST_CASE("identity: preference gap crosses zero once on the interior") {
  for (const IdentityParams& ip : {base_identity(), flip_identity(0.9), flip_identity(0.3)}) {
    const Investments inv = optimal_investments(ip.base);
    const auto gap = [&](double e) {
      const double pub =
          altruistic_utilities(ip, e, Institution::Public, inv.i_e, inv.i_d_public).u_e;
      const double steal =
          altruistic_utilities(ip, e, Institution::Steal, inv.i_e, inv.i_d_public).u_e;
      return pub - steal;
    };
    int changes = 0;
    double prev = gap(ip.base.e0);
    CHECK(prev < 0.0);
    for (double e : lin_grid(ip.base.e0, ip.base.n - 0.05, 400)) {
      const double cur = gap(e);
      if ((prev < 0.0 && cur >= 0.0) || (prev >= 0.0 && cur < 0.0)) ++changes;
      prev = cur;
    }
    CHECK(changes == 1);
  }
}

TEST_CASE("identity: zero altruism reduces the full solution to the base game") {
  RngStream rng(406);
  int checked = 0;
  for (int k = 0; k < 300; ++k) {
    IdentityParams ip = random_identity(rng);
    ip.alpha = 0.0;
    const EquilibriumOutcome base = solve_equilibrium(ip.base);
    if (std::abs(base.threshold_lhs - 1.0) < 1e-9) continue;  // knife-edge draws excluded
    const IdentityOutcome out = solve_equilibrium_identity(ip);
    CHECK(out.extends == base.inclusive);
    if (base.no_commitment_problem) continue;
    ++checked;
    CHECK(out.e_p == 1.0 / ip.base.g);
    CHECK(std::abs(out.outcome.e_star - base.e_star) <= 1e-12 * std::max(1.0, base.e_star));
    CHECK(out.outcome.v_star == base.v_star);
    CHECK(std::abs(out.outcome.pi_e - base.pi_e) <= 1e-12 * std::max(1.0, std::abs(base.pi_e)));
    CHECK(std::abs(out.outcome.pi_d - base.pi_d) <= 1e-12 * std::max(1.0, std::abs(base.pi_d)));
    CHECK(std::abs(out.outcome.y - base.y) <= 1e-12 * std::max(1.0, std::abs(base.y)));
  }
  CHECK(checked > 50);
}

TEST_CASE("identity: group size flips the extension decision") {
  const IdentityOutcome narrow = solve_equilibrium_identity(flip_identity(0.3));
  CHECK(!narrow.extends);
  CHECK(narrow.outcome.v_star == Institution::Steal);
  CHECK(narrow.outcome.e_star == 1.0);
  // extractive utility recomputed by hand: pi_e = 21, q = 1/3
  CHECK(narrow.u_e_extr == doctest::Approx(24.5).epsilon(1e-12));
  CHECK(narrow.u_e_incl == doctest::Approx(15.428571428571429 + 0.5 * (4.0 / 7.0 * 15.428571428571429 +
                                                                       3.0 / 7.0 * 12.178571428571429))
                               .epsilon(1e-9));

  const IdentityOutcome wide = solve_equilibrium_identity(flip_identity(0.9));
  CHECK(wide.extends);
  CHECK(wide.outcome.v_star == Institution::Public);
  CHECK(wide.outcome.e_star == doctest::Approx(1.44).epsilon(1e-12));
  CHECK(wide.u_e_extr == doctest::Approx(21.0 + 7.0 / 6.0).epsilon(1e-12));
  CHECK(wide.u_e_incl == doctest::Approx(22.395).epsilon(1e-9));
  CHECK(wide.u_e_incl > wide.u_e_extr);

  // Once extending wins it keeps winning as the group grows further.
  bool extended = false;
  for (double p : {0.3, 0.45, 0.6, 0.75, 0.9}) {
    const bool now = solve_equilibrium_identity(flip_identity(p)).extends;
    if (extended) CHECK(now);
    extended = extended || now;
  }
  CHECK(extended);
}

TEST_CASE("identity: group-size sweep sorts, flags, and isolates bad points") {
  const IdentityParams ip = flip_identity(0.5);
  const std::vector<GroupSizePoint> pts = sweep_group_size(ip, {0.9, 0.3, 0.1, 0.05, 0.6});
  REQUIRE(pts.size() == 5);
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].p_tot > pts[i - 1].p_tot);

  CHECK(pts[0].p_tot == 0.05);
  REQUIRE(pts[0].error.has_value());  // p_tot * n = 0.5 < e0

  CHECK(pts[1].p_tot == 0.1);
  CHECK(!pts[1].error.has_value());
  CHECK(pts[1].degenerate);  // group is exactly the elite

  for (std::size_t i = 2; i < pts.size(); ++i) {
    CHECK(!pts[i].error.has_value());
    CHECK(!pts[i].degenerate);
    CHECK(pts[i].alpha == ip.alpha);
  }
  CHECK(!pts[2].extends);
  CHECK(pts[4].extends);
}

TEST_CASE("identity: parameter validation") {
  const auto expect_domain = [](IdentityParams ip) {
    CHECK_THROWS_AS(validate(ip), franchise::error);
  };
  IdentityParams good = base_identity();
  IdentityParams bad = good;
  bad.alpha = -0.1;
  expect_domain(bad);
  bad = good;
  bad.alpha = 1.0;
  expect_domain(bad);
  bad = good;
  bad.p_tot = 0.0;
  expect_domain(bad);
  bad = good;
  bad.p_tot = 1.5;
  expect_domain(bad);
  bad = good;
  bad.p_tot = 0.05;  // group cannot even contain the founding elite
  expect_domain(bad);
  CHECK_NOTHROW(validate(good));
}
