#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "logsp/manifolds.hpp"
#include "verify.hpp"

using namespace logsp;
using namespace logsp::testing;

namespace {
int count_sign_changes(const std::vector<double>& v) {
  int changes = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] > 0.0 && v[i] < 0.0) ++changes;
    else if (v[i - 1] < 0.0 && v[i] > 0.0) ++changes;
  return changes;
}
}  // namespace

TEST_CASE("nehari fiber basics") {
  const KernelTables& t = tables256();
  GridFunction g = gaussian(t.spec);
  const ProblemParams params{4.0, 1.0};
  const PotentialModel pot = builtin_constant(1.0);

  CHECK_THROWS_AS(nehari_fiber(GridFunction::zeros(t.spec), params, pot, t, {1.0}),
                  std::invalid_argument);

  // small-t behavior: h'(t)/t -> ||u||^2
  EnergyTerms terms = energy_terms(g, params, pot, t);
  const double norm_sq = terms.grad_sq + terms.v_u2;
  FiberScan f = nehari_fiber(g, params, pot, t, {1e-6});
  CHECK(f.derivative_values[0] / 1e-6 == doctest::Approx(norm_sq).epsilon(1e-9));

  // evenness: the fiber of -u equals the fiber of u
  FiberScan fn = nehari_fiber(scale(g, -1.0), params, pot, t, {0.5, 1.0, 2.0});
  FiberScan fp = nehari_fiber(g, params, pot, t, {0.5, 1.0, 2.0});
  for (std::size_t i = 0; i < fp.t_values.size(); ++i) {
    CHECK(fn.i_values[i] == fp.i_values[i]);
    CHECK(fn.derivative_values[i] == fp.derivative_values[i]);
  }
}

TEST_CASE("nehari condition") {
  const KernelTables& t = tables256();
  GridFunction g = gaussian(t.spec);
  const PotentialModel pot = builtin_constant(1.0);

  // wide Gaussian has N0 > 0: no maximizer at p = 4, b = 0
  EnergyTerms terms0 = energy_terms(g, {4.0, 0.0}, pot, t);
  CHECK(terms0.n0 > 0.0);
  CHECK_FALSE(nehari_condition(terms0, {4.0, 0.0}));
  CHECK_THROWS_AS(nehari_fiber_maximizer(terms0, {4.0, 0.0}, 1e-10), std::runtime_error);

  // p > 4 with b > 0 always admits the maximizer
  EnergyTerms terms5 = energy_terms(g, {5.0, 1.0}, pot, t);
  CHECK(nehari_condition(terms5, {5.0, 1.0}));

  // p = 4, b = 1: decided by b |u|_4^4 > N0
  EnergyTerms terms4 = energy_terms(g, {4.0, 1.0}, pot, t);
  CHECK(nehari_condition(terms4, {4.0, 1.0}) == (1.0 * terms4.lp > terms4.n0));
  CHECK(nehari_condition(terms4, {4.0, 1.0}));
}

TEST_CASE("nehari projection: closed form, fixed point, covariance") {
  const KernelTables& t = tables256();
  GridFunction g = gaussian(t.spec);
  const ProblemParams params{4.0, 1.0};
  const PotentialModel pot = builtin_well1();

  ProjectionResult proj = nehari_project(g, params, pot, t);
  EnergyTerms terms = energy_terms(g, params, pot, t);
  const double t_closed =
      std::sqrt((terms.grad_sq + terms.v_u2) / (params.b * terms.lp - terms.n0));
  CHECK(proj.t_star == doctest::Approx(t_closed).epsilon(1e-8));
  CHECK(proj.bracket_lo < proj.t_star);
  CHECK(proj.t_star < proj.bracket_hi);

  // the projected point satisfies the manifold identity
  EnergyReport rep = energy(proj.projected, params, pot, t);
  CHECK(std::abs(rep.Ipair) <= 1e-8 * rep.norm_sq);

  // fixed point: a state already on the manifold projects to t* = 1
  ProjectionResult again = nehari_project(proj.projected, params, pot, t);
  CHECK(again.t_star == doctest::Approx(1.0).epsilon(1e-10));

  // amplitude covariance t_{alpha u} = t_u / alpha
  for (double alpha : {0.5, 2.0}) {
    ProjectionResult pa = nehari_project(scale(g, alpha), params, pot, t);
    CHECK(pa.t_star == doctest::Approx(proj.t_star / alpha).epsilon(1e-8));
  }

  // maximality along the scanned fiber
  FiberScan scan = nehari_fiber(g, params, pot, t, log_spaced(1e-3, 1e3, 400));
  const double i_star = 0.5 * proj.t_star * proj.t_star * (terms.grad_sq + terms.v_u2) +
                        0.25 * std::pow(proj.t_star, 4) * terms.n0 -
                        params.b / params.p * std::pow(proj.t_star, params.p) * terms.lp;
  for (double v : scan.i_values) CHECK(v <= i_star + 1e-12 * std::abs(i_star));
  CHECK(count_sign_changes(scan.derivative_values) == 1);
}

TEST_CASE("np fiber: t = 1 recovers I and J; closed form against dilation") {
  const KernelTables& t = tables256();
  GridFunction g = gaussian(t.spec);
  const ProblemParams params{3.0, 1.0};
  const PotentialModel pot = builtin_well1();

  EnergyTerms terms = energy_terms(g, params, pot, t);
  FiberScan f = np_fiber(g, params, pot, t, {1.0});
  CHECK(f.i_values[0] == doctest::Approx(energy_value(terms, params)).epsilon(1e-14));
  CHECK(f.derivative_values[0] == doctest::Approx(j_value(terms, params)).epsilon(1e-12));

  // fiber values against direct dilation (analytic closure)
  for (double s : {0.5, 2.0}) {
    FiberScan fs = np_fiber(g, params, pot, t, {s});
    const double direct = energy_value(energy_terms(dilate(g, s), params, pot, t), params);
    CHECK(fs.i_values[0] == doctest::Approx(direct).epsilon(1e-5));
  }

  // constant potential: unique fiber critical point
  FiberScan fc = np_fiber(g, params, builtin_constant(1.0), t, log_spaced(1e-3, 1e3, 400));
  CHECK(count_sign_changes(fc.derivative_values) == 1);
}

TEST_CASE("np projection: residual, sign structure, dense-scan cross-check") {
  const KernelTables& t = tables256();
  // amplitude 2 keeps the fiber maximizer near t = 1, where the dilated
  // state stays resolved on the grid
  GridFunction g = gaussian(t.spec, 1.0, 2.0);
  const ProblemParams params{3.0, 1.0};
  const PotentialModel pot = builtin_well1();

  ProjectionResult proj = np_project(g, params, pot, t);
  EnergyTerms terms = energy_terms(g, params, pot, t);
  const double norm_sq = terms.grad_sq + terms.v_u2;
  CHECK(proj.residual <= 1e-8 * norm_sq);

  // J(Q(t, u)) positive before t*, negative after
  FiberScan scan = np_fiber(g, params, pot, t, log_spaced(1e-3, 1e3, 400));
  for (std::size_t i = 0; i < scan.t_values.size(); ++i) {
    if (scan.t_values[i] < 0.9 * proj.t_star) CHECK(scan.derivative_values[i] > 0.0);
    if (scan.t_values[i] > 1.1 * proj.t_star) CHECK(scan.derivative_values[i] < 0.0);
  }
  CHECK(count_sign_changes(scan.derivative_values) == 1);

  // dense-scan bisection oracle agrees with the root finder
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 1; i < scan.t_values.size(); ++i) {
    if (scan.derivative_values[i - 1] > 0.0 && scan.derivative_values[i] < 0.0) {
      lo = scan.t_values[i - 1];
      hi = scan.t_values[i];
    }
  }
  REQUIRE(lo > 0.0);
  for (int k = 0; k < 80; ++k) {
    const double mid = 0.5 * (lo + hi);
    FiberScan fm = np_fiber(g, params, pot, t, {mid});
    if (fm.derivative_values[0] > 0.0) lo = mid; else hi = mid;
  }
  CHECK(proj.t_star == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-6));

  // projecting the projected state (analytic closure keeps dilation exact)
  ProjectionResult again = np_project(proj.projected, params, pot, t);
  CHECK(again.t_star == doctest::Approx(1.0).epsilon(1e-6));

  // dilation covariance of the argmax: t_{Q(s,u)} = t_u / s
  for (double s : {0.5, 2.0}) {
    ProjectionResult ps = np_project(dilate(g, s), params, pot, t);
    CHECK(ps.t_star == doctest::Approx(proj.t_star / s).epsilon(1e-6));
  }
}

TEST_CASE("lemma 5.5 margins") {
  const KernelTables& t = tables256();
  GridFunction g = gaussian(t.spec);

  // t = 1 margin vanishes identically
  CHECK(lemma55_check(g, {3.0, 1.0}, builtin_well1(), t, {1.0}) == 0.0);

  const std::vector<double> ts = log_spaced(0.25, 4.0, 41);
  const double m_const = lemma55_check(g, {3.0, 1.0}, builtin_constant(1.0), t, ts);
  CHECK(m_const >= -1e-12);

  for (const PotentialModel& pot : {builtin_well1(), builtin_well2()}) {
    GridFunction u = logsp::cli::random_smooth_field(t.spec, 901);
    const double i_u = energy_value(energy_terms(u, {3.0, 1.0}, pot, t), {3.0, 1.0});
    const double margin = lemma55_check(u, {3.0, 1.0}, pot, t, ts);
    CHECK(margin >= -1e-8 * (1.0 + std::abs(i_u)));
  }
}

TEST_CASE("exact zero derivative at t = 1 is accepted immediately") {
  EnergyTerms terms;
  terms.grad_sq = 0.6;
  terms.v_u2 = 0.4;  // norm_sq = 1
  terms.n0 = 0.0;    // h'(1) = 1 + 0 - 1 = 0 exactly
  terms.lp = 1.0;
  terms.l2_sq = 1.0;
  FiberRoot root = nehari_fiber_maximizer(terms, {4.0, 1.0}, 1e-10);
  CHECK(root.t_star == 1.0);
  CHECK(root.iterations == 0);
}

TEST_CASE("preconditions") {
  const KernelTables& t = tables256();
  GridFunction g = gaussian(t.spec);
  CHECK_THROWS_AS(nehari_project(g, {3.5, 1.0}, builtin_well1(), t), std::invalid_argument);
  CHECK_THROWS_AS(np_project(g, {2.5, 1.0}, builtin_well1(), t), std::invalid_argument);
  CHECK_THROWS_AS(np_fiber(g, {3.0, 1.0}, builtin_well1(), t, {-1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(nehari_fiber(g, {4.0, 1.0}, builtin_well1(), t, {2.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(log_spaced(0.0, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(log_spaced(2.0, 1.0, 10), std::invalid_argument);
}
