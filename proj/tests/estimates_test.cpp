#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "horograph/analytic.hpp"
#include "horograph/estimates.hpp"
#include "horograph/solver.hpp"

using namespace horograph;
using namespace horograph::estimates;
using geometry::BoundaryData;
using geometry::DomainSpec;
using geometry::Point2;

namespace {

const analytic::GeodesicPlane kPlane{2.0, {1.0}};

ScalarField oracle_field(const analytic::OracleSurface& o, const DomainSpec& d)
{
    auto fn = [&](Point2 q) { return analytic::value(o, q.x, q.t); };
    return ScalarField::from_function(d, BoundaryData::sample(d, fn, analytic::oracle_name(o)), fn);
}

ScalarField unit_data_solution(double width, int nx, int nt)
{
    const auto d = DomainSpec::rectangle({0.0, width, 0.0, 1.0}, nx, nt);
    return solver::continuation_solve(d, BoundaryData::constant(d, 1.0), solver::ContinuationSchedule::standard())
        .final_field();
}

geometry::GeometricQuantities quantities(const ScalarField& f)
{
    return geometry::compute_quantities(f.domain(), f.boundary());
}

}  // namespace

TEST(LengthBound, GeodesicPlaneFieldPasses)
{
    const auto f = oracle_field(kPlane, DomainSpec::rectangle({0.5, 1.5, 0.0, 1.0}, 32, 32));
    const auto r = check_length_bounds(f, quantities(f));
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.violations, 0U);
    EXPECT_EQ(r.nodes_checked, 31U * 31U);
    EXPECT_NEAR(r.min_f, 1.9364916731037085, 1e-15);
    EXPECT_NEAR(r.R, 2.0615528128088303, 1e-15);
    EXPECT_LE(r.observed_max, 2.0);
}

TEST(LengthBound, ConstantMinimumFailsStrictness)
{
    const auto d = DomainSpec::rectangle({0.5, 1.5, 0.0, 1.0}, 16, 16);
    const auto trace = oracle_field(kPlane, d).boundary();
    const auto f = ScalarField::constant(d, trace, trace.min());
    const auto r = check_length_bounds(f, quantities(f));
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(r.violations, r.nodes_checked);
}

TEST(LengthBound, UnitDataWidthTwoStaysBelowRootTwo)
{
    const auto f = unit_data_solution(2.0, 32, 16);
    const auto r = check_length_bounds(f, quantities(f));
    EXPECT_TRUE(r.pass);
    EXPECT_LT(r.observed_max, std::sqrt(2.0));
    EXPECT_GT(r.observed_min, 1.0);
}

TEST(BoundaryGradient, GeodesicPlaneCertifiesBothBarriers)
{
    const auto f = oracle_field(kPlane, DomainSpec::rectangle({0.5, 1.5, 0.0, 1.0}, 32, 32));
    const auto r = check_boundary_gradient(f, phi_from_oracle(kPlane), 0.0);
    EXPECT_EQ(r.label, "assembled per proof");
    ASSERT_EQ(r.barrier_checks.size(), 2U);
    for (const auto& c : r.barrier_checks) {
        EXPECT_GT(c.samples, 0U) << c.name;
        EXPECT_TRUE(c.pass) << c.name << " worst " << c.worst;
        EXPECT_EQ(c.sign_observed, c.sign_expected) << c.name;
    }
    EXPECT_LE(r.observed_max_boundary_grad, r.C_predicted);
    EXPECT_TRUE(r.pass);
}

TEST(BoundaryGradient, ConstantFieldPassesAndWarnsOnThinCollar)
{
    const auto d = DomainSpec::rectangle({0.0, 0.5, 0.0, 1.0}, 16, 32);
    const auto f = ScalarField::constant(d, BoundaryData::constant(d, 1.0), 1.0);
    const auto r = check_boundary_gradient(f, phi_constant(1.0), 0.5);
    EXPECT_EQ(r.observed_max_boundary_grad, 0.0);
    EXPECT_TRUE(r.pass);
    // delta1 for these constants is about 0.32, above the inradius 0.25.
    ASSERT_EQ(r.warnings.size(), 1U);
    EXPECT_EQ(r.warnings.front().rfind("CollarEmpty", 0), 0U);
    EXPECT_DOUBLE_EQ(r.params.delta1, 0.25);
    for (double t : {0.0, 0.1, 0.2, 0.25}) {
        EXPECT_GE(analytic::boundary_barrier_dpsi(r.params, t), 1.0);
    }
}

TEST(BoundaryGradient, ConvergedUnitDataField)
{
    const auto f = unit_data_solution(0.5, 16, 32);
    const auto r = check_boundary_gradient(f, phi_constant(1.0), 0.0);
    EXPECT_LE(r.observed_max_boundary_grad, r.C_predicted);
    EXPECT_TRUE(r.pass);
}

TEST(Modulus, ConstantFieldHasNoViolations)
{
    const auto d = DomainSpec::rectangle({0.0, 1.0, 0.0, 1.0}, 16, 16);
    const auto f = ScalarField::constant(d, BoundaryData::constant(d, 2.0), 2.0);
    for (double delta : {0.01, 0.3, 2.0}) {
        const auto r = check_modulus_with_delta(f, 0.1, 1.0, delta);
        EXPECT_EQ(r.violations, 0U);
        EXPECT_TRUE(r.pass);
    }
    EXPECT_EQ(sampled_delta0(f, 0.1), d.diameter());
    // The barrier radius lies far below the smallest double; the report
    // keeps its logarithm and checks no pair.
    const auto r = check_modulus(f, 0.1, 1.0);
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(std::isfinite(r.log_delta));
    EXPECT_LT(r.log_delta, std::log(std::numeric_limits<double>::denorm_min()));
    EXPECT_EQ(r.delta, 0.0);
    EXPECT_EQ(r.nodes_checked, 0U);
}

TEST(Modulus, PerturbedNearBoundaryNodeIsCaught)
{
    const auto d = DomainSpec::rectangle({0.0, 1.0, 0.0, 1.0}, 16, 16);
    auto f = ScalarField::constant(d, BoundaryData::constant(d, 2.0), 2.0);
    const double eps_target = 0.1;
    f.set(d.index(1, 8), 2.0 + eps_target);
    const auto r = check_modulus_with_delta(f, eps_target, 1.0, 2.0 * d.hx());
    EXPECT_GE(r.violations, 1U);
    EXPECT_FALSE(r.pass);
    EXPECT_NEAR(r.max_deviation, eps_target, 1e-15);
    EXPECT_THROW(check_modulus_with_delta(f, 0.0, 1.0, 0.1), InvalidParams);
}

TEST(Modulus, ConvergedFieldAndDeltaOrdering)
{
    const auto f = unit_data_solution(0.5, 16, 32);
    const double delta0 = sampled_delta0(f, 0.05);
    const double log_delta = modulus_log_delta(f, 0.05, delta0);
    EXPECT_TRUE(std::isfinite(log_delta));
    EXPECT_LE(log_delta, std::log(delta0));
    // Shrinking the target can only shrink delta.
    EXPECT_LE(modulus_log_delta(f, 0.01, delta0), log_delta);
    const auto r = check_modulus(f, 0.05, delta0);
    EXPECT_EQ(r.violations, 0U);
}

TEST(GlobalGradient, XSinhTViolatesTheHypothesis)
{
    const auto f = oracle_field(analytic::XSinhT{}, DomainSpec::rectangle({1, 2, 1, 2}, 16, 16));
    const double c1 = std::sinh(1.0), c2 = 2.0 * std::sinh(2.0);
    EXPECT_NEAR(c1 * (1.0 + std::sqrt(M_PI / 2.0)), 2.648, 5e-4);
    const auto r = check_global_gradient(f, c1, c2, fd::max_boundary_gradient(f));
    EXPECT_FALSE(r.hypothesis_ok);
    EXPECT_TRUE(r.skipped);
    EXPECT_FALSE(r.pass);
    EXPECT_FALSE(r.note.empty());
}

TEST(GlobalGradient, UnitDataWidthHalfPasses)
{
    const auto f = unit_data_solution(0.5, 16, 32);
    const double c2 = std::sqrt(1.0 + 1.0 / 16.0);
    const auto r = check_global_gradient(f, 1.0, c2, fd::max_boundary_gradient(f));
    EXPECT_TRUE(r.hypothesis_ok);
    EXPECT_TRUE(r.preconditions_ok);
    EXPECT_LE(r.observed_max_grad, r.bound_C);
    EXPECT_TRUE(r.pass);
}

TEST(GlobalGradient, ConstantFieldAndUnbracketedConstants)
{
    const auto d = DomainSpec::rectangle({0.0, 1.0, 0.0, 1.0}, 8, 8);
    const auto f = ScalarField::constant(d, BoundaryData::constant(d, 1.0), 1.0);
    const auto r = check_global_gradient(f, 1.0, 1.2, 0.0);
    EXPECT_EQ(r.observed_max_grad, 0.0);
    EXPECT_TRUE(r.pass);
    const auto bad = check_global_gradient(f, 1.1, 1.2, 0.0);
    EXPECT_TRUE(bad.hypothesis_ok);
    EXPECT_FALSE(bad.preconditions_ok);
    EXPECT_FALSE(bad.pass);
}

TEST(Report, VerifyIsDeterministicAndConsistent)
{
    const auto f = unit_data_solution(0.5, 16, 32);
    const auto a = verify_field(f, phi_constant(1.0), 0.0, 0.05);
    const auto b = verify_field(f, phi_constant(1.0), 0.0, 0.05);
    EXPECT_EQ(a.length_bound.observed_max, b.length_bound.observed_max);
    EXPECT_EQ(a.boundary_gradient.C_predicted, b.boundary_gradient.C_predicted);
    EXPECT_EQ(a.modulus.delta, b.modulus.delta);
    EXPECT_EQ(a.global_gradient.bound_C, b.global_gradient.bound_C);
    // Observed values are recomputable from the field.
    EXPECT_EQ(a.length_bound.observed_max, f.interior_max());
    EXPECT_EQ(a.boundary_gradient.observed_max_boundary_grad, fd::max_boundary_gradient(f));
    EXPECT_EQ(a.global_gradient.observed_max_grad, fd::max_gradient_closed(f));
    // Pass flags are the conjunctions they claim to be.
    EXPECT_EQ(a.length_bound.pass, a.length_bound.violations == 0);
    EXPECT_EQ(a.modulus.pass, a.modulus.violations == 0);
    bool barriers = true;
    for (const auto& c : a.boundary_gradient.barrier_checks) {
        barriers = barriers && c.pass;
    }
    EXPECT_EQ(a.boundary_gradient.pass,
              barriers && a.boundary_gradient.observed_max_boundary_grad <= a.boundary_gradient.C_predicted);
    EXPECT_TRUE(a.length_bound.pass);
    EXPECT_TRUE(a.global_gradient.pass);
}

TEST(PhiExtensionTest, FieldInterpolationReproducesBilinearData)
{
    const auto d = DomainSpec::rectangle({0.0, 1.0, 0.0, 1.0}, 10, 10);
    auto fn = [](Point2 q) { return 1.0 + 0.5 * q.x + 0.25 * q.t; };
    const auto f = ScalarField::from_function(d, BoundaryData::sample(d, fn, "affine"), fn);
    const auto ext = phi_from_field(f);
    for (Point2 q : {Point2{0.13, 0.71}, Point2{0.5, 0.5}, Point2{0.99, 0.02}}) {
        const auto j = ext.jet(q);
        EXPECT_NEAR(j.phi, fn(q), 1e-13);
        EXPECT_NEAR(j.px, 0.5, 1e-12);
        EXPECT_NEAR(j.pt, 0.25, 1e-12);
    }
    const auto b = phi_bounds(ext, d);
    EXPECT_NEAR(b.max_phi, 1.75, 1e-13);
    EXPECT_NEAR(b.max_grad, std::hypot(0.5, 0.25), 1e-12);
}

TEST(BoundaryGradient, ScaledBarrierOperatorMatchesTheDirectOne)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.5, 1.5), up(0.3, 3.0), ue(0.0, 1.0), ua(0.0, 2.0 * M_PI);
    for (int k = 0; k < 500; ++k) {
        const PhiJet phi{up(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
        const double g = up(rng), eps = ue(rng), b1 = up(rng), angle = ua(rng);
        const Point2 n{std::cos(angle), std::sin(angle)};
        const double P = std::exp(3.0 * ue(rng));
        for (int sigma : {1, -1}) {
            PhiJet w = phi;
            const double Q = -b1 * P * P;
            w.px += sigma * P * n.x;
            w.pt += sigma * P * n.t;
            w.pxx += sigma * Q * n.x * n.x;
            w.pxt += sigma * Q * n.x * n.t;
            w.ptt += sigma * Q * n.t * n.t;
            const auto sv = barrier_operator_over_slope2(g, eps, phi, n, sigma, b1, 1.0 / P);
            EXPECT_NEAR(sv.value * P * P, frozen_operator(g, eps, w), 1e-11 * sv.scale * P * P);
        }
    }
}

TEST(BoundaryGradient, OverflowingSlopeStaysFinite)
{
    // For x sinh t on [1,2]^2 psi'(0) is far beyond the double range.
    const auto f = oracle_field(analytic::XSinhT{}, DomainSpec::rectangle({1, 2, 1, 2}, 32, 32));
    const auto r = check_boundary_gradient(f, phi_from_oracle(analytic::XSinhT{}), 0.0);
    EXPECT_TRUE(std::isinf(r.C_predicted));
    EXPECT_TRUE(std::isfinite(r.log_C_predicted));
    EXPECT_GT(r.log_C_predicted, 700.0);
    for (const auto& c : r.barrier_checks) {
        EXPECT_TRUE(std::isfinite(c.worst)) << c.name;
        EXPECT_TRUE(c.pass) << c.name;
    }
    EXPECT_TRUE(r.pass);
}
