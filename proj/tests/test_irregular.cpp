#include "loscov/blockage.hpp"
#include "loscov/irregular.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

using namespace loscov;

namespace {

double quad(auto f, double a, double b)
{
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, a, b, 1e-14);
}

double u_oracle(double beta, double x)
{
    return quad([=](double r) { return r * std::exp(-beta * r); }, 0.0, x);
}

double y_oracle(double beta, double x)
{
    return quad([=](double r) { return -r * std::expm1(-beta * r); }, 0.0, x);
}

AssociationInputs inputs_for(double radius, double hb, double hm, bool swapped = false,
                             LambdaConvention c = LambdaConvention::disk)
{
    PathLossParams pl;
    if (swapped)
        std::swap(pl.alpha_los, pl.alpha_nlos);
    const auto pb = pblk_irregular({hb, 1.5, hm});
    return {IrregularDeployment::from_radius(radius, c), effective_beta({0.0709}, pb), pl};
}

}  // namespace

TEST_CASE("LOS probability at distance")
{
    CHECK(los_prob_at_distance(0.0709, 0.0) == 1.0);
    CHECK(los_prob_at_distance(0.0709, 1.0 / 0.0709) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(los_prob_at_distance(0.0, 500.0) == 1.0);
    CHECK_THROWS_AS(los_prob_at_distance(0.0709, -1.0), DomainError);
}

TEST_CASE("NLOS exclusion radius")
{
    const PathLossParams defaults{};
    CHECK(psi_nlos_exclusion(defaults, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(psi_nlos_exclusion(defaults, 10.0) == doctest::Approx(100.0).epsilon(1e-14));
    const PathLossParams swapped{2.0, 4.0, 1.0, 1.0};
    CHECK(psi_nlos_exclusion(swapped, 100.0) == doctest::Approx(10.0).epsilon(1e-14));
    const PathLossParams equal{3.0, 3.0, 1.0, 1.0};
    for (double x : {0.5, 7.0, 300.0})
        CHECK(psi_nlos_exclusion(equal, x) == doctest::Approx(x).epsilon(1e-15));
}

TEST_CASE("U examples")
{
    CHECK(antiderivative_u(0.017725, 0.0) == 0.0);
    CHECK(antiderivative_u(0.017725, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(3183.0).epsilon(1e-4));
    CHECK(antiderivative_u(0.017725, 100.0) == doctest::Approx(1.684e3).epsilon(1e-3));
    CHECK(antiderivative_u(0.017725, 100.0) == doctest::Approx(u_oracle(0.017725, 100.0)).epsilon(1e-12));
    CHECK(antiderivative_u(0.0, 10.0) == 50.0);
    CHECK_THROWS_AS(antiderivative_u(-0.1, 10.0), DomainError);
}

TEST_CASE("U matches quadrature on a log grid to 1e-9")
{
    for (double beta = 1e-5; beta < 10.0; beta *= 3.7) {
        for (double x = 1e-3; x < 1e4; x *= 4.1) {
            CAPTURE(beta);
            CAPTURE(x);
            const double closed = antiderivative_u(beta, x);
            const double numeric = u_oracle(beta, x);
            CHECK(std::abs(closed - numeric) <= 1e-9 * std::abs(numeric));
        }
    }
}

TEST_CASE("Y examples and quadrature agreement")
{
    CHECK(antiderivative_y(0.0709, 0.0) == 0.0);
    CHECK(antiderivative_y(0.0, 10.0) == 0.0);
    // Direct quadrature of r (1 - exp(-0.0709 r)) over [0, 50].
    CHECK(antiderivative_y(0.0709, 50.0) == doctest::Approx(1077.1683014).epsilon(1e-9));
    for (double beta = 1e-5; beta < 10.0; beta *= 3.7) {
        for (double x = 1e-3; x < 1e4; x *= 4.1) {
            const double numeric = y_oracle(beta, x);
            CHECK(std::abs(antiderivative_y(beta, x) - numeric) <= 1e-9 * std::abs(numeric));
            CHECK(antiderivative_y(beta, x) + antiderivative_u(beta, x) ==
                  doctest::Approx(0.5 * x * x).epsilon(1e-12));
        }
    }
}

TEST_CASE("probability of at least one LOS AP")
{
    const AssociationInputs in{IrregularDeployment::from_density(1.0 / (std::numbers::pi * 1e4)), 0.017725, {}};
    const double mass = u_oracle(0.017725, 1e5);
    CHECK(prob_at_least_one_los(in) ==
          doctest::Approx(1.0 - std::exp(-2 * std::numbers::pi * in.deployment.lambda * mass)).epsilon(1e-10));
    CHECK(prob_at_least_one_los(in) == doctest::Approx(0.4709).epsilon(1e-3));
    CHECK(prob_at_least_one_los({IrregularDeployment::from_density(1e3), 0.0709, {}}) == 1.0);
    CHECK(prob_at_least_one_los({IrregularDeployment::from_density(1e-4), 1e6, {}}) ==
          doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
    CHECK(prob_at_least_one_los({IrregularDeployment::from_density(1e-4), 0.0, {}}) == 1.0);
}

TEST_CASE("association probability reference values")
{
    // Independent values from a separate scalar quadrature of the same
    // integrand (adaptive QUADPACK, tolerance 1e-12).
    CHECK(p_los_association(inputs_for(100, 3, 3)) == doctest::Approx(0.0092625401).epsilon(1e-7));
    CHECK(p_los_association(inputs_for(100, 3, 3, true)) == doctest::Approx(0.4702980486).epsilon(1e-7));
    CHECK(p_los_association(inputs_for(300, 30, 10, true)) == doctest::Approx(0.2404869536).epsilon(1e-7));
    CHECK(p_los_association(inputs_for(1000, 30, 3, true)) == doctest::Approx(0.8995147010).epsilon(1e-7));
    CHECK(p_los_association(inputs_for(100, 3, 3, true, LambdaConvention::hexagon)) ==
          doctest::Approx(0.5360696159).epsilon(1e-7));
}

TEST_CASE("association probability with no blockage is one")
{
    for (double r : {25.0, 100.0, 1000.0}) {
        const AssociationInputs in{IrregularDeployment::from_radius(r), 0.0, {}};
        CHECK(p_los_association(in) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("association probability tends to one for small cells")
{
    CHECK(p_los_association(inputs_for(0.005, 3, 3, false)) > 0.99);
}

TEST_CASE("both integral formulations agree")
{
    for (double r : {25.0, 100.0, 300.0, 1000.0}) {
        for (double hb : {3.0, 30.0}) {
            for (double hm : {3.0, 10.0, 15.0}) {
                for (bool sw : {false, true}) {
                    const auto in = inputs_for(r, hb, hm, sw);
                    CHECK(p_los_association(in) ==
                          doctest::Approx(p_los_association_via_density(in)).epsilon(1e-7));
                }
            }
        }
    }
}

TEST_CASE("association is bounded by the probability of any LOS AP")
{
    for (double r = 10.0; r <= 1000.0; r *= 1.8) {
        for (double hm : {1.5, 3.0, 10.0, 15.0}) {
            for (bool sw : {false, true}) {
                const auto in = inputs_for(r, 3.0, hm, sw);
                const double p = p_los_association(in);
                CHECK(p >= 0.0);
                CHECK(p <= prob_at_least_one_los(in) + 1e-10);
            }
        }
    }
}

TEST_CASE("association is monotone in beta'")
{
    for (bool sw : {false, true}) {
        PathLossParams pl;
        if (sw)
            std::swap(pl.alpha_los, pl.alpha_nlos);
        for (double lambda = 1e-7; lambda < 1e-2; lambda *= 4.0) {
            double prev = 2.0;
            for (double b = 1e-4; b < 1.0; b *= 2.5) {
                const double p = p_los_association({IrregularDeployment::from_density(lambda), b, pl});
                CHECK(p <= prev + 1e-9);
                prev = p;
            }
        }
    }
}

TEST_CASE("association is monotone in lambda for the default exponents")
{
    for (double b : {1e-3, 0.0177, 0.2}) {
        double prev = -1.0;
        for (double lambda = 1e-7; lambda < 1e-2; lambda *= 4.0) {
            const double p = p_los_association({IrregularDeployment::from_density(lambda), b, {}});
            CHECK(p >= prev - 1e-9);
            prev = p;
        }
    }
}

TEST_CASE("swapped exponents lose monotonicity in lambda near saturation")
{
    // With alpha_los < alpha_nlos a denser network adds NLOS APs inside the
    // exclusion radius faster than it adds LOS candidates once P_LOS is
    // close to 1. Reference values from an independent QUADPACK evaluation.
    const PathLossParams swapped{2.0, 4.0, 1.0, 1.0};
    const double lo = p_los_association({IrregularDeployment::from_density(6.4e-6), 1e-3, swapped});
    const double hi = p_los_association({IrregularDeployment::from_density(6.5536e-3), 1e-3, swapped});
    CHECK(lo == doctest::Approx(0.9999524).epsilon(1e-6));
    CHECK(hi == doctest::Approx(0.9997672).epsilon(1e-6));
    CHECK(hi < lo);
}

TEST_CASE("equal exponents make the exclusion disk the LOS disk")
{
    // With psi(x) = x the integral reduces to the nearest AP being LOS:
    // 2 pi lambda int x exp(-pi lambda x^2 - beta' x) dx.
    const double lambda = 1e-4;
    const double b = 0.02;
    const double expected = quad(
        [=](double x) {
            return 2 * std::numbers::pi * lambda * x * std::exp(-std::numbers::pi * lambda * x * x - b * x);
        },
        0.0, 5000.0);
    const AssociationInputs in{IrregularDeployment::from_density(lambda), b, {3.0, 3.0, 1.0, 1.0}};
    CHECK(p_los_association(in) == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("doubling the truncation does not move the result")
{
    for (bool sw : {false, true}) {
        const auto in = inputs_for(100, 3, 3, sw);
        const double lambda = in.deployment.lambda;
        const double b = in.beta_eff;
        const auto pl = in.pathloss;
        const double x_max = 2.0 * association_truncation(in);
        const double doubled = quad(
            [&](double x) {
                const double e = -2 * std::numbers::pi * lambda *
                                     (y_oracle(b, psi_nlos_exclusion(pl, x)) + u_oracle(b, x)) -
                                 b * x;
                return 2 * std::numbers::pi * lambda * x * std::exp(e);
            },
            0.0, x_max);
        CHECK(p_los_association(in) == doctest::Approx(doubled).epsilon(1e-6));
    }
}

TEST_CASE("association input validation")
{
    CHECK_THROWS_AS(p_los_association({IrregularDeployment{0.0}, 0.01, {}}), DomainError);
    CHECK_THROWS_AS(p_los_association({IrregularDeployment::from_density(1e-4), -0.01, {}}), DomainError);
}
