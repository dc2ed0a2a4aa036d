#include "loscov/irregular.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace loscov {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// g(t) = int_0^t s e^{-s} ds and h(t) = t^2/2 - g(t). Both cancel badly for
// small t, where the alternating Taylor series is used instead.
double g_scaled(double t)
{
    if (t < 1.0) {
        double term = t * t;  // t^{n+2} / n!
        double sum = 0.0;
        for (int n = 0; n < 30; ++n) {
            sum += (n % 2 == 0 ? 1.0 : -1.0) * term / (n + 2);
            term *= t / (n + 1);
        }
        return sum;
    }
    return -std::expm1(-t) - t * std::exp(-t);
}

double h_scaled(double t)
{
    if (t < 1.0) {
        double term = t * t * t;  // t^{n+2} / n!, starting at n = 1
        double sum = 0.0;
        for (int n = 1; n < 30; ++n) {
            sum += (n % 2 == 1 ? 1.0 : -1.0) * term / (n + 2);
            term *= t / (n + 1);
        }
        return sum;
    }
    return 0.5 * t * t - g_scaled(t);
}

void validate_inputs(const AssociationInputs& in)
{
    if (!(in.deployment.lambda > 0.0) || !std::isfinite(in.deployment.lambda))
        throw DomainError("PPP density must be positive");
    if (!(in.beta_eff >= 0.0) || !std::isfinite(in.beta_eff))
        throw DomainError("effective beta must be non-negative");
    validate_pathloss(in.pathloss);
}

void check_beta(double beta_eff, double x)
{
    if (beta_eff < 0.0 || std::isnan(beta_eff))
        throw DomainError("effective beta must be non-negative");
    if (!(x >= 0.0))
        throw DomainError("distance must be non-negative");
}

// Integrates f over [0, x_max] after cutting the tail where f has dropped
// below floor * running maximum. Panels mix a geometric and a uniform grid
// so that integrands concentrated near the origin are still resolved.
template <class F>
double integrate_semi_infinite(F&& f, double x_max, const QuadratureOptions& opts)
{
    constexpr int n_uniform = 1024;
    constexpr int n_geometric = 160;
    std::vector<double> nodes;
    nodes.reserve(n_uniform + n_geometric + 2);
    nodes.push_back(0.0);
    for (int k = 1; k <= n_uniform; ++k)
        nodes.push_back(x_max * k / n_uniform);
    const double first = x_max / n_uniform;
    for (int k = 0; k < n_geometric; ++k)
        nodes.push_back(first * std::pow(1e-7, 1.0 - static_cast<double>(k) / n_geometric));
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    double running_max = 0.0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double v = f(nodes[i]);
        if (!std::isfinite(v))
            throw QuadratureError("integrand is not finite at x = " + std::to_string(nodes[i]));
        running_max = std::max(running_max, v);
        if (v >= opts.truncation_floor * running_max && v > 0.0)
            last = i;
    }
    const std::size_t end = std::min(last + 1, nodes.size() - 1);

    // Global adaptive bisection: always split the panel with the largest
    // error estimate until the summed estimate meets the tolerance.
    using boost::math::quadrature::gauss_kronrod;
    struct Panel {
        double a, b, value, err;
        bool operator<(const Panel& o) const { return err < o.err; }
    };
    auto rule = [&](double a, double b) {
        double err = 0.0;
        const double v = gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
        return Panel{a, b, v, err};
    };
    std::priority_queue<Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i < end; ++i) {
        auto p = rule(nodes[i], nodes[i + 1]);
        total += p.value;
        total_err += p.err;
        heap.push(p);
    }
    constexpr double abs_floor = 1e-15;
    const std::size_t max_panels = heap.size() + (std::size_t{1} << opts.max_depth);
    while (!heap.empty() && total_err > std::max(opts.rel_tol * 1e-2 * std::abs(total), abs_floor) &&
           heap.size() < max_panels) {
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            break;
        const auto left = rule(worst.a, mid);
        const auto right = rule(mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    // Recompute the sums to shed accumulated cancellation in the updates.
    total = 0.0;
    total_err = 0.0;
    for (; !heap.empty(); heap.pop()) {
        total += heap.top().value;
        total_err += heap.top().err;
    }
    if (!std::isfinite(total) || total_err > std::max(opts.rel_tol * std::abs(total), abs_floor))
        throw QuadratureError("association integral did not converge (estimate " + std::to_string(total) +
                              ", error " + std::to_string(total_err) + ")");
    return total;
}

}  // namespace

double los_prob_at_distance(double beta_eff, double x)
{
    check_beta(beta_eff, x);
    return std::exp(-beta_eff * x);
}

double psi_nlos_exclusion(const PathLossParams& pl, double x)
{
    return std::pow(pl.c_nlos / pl.c_los, 1.0 / pl.alpha_nlos) *
           std::pow(x, pl.alpha_los / pl.alpha_nlos);
}

double antiderivative_u(double beta_eff, double x)
{
    check_beta(beta_eff, x);
    if (beta_eff == 0.0)
        return 0.5 * x * x;
    if (std::isinf(x))
        return 1.0 / (beta_eff * beta_eff);
    return g_scaled(beta_eff * x) / (beta_eff * beta_eff);
}

double antiderivative_y(double beta_eff, double x)
{
    check_beta(beta_eff, x);
    if (beta_eff == 0.0)
        return 0.0;
    return h_scaled(beta_eff * x) / (beta_eff * beta_eff);
}

double prob_at_least_one_los(const AssociationInputs& in)
{
    validate_inputs(in);
    if (in.beta_eff == 0.0)
        return 1.0;
    const double mass = 1.0 / (in.beta_eff * in.beta_eff);
    return -std::expm1(-two_pi * in.deployment.lambda * mass);
}

double association_truncation(const AssociationInputs& in)
{
    if (in.beta_eff > 0.0)
        return 50.0 / in.beta_eff;
    return 50.0 * std::sqrt(1.0 / (std::numbers::pi * in.deployment.lambda));
}

double p_los_association(const AssociationInputs& in, const QuadratureOptions& opts)
{
    validate_inputs(in);
    const double lambda = in.deployment.lambda;
    const double b = in.beta_eff;
    const PathLossParams pl = in.pathloss;
    auto integrand = [=](double x) {
        const double exponent =
            -two_pi * lambda * (antiderivative_y(b, psi_nlos_exclusion(pl, x)) + antiderivative_u(b, x)) -
            b * x;
        return two_pi * lambda * x * std::exp(exponent);
    };
    const double p = integrate_semi_infinite(integrand, association_truncation(in), opts);
    return std::clamp(p, 0.0, 1.0);
}

double p_los_association_via_density(const AssociationInputs& in, const QuadratureOptions& opts)
{
    validate_inputs(in);
    const double b_l = prob_at_least_one_los(in);
    if (b_l == 0.0)
        return 0.0;
    const double lambda = in.deployment.lambda;
    const double b = in.beta_eff;
    const PathLossParams pl = in.pathloss;
    auto weighted_density = [=](double x) {
        const double f_l = two_pi * lambda * x * los_prob_at_distance(b, x) *
                           std::exp(-two_pi * lambda * antiderivative_u(b, x)) / b_l;
        const double nlos_void = std::exp(-two_pi * lambda * antiderivative_y(b, psi_nlos_exclusion(pl, x)));
        return nlos_void * f_l;
    };
    const double conditional = integrate_semi_infinite(weighted_density, association_truncation(in), opts);
    return std::clamp(b_l * conditional, 0.0, 1.0);
}

}  // namespace loscov
