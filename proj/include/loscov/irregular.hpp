#pragma once

// LOS association probability for PPP-deployed APs with the exponential
// LOS model p(x) = exp(-beta' x).

#include "loscov/model.hpp"

namespace loscov {

struct AssociationInputs {
    IrregularDeployment deployment;
    double beta_eff = 0.0;  // beta * P_blk
    PathLossParams pathloss;
};

struct QuadratureOptions {
    double rel_tol = 1e-8;
    double truncation_floor = 1e-14;  // relative to the running integrand maximum
    unsigned max_depth = 18;  // caps the adaptive panel count at 2^max_depth extra panels
};

double los_prob_at_distance(double beta_eff, double x);

/// Radius inside which an NLOS AP offers less path loss than a LOS AP at
/// distance x: (C_N / C_L)^(1/alpha_N) x^(alpha_L / alpha_N).
double psi_nlos_exclusion(const PathLossParams& pl, double x);

/// U(x) = integral_0^x r exp(-beta' r) dr, closed form. beta' = 0 gives x^2/2.
double antiderivative_u(double beta_eff, double x);

/// Y(x) = x^2/2 - U(x) = integral_0^x r (1 - exp(-beta' r)) dr.
double antiderivative_y(double beta_eff, double x);

/// Probability that at least one LOS AP exists anywhere in the plane.
double prob_at_least_one_los(const AssociationInputs& in);

/// Probability that the serving (least path loss) AP is LOS:
///   2 pi lambda * int_0^inf x exp(-2 pi lambda (Y(psi(x)) + U(x)) - beta' x) dx
/// Throws QuadratureError when the tolerance cannot be met.
double p_los_association(const AssociationInputs& in, const QuadratureOptions& opts = {});

/// Same quantity assembled the long way round: B_L times the expectation,
/// under the nearest-LOS-distance density f_L (which carries 1/B_L), of the
/// NLOS void probability. Exists to cross-check p_los_association.
double p_los_association_via_density(const AssociationInputs& in,
                                     const QuadratureOptions& opts = {});

/// Truncation point used for the semi-infinite integral before the
/// integrand-floor scan.
double association_truncation(const AssociationInputs& in);

}  // namespace loscov
