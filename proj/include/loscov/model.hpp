#pragma once

// Shared domain types for LOS coverage computations. All lengths are in
// meters and all probabilities are dimensionless in [0, 1].

#include <cstdint>
#include <stdexcept>
#include <string>

namespace loscov {

class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class GeometryError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// AP, UE and maximum blocker heights.
struct HeightProfile {
    double h_ap = 3.0;
    double h_ue = 1.5;
    double h_blk_max = 3.0;

    friend bool operator==(const HeightProfile&, const HeightProfile&) = default;
};

/// Rate of the exponential LOS model p(x) = exp(-beta x), per meter.
struct BlockageParams {
    double beta = 0.0709;
};

/// Path loss intercepts and exponents. The defaults (alpha_nlos = 2,
/// alpha_los = 4, equal intercepts) reverse the usual mm-wave ordering;
/// both orderings are accepted.
struct PathLossParams {
    double alpha_los = 4.0;
    double alpha_nlos = 2.0;
    double c_los = 1.0;
    double c_nlos = 1.0;
};

/// How an "average cell radius" maps to a PPP density.
enum class LambdaConvention {
    disk,     // lambda = 1 / (pi r^2)
    hexagon,  // lambda = 2 / (3 sqrt(3) r^2)
};

std::string to_string(LambdaConvention c);
LambdaConvention lambda_convention_from_string(const std::string& name);

/// Homogeneous PPP deployment of APs.
struct IrregularDeployment {
    double lambda = 0.0;  // APs per square meter

    static IrregularDeployment from_density(double lambda);
    static IrregularDeployment from_radius(double avg_cell_radius,
                                           LambdaConvention c = LambdaConvention::disk);
};

/// Monte Carlo point estimate with its standard error.
struct McEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const McEstimate&, const McEstimate&) = default;
};

/// Returns p unchanged, or throws DomainError if h_ap <= h_ue or any
/// height is negative (or not finite).
HeightProfile validate_profile(const HeightProfile& p);

void validate_blockage(const BlockageParams& b);
void validate_pathloss(const PathLossParams& pl);

double lambda_from_radius(double r, LambdaConvention c = LambdaConvention::disk);

}  // namespace loscov
