#include "loscov/model.hpp"

#include <cmath>
#include <numbers>

namespace loscov {

std::string to_string(LambdaConvention c)
{
    switch (c) {
    case LambdaConvention::disk:
        return "disk";
    case LambdaConvention::hexagon:
        return "hexagon";
    }
    return "unknown";
}

LambdaConvention lambda_convention_from_string(const std::string& name)
{
    if (name == "disk")
        return LambdaConvention::disk;
    if (name == "hexagon")
        return LambdaConvention::hexagon;
    throw DomainError("unknown lambda convention '" + name + "' (expected disk or hexagon)");
}

HeightProfile validate_profile(const HeightProfile& p)
{
    if (!std::isfinite(p.h_ap) || !std::isfinite(p.h_ue) || !std::isfinite(p.h_blk_max))
        throw DomainError("heights must be finite");
    if (p.h_ue < 0.0 || p.h_blk_max < 0.0 || p.h_ap < 0.0)
        throw DomainError("heights must be non-negative");
    if (p.h_ap <= p.h_ue)
        throw DomainError("AP height must exceed UE height");
    return p;
}

void validate_blockage(const BlockageParams& b)
{
    if (!(b.beta >= 0.0) || !std::isfinite(b.beta))
        throw DomainError("beta must be non-negative and finite");
}

void validate_pathloss(const PathLossParams& pl)
{
    if (!(pl.alpha_los > 0.0) || !(pl.alpha_nlos > 0.0))
        throw DomainError("path loss exponents must be positive");
    if (!(pl.c_los > 0.0) || !(pl.c_nlos > 0.0))
        throw DomainError("path loss intercepts must be positive");
}

double lambda_from_radius(double r, LambdaConvention c)
{
    if (!(r > 0.0) || !std::isfinite(r))
        throw DomainError("cell radius must be positive");
    switch (c) {
    case LambdaConvention::disk:
        return 1.0 / (std::numbers::pi * r * r);
    case LambdaConvention::hexagon:
        return 2.0 / (3.0 * std::numbers::sqrt3 * r * r);
    }
    throw DomainError("unknown lambda convention");
}

IrregularDeployment IrregularDeployment::from_density(double lambda)
{
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError("PPP density must be positive");
    return IrregularDeployment{lambda};
}

IrregularDeployment IrregularDeployment::from_radius(double avg_cell_radius, LambdaConvention c)
{
    return IrregularDeployment{lambda_from_radius(avg_cell_radius, c)};
}

}  // namespace loscov
