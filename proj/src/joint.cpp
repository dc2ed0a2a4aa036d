#include "loscov/joint.hpp"

#include "loscov/blockage.hpp"

#include <cmath>

namespace loscov {

namespace {

void check_probability(double p, const char* name)
{
    if (!(p >= 0.0 && p <= 1.0))
        throw DomainError(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

double joint_p_los(double p_low, double p_high)
{
    check_probability(p_low, "low-rise LOS probability");
    check_probability(p_high, "high-rise LOS probability");
    return 1.0 - (1.0 - p_low) * (1.0 - p_high);
}

double high_rise_radius(double low_radius, double n_high_per_100_low)
{
    if (!(low_radius > 0.0))
        throw DomainError("low-rise radius must be positive");
    if (!(n_high_per_100_low >= 1.0))
        throw DomainError("need at least one high-rise AP per 100 low-rise APs");
    return low_radius * std::sqrt(100.0 / n_high_per_100_low);
}

double tier_p_los(const TierSpec& tier, const BlockageParams& b, const PathLossParams& pl,
                  std::optional<double> grid_step)
{
    validate_profile(tier.profile);
    if (const auto* hex = std::get_if<HexLayout>(&tier.deployment))
        return worst_case_p_los(*hex, tier.profile, b, grid_step.value_or(hex->default_grid_step())).p_los;

    const auto& ppp = std::get<IrregularDeployment>(tier.deployment);
    const AssociationInputs in{ppp, effective_beta(b, pblk_irregular(tier.profile)), pl};
    return p_los_association(in);
}

TierSpec high_rise_tier(const TierSpec& low_tier, const HeightProfile& high_profile, int n_high_per_100_low)
{
    if (n_high_per_100_low < 1)
        throw DomainError("need at least one high-rise AP per 100 low-rise APs");
    if (const auto* hex = std::get_if<HexLayout>(&low_tier.deployment)) {
        const double r = high_rise_radius(hex->r_cell(), n_high_per_100_low);
        return TierSpec{high_profile, HexLayout::from_cell_radius(r)};
    }
    // Equal-area scaling of the radius is a density ratio of n / 100 under
    // any lambda = c / r^2 convention.
    const auto& ppp = std::get<IrregularDeployment>(low_tier.deployment);
    return TierSpec{high_profile, IrregularDeployment::from_density(ppp.lambda * n_high_per_100_low / 100.0)};
}

JointResult min_high_rise_count(double target, const TierSpec& low_tier, const HeightProfile& high_profile,
                                const BlockageParams& b, const PathLossParams& pl)
{
    if (!(target > 0.0 && target < 1.0))
        throw DomainError("target probability must lie in (0, 1)");
    validate_profile(high_profile);

    JointResult r;
    r.p_low = tier_p_los(low_tier, b, pl);
    for (int n = 1; n <= 100; ++n) {
        r.p_high = tier_p_los(high_rise_tier(low_tier, high_profile, n), b, pl);
        r.p_joint = joint_p_los(r.p_low, r.p_high);
        r.high_rise_count_per_100 = n;
        if (r.p_joint >= target)
            return r;
    }
    throw Infeasible("target " + std::to_string(target) + " not reached with 100 high-rise APs per 100 (best " +
                         std::to_string(r.p_joint) + ")",
                     r);
}

}  // namespace loscov
