#pragma once

// Joint deployment of a dense low-rise tier and a sparse high-rise tier.
// Tiers are combined as independent: 1 - P = (1 - P_low)(1 - P_high).

#include "loscov/irregular.hpp"
#include "loscov/model.hpp"
#include "loscov/regular.hpp"

#include <optional>
#include <stdexcept>
#include <variant>

namespace loscov {

/// One AP tier. An IrregularDeployment selects the PPP association
/// probability; a HexLayout selects the regular-deployment worst case.
struct TierSpec {
    HeightProfile profile;
    std::variant<IrregularDeployment, HexLayout> deployment;

    bool is_regular() const { return std::holds_alternative<HexLayout>(deployment); }
};

struct JointResult {
    double p_low = 0.0;
    double p_high = 0.0;
    double p_joint = 0.0;
    std::optional<int> high_rise_count_per_100;
};

class Infeasible : public std::runtime_error {
public:
    Infeasible(const std::string& what, JointResult best) : std::runtime_error(what), best_(best) {}
    const JointResult& best() const { return best_; }

private:
    JointResult best_;
};

double joint_p_los(double p_low, double p_high);

/// Radius of a tier holding n APs for every 100 of a tier with low_radius,
/// at equal area per AP: low_radius * sqrt(100 / n).
double high_rise_radius(double low_radius, double n_high_per_100_low);

/// LOS probability of a single tier: irregular association probability or
/// regular worst case (grid step D/200 unless given).
double tier_p_los(const TierSpec& tier, const BlockageParams& b, const PathLossParams& pl = {},
                  std::optional<double> grid_step = std::nullopt);

/// The high-rise tier matching low_tier's mode when it holds n APs per 100
/// low-rise APs.
TierSpec high_rise_tier(const TierSpec& low_tier, const HeightProfile& high_profile, int n_high_per_100_low);

/// Smallest n in [1, 100] whose joint probability reaches target. Throws
/// Infeasible (carrying the n = 100 result) otherwise.
JointResult min_high_rise_count(double target, const TierSpec& low_tier, const HeightProfile& high_profile,
                                const BlockageParams& b, const PathLossParams& pl = {});

}  // namespace loscov
