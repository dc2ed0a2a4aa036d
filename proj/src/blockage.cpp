#include "loscov/blockage.hpp"

#include <cmath>

namespace loscov {

namespace {

BlockProbability clamp_probability(double raw)
{
    if (raw < 0.0)
        return {0.0, true};
    if (raw > 1.0)
        return {1.0, true};
    return {raw, false};
}

double raw_irregular(const HeightProfile& p)
{
    const double hb = p.h_ap;
    const double hu = p.h_ue;
    const double hm = p.h_blk_max;
    if (hm <= hu)
        return 0.0;
    if (hb >= hm)
        return (hm - hu) * (hm - hu) / (2.0 * hm * (hb - hu));
    return 1.0 - (hb + hu) / (2.0 * hm);
}

}  // namespace

BlockProbability pblk_irregular(const HeightProfile& p)
{
    return clamp_probability(raw_irregular(validate_profile(p)));
}

BlockProbability pblk_regular(const HeightProfile& p, double r, double r_cell)
{
    validate_profile(p);
    if (!(r_cell > 0.0) || !std::isfinite(r_cell))
        throw DomainError("cell extent must be positive");
    if (!(r >= 0.0) || !std::isfinite(r))
        throw DomainError("link length must be non-negative");
    return clamp_probability(r / r_cell * raw_irregular(p));
}

double effective_beta(const BlockageParams& b, const BlockProbability& pb)
{
    return b.beta * pb.value;
}

}  // namespace loscov
