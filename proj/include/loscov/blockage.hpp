#pragma once

// Height-aware blocking probability.
//
// P_blk is the conditional probability that a single blocker, placed
// uniformly along the link and with height uniform on [0, h_blk_max], cuts
// the AP-UE sightline. It scales the blockage rate (beta' = beta * P_blk);
// it is NOT the probability that the link itself is blocked.

#include "loscov/model.hpp"

namespace loscov {

struct BlockProbability {
    double value = 0.0;
    bool clamped = false;  // raw value fell outside [0, 1] and was saturated
};

/// Blocking probability for an irregular (PPP) deployment. Independent of
/// the link length:
///   h_blk_max <= h_ue          -> 0
///   h_ap >= h_blk_max          -> (Hmax - Hu)^2 / (2 Hmax (Hb - Hu))
///   h_ue < h_ap < h_blk_max    -> 1 - (Hb + Hu) / (2 Hmax)
/// The last branch integrates the clamped height survivor function; the
/// single-expression form overshoots 1 there.
BlockProbability pblk_irregular(const HeightProfile& p);

/// Blocking probability when blockers are uniform on [0, r_cell] from the
/// AP and only those inside [0, r] matter: (r / r_cell) * pblk_irregular,
/// clamped to [0, 1]. r may exceed r_cell.
BlockProbability pblk_regular(const HeightProfile& p, double r, double r_cell);

/// beta' = beta * P_blk.
double effective_beta(const BlockageParams& b, const BlockProbability& pb);

}  // namespace loscov
