#pragma once

// Monte Carlo estimators that check the closed forms from first
// principles. Every estimator is deterministic for a given RngSpec and
// returns identical results regardless of the thread count: trials are cut
// into fixed-size chunks, each chunk draws from its own generator seeded
// from (seed, stream_id, chunk index), and chunk results are integer
// counts.

#include "loscov/irregular.hpp"
#include "loscov/model.hpp"
#include "loscov/regular.hpp"

#include <cstdint>
#include <random>

namespace loscov {

struct RngSpec {
    std::uint64_t seed = 0;
    std::uint32_t stream_id = 0;
};

inline constexpr std::uint64_t mc_chunk_size = 1u << 14;

/// Generator for one chunk of one stream.
std::mt19937_64 chunk_engine(const RngSpec& rng, std::uint64_t chunk);

/// Blocker sampling: position uniform on [0, r_extent] from the AP, height
/// uniform on [0, h_blk_max]; counts blockers that lie on the link (within r
/// of the AP) and rise above the AP-UE sightline. r_extent = r gives the
/// irregular probability, r_extent = cell extent the regular one.
McEstimate mc_pblk(const HeightProfile& profile, double r, double r_extent, std::uint64_t n, const RngSpec& rng,
                   unsigned threads = 1);

/// Window radius max(10 / beta', 10 / sqrt(pi lambda)).
double recommended_window(const AssociationInputs& in);

/// Full PPP simulation of the association event: APs in a disk around the
/// UE, each LOS with probability exp(-beta' r); the AP with the largest
/// C r^-alpha serves. Scores 1 when the serving AP is LOS, 0 otherwise
/// (including trials with no AP at all).
McEstimate mc_association(const AssociationInputs& in, double window_radius, std::uint64_t n_trials,
                          const RngSpec& rng, unsigned threads = 1);

/// Three independent Bernoulli links with the closed-form per-link LOS
/// probabilities; scores 1 when any link is LOS.
McEstimate mc_regular_p_los(const HexLayout& layout, const UserPoint& u, const HeightProfile& profile,
                            const BlockageParams& b, std::uint64_t n, const RngSpec& rng, unsigned threads = 1);

}  // namespace loscov
