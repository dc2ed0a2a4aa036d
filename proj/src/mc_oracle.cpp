#include "loscov/mc_oracle.hpp"

#include "loscov/blockage.hpp"
#include "loscov/parallel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace loscov {

namespace {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

McEstimate bernoulli_estimate(std::uint64_t hits, std::uint64_t n, std::uint64_t seed)
{
    const double mean = static_cast<double>(hits) / static_cast<double>(n);
    return {mean, std::sqrt(mean * (1.0 - mean) / static_cast<double>(n)), n, seed};
}

// Runs trial(engine) for n trials split into fixed chunks, summing hits.
template <class Trial>
std::uint64_t count_hits(std::uint64_t n, const RngSpec& rng, unsigned threads, Trial&& trial)
{
    const std::uint64_t n_chunks = (n + mc_chunk_size - 1) / mc_chunk_size;
    std::vector<std::uint64_t> hits(n_chunks, 0);
    parallel_for(n_chunks, threads, [&](std::size_t c) {
        auto engine = chunk_engine(rng, c);
        const std::uint64_t begin = c * mc_chunk_size;
        const std::uint64_t end = std::min(n, begin + mc_chunk_size);
        std::uint64_t local = 0;
        for (std::uint64_t i = begin; i < end; ++i)
            local += trial(engine) ? 1 : 0;
        hits[c] = local;
    });
    std::uint64_t total = 0;
    for (auto h : hits)
        total += h;
    return total;
}

void check_count(std::uint64_t n)
{
    if (n == 0)
        throw DomainError("sample count must be positive");
}

}  // namespace

std::mt19937_64 chunk_engine(const RngSpec& rng, std::uint64_t chunk)
{
    std::uint64_t state = rng.seed;
    std::uint64_t mixed = splitmix64(state);
    state = mixed ^ (static_cast<std::uint64_t>(rng.stream_id) * 0xd1b54a32d192ed03ULL);
    mixed = splitmix64(state);
    state = mixed ^ (chunk * 0x8cb92ba72f3d8dd7ULL);
    std::vector<std::uint32_t> words(8);
    for (std::size_t i = 0; i < words.size(); i += 2) {
        const std::uint64_t w = splitmix64(state);
        words[i] = static_cast<std::uint32_t>(w);
        words[i + 1] = static_cast<std::uint32_t>(w >> 32);
    }
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

McEstimate mc_pblk(const HeightProfile& profile, double r, double r_extent, std::uint64_t n, const RngSpec& rng,
                   unsigned threads)
{
    validate_profile(profile);
    check_count(n);
    if (!(r > 0.0) || !(r_extent > 0.0))
        throw DomainError("link length and blocker extent must be positive");
    const double hb = profile.h_ap;
    const double hu = profile.h_ue;
    const double hm = profile.h_blk_max;

    const auto hits = count_hits(n, rng, threads, [&](std::mt19937_64& eng) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double from_ap = unit(eng) * r_extent;
        const double height = unit(eng) * hm;
        if (from_ap > r)
            return false;
        const double from_ue = r - from_ap;
        const double sightline = (from_ue * hb + (r - from_ue) * hu) / r;
        return height > sightline;
    });
    return bernoulli_estimate(hits, n, rng.seed);
}

double recommended_window(const AssociationInputs& in)
{
    const double spacing = 10.0 / std::sqrt(std::numbers::pi * in.deployment.lambda);
    return in.beta_eff > 0.0 ? std::max(10.0 / in.beta_eff, spacing) : spacing;
}

McEstimate mc_association(const AssociationInputs& in, double window_radius, std::uint64_t n_trials,
                          const RngSpec& rng, unsigned threads)
{
    if (!(in.deployment.lambda > 0.0) || !(in.beta_eff >= 0.0))
        throw DomainError("invalid association inputs");
    validate_pathloss(in.pathloss);
    check_count(n_trials);
    if (!(window_radius > 0.0))
        throw DomainError("window radius must be positive");

    const double mean_count = in.deployment.lambda * std::numbers::pi * window_radius * window_radius;
    const double log_c_los = std::log(in.pathloss.c_los);
    const double log_c_nlos = std::log(in.pathloss.c_nlos);
    const double a_los = in.pathloss.alpha_los;
    const double a_nlos = in.pathloss.alpha_nlos;
    const double beta = in.beta_eff;

    const auto hits = count_hits(n_trials, rng, threads, [&](std::mt19937_64& eng) {
        std::poisson_distribution<std::uint64_t> count(mean_count);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const std::uint64_t k = count(eng);
        double best_gain = -std::numeric_limits<double>::infinity();
        bool best_los = false;
        for (std::uint64_t j = 0; j < k; ++j) {
            const double r = window_radius * std::sqrt(unit(eng));
            const bool los = unit(eng) < std::exp(-beta * r);
            const double log_r = std::log(r);
            const double gain = los ? log_c_los - a_los * log_r : log_c_nlos - a_nlos * log_r;
            if (gain > best_gain) {
                best_gain = gain;
                best_los = los;
            }
        }
        return best_los;
    });
    return bernoulli_estimate(hits, n_trials, rng.seed);
}

McEstimate mc_regular_p_los(const HexLayout& layout, const UserPoint& u, const HeightProfile& profile,
                            const BlockageParams& b, std::uint64_t n, const RngSpec& rng, unsigned threads)
{
    check_count(n);
    const auto link = link_los_probabilities(layout, u, profile, b);
    const auto hits = count_hits(n, rng, threads, [&](std::mt19937_64& eng) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        bool any = false;
        for (double p : link)
            any = (unit(eng) < p) || any;
        return any;
    });
    return bernoulli_estimate(hits, n, rng.seed);
}

}  // namespace loscov
