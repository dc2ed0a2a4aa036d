#pragma once

// Closed form vs Monte Carlo comparison suite behind `loscov validate`.

#include "loscov/mc_oracle.hpp"
#include "loscov/model.hpp"

#include <string>
#include <vector>

namespace loscov {

struct OracleSuiteOptions {
    double h_ue = 1.5;
    BlockageParams blockage;
    PathLossParams pathloss;
    LambdaConvention convention = LambdaConvention::disk;
    std::uint64_t seed = 20160523;
    std::uint64_t n_pblk = 1'000'000;
    std::uint64_t n_assoc = 100'000;
    std::uint64_t n_regular = 1'000'000;
    double window_factor = 1.0;  // multiplies recommended_window
    double corrupt_beta = 1.0;   // negative-control hook: scales beta on the closed-form side only
    unsigned threads = 1;
};

struct OracleCheck {
    std::string kind;    // pblk_irregular | pblk_regular | association | regular
    std::string params;  // human-readable parameter point
    double closed_form = 0.0;
    McEstimate mc;
    double tolerance = 0.0;
    bool pass = false;
};

/// 35-point blocking grid, regular blocking points, association points
/// for average cell radii from 25 m to 1000 m (with both exponent
/// orderings) and three-link regular points.
std::vector<OracleCheck> run_oracle_suite(const OracleSuiteOptions& opts);

/// H_B and H_max values of the blocking grid.
inline constexpr double oracle_grid_h_ap[] = {2, 3, 5, 10, 15, 30, 40};
inline constexpr double oracle_grid_h_max[] = {1.5, 3, 10, 15, 30};

}  // namespace loscov
