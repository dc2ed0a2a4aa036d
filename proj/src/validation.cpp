#include "loscov/validation.hpp"

#include "loscov/blockage.hpp"
#include "loscov/irregular.hpp"
#include "loscov/regular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace loscov {

namespace {

std::string describe(std::initializer_list<std::pair<const char*, double>> kv)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : kv) {
        os << (first ? "" : " ") << k << '=' << v;
        first = false;
    }
    return os.str();
}

OracleCheck compare(std::string kind, std::string params, double closed, const McEstimate& mc, double floor)
{
    OracleCheck c{std::move(kind), std::move(params), closed, mc, 0.0, false};
    c.tolerance = std::max(floor, 4.0 * mc.std_err);
    c.pass = std::abs(closed - mc.mean) <= c.tolerance;
    return c;
}

}  // namespace

std::vector<OracleCheck> run_oracle_suite(const OracleSuiteOptions& opts)
{
    std::vector<OracleCheck> out;
    std::uint32_t stream = 0;
    const BlockageParams closed_b{opts.blockage.beta * opts.corrupt_beta};

    for (double hb : oracle_grid_h_ap) {
        for (double hm : oracle_grid_h_max) {
            const HeightProfile p{hb, opts.h_ue, hm};
            const auto mc = mc_pblk(p, 100.0, 100.0, opts.n_pblk, {opts.seed, stream++}, opts.threads);
            out.push_back(compare("pblk_irregular", describe({{"h_ap", hb}, {"h_max", hm}}),
                                  pblk_irregular(p).value, mc, 0.0));
        }
    }

    struct RegularBlock {
        double hb, hm, r, extent;
    };
    for (const auto& q : {RegularBlock{3, 3, 50, 100}, RegularBlock{30, 15, 80, 150}, RegularBlock{3, 15, 20, 100}}) {
        const HeightProfile p{q.hb, opts.h_ue, q.hm};
        const auto mc = mc_pblk(p, q.r, q.extent, opts.n_pblk, {opts.seed, stream++}, opts.threads);
        out.push_back(compare("pblk_regular",
                              describe({{"h_ap", q.hb}, {"h_max", q.hm}, {"r", q.r}, {"r_cell", q.extent}}),
                              pblk_regular(p, q.r, q.extent).value, mc, 0.0));
    }

    struct AssocPoint {
        double radius, hb, hm;
        bool swapped;
    };
    const AssocPoint assoc_points[] = {
        {25, 3, 15, false},   {100, 3, 15, false},  {300, 3, 15, false},  {1000, 3, 15, false},
        {25, 30, 15, false},  {100, 30, 15, false}, {300, 30, 15, false}, {1000, 30, 15, false},
        {100, 3, 3, true},    {100, 3, 10, true},   {300, 30, 10, true},  {1000, 30, 3, true},
    };
    for (const auto& a : assoc_points) {
        PathLossParams pl = opts.pathloss;
        if (a.swapped)
            std::swap(pl.alpha_los, pl.alpha_nlos);
        const HeightProfile p{a.hb, opts.h_ue, a.hm};
        const auto dep = IrregularDeployment::from_radius(a.radius, opts.convention);
        const auto pb = pblk_irregular(p);
        const AssociationInputs mc_in{dep, effective_beta(opts.blockage, pb), pl};
        const AssociationInputs closed_in{dep, effective_beta(closed_b, pb), pl};
        const auto mc = mc_association(mc_in, opts.window_factor * recommended_window(mc_in), opts.n_assoc,
                                       {opts.seed, stream++}, opts.threads);
        out.push_back(compare("association",
                              describe({{"radius", a.radius}, {"h_ap", a.hb}, {"h_max", a.hm},
                                        {"alpha_los", pl.alpha_los}, {"alpha_nlos", pl.alpha_nlos}}),
                              p_los_association(closed_in), mc, 0.01));
    }

    struct RegularPoint {
        double rc, hb, hm, fx, fy;  // user point as fractions of D
    };
    const RegularPoint regular_points[] = {
        {100, 3, 3, 0.5, 0.5 / std::numbers::sqrt3},
        {100, 30, 15, 0.2, 0.1},
        {100, 3, 10, 0.5, 0.0},
        {500, 3, 5, 0.3, 0.25},
    };
    for (const auto& g : regular_points) {
        const auto layout = HexLayout::from_cell_radius(g.rc);
        const UserPoint u{g.fx * layout.d_inter(), g.fy * layout.d_inter()};
        const HeightProfile p{g.hb, opts.h_ue, g.hm};
        const auto mc = mc_regular_p_los(layout, u, p, opts.blockage, opts.n_regular, {opts.seed, stream++},
                                         opts.threads);
        out.push_back(compare("regular",
                              describe({{"r_cell", g.rc}, {"h_ap", g.hb}, {"h_max", g.hm}, {"x", u.x}, {"y", u.y}}),
                              p_los_at_point(layout, u, p, closed_b), mc, 0.0));
    }
    return out;
}

}  // namespace loscov
