#include "loscov/blockage.hpp"
#include "loscov/irregular.hpp"
#include "loscov/joint.hpp"
#include "loscov/mc_oracle.hpp"
#include "loscov/model.hpp"
#include "loscov/regular.hpp"
#include "loscov/version.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace loscov;

namespace {

py::dict grid_as_arrays(const std::vector<GridSample>& samples)
{
    py::array_t<double> x(samples.size()), y(samples.size()), p(samples.size());
    auto xs = x.mutable_unchecked<1>();
    auto ys = y.mutable_unchecked<1>();
    auto ps = p.mutable_unchecked<1>();
    for (py::ssize_t i = 0; i < static_cast<py::ssize_t>(samples.size()); ++i) {
        xs(i) = samples[i].u.x;
        ys(i) = samples[i].u.y;
        ps(i) = samples[i].p_los;
    }
    py::dict out;
    out["x"] = x;
    out["y"] = y;
    out["p_los"] = p;
    return out;
}

}  // namespace

PYBIND11_MODULE(_loscov, m)
{
    m.doc() = "LOS coverage probabilities for mm-wave AP deployments";
    m.attr("__version__") = std::string(version);

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
    py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);
    py::register_exception<Infeasible>(m, "Infeasible", PyExc_RuntimeError);

    py::class_<HeightProfile>(m, "HeightProfile")
        .def(py::init<double, double, double>(), py::arg("h_ap") = 3.0, py::arg("h_ue") = 1.5,
             py::arg("h_blk_max") = 3.0)
        .def_readwrite("h_ap", &HeightProfile::h_ap)
        .def_readwrite("h_ue", &HeightProfile::h_ue)
        .def_readwrite("h_blk_max", &HeightProfile::h_blk_max)
        .def("__repr__", [](const HeightProfile& p) {
            return "HeightProfile(h_ap=" + std::to_string(p.h_ap) + ", h_ue=" + std::to_string(p.h_ue) +
                   ", h_blk_max=" + std::to_string(p.h_blk_max) + ")";
        });

    py::class_<BlockageParams>(m, "BlockageParams")
        .def(py::init<double>(), py::arg("beta") = 0.0709)
        .def_readwrite("beta", &BlockageParams::beta);

    py::class_<PathLossParams>(m, "PathLossParams")
        .def(py::init<double, double, double, double>(), py::arg("alpha_los") = 4.0, py::arg("alpha_nlos") = 2.0,
             py::arg("c_los") = 1.0, py::arg("c_nlos") = 1.0)
        .def_readwrite("alpha_los", &PathLossParams::alpha_los)
        .def_readwrite("alpha_nlos", &PathLossParams::alpha_nlos)
        .def_readwrite("c_los", &PathLossParams::c_los)
        .def_readwrite("c_nlos", &PathLossParams::c_nlos);

    py::enum_<LambdaConvention>(m, "LambdaConvention")
        .value("disk", LambdaConvention::disk)
        .value("hexagon", LambdaConvention::hexagon);

    py::class_<IrregularDeployment>(m, "IrregularDeployment")
        .def_static("from_density", &IrregularDeployment::from_density, py::arg("lam"))
        .def_static("from_radius", &IrregularDeployment::from_radius, py::arg("avg_cell_radius"),
                    py::arg("convention") = LambdaConvention::disk)
        .def_readonly("lam", &IrregularDeployment::lambda);

    py::class_<McEstimate>(m, "McEstimate")
        .def_readonly("mean", &McEstimate::mean)
        .def_readonly("std_err", &McEstimate::std_err)
        .def_readonly("n_samples", &McEstimate::n_samples)
        .def_readonly("seed", &McEstimate::seed);

    py::class_<BlockProbability>(m, "BlockProbability")
        .def(py::init([](double v) { return BlockProbability{v, false}; }), py::arg("value"))
        .def_readonly("value", &BlockProbability::value)
        .def_readonly("clamped", &BlockProbability::clamped);

    m.def("validate_profile", &validate_profile, py::arg("profile"));
    m.def("lambda_from_radius", &lambda_from_radius, py::arg("r"), py::arg("convention") = LambdaConvention::disk);

    m.def("pblk_irregular", &pblk_irregular, py::arg("profile"));
    m.def("pblk_regular", &pblk_regular, py::arg("profile"), py::arg("r"), py::arg("r_cell"));
    m.def("effective_beta", &effective_beta, py::arg("blockage"), py::arg("pblk"));

    py::class_<AssociationInputs>(m, "AssociationInputs")
        .def(py::init<IrregularDeployment, double, PathLossParams>(), py::arg("deployment"), py::arg("beta_eff"),
             py::arg("pathloss") = PathLossParams{})
        .def_readwrite("deployment", &AssociationInputs::deployment)
        .def_readwrite("beta_eff", &AssociationInputs::beta_eff)
        .def_readwrite("pathloss", &AssociationInputs::pathloss);

    m.def("los_prob_at_distance", &los_prob_at_distance, py::arg("beta_eff"), py::arg("x"));
    m.def("psi_nlos_exclusion", &psi_nlos_exclusion, py::arg("pathloss"), py::arg("x"));
    m.def("antiderivative_u", &antiderivative_u, py::arg("beta_eff"), py::arg("x"));
    m.def("antiderivative_y", &antiderivative_y, py::arg("beta_eff"), py::arg("x"));
    m.def("prob_at_least_one_los", &prob_at_least_one_los, py::arg("inputs"));
    m.def("p_los_association", [](const AssociationInputs& in) { return p_los_association(in); },
          py::arg("inputs"));

    py::class_<Point>(m, "Point")
        .def(py::init<double, double>(), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &Point::x)
        .def_readwrite("y", &Point::y);

    py::class_<HexLayout>(m, "HexLayout")
        .def_static("from_inter_site", &HexLayout::from_inter_site, py::arg("d_inter"))
        .def_static("from_cell_radius", &HexLayout::from_cell_radius, py::arg("r_cell"))
        .def_property_readonly("d_inter", &HexLayout::d_inter)
        .def_property_readonly("r_cell", &HexLayout::r_cell)
        .def_property_readonly("ap_positions", &HexLayout::ap_positions)
        .def("contains", &HexLayout::contains);

    py::class_<PerApGeometry>(m, "PerApGeometry")
        .def_readonly("theta", &PerApGeometry::theta)
        .def_readonly("range", &PerApGeometry::range)
        .def_readonly("boundary_dist", &PerApGeometry::boundary_dist)
        .def_readonly("at_ap", &PerApGeometry::at_ap);

    py::class_<WorstCase>(m, "WorstCase")
        .def_readonly("p_los", &WorstCase::p_los)
        .def_readonly("where", &WorstCase::where);

    m.def("geometry_at", &geometry_at, py::arg("layout"), py::arg("u"));
    m.def("p_los_at_point", &p_los_at_point, py::arg("layout"), py::arg("u"), py::arg("profile"),
          py::arg("blockage"));
    m.def(
        "worst_case_p_los",
        [](const HexLayout& layout, const HeightProfile& p, const BlockageParams& b, std::optional<double> step) {
            return worst_case_p_los(layout, p, b, step.value_or(layout.default_grid_step()));
        },
        py::arg("layout"), py::arg("profile"), py::arg("blockage"), py::arg("grid_step") = py::none());
    m.def(
        "grid_evaluate",
        [](const HexLayout& layout, const HeightProfile& p, const BlockageParams& b, std::optional<double> step,
           bool full) {
            auto half = grid_evaluate(layout, p, b, step.value_or(layout.default_grid_step()));
            return grid_as_arrays(full ? mirror_to_full(layout, half) : half);
        },
        py::arg("layout"), py::arg("profile"), py::arg("blockage"), py::arg("grid_step") = py::none(),
        py::arg("full") = false, "Half-triangle (or mirrored full-triangle) field as numpy arrays x, y, p_los.");

    py::class_<TierSpec>(m, "TierSpec")
        .def(py::init<HeightProfile, std::variant<IrregularDeployment, HexLayout>>(), py::arg("profile"),
             py::arg("deployment"))
        .def_readwrite("profile", &TierSpec::profile)
        .def_property_readonly("is_regular", &TierSpec::is_regular);

    py::class_<JointResult>(m, "JointResult")
        .def_readonly("p_low", &JointResult::p_low)
        .def_readonly("p_high", &JointResult::p_high)
        .def_readonly("p_joint", &JointResult::p_joint)
        .def_readonly("high_rise_count_per_100", &JointResult::high_rise_count_per_100);

    m.def("joint_p_los", &joint_p_los, py::arg("p_low"), py::arg("p_high"));
    m.def("high_rise_radius", &high_rise_radius, py::arg("low_radius"), py::arg("n_high_per_100_low"));
    m.def(
        "tier_p_los", [](const TierSpec& t, const BlockageParams& b, const PathLossParams& pl) { return tier_p_los(t, b, pl); },
        py::arg("tier"), py::arg("blockage"), py::arg("pathloss") = PathLossParams{});
    m.def("min_high_rise_count", &min_high_rise_count, py::arg("target"), py::arg("low_tier"),
          py::arg("high_profile"), py::arg("blockage"), py::arg("pathloss") = PathLossParams{});

    py::class_<RngSpec>(m, "RngSpec")
        .def(py::init<std::uint64_t, std::uint32_t>(), py::arg("seed") = 0, py::arg("stream_id") = 0)
        .def_readwrite("seed", &RngSpec::seed)
        .def_readwrite("stream_id", &RngSpec::stream_id);

    m.def("mc_pblk", &mc_pblk, py::arg("profile"), py::arg("r"), py::arg("r_extent"), py::arg("n"), py::arg("rng"),
          py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("recommended_window", &recommended_window, py::arg("inputs"));
    m.def("mc_association", &mc_association, py::arg("inputs"), py::arg("window_radius"), py::arg("n_trials"),
          py::arg("rng"), py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
    m.def("mc_regular_p_los", &mc_regular_p_los, py::arg("layout"), py::arg("u"), py::arg("profile"),
          py::arg("blockage"), py::arg("n"), py::arg("rng"), py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());
}
