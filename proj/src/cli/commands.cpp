#include "loscov/cli/commands.hpp"

#include "loscov/blockage.hpp"
#include "loscov/cli/config.hpp"
#include "loscov/cli/output.hpp"
#include "loscov/irregular.hpp"
#include "loscov/joint.hpp"
#include "loscov/parallel.hpp"
#include "loscov/regular.hpp"
#include "loscov/validation.hpp"
#include "loscov/version.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <thread>

namespace loscov::cli {

using nlohmann::json;

namespace {

std::string fmt(double v) { return format_double(v); }

std::uint64_t get_count(const json& cfg, const char* key)
{
    const auto& v = cfg.at("mc").at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() <= 0)
        throw ConfigError(std::string("mc.") + key + " must be a positive integer");
    return v.get<std::uint64_t>();
}

std::uint64_t get_seed(const json& cfg)
{
    const auto& v = cfg.at("mc").at("seed");
    if (v.is_number_unsigned())
        return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ConfigError("mc.seed must be a non-negative integer");
}

double get_number(const json& cfg, const char* section, const char* key)
{
    const auto& v = cfg.at(section).at(key);
    if (!v.is_number())
        throw ConfigError(std::string(section) + "." + key + " must be a number");
    return v.get<double>();
}

std::string get_string(const json& cfg, const char* section, const char* key)
{
    const auto& v = cfg.at(section).at(key);
    if (!v.is_string())
        throw ConfigError(std::string(section) + "." + key + " must be a string");
    return v.get<std::string>();
}

std::vector<double> sweep(const json& cfg, const char* key)
{
    return expand_sweep(cfg.at("sweep").at(key), std::string("sweep.") + key);
}

HeightProfile checked(HeightProfile p)
{
    try {
        return validate_profile(p);
    } catch (const DomainError& e) {
        throw ConfigError(std::string(e.what()) + " (h_ap=" + fmt(p.h_ap) + ", h_ue=" + fmt(p.h_ue) +
                          ", h_max=" + fmt(p.h_blk_max) + ")");
    }
}

void check_inputs(const json& cfg)
{
    try {
        validate_blockage(blockage_params(cfg));
        validate_pathloss(pathloss_params(cfg));
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    lambda_convention(cfg);
}

RunManifest start_manifest(const Context& ctx, const std::string& command)
{
    std::filesystem::create_directories(ctx.out_dir);
    return RunManifest(command, ctx.argv, ctx.config);
}

struct AssocRow {
    double key = 0.0;
    double h_ap = 0.0;
    double p = 0.0;
};

}  // namespace

int cmd_blocking(const Context& ctx)
{
    const auto& cfg = ctx.config;
    check_inputs(cfg);
    const auto h_aps = sweep(cfg, "h_ap");
    const auto h_maxs = sweep(cfg, "h_max_values");
    const double h_ue = get_number(cfg, "heights", "h_ue");

    auto manifest = start_manifest(ctx, "blocking");
    CsvTable csv({"h_ap_m", "h_max_m", "p_blk"});
    bool any_clamped = false;
    for (double hm : h_maxs) {
        for (double hb : h_aps) {
            const auto pb = pblk_irregular(checked({hb, h_ue, hm}));
            any_clamped = any_clamped || pb.clamped;
            csv.add_row({fmt(hb), fmt(hm), fmt(pb.value)});
        }
    }
    if (any_clamped)
        manifest.add_note("some blocking probabilities were clamped to [0, 1]");
    manifest.write_output(ctx.out_dir, "blocking.csv", csv.text());
    manifest.finish(ctx.out_dir);
    *ctx.out << "blocking: " << csv.rows() << " rows -> " << (ctx.out_dir / "blocking.csv").string() << '\n';
    return exit_ok;
}

int cmd_assoc(const Context& ctx)
{
    const auto& cfg = ctx.config;
    check_inputs(cfg);
    const auto variable = get_string(cfg, "sweep", "assoc_variable");
    if (variable != "radius" && variable != "h_max")
        throw ConfigError("sweep.assoc_variable must be 'radius' or 'h_max'");
    const bool by_radius = variable == "radius";
    const auto keys = by_radius ? sweep(cfg, "radius") : sweep(cfg, "h_max");
    const auto h_aps = sweep(cfg, "h_ap_values");
    const auto base = low_profile(cfg);
    const auto conv = lambda_convention(cfg);
    const auto b = blockage_params(cfg);
    const auto pl = pathloss_params(cfg);
    const double fixed_radius = get_number(cfg, "deployment", "avg_cell_radius");

    std::vector<AssocRow> rows;
    for (double hb : h_aps) {
        for (double k : keys) {
            HeightProfile p = base;
            p.h_ap = hb;
            if (!by_radius)
                p.h_blk_max = k;
            checked(p);
            const double radius = by_radius ? k : fixed_radius;
            if (!(radius > 0.0))
                throw ConfigError("cell radius must be positive");
            rows.push_back({k, hb, 0.0});
        }
    }

    auto manifest = start_manifest(ctx, "assoc");
    parallel_for(rows.size(), ctx.threads, [&](std::size_t i) {
        auto& row = rows[i];
        HeightProfile p = base;
        p.h_ap = row.h_ap;
        if (!by_radius)
            p.h_blk_max = row.key;
        const double radius = by_radius ? row.key : fixed_radius;
        const AssociationInputs in{IrregularDeployment::from_radius(radius, conv),
                                   effective_beta(b, pblk_irregular(p)), pl};
        try {
            row.p = p_los_association(in);
        } catch (const QuadratureError& e) {
            throw QuadratureError(std::string(e.what()) + " at radius=" + fmt(radius) + " h_ap=" + fmt(p.h_ap) +
                                  " h_max=" + fmt(p.h_blk_max));
        }
    });

    CsvTable csv({by_radius ? "avg_cell_radius_m" : "h_max_m", "h_ap_m", "p_los"});
    for (const auto& r : rows)
        csv.add_row({fmt(r.key), fmt(r.h_ap), fmt(r.p)});
    manifest.write_output(ctx.out_dir, "assoc.csv", csv.text());
    manifest.finish(ctx.out_dir);
    *ctx.out << "assoc: " << csv.rows() << " rows -> " << (ctx.out_dir / "assoc.csv").string() << '\n';
    return exit_ok;
}

int cmd_regular(const Context& ctx)
{
    const auto& cfg = ctx.config;
    check_inputs(cfg);
    const auto b = blockage_params(cfg);
    const auto profile = checked(low_profile(cfg));
    const double rc = get_number(cfg, "deployment", "cell_radius");
    if (!(rc > 0.0))
        throw ConfigError("deployment.cell_radius must be positive");
    const auto layout = HexLayout::from_cell_radius(rc);
    const double step_cfg = get_number(cfg, "deployment", "grid_step");
    if (step_cfg < 0.0)
        throw ConfigError("deployment.grid_step must be positive (0 selects D/200)");
    const double step = step_cfg > 0.0 ? step_cfg : layout.default_grid_step();
    const auto h_aps = sweep(cfg, "h_ap_values");
    const auto h_maxs = sweep(cfg, "h_max");
    const auto& write_grid = cfg.at("output").at("write_grid");
    if (!write_grid.is_boolean())
        throw ConfigError("output.write_grid must be true or false");

    struct WorstRow {
        double h_max, h_ap, p;
    };
    std::vector<WorstRow> worst;
    for (double hb : h_aps)
        for (double hm : h_maxs) {
            checked({hb, profile.h_ue, hm});
            worst.push_back({hm, hb, 0.0});
        }

    auto manifest = start_manifest(ctx, "regular");
    if (write_grid.get<bool>()) {
        const auto pts = half_triangle_grid(layout, step);
        std::vector<GridSample> half(pts.size());
        parallel_for(pts.size(), ctx.threads,
                     [&](std::size_t i) { half[i] = {pts[i], p_los_at_point(layout, pts[i], profile, b)}; });
        CsvTable grid({"x_m", "y_m", "p_los"});
        for (const auto& s : mirror_to_full(layout, half))
            grid.add_row({fmt(s.u.x), fmt(s.u.y), fmt(s.p_los)});
        manifest.write_output(ctx.out_dir, "regular_grid.csv", grid.text());
    }

    parallel_for(worst.size(), ctx.threads, [&](std::size_t i) {
        const HeightProfile p{worst[i].h_ap, profile.h_ue, worst[i].h_max};
        worst[i].p = worst_case_p_los(layout, p, b, step).p_los;
    });
    CsvTable wc({"h_max_m", "h_ap_m", "worst_p_los"});
    for (const auto& w : worst)
        wc.add_row({fmt(w.h_max), fmt(w.h_ap), fmt(w.p)});
    manifest.write_output(ctx.out_dir, "regular_worst_case.csv", wc.text());

    const auto here = worst_case_p_los(layout, profile, b, step);
    manifest.set("worst_case", {{"r_cell_m", rc},
                                {"h_ap_m", profile.h_ap},
                                {"h_max_m", profile.h_blk_max},
                                {"p_los", here.p_los},
                                {"x_m", here.where.x},
                                {"y_m", here.where.y}});
    manifest.finish(ctx.out_dir);
    *ctx.out << "regular: worst-case P_LOS " << fmt(here.p_los) << " at (" << fmt(here.where.x) << ", "
             << fmt(here.where.y) << ") for R_c=" << fmt(rc) << " h_ap=" << fmt(profile.h_ap)
             << " h_max=" << fmt(profile.h_blk_max) << '\n';
    return exit_ok;
}

int cmd_joint(const Context& ctx)
{
    const auto& cfg = ctx.config;
    check_inputs(cfg);
    const auto b = blockage_params(cfg);
    const auto pl = pathloss_params(cfg);
    const auto conv = lambda_convention(cfg);
    const double target = get_number(cfg, "sweep", "target");
    if (!(target > 0.0 && target < 1.0))
        throw ConfigError("sweep.target must lie in (0, 1)");
    const auto mode = get_string(cfg, "deployment", "joint_mode");
    if (mode != "regular" && mode != "irregular")
        throw ConfigError("deployment.joint_mode must be 'regular' or 'irregular'");
    const auto h_maxs = sweep(cfg, "joint_h_max_values");
    const auto low = low_profile(cfg);
    const auto high = high_profile(cfg);
    const double rc = get_number(cfg, "deployment", "cell_radius");
    const double r_avg = get_number(cfg, "deployment", "avg_cell_radius");
    if (!(rc > 0.0) || !(r_avg > 0.0))
        throw ConfigError("cell radii must be positive");

    struct Row {
        double h_max = 0.0;
        JointResult result;
        bool feasible = true;
    };
    std::vector<Row> rows;
    for (double hm : h_maxs) {
        checked({low.h_ap, low.h_ue, hm});
        checked({high.h_ap, high.h_ue, hm});
        rows.push_back({hm, {}, true});
    }

    struct Case {
        double h_max, high_radius;
        double p_low = 0, p_high = 0, p_joint = 0;
    };
    std::vector<Case> cases;
    const auto& case_list = cfg.at("sweep").at("irregular_cases");
    if (!case_list.is_array())
        throw ConfigError("sweep.irregular_cases must be a list");
    for (const auto& c : case_list) {
        if (!c.is_object() || !c.contains("h_max") || !c.contains("high_radius") || !c["h_max"].is_number() ||
            !c["high_radius"].is_number() || !(c["high_radius"].get<double>() > 0.0))
            throw ConfigError("sweep.irregular_cases entries need numeric h_max and positive high_radius");
        checked({low.h_ap, low.h_ue, c["h_max"].get<double>()});
        cases.push_back({c["h_max"].get<double>(), c["high_radius"].get<double>()});
    }

    auto manifest = start_manifest(ctx, "joint");
    parallel_for(rows.size(), ctx.threads, [&](std::size_t i) {
        const double hm = rows[i].h_max;
        TierSpec low_tier{{low.h_ap, low.h_ue, hm}, IrregularDeployment{}};
        if (mode == "regular")
            low_tier.deployment = HexLayout::from_cell_radius(rc);
        else
            low_tier.deployment = IrregularDeployment::from_radius(r_avg, conv);
        try {
            rows[i].result = min_high_rise_count(target, low_tier, {high.h_ap, high.h_ue, hm}, b, pl);
        } catch (const Infeasible& e) {
            rows[i].result = e.best();
            rows[i].feasible = false;
        }
    });
    parallel_for(cases.size(), ctx.threads, [&](std::size_t i) {
        auto& c = cases[i];
        const TierSpec lo{{low.h_ap, low.h_ue, c.h_max}, IrregularDeployment::from_radius(r_avg, conv)};
        const TierSpec hi{{high.h_ap, high.h_ue, c.h_max}, IrregularDeployment::from_radius(c.high_radius, conv)};
        c.p_low = tier_p_los(lo, b, pl);
        c.p_high = tier_p_los(hi, b, pl);
        c.p_joint = joint_p_los(c.p_low, c.p_high);
    });

    manifest.set("tier_mapping", {{"mode", mode},
                                  {"high_rise_radius", "low_radius * sqrt(100 / n)"},
                                  {"high_rise_evaluation", mode == "regular" ? "own worst case" : "association"}});
    CsvTable csv({"h_max_m", "p_low", "n_high", "p_joint"});
    bool all_feasible = true;
    *ctx.out << "joint (" << mode << ", target " << fmt(target) << ")\n"
             << "  h_max_m  p_low        n_high  p_joint\n";
    for (const auto& r : rows) {
        const std::string n = r.feasible ? std::to_string(*r.result.high_rise_count_per_100) : "";
        csv.add_row({fmt(r.h_max), fmt(r.result.p_low), n, fmt(r.result.p_joint)});
        *ctx.out << "  " << std::left << std::setw(7) << fmt(r.h_max) << "  " << std::setw(11)
                 << fmt(r.result.p_low) << "  " << std::setw(6) << (r.feasible ? n : ">100") << "  "
                 << fmt(r.result.p_joint) << '\n';
        if (!r.feasible) {
            all_feasible = false;
            manifest.add_note("h_max=" + fmt(r.h_max) + ": target not reached with 100 high-rise APs per 100; best p_joint " +
                              fmt(r.result.p_joint));
            *ctx.err << "infeasible: h_max=" << fmt(r.h_max) << " best p_joint " << fmt(r.result.p_joint)
                     << " at 100 high-rise APs per 100\n";
        }
    }
    CsvTable irr({"h_max_m", "low_radius_m", "high_radius_m", "p_low", "p_high", "p_joint"});
    for (const auto& c : cases)
        irr.add_row({fmt(c.h_max), fmt(r_avg), fmt(c.high_radius), fmt(c.p_low), fmt(c.p_high), fmt(c.p_joint)});
    manifest.write_output(ctx.out_dir, "joint.csv", csv.text());
    manifest.write_output(ctx.out_dir, "joint_irregular.csv", irr.text());
    manifest.finish(ctx.out_dir);
    return all_feasible ? exit_ok : exit_infeasible;
}

int cmd_validate(const Context& ctx)
{
    const auto& cfg = ctx.config;
    check_inputs(cfg);
    OracleSuiteOptions opts;
    opts.h_ue = get_number(cfg, "heights", "h_ue");
    opts.blockage = blockage_params(cfg);
    opts.pathloss = pathloss_params(cfg);
    opts.convention = lambda_convention(cfg);
    opts.seed = get_seed(cfg);
    opts.n_pblk = get_count(cfg, "n_pblk");
    opts.n_assoc = get_count(cfg, "n_assoc");
    opts.n_regular = get_count(cfg, "n_regular");
    opts.window_factor = get_number(cfg, "mc", "window_factor");
    opts.corrupt_beta = get_number(cfg, "mc", "corrupt_beta");
    opts.threads = ctx.threads;
    if (!(opts.window_factor > 0.0) || !(opts.corrupt_beta > 0.0))
        throw ConfigError("mc.window_factor and mc.corrupt_beta must be positive");
    if (opts.h_ue < 0.0)
        throw ConfigError("heights.h_ue must be non-negative");

    auto manifest = start_manifest(ctx, "validate");
    const auto checks = run_oracle_suite(opts);
    CsvTable csv({"kind", "params", "closed_form", "mc_mean", "mc_std_err", "tolerance", "pass"});
    std::size_t failed = 0;
    for (const auto& c : checks) {
        csv.add_row({c.kind, c.params, fmt(c.closed_form), fmt(c.mc.mean), fmt(c.mc.std_err), fmt(c.tolerance),
                      c.pass ? "1" : "0"});
        *ctx.out << (c.pass ? "PASS " : "FAIL ") << std::left << std::setw(15) << c.kind << ' ' << c.params
                 << "  closed=" << fmt(c.closed_form) << " mc=" << fmt(c.mc.mean) << " delta="
                 << fmt(c.closed_form - c.mc.mean) << " tol=" << fmt(c.tolerance) << '\n';
        failed += c.pass ? 0 : 1;
    }
    *ctx.out << checks.size() - failed << "/" << checks.size() << " oracle comparisons passed\n";
    manifest.set("oracle_summary", {{"checks", checks.size()}, {"failed", failed}});
    manifest.write_output(ctx.out_dir, "validate.csv", csv.text());
    manifest.finish(ctx.out_dir);
    return failed == 0 ? exit_ok : exit_oracle;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"LOS coverage probabilities for mm-wave AP deployments", "loscov"};
    app.set_version_flag("--version", std::string(version));
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir = "loscov-out";
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    app.add_option("--config", config_path, "JSON config file (a manifest.json replays its run)");
    app.add_option("--out-dir", out_dir, "Directory for CSV outputs and manifest.json");
    app.add_option("--seed", seed, "Monte Carlo seed (overrides mc.seed)");
    app.add_option("--threads", threads, "Worker threads (default: LOSCOV_THREADS, then hardware)")
        ->check(CLI::PositiveNumber);

    const auto keys = config_keys();
    std::map<std::string, std::string> overrides;
    std::vector<std::pair<std::string, CLI::Option*>> override_opts;
    auto* group = app.add_option_group("Config overrides", "Any config leaf, by dotted name");
    for (const auto& key : keys) {
        std::string flag = key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        override_opts.emplace_back(key, group->add_option("--" + flag, overrides[key])->type_name("VALUE"));
    }

    struct Sub {
        const char* name;
        const char* help;
        int (*run)(const Context&);
    };
    const Sub subs[] = {
        {"blocking", "Blocking probability vs AP height", cmd_blocking},
        {"assoc", "PPP LOS association probability sweeps", cmd_assoc},
        {"regular", "Hexagonal deployment grid and worst-case sweep", cmd_regular},
        {"joint", "Low-rise + high-rise joint deployment", cmd_joint},
        {"validate", "Closed forms vs Monte Carlo oracles", cmd_validate},
    };
    std::vector<CLI::App*> sub_apps;
    for (const auto& s : subs)
        sub_apps.push_back(app.add_subcommand(s.name, s.help));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }

    Context ctx;
    ctx.out = &out;
    ctx.err = &err;
    ctx.out_dir = out_dir;
    ctx.argv.assign(argv, argv + argc);
    if (threads) {
        ctx.threads = *threads;
    } else if (const char* env = std::getenv("LOSCOV_THREADS"); env && std::atoi(env) > 0) {
        ctx.threads = static_cast<unsigned>(std::atoi(env));
    } else {
        ctx.threads = std::max(1u, std::thread::hardware_concurrency());
    }

    try {
        ctx.config = config_path.empty() ? default_config() : load_config(config_path);
        for (const auto& [key, opt] : override_opts)
            if (opt->count() > 0)
                apply_override(ctx.config, key, overrides[key]);
        if (seed)
            ctx.config["mc"]["seed"] = *seed;

        for (std::size_t i = 0; i < sub_apps.size(); ++i)
            if (sub_apps[i]->parsed())
                return subs[i].run(ctx);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const DomainError& e) {
        err << "invalid parameters: " << e.what() << '\n';
        return exit_config;
    } catch (const GeometryError& e) {
        err << "invalid geometry: " << e.what() << '\n';
        return exit_config;
    } catch (const QuadratureError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_config;
}

}  // namespace loscov::cli
