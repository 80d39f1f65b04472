// ehfdr: link-level simulation and closed-form analysis for a dual-hop
// energy-harvesting full-duplex amplify-and-forward relay.
//
// Each subcommand maps one experiment family onto the analysis and Monte
// Carlo engines; every run emits a CSV table with a fixed schema plus a JSON
// manifest holding the fully resolved configuration.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ehfdr/analysis.hpp"
#include "ehfdr/config.hpp"
#include "ehfdr/montecarlo.hpp"
#include "ehfdr/optimize.hpp"
#include "ehfdr/validation.hpp"

namespace {

constexpr const char* tool_version = "0.1.0";

using ehfdr::cfg::ConfigError;
using ehfdr::cfg::ScenarioConfig;

struct CommandArgs {
    std::string config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
    std::string ps_dbm, gamma_hat_db, kappa;
    std::string metric;
    std::string out_csv;
    std::string out_manifest;
    bool fading_averaged = false;
    bool quick = false;

    void push(const std::string& key, const std::string& value) {
        overrides.emplace_back(key, value);
    }
    // Range-valued flags become the sweep grid for their axis; scalars
    // override the single-run value.
    void route(const std::string& value, const std::string& axis,
               const std::string& scalar_key) {
        if (value.empty()) return;
        if (value.find("..") != std::string::npos ||
            value.find(',') != std::string::npos) {
            push("sweep.axis", axis);
            push("sweep.grid", value);
        } else {
            push(scalar_key, value);
        }
    }
};

void add_common_options(CLI::App* cmd, CommandArgs& args) {
    cmd->add_option("--config", args.config_path,
                    "configuration file (flat key=value or JSON)");
    auto opt = [cmd, &args](const char* flag, const char* key, const char* help) {
        cmd->add_option_function<std::string>(
            flag, [&args, key](const std::string& v) { args.push(key, v); },
            help);
    };
    opt("--scheme", "run.scheme", "relay control scheme: maximum|sinr|target");
    opt("--mode", "run.mode", "transmission mode: instantaneous|dl|dt");
    opt("--n-blocks", "run.n_blocks", "Monte Carlo fading blocks per point");
    opt("--seed", "run.seed", "random seed");
    opt("--threads", "run.threads", "worker cap (0: EHFDR_THREADS or hardware)");
    opt("--alpha", "run.alpha", "fixed statistical TS factor (default: bisected)");
    opt("--gamma-hat-schedule-db", "run.gamma_hat_schedule_db",
        "target e-SINR schedule a..b mapped linearly over the grid");
    opt("--sigma02", "system.sigma02", "mean RSI channel gain");
    opt("--d3-m", "system.d3_m", "source-destination distance, meters");
    opt("--rate", "system.rate_bps_hz", "fixed transmission rate, bps/Hz");
    opt("--axis", "sweep.axis", "sweep axis: ps|sigma02|gamma_hat|placement|kappa");
    opt("--grid", "sweep.grid", "sweep grid, start..stop:step");
    opt("--g0", "channel.g0", "|h0|^2 of the fixed frame");
    opt("--g1", "channel.g1", "|h1|^2 of the fixed frame");
    opt("--g2", "channel.g2", "|h2|^2 of the fixed frame");
    opt("--g3", "channel.g3", "|h3|^2 of the fixed frame");
    cmd->add_option("--ps-dbm", args.ps_dbm,
                    "source power in dBm (value or start..stop:step)");
    cmd->add_option("--gamma-hat-db", args.gamma_hat_db,
                    "target e-SINR in dB (value or grid)");
    cmd->add_option("--kappa", args.kappa, "CSI error ratio (value or grid)");
    cmd->add_option("--metric", args.metric, "command-specific metric selector");
    cmd->add_option("--out", args.out_csv, "CSV output path");
    cmd->add_option("--manifest", args.out_manifest, "JSON manifest path");
}

ScenarioConfig load_config(const CommandArgs& args_in,
                           const std::string& default_axis) {
    CommandArgs args = args_in;
    args.route(args.ps_dbm, "ps", "run.ps_dbm");
    args.route(args.gamma_hat_db, "gamma_hat", "run.gamma_hat_db");
    args.route(args.kappa, "kappa", "run.kappa");
    ScenarioConfig cfg;
    cfg.set("sweep.axis", default_axis);
    if (!args.config_path.empty()) cfg.apply_file(args.config_path);
    for (const auto& [k, v] : args.overrides) cfg.set(k, v);
    // a scalar flag on the active axis pins a single-point grid
    auto pin_scalar = [&cfg](const std::string& value, const char* axis) {
        if (value.empty() || value.find("..") != std::string::npos ||
            value.find(',') != std::string::npos)
            return;
        if (cfg.raw("sweep.axis") == axis && cfg.raw("sweep.grid").empty())
            cfg.set("sweep.grid", value);
    };
    pin_scalar(args.ps_dbm, "ps");
    pin_scalar(args.gamma_hat_db, "gamma_hat");
    pin_scalar(args.kappa, "kappa");
    return cfg;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void render_csv(std::ostream& out, const std::vector<ehfdr::opt::SweepRow>& rows) {
    out << "axis_value,analytic_value,analytic_method,mc_value,mc_stderr,n\n";
    for (const auto& r : rows) {
        out << format_number(r.axis_value) << ',' << format_number(r.analytic)
            << ',' << r.method << ',' << format_number(r.mc) << ','
            << format_number(r.mc_stderr) << ',' << r.n << '\n';
    }
}

void write_csv(const std::string& path,
               const std::vector<ehfdr::opt::SweepRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write CSV '" + path + "'");
    render_csv(out, rows);
}

int finish_run(const std::string& command, const ScenarioConfig& cfg,
               const CommandArgs& args,
               const std::vector<ehfdr::opt::SweepRow>& rows, double wall_s) {
    const std::string csv_path =
        args.out_csv.empty() ? command + ".csv" : args.out_csv;
    write_csv(csv_path, rows);
    if (command != "validate") render_csv(std::cout, rows);
    nlohmann::json manifest;
    manifest["command"] = command;
    manifest["version"] = tool_version;
    manifest["metric"] = args.metric;
    manifest["seed"] = cfg.integer("run.seed");
    manifest["wall_time_s"] = wall_s;
    manifest["config"] = cfg.to_json();
    nlohmann::json errors = nlohmann::json::array();
    for (const auto& r : rows)
        if (!r.error.empty())
            errors.push_back({{"axis_value", r.axis_value}, {"error", r.error}});
    manifest["errors"] = errors;
    const std::string man_path = args.out_manifest.empty()
                                     ? command + "_manifest.json"
                                     : args.out_manifest;
    std::ofstream man(man_path);
    if (!man) throw std::runtime_error("cannot write manifest '" + man_path + "'");
    man << manifest.dump(2) << '\n';
    if (!errors.empty()) {
        for (const auto& e : errors)
            std::cerr << "point " << e["axis_value"] << " failed: "
                      << e["error"].get<std::string>() << '\n';
        return 3;
    }
    return 0;
}

struct SweepContext {
    ScenarioConfig cfg;
    ehfdr::SystemParams base;
    ehfdr::relay::Scheme scheme;
    ehfdr::opt::SweepAxis axis;
    std::vector<double> grid;
    long n_blocks = 0;
    std::uint64_t seed = 0;
    int threads = 0;

    double ps_for(ehfdr::opt::SweepAxis a, double v) const {
        return ehfdr::dbm_to_watts(
            a == ehfdr::opt::SweepAxis::Ps ? v : cfg.number("run.ps_dbm"));
    }
    double gamma_hat_for(ehfdr::opt::SweepAxis a, double v) const {
        if (a == ehfdr::opt::SweepAxis::GammaHat) return ehfdr::db_to_linear(v);
        std::size_t i = 0;
        for (; i < grid.size(); ++i)
            if (grid[i] == v) break;
        return cfg.gamma_hat_for_point(i, grid.size());
    }
    ehfdr::mc::RunSpec spec_for(const ehfdr::SystemParams& p, double ps,
                                ehfdr::mc::Metric metric) const {
        ehfdr::mc::RunSpec s;
        s.params = p;
        s.ps = ps;
        s.scheme = scheme;
        s.metric = metric;
        s.n_blocks = n_blocks;
        s.seed = seed;
        s.threads = threads;
        s.alpha_policy = ehfdr::mc::AlphaPolicy::instantaneous_csi();
        return s;
    }
};

SweepContext make_context(const CommandArgs& args,
                          const std::string& default_axis,
                          const std::string& default_grid) {
    SweepContext ctx{load_config(args, default_axis),
                     {},
                     ehfdr::relay::Scheme::Sinr,
                     ehfdr::opt::SweepAxis::Ps,
                     {}};
    ctx.base = ctx.cfg.system_params();
    ctx.scheme = ctx.cfg.scheme();
    ctx.axis = ctx.cfg.sweep_axis();
    ctx.grid = ctx.cfg.sweep_grid(default_grid);
    ctx.n_blocks = ctx.cfg.integer("run.n_blocks");
    ctx.seed = static_cast<std::uint64_t>(ctx.cfg.integer("run.seed"));
    ctx.threads = static_cast<int>(ctx.cfg.integer("run.threads"));
    return ctx;
}

// Statistical TS factor for the maximum relay: fixed run.alpha when given,
// otherwise bisected on the analytic expressions.
double maximum_alpha(const SweepContext& ctx, const ehfdr::SystemParams& p,
                     double ps, ehfdr::mc::Mode mode) {
    if (!ctx.cfg.empty_value("run.alpha")) return ctx.cfg.number("run.alpha");
    if (mode == ehfdr::mc::Mode::DelayTolerant)
        return ehfdr::analysis::optimal_alpha_dt(p, ps);
    return ehfdr::analysis::optimal_alpha_dl(p, ps);
}

int cmd_outage(const CommandArgs& args) {
    using namespace ehfdr;
    const auto t0 = std::chrono::steady_clock::now();
    SweepContext ctx = make_context(args, "ps", "10..50:5");
    auto rows = opt::sweep(ctx.axis, ctx.grid, [&](opt::SweepAxis a, double v) {
        const SystemParams p = opt::apply_axis(ctx.base, a, v);
        const double ps = ctx.ps_for(a, v);
        opt::SweepRow row;
        analysis::AnalyticResult ar;
        mc::RunSpec spec = ctx.spec_for(p, ps, mc::Metric::Outage);
        switch (ctx.scheme) {
            case relay::Scheme::Maximum: {
                const double alpha =
                    maximum_alpha(ctx, p, ps, mc::Mode::DelayLimited);
                ar = analysis::outage_max(p, ps, alpha);
                spec.alpha_policy = mc::AlphaPolicy::statistical(alpha);
                break;
            }
            case relay::Scheme::Sinr:
                ar = analysis::outage_sinr(p, ps);
                break;
            default: {
                const double gh = ctx.gamma_hat_for(a, v);
                ar = analysis::outage_target(p, ps, gh);
                spec.gamma_hat = gh;
                break;
            }
        }
        const auto m = mc::simulate(spec);
        row.analytic = ar.value;
        row.method = analysis::method_name(ar.method);
        row.mc = m.value;
        row.mc_stderr = m.stderr_;
        row.n = m.n;
        return row;
    });
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return finish_run("outage", ctx.cfg, args, rows, wall);
}

int cmd_capacity(const CommandArgs& args) {
    using namespace ehfdr;
    const auto t0 = std::chrono::steady_clock::now();
    SweepContext ctx = make_context(args, "ps", "0..50:5");
    auto rows = opt::sweep(ctx.axis, ctx.grid, [&](opt::SweepAxis a, double v) {
        const SystemParams p = opt::apply_axis(ctx.base, a, v);
        const double ps = ctx.ps_for(a, v);
        opt::SweepRow row;
        mc::RunSpec spec = ctx.spec_for(p, ps, mc::Metric::ErgodicCapacity);
        switch (ctx.scheme) {
            case relay::Scheme::Maximum: {
                const double alpha =
                    maximum_alpha(ctx, p, ps, mc::Mode::DelayTolerant);
                const auto ar = analysis::ergodic_capacity_max(p, ps, alpha);
                row.analytic = ar.value;
                row.method = analysis::method_name(ar.method);
                spec.alpha_policy = mc::AlphaPolicy::statistical(alpha);
                break;
            }
            case relay::Scheme::Sinr: {
                const auto ar = analysis::ergodic_capacity_sinr(p, ps);
                row.analytic = ar.value;
                row.method = analysis::method_name(ar.method);
                break;
            }
            default:
                // no closed form for the target relay's ergodic capacity
                row.method = "simulation-only";
                spec.gamma_hat = ctx.gamma_hat_for(a, v);
                break;
        }
        const auto m = mc::simulate(spec);
        row.mc = m.value;
        row.mc_stderr = m.stderr_;
        row.n = m.n;
        return row;
    });
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return finish_run("capacity", ctx.cfg, args, rows, wall);
}

int cmd_ee_sweep(const CommandArgs& args) {
    using namespace ehfdr;
    const auto t0 = std::chrono::steady_clock::now();
    SweepContext ctx = make_context(args, "ps", "0..50:5");
    const mc::Mode mode = ctx.cfg.mode();
    auto rows = opt::sweep(ctx.axis, ctx.grid, [&](opt::SweepAxis a, double v) {
        const SystemParams p = opt::apply_axis(ctx.base, a, v);
        const double ps = ctx.ps_for(a, v);
        opt::SweepRow row;
        row.method = "simulation-only";
        mc::RunSpec spec = ctx.spec_for(p, ps, mc::Metric::EE);
        spec.mode = mode;
        if (ctx.scheme == relay::Scheme::Maximum) {
            const double alpha = maximum_alpha(ctx, p, ps, mode);
            spec.alpha_policy = mc::AlphaPolicy::statistical(alpha);
            if (mode == mc::Mode::DelayLimited) {
                const auto ar = analysis::outage_max(p, ps, alpha);
                row.analytic = analysis::energy_efficiency(
                    analysis::statistical_dl_throughput(
                        relay::Scheme::Maximum, alpha, ar.value, p.rate_bps_hz),
                    p, ps);
                row.method = analysis::method_name(ar.method);
            } else if (mode == mc::Mode::DelayTolerant) {
                const auto ar = analysis::ergodic_capacity_max(p, ps, alpha);
                row.analytic = analysis::energy_efficiency(
                    analysis::statistical_dt_throughput(relay::Scheme::Maximum,
                                                        alpha, ar.value),
                    p, ps);
                row.method = analysis::method_name(ar.method);
            }
        } else if (ctx.scheme == relay::Scheme::Target) {
            spec.gamma_hat = ctx.gamma_hat_for(a, v);
        }
        const auto m = mc::simulate(spec);
        row.mc = m.value;
        row.mc_stderr = m.stderr_;
        row.n = m.n;
        return row;
    });
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return finish_run("ee-sweep", ctx.cfg, args, rows, wall);
}

int cmd_placement(const CommandArgs& args) {
    using namespace ehfdr;
    const auto t0 = std::chrono::steady_clock::now();
    SweepContext ctx = make_context(args, "placement", "0.1..0.9:0.1");
    const bool want_ee = args.metric == "ee";
    auto rows = opt::sweep(ctx.axis, ctx.grid, [&](opt::SweepAxis a, double v) {
        const SystemParams p = opt::apply_axis(ctx.base, a, v);
        const double ps = ctx.ps_for(a, v);
        opt::SweepRow row;
        mc::RunSpec spec =
            ctx.spec_for(p, ps, want_ee ? mc::Metric::EE : mc::Metric::Outage);
        spec.mode = mc::Mode::DelayLimited;
        double alpha = 0.0;
        if (ctx.scheme == relay::Scheme::Maximum) {
            alpha = maximum_alpha(ctx, p, ps, mc::Mode::DelayLimited);
            spec.alpha_policy = mc::AlphaPolicy::statistical(alpha);
        } else if (ctx.scheme == relay::Scheme::Target) {
            spec.gamma_hat = ctx.gamma_hat_for(a, v);
        }
        if (!want_ee) {
            analysis::AnalyticResult ar;
            switch (ctx.scheme) {
                case relay::Scheme::Maximum:
                    ar = analysis::outage_max(p, ps, alpha);
                    break;
                case relay::Scheme::Sinr:
                    ar = analysis::outage_sinr(p, ps);
                    break;
                default:
                    ar = analysis::outage_target(p, ps, *spec.gamma_hat);
                    break;
            }
            row.analytic = ar.value;
            row.method = analysis::method_name(ar.method);
        } else {
            row.method = "simulation-only";
        }
        const auto m = mc::simulate(spec);
        row.mc = m.value;
        row.mc_stderr = m.stderr_;
        row.n = m.n;
        return row;
    });
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return finish_run("placement", ctx.cfg, args, rows, wall);
}

int cmd_mrc(const CommandArgs& args) {
    using namespace ehfdr;
    const auto t0 = std::chrono::steady_clock::now();
    SweepContext ctx = make_context(args, "ps", "0..20:5");
    const std::string metric = args.metric.empty() ? "outage" : args.metric;
    auto rows = opt::sweep(ctx.axis, ctx.grid, [&](opt::SweepAxis a, double v) {
        const SystemParams p = opt::apply_axis(ctx.base, a, v);
        const double ps = ctx.ps_for(a, v);
        opt::SweepRow row;
        mc::Metric m_metric = mc::Metric::MrcOutage;
        if (metric == "dl") m_metric = mc::Metric::MrcThroughputDL;
        if (metric == "dt") m_metric = mc::Metric::MrcThroughputDT;
        mc::RunSpec spec = ctx.spec_for(p, ps, m_metric);
        double alpha = 0.0;
        if (ctx.scheme == relay::Scheme::Maximum) {
            alpha = maximum_alpha(ctx, p, ps, mc::Mode::DelayLimited);
            spec.alpha_policy = mc::AlphaPolicy::statistical(alpha);
        } else if (ctx.scheme == relay::Scheme::Target) {
            spec.gamma_hat = ctx.gamma_hat_for(a, v);
        }
        const double p_sd = analysis::direct_link(p, ps).outage;
        double p_srd = 1.0;
        switch (ctx.scheme) {
            case relay::Scheme::Maximum:
                p_srd = analysis::outage_max(p, ps, alpha).value;
                break;
            case relay::Scheme::Sinr:
                p_srd = analysis::outage_sinr(p, ps).value;
                break;
            default:
                p_srd = analysis::outage_target(p, ps, *spec.gamma_hat).value;
                break;
        }
        if (metric == "outage") {
            row.analytic = analysis::mrc_outage_upper_bound(p_sd, p_srd);
            row.method = "product-bound";
        } else if (metric == "dl" && ctx.scheme == relay::Scheme::Maximum) {
            row.analytic = analysis::mrc_dl_throughput_lower_bound(
                alpha, p_sd, p_srd, p.rate_bps_hz);
            row.method = "lower-bound";
        } else {
            row.method = "simulation-only";
        }
        const auto m = mc::simulate_mrc(spec);
        row.mc = m.value;
        row.mc_stderr = m.stderr_;
        row.n = m.n;
        return row;
    });
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return finish_run("mrc", ctx.cfg, args, rows, wall);
}

int cmd_instantaneous(const CommandArgs& args) {
    using namespace ehfdr;
    const auto t0 = std::chrono::steady_clock::now();
    SweepContext ctx = make_context(args, "ps", "0..50:2");
    const ChannelSample frame = ctx.cfg.fixed_channel();
    const std::string metric = args.metric.empty() ? "throughput" : args.metric;
    auto rows = opt::sweep(ctx.axis, ctx.grid, [&](opt::SweepAxis a, double v) {
        const SystemParams p = opt::apply_axis(ctx.base, a, v);
        const double ps = ctx.ps_for(a, v);
        const double gh = ctx.gamma_hat_for(a, v);
        const auto d = opt::instantaneous_decision(p, frame, ps, ctx.scheme, gh);
        opt::SweepRow row;
        row.method = "closed-form";
        if (metric == "esinr")
            row.analytic = d.esinr;
        else if (metric == "alpha")
            row.analytic = d.alpha;
        else if (metric == "ee")
            row.analytic = analysis::energy_efficiency(
                relay::instantaneous_throughput(d), p, ps);
        else
            row.analytic = relay::instantaneous_throughput(d);
        return row;
    });
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return finish_run("instantaneous", ctx.cfg, args, rows, wall);
}

int cmd_csi_error(const CommandArgs& args) {
    using namespace ehfdr;
    const auto t0 = std::chrono::steady_clock::now();
    SweepContext ctx = make_context(args, "kappa", "0..0.8:0.1");
    const ChannelSample frame = ctx.cfg.fixed_channel();
    const bool fading =
        args.fading_averaged || ctx.cfg.raw("run.fading_averaged") == "1";
    auto rows = opt::sweep(ctx.axis, ctx.grid, [&](opt::SweepAxis a, double v) {
        const SystemParams p = opt::apply_axis(ctx.base, a, v);
        const double ps = ctx.ps_for(a, v);
        const double kappa =
            a == opt::SweepAxis::Kappa ? v : ctx.cfg.number("run.kappa");
        const double gh = ctx.gamma_hat_for(a, v);
        opt::SweepRow row;
        if (fading) {
            if (ctx.scheme == relay::Scheme::Maximum &&
                ctx.cfg.empty_value("run.alpha"))
                throw ConfigError(
                    "fading-averaged CSI sweeps of the maximum relay need "
                    "run.alpha (statistical TS factor)");
            mc::RunSpec spec = ctx.spec_for(p, ps, mc::Metric::ThroughputInst);
            spec.kappa = kappa;
            if (ctx.scheme == relay::Scheme::Maximum)
                spec.alpha_policy =
                    mc::AlphaPolicy::statistical(ctx.cfg.number("run.alpha"));
            if (ctx.scheme == relay::Scheme::Target) spec.gamma_hat = gh;
            const auto m = mc::simulate(spec);
            row.method = "fading-averaged";
            row.mc = m.value;
            row.mc_stderr = m.stderr_;
            row.n = m.n;
        } else {
            const auto r = mc::csi_error_run(p, frame, ps, ctx.scheme, gh,
                                             kappa, ctx.n_blocks, ctx.seed);
            row.method = "fixed-channel";
            row.mc = r.mean_throughput;
            row.mc_stderr = r.stderr_;
            row.n = r.n;
        }
        return row;
    });
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return finish_run("csi-error", ctx.cfg, args, rows, wall);
}

int cmd_validate(const CommandArgs& args) {
    using namespace ehfdr;
    const auto t0 = std::chrono::steady_clock::now();
    ScenarioConfig cfg = load_config(args, "ps");
    validation::Options opts;
    opts.n_blocks = cfg.integer("run.n_blocks");
    opts.seed = static_cast<std::uint64_t>(cfg.integer("run.seed"));
    opts.threads = static_cast<int>(cfg.integer("run.threads"));
    opts.quick = args.quick;
    const validation::Report rep = validation::run_acceptance(opts);
    for (const auto& c : rep.criteria)
        std::printf("[%s] %-4s %s -- %s\n", c.pass ? "PASS" : "FAIL",
                    c.id.c_str(), c.description.c_str(), c.detail.c_str());
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const int rc = finish_run("validate", cfg, args, rep.rows, wall);
    if (rc != 0) return rc;
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dual-hop energy-harvesting full-duplex relay toolkit"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);

    struct Cmd {
        const char* name = nullptr;
        const char* help = nullptr;
        int (*run)(const CommandArgs&) = nullptr;
        CommandArgs args;
        CLI::App* sub = nullptr;
    };
    std::vector<Cmd> cmds(8);
    const struct {
        const char* name;
        const char* help;
        int (*run)(const CommandArgs&);
    } table[] = {
        {"instantaneous", "single-frame e-SINR / TS factor / throughput sweeps",
         cmd_instantaneous},
        {"outage", "outage probability: analytic vs Monte Carlo", cmd_outage},
        {"capacity", "ergodic capacity: analytic vs Monte Carlo", cmd_capacity},
        {"ee-sweep", "energy efficiency sweeps", cmd_ee_sweep},
        {"placement", "relay placement sweeps (d1 = r d3)", cmd_placement},
        {"mrc", "direct-link-assisted transmission and bounds", cmd_mrc},
        {"csi-error", "throughput under CSI estimation error", cmd_csi_error},
        {"validate", "run the analytic-vs-MC validation suite", cmd_validate},
    };
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        cmds[i].name = table[i].name;
        cmds[i].help = table[i].help;
        cmds[i].run = table[i].run;
    }
    for (auto& c : cmds) {
        c.sub = app.add_subcommand(c.name, c.help);
        add_common_options(c.sub, c.args);
        if (std::string(c.name) == "validate")
            c.sub->add_flag("--quick", c.args.quick,
                            "reduced block counts for a smoke run");
        if (std::string(c.name) == "csi-error")
            c.sub->add_flag("--fading-averaged", c.args.fading_averaged,
                            "average over fading blocks instead of one frame");
    }

    CLI11_PARSE(app, argc, argv);

    for (auto& c : cmds) {
        if (c.sub->parsed()) {
            try {
                return c.run(c.args);
            } catch (const ConfigError& e) {
                std::cerr << "configuration error: " << e.what() << '\n';
                return 2;
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << '\n';
                return 3;
            }
        }
    }
    return 1;
}
