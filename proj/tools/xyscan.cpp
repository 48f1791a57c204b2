// xyscan: command-line front end for XY-chain ground-state circuit
// complexity. Subcommands: scan, line, scaling, kernel, selfcheck.
// Exit codes: 0 success, 1 computation failure, 2 config error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xyc/complexity.hpp"
#include "xyc/kernels.hpp"
#include "xyc/model.hpp"
#include "xyc/scaling.hpp"
#include "xyc/scan.hpp"
#include "xyc/selfcheck.hpp"

using nlohmann::json;

namespace {

struct ComputationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ComputationFailed("cannot open output file: " + path);
    out << content;
    if (!out) throw ComputationFailed("write failed: " + path);
}

std::map<std::string, std::string> load_config(const std::string& path,
                                               const std::set<std::string>& known) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw xyc::ConfigError("cannot open config file: " + path);
    auto kv = xyc::parse_flat_config(in);
    for (const auto& [key, value] : kv)
        if (!known.count(key))
            throw xyc::ConfigError("unknown config key '" + key + "'");
    return kv;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw xyc::ConfigError("config key '" + key + "': bad number '" + item + "'");
        }
    }
    if (out.empty()) throw xyc::ConfigError("config key '" + key + "': empty list");
    return out;
}

std::string method_name(xyc::EvalMethod m) {
    switch (m) {
        case xyc::EvalMethod::series: return "series";
        case xyc::EvalMethod::polylog: return "polylog";
        case xyc::EvalMethod::automatic: return "auto";
    }
    return "?";
}

json records_to_json(const std::vector<xyc::ScanRecord>& records) {
    json rows = json::array();
    for (const auto& r : records) {
        json row{{"h_T", r.h_t},
                 {"gamma_T", r.gamma_t},
                 {"phase", std::string(xyc::to_string(r.phase))},
                 {"xi_max", r.xi_max},
                 {"margin", r.margin}};
        switch (r.kind) {
            case xyc::RecordKind::finite:
                row["value"] = r.value;
                row["error_bound"] = r.error_bound;
                break;
            case xyc::RecordKind::divergent: row["value"] = "div"; break;
            case xyc::RecordKind::critical: row["value"] = "crit"; break;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json records_to_json(const std::vector<xyc::LineRecord>& records) {
    json rows = json::array();
    for (const auto& r : records) {
        json row{{"h_T", r.h_t}, {"beta", r.beta}};
        switch (r.kind) {
            case xyc::RecordKind::finite:
                row["value"] = r.value;
                row["error"] = r.error_bound;
                break;
            case xyc::RecordKind::divergent: row["value"] = "div"; break;
            case xyc::RecordKind::critical: row["value"] = "crit"; break;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json report_to_json(const xyc::ScalingSuiteReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) {
        json samples = json::array();
        for (const auto& [eps, value] : e.samples) samples.push_back({{"eps", eps}, {"value", value}});
        json fit{{"fitted_coefficient", e.fit.fitted_coefficient},
                 {"predicted_coefficient", e.fit.predicted_coefficient},
                 {"relative_deviation", e.fit.relative_deviation},
                 {"fit_residual", e.fit.fit_residual}};
        if (e.fit.beta_class == xyc::BetaClass::non_integer)
            fit["fitted_exponent"] = e.fit.fitted_exponent;
        entries.push_back({{"beta", e.beta},
                           {"fit", std::move(fit)},
                           {"threshold", e.threshold},
                           {"pass", e.pass},
                           {"samples", std::move(samples)}});
    }
    return {{"fits", std::move(entries)}, {"all_pass", report.all_pass}};
}

json report_to_json(const xyc::SelfCheckReport& report) {
    json groups = json::array();
    for (const auto& g : report.groups)
        groups.push_back({{"name", g.name},
                          {"pass", g.pass},
                          {"worst", g.worst},
                          {"detail", g.detail}});
    return {{"groups", std::move(groups)},
            {"pass", report.pass},
            {"runtime_seconds", report.seconds}};
}

// ---------------------------------------------------------------------------

struct ScanCli {
    std::string config_path, out_path, format = "csv", method = "auto", mode = "complexity";
    xyc::GridScanConfig cfg;
    bool dump = false;
};

void add_scan_command(CLI::App& app, std::shared_ptr<ScanCli> s) {
    CLI::App* cmd = app.add_subcommand("scan", "phase-diagram grid scan (CSV/JSON dataset)");
    cmd->add_option("--config", s->config_path, "flat key = value config file");
    cmd->add_option("--out", s->out_path, "output path (default stdout)");
    cmd->add_option("--format", s->format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    auto* oh = cmd->add_option("--ref-h", s->cfg.reference_h, "reference h");
    auto* og = cmd->add_option("--ref-gamma", s->cfg.reference_gamma, "reference gamma");
    auto* o1 = cmd->add_option("--h-min", s->cfg.h_min, "target grid h minimum");
    auto* o2 = cmd->add_option("--h-max", s->cfg.h_max, "target grid h maximum");
    auto* o3 = cmd->add_option("--h-steps", s->cfg.h_steps, "grid points along h");
    auto* o4 = cmd->add_option("--gamma-min", s->cfg.gamma_min, "target grid gamma minimum");
    auto* o5 = cmd->add_option("--gamma-max", s->cfg.gamma_max, "target grid gamma maximum");
    auto* o6 = cmd->add_option("--gamma-steps", s->cfg.gamma_steps, "grid points along gamma");
    auto* o7 = cmd->add_option("--l", s->cfg.penalty_l, "penalty rate l");
    auto* o8 = cmd->add_option("--beta", s->cfg.penalty_beta, "penalty exponent beta");
    auto* o9 = cmd->add_option("--method", s->method, "series|polylog|auto");
    auto* oa = cmd->add_option("--mode", s->mode, "complexity|lambda");
    auto* ob = cmd->add_option("--tol", s->cfg.tol, "evaluation tolerance");
    auto* oc = cmd->add_option("--threads", s->cfg.threads, "worker threads");
    auto* od = cmd->add_option("--max-terms", s->cfg.max_terms, "series term cap");
    cmd->add_flag("--dump-config", s->dump, "print the effective config and exit");

    cmd->callback([s, oh, og, o1, o2, o3, o4, o5, o6, o7, o8, o9, oa, ob, oc, od] {
        static const std::set<std::string> known{
            "reference.h", "reference.gamma", "grid.h_min", "grid.h_max", "grid.h_steps",
            "grid.gamma_min", "grid.gamma_max", "grid.gamma_steps", "penalty.l",
            "penalty.beta", "method", "mode", "tol", "threads", "max_terms"};
        const auto kv = load_config(s->config_path, known);
        xyc::GridScanConfig& c = s->cfg;
        xyc::GridScanConfig file = c;  // CLI defaults already folded into s->cfg targets
        file.reference_h = xyc::config_double(kv, "reference.h", c.reference_h);
        file.reference_gamma = xyc::config_double(kv, "reference.gamma", c.reference_gamma);
        file.h_min = xyc::config_double(kv, "grid.h_min", c.h_min);
        file.h_max = xyc::config_double(kv, "grid.h_max", c.h_max);
        file.h_steps = int(xyc::config_long(kv, "grid.h_steps", c.h_steps));
        file.gamma_min = xyc::config_double(kv, "grid.gamma_min", c.gamma_min);
        file.gamma_max = xyc::config_double(kv, "grid.gamma_max", c.gamma_max);
        file.gamma_steps = int(xyc::config_long(kv, "grid.gamma_steps", c.gamma_steps));
        file.penalty_l = xyc::config_double(kv, "penalty.l", c.penalty_l);
        file.penalty_beta = xyc::config_double(kv, "penalty.beta", c.penalty_beta);
        file.tol = xyc::config_double(kv, "tol", c.tol);
        file.threads = int(xyc::config_long(kv, "threads", c.threads));
        file.max_terms = xyc::config_long(kv, "max_terms", c.max_terms);
        std::string method = kv.count("method") ? kv.at("method") : s->method;
        std::string mode = kv.count("mode") ? kv.at("mode") : s->mode;
        // flags given on the command line override file values
        if (oh->count()) file.reference_h = c.reference_h;
        if (og->count()) file.reference_gamma = c.reference_gamma;
        if (o1->count()) file.h_min = c.h_min;
        if (o2->count()) file.h_max = c.h_max;
        if (o3->count()) file.h_steps = c.h_steps;
        if (o4->count()) file.gamma_min = c.gamma_min;
        if (o5->count()) file.gamma_max = c.gamma_max;
        if (o6->count()) file.gamma_steps = c.gamma_steps;
        if (o7->count()) file.penalty_l = c.penalty_l;
        if (o8->count()) file.penalty_beta = c.penalty_beta;
        if (o9->count()) method = s->method;
        if (oa->count()) mode = s->mode;
        if (ob->count()) file.tol = c.tol;
        if (oc->count()) file.threads = c.threads;
        if (od->count()) file.max_terms = c.max_terms;
        file.method = xyc::parse_method(method);
        file.mode = xyc::parse_mode(mode);

        if (s->dump) {
            std::ostringstream os;
            os << "reference.h = " << file.reference_h << "\n"
               << "reference.gamma = " << file.reference_gamma << "\n"
               << "grid.h_min = " << file.h_min << "\n"
               << "grid.h_max = " << file.h_max << "\n"
               << "grid.h_steps = " << file.h_steps << "\n"
               << "grid.gamma_min = " << file.gamma_min << "\n"
               << "grid.gamma_max = " << file.gamma_max << "\n"
               << "grid.gamma_steps = " << file.gamma_steps << "\n"
               << "penalty.l = " << file.penalty_l << "\n"
               << "penalty.beta = " << file.penalty_beta << "\n"
               << "method = " << method_name(file.method) << "\n"
               << "mode = " << (file.mode == xyc::ScanMode::complexity ? "complexity" : "lambda")
               << "\n"
               << "tol = " << file.tol << "\n"
               << "threads = " << file.threads << "\n"
               << "max_terms = " << file.max_terms << "\n";
            write_output(s->out_path, os.str());
            return;
        }
        const auto records = xyc::run_grid_scan(file);
        if (s->format == "json") {
            write_output(s->out_path, records_to_json(records).dump(2) + "\n");
        } else {
            std::ostringstream os;
            xyc::write_scan_csv(os, records);
            write_output(s->out_path, os.str());
        }
    });
}

struct LineCli {
    std::string config_path, out_path, format = "csv", method = "auto";
    xyc::LineSweepConfig cfg;
};

void add_line_command(CLI::App& app, std::shared_ptr<LineCli> s) {
    CLI::App* cmd = app.add_subcommand("line", "1-d sweep of complexity across h_T");
    cmd->add_option("--config", s->config_path, "flat key = value config file");
    cmd->add_option("--out", s->out_path, "output path (default stdout)");
    cmd->add_option("--format", s->format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    auto* oh = cmd->add_option("--ref-h", s->cfg.reference_h, "reference h");
    auto* og = cmd->add_option("--ref-gamma", s->cfg.reference_gamma, "reference gamma");
    auto* ot = cmd->add_option("--gamma-t", s->cfg.gamma_t, "target gamma (fixed)");
    auto* o1 = cmd->add_option("--h-min", s->cfg.h_min, "sweep start");
    auto* o2 = cmd->add_option("--h-max", s->cfg.h_max, "sweep end");
    auto* o3 = cmd->add_option("--h-steps", s->cfg.h_steps, "sweep points");
    auto* o4 = cmd->add_option("--beta", s->cfg.betas, "penalty exponent (repeatable)");
    auto* o5 = cmd->add_option("--l", s->cfg.penalty_l, "penalty rate l");
    auto* o6 = cmd->add_option("--method", s->method, "series|polylog|auto");
    auto* o7 = cmd->add_option("--tol", s->cfg.tol, "evaluation tolerance");
    auto* o8 = cmd->add_option("--threads", s->cfg.threads, "worker threads");

    cmd->callback([s, oh, og, ot, o1, o2, o3, o4, o5, o6, o7, o8] {
        static const std::set<std::string> known{
            "reference.h", "reference.gamma", "line.gamma_t", "line.h_min", "line.h_max",
            "line.h_steps", "line.betas", "penalty.l", "method", "tol", "threads"};
        const auto kv = load_config(s->config_path, known);
        xyc::LineSweepConfig& c = s->cfg;
        xyc::LineSweepConfig file = c;
        file.reference_h = xyc::config_double(kv, "reference.h", c.reference_h);
        file.reference_gamma = xyc::config_double(kv, "reference.gamma", c.reference_gamma);
        file.gamma_t = xyc::config_double(kv, "line.gamma_t", c.gamma_t);
        file.h_min = xyc::config_double(kv, "line.h_min", c.h_min);
        file.h_max = xyc::config_double(kv, "line.h_max", c.h_max);
        file.h_steps = int(xyc::config_long(kv, "line.h_steps", c.h_steps));
        if (kv.count("line.betas")) file.betas = parse_double_list(kv.at("line.betas"), "line.betas");
        file.penalty_l = xyc::config_double(kv, "penalty.l", c.penalty_l);
        file.tol = xyc::config_double(kv, "tol", c.tol);
        file.threads = int(xyc::config_long(kv, "threads", c.threads));
        std::string method = kv.count("method") ? kv.at("method") : s->method;
        if (oh->count()) file.reference_h = c.reference_h;
        if (og->count()) file.reference_gamma = c.reference_gamma;
        if (ot->count()) file.gamma_t = c.gamma_t;
        if (o1->count()) file.h_min = c.h_min;
        if (o2->count()) file.h_max = c.h_max;
        if (o3->count()) file.h_steps = c.h_steps;
        if (o4->count()) file.betas = c.betas;
        if (o5->count()) file.penalty_l = c.penalty_l;
        if (o6->count()) method = s->method;
        if (o7->count()) file.tol = c.tol;
        if (o8->count()) file.threads = c.threads;
        file.method = xyc::parse_method(method);

        const auto records = xyc::run_line_sweep(file);
        if (s->format == "json") {
            write_output(s->out_path, records_to_json(records).dump(2) + "\n");
        } else {
            std::ostringstream os;
            xyc::write_line_csv(os, records);
            write_output(s->out_path, os.str());
        }
    });
}

struct ScalingCli {
    std::string config_path, out_path;
    xyc::ScalingSuiteConfig cfg;
};

void add_scaling_command(CLI::App& app, std::shared_ptr<ScalingCli> s) {
    CLI::App* cmd =
        app.add_subcommand("scaling", "near-critical scaling fits vs predictions (JSON)");
    cmd->add_option("--config", s->config_path, "flat key = value config file");
    cmd->add_option("--out", s->out_path, "output path (default stdout)");
    auto* oh = cmd->add_option("--ref-h", s->cfg.reference_h, "reference h");
    auto* og = cmd->add_option("--ref-gamma", s->cfg.reference_gamma, "reference gamma");
    auto* ot = cmd->add_option("--gamma-t", s->cfg.gamma_t, "target gamma");
    auto* ob = cmd->add_option("--beta", s->cfg.betas, "penalty exponent (repeatable)");
    auto* o1 = cmd->add_option("--eps-min", s->cfg.eps_min, "smallest eps = 1 - h_T");
    auto* o2 = cmd->add_option("--eps-max", s->cfg.eps_max, "largest eps");
    auto* o3 = cmd->add_option("--eps-count", s->cfg.eps_count, "sample count");
    auto* o4 = cmd->add_flag("--synthetic", s->cfg.synthetic,
                             "fit values generated from the prediction itself");
    auto* o5 = cmd->add_option("--tol", s->cfg.tol, "series tolerance");

    cmd->callback([s, oh, og, ot, ob, o1, o2, o3, o4, o5] {
        static const std::set<std::string> known{
            "reference.h", "reference.gamma", "scaling.gamma_t", "scaling.betas",
            "scaling.eps_min", "scaling.eps_max", "scaling.eps_count", "scaling.synthetic",
            "tol", "thresholds.beta0", "thresholds.beta1", "thresholds.non_integer"};
        const auto kv = load_config(s->config_path, known);
        xyc::ScalingSuiteConfig& c = s->cfg;
        xyc::ScalingSuiteConfig file = c;
        file.reference_h = xyc::config_double(kv, "reference.h", c.reference_h);
        file.reference_gamma = xyc::config_double(kv, "reference.gamma", c.reference_gamma);
        file.gamma_t = xyc::config_double(kv, "scaling.gamma_t", c.gamma_t);
        if (kv.count("scaling.betas"))
            file.betas = parse_double_list(kv.at("scaling.betas"), "scaling.betas");
        file.eps_min = xyc::config_double(kv, "scaling.eps_min", c.eps_min);
        file.eps_max = xyc::config_double(kv, "scaling.eps_max", c.eps_max);
        file.eps_count = int(xyc::config_long(kv, "scaling.eps_count", c.eps_count));
        if (kv.count("scaling.synthetic"))
            file.synthetic = kv.at("scaling.synthetic") == "true" ||
                             kv.at("scaling.synthetic") == "1";
        file.tol = xyc::config_double(kv, "tol", c.tol);
        file.threshold_beta0 = xyc::config_double(kv, "thresholds.beta0", c.threshold_beta0);
        file.threshold_beta1 = xyc::config_double(kv, "thresholds.beta1", c.threshold_beta1);
        file.threshold_non_integer =
            xyc::config_double(kv, "thresholds.non_integer", c.threshold_non_integer);
        if (oh->count()) file.reference_h = c.reference_h;
        if (og->count()) file.reference_gamma = c.reference_gamma;
        if (ot->count()) file.gamma_t = c.gamma_t;
        if (ob->count()) file.betas = c.betas;
        if (o1->count()) file.eps_min = c.eps_min;
        if (o2->count()) file.eps_max = c.eps_max;
        if (o3->count()) file.eps_count = c.eps_count;
        if (o4->count()) file.synthetic = c.synthetic;
        if (o5->count()) file.tol = c.tol;

        const auto report = xyc::run_scaling_suite(file);
        write_output(s->out_path, report_to_json(report).dump(2) + "\n");
    });
}

struct KernelCli {
    double h = 1.3, gamma = 0.5, tol = 1e-10;
    int n_min = 1, n_max = 50;
    std::string method = "both", out_path, format = "csv";
};

void add_kernel_command(CLI::App& app, std::shared_ptr<KernelCli> s) {
    CLI::App* cmd = app.add_subcommand("kernel", "dump kernel amplitudes I_n");
    cmd->add_option("--h", s->h, "target h")->required();
    cmd->add_option("--gamma", s->gamma, "target gamma")->required();
    cmd->add_option("--n-min", s->n_min, "first gate range");
    cmd->add_option("--n-max", s->n_max, "last gate range");
    cmd->add_option("--method", s->method, "closed|quadrature|both")
        ->check(CLI::IsMember({"closed", "quadrature", "both"}));
    cmd->add_option("--tol", s->tol, "quadrature tolerance");
    cmd->add_option("--out", s->out_path, "output path (default stdout)");
    cmd->add_option("--format", s->format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

    cmd->callback([s] {
        if (s->n_min < 1 || s->n_max < s->n_min)
            throw xyc::ConfigError("kernel: need 1 <= n-min <= n-max");
        const xyc::ChainParams p(s->h, s->gamma);
        struct Row {
            int n;
            double im;
            const char* method;
            double error;
        };
        std::vector<Row> rows;
        for (int n = s->n_min; n <= s->n_max; ++n) {
            if (s->method != "quadrature")
                rows.push_back({n, xyc::kernel_closed(p, n).value.imag(), "closed", 0.0});
            if (s->method != "closed") {
                const auto q = xyc::kernel_quadrature(p, n, s->tol);
                rows.push_back({n, q.kernel.value.imag(), "quadrature", q.abs_error});
            }
        }
        if (s->format == "json") {
            json out = json::array();
            for (const Row& r : rows)
                out.push_back({{"n", r.n},
                               {"im_value", r.im},
                               {"method", r.method},
                               {"error", r.error}});
            write_output(s->out_path, out.dump(2) + "\n");
        } else {
            std::ostringstream os;
            os << "n,im_value,method,error\n";
            for (const Row& r : rows) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "%d,%.12g,%s,%.3g\n", r.n, r.im, r.method,
                              r.error);
                os << buf;
            }
            write_output(s->out_path, os.str());
        }
    });
}

struct SelfCheckCli {
    bool quick = false;
    bool drop_two_pi = false;
    std::string out_path;
};

void add_selfcheck_command(CLI::App& app, std::shared_ptr<SelfCheckCli> s) {
    CLI::App* cmd = app.add_subcommand("selfcheck", "run the bundled oracle suites (JSON)");
    cmd->add_flag("--quick", s->quick, "reduced sample counts, same groups");
    cmd->add_flag("--debug-drop-2pi", s->drop_two_pi,
                  "fault-injection hook: drop the finite-N normalization")
        ->group("");  // hidden
    cmd->add_option("--out", s->out_path, "output path (default stdout)");

    cmd->callback([s] {
        xyc::SelfCheckOptions opt;
        opt.quick = s->quick;
        opt.debug_drop_two_pi = s->drop_two_pi;
        const xyc::SelfCheckReport report = xyc::run_selfcheck(opt);
        write_output(s->out_path, report_to_json(report).dump(2) + "\n");
        if (!report.pass) throw ComputationFailed("selfcheck failed");
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ground-state circuit complexity of the transverse-field XY chain"};
    app.require_subcommand(1);

    auto scan = std::make_shared<ScanCli>();
    auto line = std::make_shared<LineCli>();
    auto scaling = std::make_shared<ScalingCli>();
    auto kernel = std::make_shared<KernelCli>();
    auto selfcheck = std::make_shared<SelfCheckCli>();
    add_scan_command(app, scan);
    add_line_command(app, line);
    add_scaling_command(app, scaling);
    add_kernel_command(app, kernel);
    add_selfcheck_command(app, selfcheck);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const xyc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
