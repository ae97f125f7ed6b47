#include "dpa/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "dpa/core_model.hpp"
#include "dpa/errors.hpp"
#include "dpa/nonclassicality.hpp"
#include "dpa/report.hpp"
#include "dpa/statistics.hpp"
#include "dpa/verification.hpp"
#include "dpa/wigner.hpp"

#ifndef DPA_VERSION
#define DPA_VERSION "0.0.0"
#endif

namespace dpa::cli {

namespace {

using nlohmann::json;

class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string command;
    ModelParams params;
    double u = 0.0;
    double u_start = 0.0;
    double u_stop = 1.0;
    int u_steps = 101;
    double lambda = 0.0;
    std::string out_path;
    std::string format;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::string config_path;
    // critical
    double u_max = 10.0;
    // wigner-grid
    int grid_steps = 101;
    double grid_sigmas = 6.0;
    // verify
    int max_fock_dim = 1 << 17;
    VerificationGrid grid;
};

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string param_header(const RunConfig& c) {
    const ModelParams& p = c.params;
    return fmt::format("# dpa {} {} nbar={} r={} theta={} alpha={} phi={} t={}", DPA_VERSION, c.command, num(p.nbar),
                       num(p.squeeze_mag), num(p.squeeze_phase), num(p.alpha_mag), num(p.alpha_phase), num(p.prep_time));
}

// Binds a config-file key to an option: the file value applies only when the flag was not given.
struct Binding {
    CLI::Option* opt = nullptr;
    std::function<void(const json&)> assign;
};

template <class T>
Binding bind_option(CLI::App& app, const std::string& flag, T& field, const std::string& help) {
    Binding b;
    b.opt = app.add_option(flag, field, help);
    b.assign = [&field](const json& j) { field = j.get<T>(); };
    return b;
}

void apply_config(const RunConfig& cfg, const std::map<std::string, Binding>& bindings,
                  const std::function<void(const json&)>& grid_hook) {
    if (cfg.config_path.empty()) return;
    std::ifstream in(cfg.config_path);
    if (!in) throw UsageError("cannot open config file " + cfg.config_path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "grid") {
            grid_hook(value);
            continue;
        }
        const auto it = bindings.find(key);
        if (it == bindings.end()) throw UsageError("unknown config key '" + key + "'");
        if (it->second.opt->count() > 0) continue;
        try {
            it->second.assign(value);
        } catch (const json::exception&) {
            throw UsageError("config key '" + key + "' has the wrong type");
        }
    }
}

void validate_params(const RunConfig& c) {
    try {
        c.params.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("invalid parameters: ") + e.what());
    }
}

void validate_u_range(const RunConfig& c) {
    if (c.u_steps < 2) throw UsageError("u-steps >= 2 violated");
    if (!(c.u_start >= 0.0)) throw UsageError("u-start >= 0 violated");
    if (!(c.u_stop > c.u_start)) throw UsageError("u-stop > u-start violated (zero-width range)");
}

// Runs f(i) for i in [0, n) over a worker pool; results are stored by index so output order is fixed.
template <class T>
std::vector<T> fan_out(std::size_t n, unsigned workers, const std::function<T(std::size_t)>& f) {
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(workers);
    auto job = [&](unsigned w) {
        try {
            for (std::size_t i = w; i < n; i += workers) out[i] = f(i);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers <= 1) {
        job(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(job, w);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

json observables(const RunConfig& c) {
    const EvolvedState state = state_at(c.params, c.u);
    const double r = c.params.squeeze_mag;
    const double theta = c.params.squeeze_phase;
    json j;
    j["params"] = to_json(c.params);
    j["u"] = c.u;
    j["lambda"] = c.lambda;
    j["displacement"] = {state.displacement.real(), state.displacement.imag()};
    j["p_factor"] = p_factor(c.params.nbar, r, c.u);
    j["quad_mean"] = quad_mean(state, c.lambda);
    j["quad_variance"] = quad_variance(state, c.lambda);
    j["variance_product"] = variance_product(c.params.nbar, r, theta, c.lambda, c.u);
    j["snr"] = snr(state, c.lambda);
    j["snr_max"] = snr_max(c.params, c.u);
    const PhotonStats ps = photon_stats(state);
    j["mean_photon"] = ps.mean_n;
    j["photon_variance"] = ps.var_n;
    std::optional<double> q;
    try {
        q = mandel_q(state);
        j["mandel_q"] = *q;
    } catch (const DomainError&) {
        j["mandel_q"] = "undefined (vacuum)";
    }
    const auto crossover = crossover_time(c.params.nbar, r);
    j["crossover_time"] = crossover ? json(*crossover) : json(nullptr);
    j["criteria"] = {{"squeezing", squeezing_criterion(c.params.nbar, r, theta, c.lambda, c.u)},
                     {"p_representation_exists", p_representation_exists(c.params.nbar, r, c.u)},
                     {"field_nonclassical", field_nonclassical(c.params.nbar, r, c.u)},
                     {"sub_poissonian", q ? json(*q < 0.0) : json(nullptr)}};
    return j;
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    for (const auto& [k, v] : j.items()) {
        const std::string key = prefix.empty() ? k : prefix + "." + k;
        if (v.is_object()) {
            flatten(v, key, rows);
        } else if (v.is_number_float()) {
            rows.emplace_back(key, num(v.get<double>()));
        } else if (v.is_string()) {
            rows.emplace_back(key, v.get<std::string>());
        } else if (v.is_array()) {
            for (std::size_t i = 0; i < v.size(); ++i) rows.emplace_back(key + "[" + std::to_string(i) + "]", num(v[i].get<double>()));
        } else {
            rows.emplace_back(key, v.dump());
        }
    }
}

int cmd_eval(const RunConfig& c, std::ostream& out) {
    validate_params(c);
    json j = observables(c);
    if (c.format == "csv") {
        out << param_header(c) << fmt::format(" u={} lambda={}", num(c.u), num(c.lambda)) << "\n";
        out << "quantity,value\n";
        std::vector<std::pair<std::string, std::string>> rows;
        j.erase("params");
        flatten(j, "", rows);
        for (const auto& [k, v] : rows) out << k << "," << v << "\n";
    } else {
        out << j.dump(2) << "\n";
    }
    return kExitOk;
}

struct SweepRow {
    double u = 0;
    double q = 0;
    double var_x = 0;
    double mean_n = 0;
    double var_n = 0;
    bool squeezing = false;
    bool nonclassical = false;
    bool sub_poissonian = false;
};

int cmd_sweep(const RunConfig& c, std::ostream& out) {
    validate_params(c);
    validate_u_range(c);
    if (c.params.squeeze_mag == 0.0) throw UsageError("sweep needs r > 0 (u = Omega tau is identically 0 at r = 0)");
    const auto n = static_cast<std::size_t>(c.u_steps);
    const auto rows = fan_out<SweepRow>(n, c.workers, [&](std::size_t i) {
        SweepRow row;
        row.u = c.u_start + (c.u_stop - c.u_start) * static_cast<double>(i) / static_cast<double>(n - 1);
        const EvolvedState s = evolved_state(c.params, DimensionlessTime(row.u));
        row.q = mandel_q(s);
        row.var_x = quad_variance(s, c.lambda);
        row.mean_n = mean_photon(s);
        row.var_n = photon_variance(s);
        row.squeezing = row.var_x < 0.5;
        row.nonclassical = field_nonclassical(s.nbar, c.params.squeeze_mag, row.u);
        row.sub_poissonian = row.q < 0.0;
        return row;
    });
    if (c.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            arr.push_back({{"u", r.u}, {"mandel_q", r.q}, {"quad_variance", r.var_x}, {"mean_photon", r.mean_n},
                           {"photon_variance", r.var_n}, {"squeezing", r.squeezing},
                           {"field_nonclassical", r.nonclassical}, {"sub_poissonian", r.sub_poissonian}});
        }
        out << json{{"params", to_json(c.params)}, {"lambda", c.lambda}, {"rows", arr}}.dump(2) << "\n";
        return kExitOk;
    }
    out << param_header(c)
        << fmt::format(" lambda={} u_start={} u_stop={} u_steps={} phases=explicit(theta,phi,lambda)", num(c.lambda),
                       num(c.u_start), num(c.u_stop), c.u_steps)
        << "\n";
    out << "u,mandel_q,quad_variance,mean_photon,photon_variance,squeezing,field_nonclassical,sub_poissonian\n";
    for (const auto& r : rows) {
        out << num(r.u) << "," << num(r.q) << "," << num(r.var_x) << "," << num(r.mean_n) << "," << num(r.var_n)
            << "," << int(r.squeezing) << "," << int(r.nonclassical) << "," << int(r.sub_poissonian) << "\n";
    }
    return kExitOk;
}

int cmd_critical(const RunConfig& c, std::ostream& out, std::ostream& err) {
    validate_params(c);
    if (c.params.squeeze_mag <= 0.0) throw UsageError("critical needs r > 0");
    CriticalOptions opts;
    opts.u_max = c.u_max;
    try {
        const CriticalPointResult res = find_critical_alpha(c.params.nbar, c.params.squeeze_mag, opts);
        json j = critical_record(c.params.nbar, c.params.squeeze_mag, res);
        if (const auto b = boundary_critical_alpha(c.params.nbar, c.params.squeeze_mag)) j["q0_zero_alpha"] = *b;
        out << j.dump(2) << "\n";
        return kExitOk;
    } catch (const NoTransitionError& e) {
        out << json{{"nbar", c.params.nbar}, {"r", c.params.squeeze_mag}, {"error", "NoTransition"}, {"detail", e.what()}}.dump(2)
            << "\n";
        err << "no transition: " << e.what() << "\n";
    } catch (const MonotonicityError& e) {
        out << json{{"nbar", c.params.nbar}, {"r", c.params.squeeze_mag}, {"error", "Monotonicity"}, {"detail", e.what()}}.dump(2)
            << "\n";
        err << "monotonicity check failed: " << e.what() << "\n";
    }
    return kExitNumerical;
}

int cmd_wigner_grid(const RunConfig& c, std::ostream& out) {
    validate_params(c);
    if (c.grid_steps < 2) throw UsageError("grid-steps >= 2 violated");
    if (!(c.grid_sigmas > 0.0)) throw UsageError("grid-sigmas > 0 violated");
    const EvolvedState s = state_at(c.params, c.u);
    const QuadFormCoeffs q = quad_form_coeffs(s, c.lambda);
    const double hx = c.grid_sigmas * std::sqrt(quad_variance(s, c.lambda));
    const double hp = c.grid_sigmas * std::sqrt(quad_variance(s, c.lambda + 0.5 * std::numbers::pi));
    const auto n = static_cast<std::size_t>(c.grid_steps);
    auto coord = [n](double centre, double half, std::size_t i) {
        return centre - half + 2.0 * half * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    const auto rows = fan_out<std::string>(n, c.workers, [&](std::size_t i) {
        std::string block;
        const double x = coord(q.mean_x, hx, i);
        for (std::size_t k = 0; k < n; ++k) {
            const double p = coord(q.mean_p, hp, k);
            block += num(x) + "," + num(p) + "," + num(wigner_quadrature(s, c.lambda, x, p)) + "\n";
        }
        return block;
    });
    out << param_header(c) << fmt::format(" u={} lambda={} grid_steps={} grid_sigmas={}", num(c.u), num(c.lambda),
                                          c.grid_steps, num(c.grid_sigmas))
        << "\n";
    out << "x,p,W\n";
    for (const auto& b : rows) out << b;
    return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    VerifyOptions opts;
    opts.moments.max_dim = c.max_fock_dim;
    opts.dense.max_dim = std::min(c.max_fock_dim, opts.dense.max_dim);
    opts.workers = c.workers;
    VerificationReport report;
    try {
        report = run_verification(c.grid, opts);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    out << verification_json(report).dump(2) << "\n";
    err << fmt::format("verify: {} checks, {} failures\n", report.records.size(), report.failures());
    return report.all_pass() ? kExitOk : kExitNumerical;
}

void set_grid(VerificationGrid& grid, const json& g) {
    if (!g.is_object()) throw UsageError("config 'grid' must be an object");
    const std::map<std::string, std::vector<double>*> axes{{"nbar", &grid.nbar},   {"r", &grid.squeeze},
                                                             {"alpha", &grid.alpha}, {"u", &grid.u},
                                                             {"lambda", &grid.lambdas}};
    for (const auto& [key, value] : g.items()) {
        if (key == "hamiltonian" && value.is_boolean()) {
            if (!value.get<bool>()) {
                grid.ham_nbar.clear();
            }
            continue;
        }
        const auto it = axes.find(key);
        if (it == axes.end()) throw UsageError("unknown grid axis '" + key + "'");
        try {
            *it->second = value.get<std::vector<double>>();
        } catch (const json::exception&) {
            throw UsageError("grid axis '" + key + "' must be a list of numbers");
        }
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Displaced-squeezed thermal states under degenerate parametric amplification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(DPA_VERSION));

    std::map<std::string, std::map<std::string, Binding>> bindings;
    auto common = [&](CLI::App* sub) {
        auto& b = bindings[sub->get_name()];
        b["nbar"] = bind_option(*sub, "--nbar", cfg.params.nbar, "thermal occupation");
        b["r"] = bind_option(*sub, "--r", cfg.params.squeeze_mag, "squeeze magnitude r");
        b["theta"] = bind_option(*sub, "--theta", cfg.params.squeeze_phase, "squeeze phase (rad)");
        b["alpha"] = bind_option(*sub, "--alpha", cfg.params.alpha_mag, "displacement magnitude |alpha|");
        b["phi"] = bind_option(*sub, "--phi", cfg.params.alpha_phase, "displacement phase (rad)");
        b["t"] = bind_option(*sub, "--t", cfg.params.prep_time, "preparation time");
        b["lambda"] = bind_option(*sub, "--lambda", cfg.lambda, "quadrature angle (rad)");
        b["out"] = bind_option(*sub, "--out", cfg.out_path, "output file (default stdout)");
        b["format"] = bind_option(*sub, "--format", cfg.format, "csv or json");
        b["workers"] = bind_option(*sub, "--workers", cfg.workers, "worker threads");
        sub->add_option("--config", cfg.config_path, "JSON config file; flags override it");
        b["format"].opt->check(CLI::IsMember({"csv", "json"}));
    };

    auto* eval = app.add_subcommand("eval", "all observables and criteria at one (params, u)");
    common(eval);
    bindings["eval"]["u"] = bind_option(*eval, "--u", cfg.u, "dimensionless time u = Omega tau");

    auto* sweep = app.add_subcommand("sweep", "observables over a u grid (CSV)");
    common(sweep);
    bindings["sweep"]["u_start"] = bind_option(*sweep, "--u-start", cfg.u_start, "first u");
    bindings["sweep"]["u_stop"] = bind_option(*sweep, "--u-stop", cfg.u_stop, "last u");
    bindings["sweep"]["u_steps"] = bind_option(*sweep, "--u-steps", cfg.u_steps, "number of grid points");

    auto* critical = app.add_subcommand("critical", "critical |alpha_c| of the Mandel-parameter transition (JSON)");
    common(critical);
    bindings["critical"]["u_max"] = bind_option(*critical, "--u-max", cfg.u_max, "end of the u window");

    auto* wgrid = app.add_subcommand("wigner-grid", "W(x_lambda, x_lambda+pi/2) on a grid around the mean (CSV)");
    common(wgrid);
    bindings["wigner-grid"]["u"] = bind_option(*wgrid, "--u", cfg.u, "dimensionless time u = Omega tau");
    bindings["wigner-grid"]["grid_steps"] = bind_option(*wgrid, "--grid-steps", cfg.grid_steps, "points per axis");
    bindings["wigner-grid"]["grid_sigmas"] = bind_option(*wgrid, "--grid-sigmas", cfg.grid_sigmas, "half-width in marginal sd");

    auto* verify = app.add_subcommand("verify", "closed forms vs the Fock-space oracle (JSON report)");
    common(verify);
    bindings["verify"]["max_fock_dim"] = bind_option(*verify, "--max-fock-dim", cfg.max_fock_dim, "truncation cap");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, eo;
        const int code = app.exit(e, o, eo);
        out << o.str();
        err << eo.str();
        return code == 0 ? kExitOk : kExitUsage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();
    try {
        apply_config(cfg, bindings[cfg.command], [&](const json& g) { set_grid(cfg.grid, g); });
        if (cfg.format.empty()) cfg.format = (cfg.command == "sweep" || cfg.command == "wigner-grid") ? "csv" : "json";
        if (cfg.format != "csv" && cfg.format != "json") throw UsageError("format must be csv or json");
        if (cfg.workers == 0) throw UsageError("workers >= 1 violated");

        std::ofstream file;
        std::ostream* sink = &out;
        if (!cfg.out_path.empty()) {
            file.open(cfg.out_path);
            if (!file) throw UsageError("cannot open output file " + cfg.out_path);
            sink = &file;
        }
        if (cfg.command == "eval") return cmd_eval(cfg, *sink);
        if (cfg.command == "sweep") return cmd_sweep(cfg, *sink);
        if (cfg.command == "critical") return cmd_critical(cfg, *sink, err);
        if (cfg.command == "wigner-grid") return cmd_wigner_grid(cfg, *sink);
        return cmd_verify(cfg, *sink, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace dpa::cli
