// Command-line front end: run scenarios, verify structural laws, sweep
// parameters. Exit codes: 0 all good, 1 checks failed, 2 configuration
// error, 3 domain abort during integration.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>

#include <noneq/noneq.hpp>

namespace fs = std::filesystem;
using namespace noneq;

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDomainAbort = 3;

struct Overrides {
    std::optional<double> rtol, atol, dt, t_end;
    unsigned seed = 20260810u;
};

json load_scenario_json(const std::string& ref) {
    for (const auto& name : builtin_scenario_names())
        if (name == ref) return builtin_scenario_json(name);
    std::ifstream f(ref);
    if (!f) throw ConfigurationError("scenario not found: " + ref);
    std::string text((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());
    try {
        return json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigurationError("invalid JSON in " + ref + ": " + e.what());
    }
}

void apply_overrides(json& j, const Overrides& o) {
    if (!j.contains("integrator") || !j["integrator"].is_object()) return;
    auto& ji = j["integrator"];
    if (o.rtol) ji["rtol"] = *o.rtol;
    if (o.atol) ji["atol"] = *o.atol;
    if (o.dt) ji["dt"] = *o.dt;
    if (o.t_end) ji["t_end"] = *o.t_end;
}

fs::path resolve_out_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("NONEQ_OUT_DIR"); env && *env)
        return env;
    return "noneq-out";
}

Scenario parse_scenario(const std::string& ref, const Overrides& o) {
    json j = load_scenario_json(ref);
    apply_overrides(j, o);
    try {
        return scenario_from_json(j);
    } catch (const ConfigurationError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigurationError(std::string("invalid scenario: ") + e.what());
    }
}

/// Sets a numeric leaf addressed as e.g. "integrator.dt" or "model.r".
void set_by_path(json& j, const std::string& path, double value) {
    json* cur = &j;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = path.find('.', start);
        const std::string key = path.substr(start, dot - start);
        if (!cur->is_object() || !cur->contains(key))
            throw ConfigurationError("parameter path not addressable: " + path);
        if (dot == std::string::npos) {
            if (!(*cur)[key].is_number())
                throw ConfigurationError("parameter is not numeric: " + path);
            (*cur)[key] = value;
            return;
        }
        cur = &(*cur)[key];
        start = dot + 1;
    }
}

int finish_run(const ScenarioRuntime& rt, const IntegrationResult& res,
               const fs::path& out_dir, bool write_trajectory, unsigned seed) {
    const std::string& name = rt.scenario.name;
    const std::string hash = config_hash(rt.scenario.raw);
    fs::create_directories(out_dir);

    if (write_trajectory) {
        const std::string provenance =
            "noneq trajectory scenario=" + name + " config=" + hash;
        write_file((out_dir / (name + "_trajectory.csv")).string(),
                   trajectory_csv(res.trajectory, provenance));
        write_file((out_dir / (name + "_scenario.json")).string(),
                   rt.scenario.raw.dump(2) + "\n");
    }

    if (!res.completed()) {
        std::cerr << "integration aborted: " << res.abort_reason << "\n";
        return kExitDomainAbort;
    }

    const DiagnosticsReport report = run_checks(rt, res.trajectory, seed);
    if (write_trajectory)
        write_file((out_dir / (name + "_report.json")).string(),
                   report_to_json(report).dump(2) + "\n");
    std::cout << render_report_table(report);
    return report.pass() ? 0 : kExitChecksFailed;
}

int do_sweep(const std::string& ref, const std::string& param,
             const std::vector<double>& values, const fs::path& out_dir,
             const Overrides& o) {
    if (values.empty()) throw ConfigurationError("sweep needs at least one value");
    json base = load_scenario_json(ref);
    apply_overrides(base, o);

    // canonical check order comes from the validated base scenario
    const Scenario base_sc = scenario_from_json(base);
    std::vector<std::string> check_names;
    for (const auto& [n, _] : base_sc.checks) check_names.push_back(n);

    struct Row {
        double value;
        std::vector<double> residuals;
        double t = 0, H = 0, S = 0;
        bool ok = false;
        std::string error;
    };

    auto run_point = [&](double value) {
        Row row;
        row.value = value;
        try {
            json j = base;
            set_by_path(j, param, value);
            const Scenario sc = scenario_from_json(j);
            const ScenarioRuntime rt = build_runtime(sc);
            const IntegrationResult res = run_scenario(rt);
            if (!res.completed())
                throw DomainError("aborted: " + res.abort_reason);
            const DiagnosticsReport rep = run_checks(rt, res.trajectory, o.seed);
            for (const auto& n : check_names) {
                double r = 0.0;
                for (const auto& c : rep.checks)
                    if (c.name == n) r = c.max_residual;
                row.residuals.push_back(r);
            }
            const auto& last = res.trajectory.back();
            row.t = last.t;
            row.H = last.derived.H.value_or(0.0);
            row.S = res.trajectory.layout.has_S
                        ? last.y[res.trajectory.layout.iS()]
                        : 0.0;
            row.ok = true;
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    };

    std::vector<std::future<Row>> futures;
    futures.reserve(values.size());
    for (double v : values)
        futures.push_back(std::async(std::launch::async, run_point, v));

    std::ostringstream os;
    os << "# noneq sweep scenario=" << base_sc.name << " parameter=" << param
       << " config=" << config_hash(base) << "\n";
    os << "value";
    for (const auto& n : check_names) os << ",residual:" << n;
    os << ",t_end,H_end,S_end\n";
    bool all_ok = true;
    for (auto& f : futures) {
        const Row row = f.get();
        if (!row.ok) {
            std::cerr << "sweep point " << format_double(row.value)
                      << " failed: " << row.error << "\n";
            all_ok = false;
            continue;
        }
        os << format_double(row.value);
        for (double r : row.residuals) os << "," << format_double(r);
        os << "," << format_double(row.t) << "," << format_double(row.H) << ","
           << format_double(row.S) << "\n";
    }

    std::string tag = param;
    for (auto& c : tag)
        if (c == '.') c = '_';
    const std::string fname = base_sc.name + "_sweep_" + tag + ".csv";
    fs::create_directories(out_dir);
    write_file((out_dir / fname).string(), os.str());
    std::cout << "wrote " << (out_dir / fname).string() << "\n";
    return all_ok ? 0 : kExitDomainAbort;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"variational thermodynamics simulator"};
    app.require_subcommand(1);

    std::string scenario_ref, out_flag, sweep_param;
    std::vector<double> sweep_values;
    Overrides o;

    auto add_common = [&](CLI::App* cmd, bool needs_scenario = true) {
        if (needs_scenario)
            cmd->add_option("scenario", scenario_ref,
                            "builtin name or path to a scenario JSON file")
                ->required();
        cmd->add_option("--out", out_flag, "output directory");
        cmd->add_option("--rtol", o.rtol, "override integrator rtol");
        cmd->add_option("--atol", o.atol, "override integrator atol");
        cmd->add_option("--dt", o.dt, "override integrator dt");
        cmd->add_option("--t-end", o.t_end, "override integration horizon");
        cmd->add_option("--seed", o.seed, "seed for randomized property checks");
    };

    CLI::App* run = app.add_subcommand("run", "integrate and write trajectory + report");
    add_common(run);
    CLI::App* verify = app.add_subcommand("verify", "integrate and print the check table");
    add_common(verify);
    CLI::App* sweep = app.add_subcommand("sweep", "rerun over a parameter range");
    add_common(sweep);
    sweep->add_option("parameter", sweep_param, "config path, e.g. integrator.dt")
        ->required();
    sweep->add_option("values", sweep_values, "parameter values");
    CLI::App* list = app.add_subcommand("list-scenarios", "print builtin scenario names");
    (void)list;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (app.got_subcommand("list-scenarios")) {
            for (const auto& name : builtin_scenario_names())
                std::cout << name << "\n";
            return 0;
        }
        const fs::path out_dir = resolve_out_dir(out_flag);
        if (app.got_subcommand("sweep"))
            return do_sweep(scenario_ref, sweep_param, sweep_values, out_dir, o);

        const Scenario sc = parse_scenario(scenario_ref, o);
        const ScenarioRuntime rt = build_runtime(sc);
        const IntegrationResult res = run_scenario(rt);
        const bool write_files = app.got_subcommand("run");
        return finish_run(rt, res, out_dir, write_files, o.seed);
    } catch (const ConfigurationError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomainAbort;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
