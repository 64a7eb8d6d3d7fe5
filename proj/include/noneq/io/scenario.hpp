#pragma once

#include <json.hpp>

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "noneq/diagnostics/checks.hpp"
#include "noneq/dynamics/nonholonomic.hpp"
#include "noneq/models/reaction_energy.hpp"
#include "noneq/models/transfer_mixture.hpp"

namespace noneq {

using json = nlohmann::json;

namespace detail_json {

inline void check_keys(const json& j, const std::set<std::string>& allowed,
                       const std::string& where) {
    if (!j.is_object())
        throw ConfigurationError(where + " must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!allowed.count(key))
            throw ConfigurationError("unknown key '" + key + "' in " + where);
}

inline const json& need(const json& j, const std::string& key,
                        const std::string& where) {
    if (!j.contains(key))
        throw ConfigurationError(where + " is missing required key '" + key + "'");
    return j.at(key);
}

inline double number(const json& j, const std::string& key,
                     const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_number())
        throw ConfigurationError(where + "." + key + " must be a number");
    return v.get<double>();
}

inline double number_or(const json& j, const std::string& key, double fallback) {
    return j.contains(key) ? j.at(key).get<double>() : fallback;
}

inline Vector vector(const json& j, const std::string& key,
                     const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_array())
        throw ConfigurationError(where + "." + key + " must be an array");
    Vector out(v.size());
    int i = 0;
    for (const auto& x : v) {
        if (!x.is_number())
            throw ConfigurationError(where + "." + key + " must hold numbers");
        out[i++] = x.get<double>();
    }
    return out;
}

inline Matrix matrix(const json& j, const std::string& key,
                     const std::string& where) {
    const json& v = need(j, key, where);
    if (!v.is_array() || v.empty() || !v.front().is_array())
        throw ConfigurationError(where + "." + key + " must be a 2d array");
    const int rows = static_cast<int>(v.size());
    const int cols = static_cast<int>(v.front().size());
    Matrix out(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(v[r].size()) != cols)
            throw ConfigurationError(where + "." + key + " rows differ in length");
        for (int c = 0; c < cols; ++c) out(r, c) = v[r][c].get<double>();
    }
    return out;
}

inline Eigen::MatrixXi int_matrix(const json& j, const std::string& key,
                                  const std::string& where) {
    const Matrix m = matrix(j, key, where);
    Eigen::MatrixXi out(m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            const double x = m(r, c);
            if (x != std::floor(x))
                throw ConfigurationError(where + "." + key + " must hold integers");
            out(r, c) = static_cast<int>(x);
        }
    return out;
}

} // namespace detail_json

/// External force specification of a scenario.
struct ExternalForceSpec {
    enum class Kind { None, Constant, Sinusoidal } kind = Kind::None;
    Vector value;     // Constant
    Vector amplitude; // Sinusoidal
    double omega = 0.0;
    double phase = 0.0;

    std::function<Vector(double, const ThermoPhaseState&)> build() const {
        switch (kind) {
            case Kind::None: return {};
            case Kind::Constant: return constant_external(value);
            case Kind::Sinusoidal:
                return sinusoidal_external(amplitude, omega, phase);
        }
        return {};
    }

    bool none() const { return kind == Kind::None; }
};

/// Fully parsed scenario: validated parameters, initial state, integrator
/// settings and the checks to run with their tolerances.
struct Scenario {
    std::string name;
    SystemKind kind = SystemKind::SimpleFriction;
    json raw; // canonical validated config (hash + dump source)

    std::optional<PistonParams> piston;
    std::optional<HarmonicParams> harmonic;
    std::optional<TransferMixtureParams> transfer_model;
    std::optional<ReactionMixtureParams> reaction_model;
    std::optional<std::pair<Vector, double>> linear_energy;
    std::optional<KnifeEdgeParams> knife;
    double drift_tol = 1e-6;

    Matrix friction;             // may be 0x0 (no friction)
    ExternalForceSpec external;

    Matrix G;                    // transfer coefficients
    Eigen::MatrixXi nu_fwd, nu_bwd;
    Vector masses;
    std::vector<std::string> species;
    RateLaw::Kind rate_kind = RateLaw::Kind::Linear;
    Matrix L;                    // linear rate law
    Vector k_fwd, k_bwd;

    ThermoPhaseState initial;
    IntegratorConfig integrator;
    std::map<std::string, double> checks;
};

namespace detail_scenario {

inline const std::set<std::string>& checks_for(SystemKind kind) {
    static const std::set<std::string> friction{
        "first-law", "second-law", "entropy-nondecreasing",
        "entropy-rate-formula", "phenomenological-constraint",
        "lagrangian-oracle", "temperature-consistency", "equilibrium",
        "gradient-fd"};
    static const std::set<std::string> transfer{
        "first-law", "second-law", "entropy-nondecreasing",
        "entropy-rate-formula", "phenomenological-constraint",
        "mole-conservation", "equilibrium", "gradient-fd"};
    static const std::set<std::string> reaction{
        "second-law", "entropy-nondecreasing", "phenomenological-constraint",
        "mass-conservation", "energy-conservation", "equilibrium",
        "dirac-agreement", "dirac-primary", "dirac-multipliers",
        "gradient-fd"};
    static const std::set<std::string> nonholonomic{"constraint-residual",
                                                    "gradient-fd"};
    switch (kind) {
        case SystemKind::SimpleFriction: return friction;
        case SystemKind::MassTransfer: return transfer;
        case SystemKind::ReactionNetwork: return reaction;
        case SystemKind::LinearNonholonomic: return nonholonomic;
    }
    return friction;
}

inline SystemKind parse_kind(const std::string& s) {
    if (s == "friction") return SystemKind::SimpleFriction;
    if (s == "transfer") return SystemKind::MassTransfer;
    if (s == "reaction") return SystemKind::ReactionNetwork;
    if (s == "nonholonomic") return SystemKind::LinearNonholonomic;
    throw ConfigurationError("unknown system kind '" + s + "'");
}

inline ExternalForceSpec parse_external(const json& j) {
    using detail_json::check_keys;
    using detail_json::vector;
    ExternalForceSpec spec;
    if (j.is_null()) return spec;
    const std::string type = detail_json::need(j, "type", "force.external");
    if (type == "none") {
        check_keys(j, {"type"}, "force.external");
    } else if (type == "constant") {
        check_keys(j, {"type", "value"}, "force.external");
        spec.kind = ExternalForceSpec::Kind::Constant;
        spec.value = vector(j, "value", "force.external");
    } else if (type == "sinusoidal") {
        check_keys(j, {"type", "amplitude", "omega", "phase"}, "force.external");
        spec.kind = ExternalForceSpec::Kind::Sinusoidal;
        spec.amplitude = vector(j, "amplitude", "force.external");
        spec.omega = detail_json::number(j, "omega", "force.external");
        spec.phase = detail_json::number_or(j, "phase", 0.0);
    } else {
        throw ConfigurationError("unknown external force type '" + type + "'");
    }
    return spec;
}

inline IntegratorConfig parse_integrator(const json& j) {
    using namespace detail_json;
    check_keys(j,
               {"method", "dt", "rtol", "atol", "dt_min", "dt_max", "t_end",
                "record_stride", "record_grid"},
               "integrator");
    IntegratorConfig c;
    const std::string method = need(j, "method", "integrator");
    if (method == "rk4")
        c.method = StepMethod::RK4Fixed;
    else if (method == "adaptive")
        c.method = StepMethod::EmbeddedAdaptive;
    else
        throw ConfigurationError("integrator.method must be rk4 or adaptive");
    c.dt = number_or(j, "dt", 1e-3);
    c.rtol = number_or(j, "rtol", 1e-10);
    c.atol = number_or(j, "atol", 1e-12);
    c.dt_min = number_or(j, "dt_min", 1e-12);
    c.dt_max = number_or(j, "dt_max", 1e300);
    c.t_end = number(j, "t_end", "integrator");
    c.record_stride =
        static_cast<int>(number_or(j, "record_stride", 1.0));
    c.record_grid = static_cast<int>(number_or(j, "record_grid", 0.0));
    c.validate();
    return c;
}

} // namespace detail_scenario

/// Parse and validate a scenario document. Unknown keys anywhere are
/// rejected so typos in physics parameters cannot pass silently.
inline Scenario scenario_from_json(const json& j) {
    using namespace detail_json;
    using namespace detail_scenario;

    check_keys(j,
               {"name", "kind", "model", "force", "transfer", "reaction",
                "constraint", "initial", "integrator", "checks"},
               "scenario");
    Scenario sc;
    sc.raw = j;
    sc.name = need(j, "name", "scenario").get<std::string>();
    sc.kind = parse_kind(need(j, "kind", "scenario").get<std::string>());

    // --- model ---------------------------------------------------------
    const json& jm = need(j, "model", "scenario");
    const std::string mtype = need(jm, "type", "model").get<std::string>();
    int n = 0, K = 0;
    if (sc.kind == SystemKind::SimpleFriction) {
        if (mtype == "piston") {
            check_keys(jm, {"type", "m", "alpha", "N0", "cv", "R", "T0", "V0",
                            "S0", "r"},
                       "model");
            PistonParams P;
            P.m = number(jm, "m", "model");
            P.alpha = number(jm, "alpha", "model");
            P.N0 = number(jm, "N0", "model");
            P.cv = number(jm, "cv", "model");
            P.R = number_or(jm, "R", P.R);
            P.T0 = number(jm, "T0", "model");
            P.V0 = number(jm, "V0", "model");
            P.S0 = number_or(jm, "S0", 0.0);
            P.r = number_or(jm, "r", 0.0);
            validate(P);
            sc.piston = P;
            sc.friction = Matrix::Constant(1, 1, P.r);
        } else if (mtype == "harmonic") {
            check_keys(jm, {"type", "m", "k", "C", "T0", "S0", "r"}, "model");
            HarmonicParams P;
            P.m = number(jm, "m", "model");
            P.k = number(jm, "k", "model");
            P.C = number(jm, "C", "model");
            P.T0 = number(jm, "T0", "model");
            P.S0 = number_or(jm, "S0", 0.0);
            P.r = number_or(jm, "r", 0.0);
            sc.harmonic = P;
            sc.friction = Matrix::Constant(1, 1, P.r);
        } else {
            throw ConfigurationError("friction model type must be piston or harmonic");
        }
        n = 1;
    } else if (sc.kind == SystemKind::MassTransfer) {
        if (mtype != "ideal-mixture")
            throw ConfigurationError("transfer model type must be ideal-mixture");
        check_keys(jm, {"type", "m", "spring", "volumes", "cv", "s0", "v0",
                        "T0", "R"},
                   "model");
        TransferMixtureParams P;
        P.m = number(jm, "m", "model");
        P.spring = number_or(jm, "spring", 0.0);
        P.volumes = vector(jm, "volumes", "model");
        P.cv = number(jm, "cv", "model");
        P.s0 = number_or(jm, "s0", 0.0);
        P.v0 = number(jm, "v0", "model");
        P.T0 = number(jm, "T0", "model");
        P.R = number_or(jm, "R", P.R);
        validate(P);
        sc.transfer_model = P;
        n = 1;
        K = static_cast<int>(P.volumes.size());
    } else if (sc.kind == SystemKind::ReactionNetwork) {
        if (mtype == "ideal-mixture") {
            check_keys(jm, {"type", "cv", "u0", "s0", "v0", "volume", "T0", "R"},
                       "model");
            ReactionMixtureParams P;
            P.cv = vector(jm, "cv", "model");
            P.u0 = vector(jm, "u0", "model");
            P.s0 = vector(jm, "s0", "model");
            P.v0 = number(jm, "v0", "model");
            P.volume = number(jm, "volume", "model");
            P.T0 = number(jm, "T0", "model");
            P.R = number_or(jm, "R", P.R);
            validate(P);
            sc.reaction_model = P;
            K = static_cast<int>(P.cv.size());
        } else if (mtype == "linear") {
            check_keys(jm, {"type", "u", "c"}, "model");
            sc.linear_energy = {vector(jm, "u", "model"),
                                number(jm, "c", "model")};
            K = static_cast<int>(sc.linear_energy->first.size());
        } else {
            throw ConfigurationError(
                "reaction model type must be ideal-mixture or linear");
        }
        n = 0;
    } else { // LinearNonholonomic
        if (mtype != "knife-edge")
            throw ConfigurationError("nonholonomic model type must be knife-edge");
        check_keys(jm, {"type", "m", "inertia", "g_eff"}, "model");
        KnifeEdgeParams P;
        P.m = number(jm, "m", "model");
        P.inertia = number(jm, "inertia", "model");
        P.g_eff = number(jm, "g_eff", "model");
        sc.knife = P;
        n = 3;
    }

    // --- force ----------------------------------------------------------
    if (j.contains("force")) {
        const json& jf = j.at("force");
        check_keys(jf, {"friction", "external"}, "force");
        if (jf.contains("friction")) {
            sc.friction = matrix(jf, "friction", "force");
            if (sc.friction.rows() != n || sc.friction.cols() != n)
                throw ConfigurationError("force.friction must be n x n");
            check_psd(sc.friction, "force.friction");
        }
        if (jf.contains("external")) sc.external = parse_external(jf.at("external"));
        const int fdim = sc.external.kind == ExternalForceSpec::Kind::Constant
                             ? static_cast<int>(sc.external.value.size())
                         : sc.external.kind == ExternalForceSpec::Kind::Sinusoidal
                             ? static_cast<int>(sc.external.amplitude.size())
                             : n;
        if (fdim != n)
            throw ConfigurationError("external force dimension must equal n");
    }

    // --- transfer network ------------------------------------------------
    if (sc.kind == SystemKind::MassTransfer) {
        const json& jt = need(j, "transfer", "scenario");
        check_keys(jt, {"G"}, "transfer");
        sc.G = matrix(jt, "G", "transfer");
        if (sc.G.rows() != K || sc.G.cols() != K)
            throw ConfigurationError("transfer.G must be K x K");
        if (sc.G.minCoeff() < 0)
            throw ConfigurationError("transfer coefficients must be >= 0");
    } else if (j.contains("transfer")) {
        throw ConfigurationError("'transfer' section only applies to transfer kind");
    }

    // --- reaction network --------------------------------------------------
    if (sc.kind == SystemKind::ReactionNetwork) {
        const json& jr = need(j, "reaction", "scenario");
        check_keys(jr, {"species", "masses", "nu_fwd", "nu_bwd", "rate_law"},
                   "reaction");
        sc.nu_fwd = int_matrix(jr, "nu_fwd", "reaction");
        sc.nu_bwd = int_matrix(jr, "nu_bwd", "reaction");
        sc.masses = vector(jr, "masses", "reaction");
        if (jr.contains("species"))
            for (const auto& s : jr.at("species"))
                sc.species.push_back(s.get<std::string>());
        const json& jl = need(jr, "rate_law", "reaction");
        const std::string ltype = need(jl, "type", "rate_law").get<std::string>();
        if (ltype == "linear") {
            check_keys(jl, {"type", "L"}, "rate_law");
            sc.rate_kind = RateLaw::Kind::Linear;
            sc.L = matrix(jl, "L", "rate_law");
        } else if (ltype == "mass-action") {
            check_keys(jl, {"type", "k_fwd", "k_bwd"}, "rate_law");
            sc.rate_kind = RateLaw::Kind::MassAction;
            sc.k_fwd = vector(jl, "k_fwd", "rate_law");
            sc.k_bwd = vector(jl, "k_bwd", "rate_law");
        } else {
            throw ConfigurationError("rate_law.type must be linear or mass-action");
        }
    } else if (j.contains("reaction")) {
        throw ConfigurationError("'reaction' section only applies to reaction kind");
    }

    // --- constraint options ------------------------------------------------
    if (sc.kind == SystemKind::LinearNonholonomic) {
        if (j.contains("constraint")) {
            check_keys(j.at("constraint"), {"drift_tol"}, "constraint");
            sc.drift_tol = number_or(j.at("constraint"), "drift_tol", 1e-6);
        }
    } else if (j.contains("constraint")) {
        throw ConfigurationError("'constraint' section only applies to nonholonomic kind");
    }

    // --- initial state ------------------------------------------------------
    const json& ji = need(j, "initial", "scenario");
    check_keys(ji, {"q", "p", "S", "T", "N", "W"}, "initial");
    ThermoPhaseState& init = sc.initial;
    if (n == 0 && (ji.contains("q") || ji.contains("p")))
        throw ConfigurationError("this system class has no mechanical variables");
    if (K == 0 && (ji.contains("N") || ji.contains("W")))
        throw ConfigurationError("this system class has no mole numbers");
    init.q = n > 0 ? vector(ji, "q", "initial") : Vector();
    init.p = n > 0 ? vector(ji, "p", "initial") : Vector();
    if (init.q.size() != n || init.p.size() != n)
        throw ConfigurationError("initial q/p must have dimension n");
    if (K > 0) {
        init.N = vector(ji, "N", "initial");
        if (init.N.size() != K)
            throw ConfigurationError("initial.N must have dimension K");
        init.W = ji.contains("W") ? vector(ji, "W", "initial")
                                  : Vector(Vector::Zero(K));
        if (init.W.size() != K)
            throw ConfigurationError("initial.W must have dimension K");
        if (init.N.minCoeff() <= 0)
            throw ConfigurationError("initial mole numbers must be > 0");
    }
    const bool needs_S = sc.kind != SystemKind::LinearNonholonomic;
    if (needs_S) {
        if (ji.contains("S") == ji.contains("T"))
            throw ConfigurationError("initial state needs exactly one of S or T");
        if (ji.contains("S")) {
            init.S = number(ji, "S", "initial");
        } else {
            const double T = number(ji, "T", "initial");
            if (!(T > 0)) throw ConfigurationError("initial.T must be > 0");
            if (sc.transfer_model)
                init.S = transfer_entropy_at_temperature(*sc.transfer_model, T,
                                                         init.N);
            else if (sc.reaction_model)
                init.S = reaction_entropy_at_temperature(*sc.reaction_model, T,
                                                         init.N);
            else
                throw ConfigurationError(
                    "initial.T requires a mixture model; give S directly");
        }
    } else if (ji.contains("S") || ji.contains("T")) {
        throw ConfigurationError("nonholonomic scenarios have no entropy variable");
    }

    // --- integrator & checks ------------------------------------------------
    sc.integrator = parse_integrator(need(j, "integrator", "scenario"));
    if (j.contains("checks")) {
        const json& jc = j.at("checks");
        if (!jc.is_object())
            throw ConfigurationError("checks must map names to tolerances");
        const auto& allowed = checks_for(sc.kind);
        for (const auto& [name, tol] : jc.items()) {
            if (!allowed.count(name))
                throw ConfigurationError("check '" + name +
                                         "' does not apply to kind '" +
                                         to_string(sc.kind) + "'");
            if (!tol.is_number() || !(tol.get<double>() > 0))
                throw ConfigurationError("tolerance of check '" + name +
                                         "' must be a positive number");
            sc.checks[name] = tol.get<double>();
        }
    }
    return sc;
}

inline Scenario scenario_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigurationError(std::string("invalid JSON: ") + e.what());
    }
    return scenario_from_json(j);
}

/// FNV-1a over the canonical dump: deterministic provenance tag.
inline std::string config_hash(const json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace noneq
