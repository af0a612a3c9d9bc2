// config.cpp — JSON config ingestion

#include "coolsim/config.hpp"

#include <fstream>
#include <set>

#include "coolsim/meanfield.hpp"

namespace coolsim {

using nlohmann::json;
using nlohmann::ordered_json;

const char* to_string(RunMode mode) {
    switch (mode) {
        case RunMode::Run: return "run";
        case RunMode::Ncl: return "ncl";
        case RunMode::Scan: return "scan";
        case RunMode::QSwitch: return "qswitch";
        case RunMode::OracleCompare: return "oracle-compare";
    }
    return "run";
}

RunMode run_mode_from_string(const std::string& s) {
    if (s == "run") return RunMode::Run;
    if (s == "ncl") return RunMode::Ncl;
    if (s == "scan") return RunMode::Scan;
    if (s == "qswitch") return RunMode::QSwitch;
    if (s == "oracle-compare") return RunMode::OracleCompare;
    throw ConfigError("unknown mode: " + s);
}

namespace {

complexd parse_complex(const json& v, const std::string& key) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw ConfigError("field '" + key + "' must be a number or [re, im]");
}

void reject_unknown(const json& obj, const std::set<std::string>& known,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

double get_num(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
    return obj[key].get<double>();
}

}  // namespace

RunConfig default_config() {
    RunConfig c;
    c.schedule = KappaSchedule::constant(0.05);
    c.grid = TimeGrid::from_t_max(1e-3, 70.0);
    return c;
}

RunConfig load_config_json(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    reject_unknown(doc,
                   {"params", "schedule", "grid", "output", "mode", "trajectory",
                    "nu_i_convention", "workers", "oracle", "scan", "qswitch"},
                   "config root");
    RunConfig c = default_config();

    if (doc.contains("params")) {
        const json& p = doc["params"];
        reject_unknown(p,
                       {"delta_c", "delta_c_prime_target", "g0", "drive_E", "eta",
                        "omega_l", "s_exponent", "occupation", "n0", "m0", "c1", "c2",
                        "alpha0", "beta0"},
                       "params");
        if (p.contains("delta_c") && p.contains("delta_c_prime_target"))
            throw ConfigError("give either delta_c or delta_c_prime_target, not both");
        if (p.contains("delta_c")) {
            c.params.delta_c = p["delta_c"].get<double>();
            c.delta_c_given = true;
        }
        c.delta_eff_target = get_num(p, "delta_c_prime_target", 1.0);
        c.params.g0 = get_num(p, "g0", c.params.g0);
        c.params.drive_E = get_num(p, "drive_E", c.params.drive_E);
        c.params.eta = get_num(p, "eta", c.params.eta);
        c.params.omega_l = get_num(p, "omega_l", c.params.omega_l);
        c.params.s_exponent = get_num(p, "s_exponent", c.params.s_exponent);
        c.params.n0 = get_num(p, "n0", c.params.n0);
        c.params.m0 = get_num(p, "m0", c.params.m0);
        if (p.contains("c1")) c.params.c1 = parse_complex(p["c1"], "c1");
        if (p.contains("c2")) c.params.c2 = parse_complex(p["c2"], "c2");
        if (p.contains("alpha0")) c.params.alpha0 = parse_complex(p["alpha0"], "alpha0");
        if (p.contains("beta0")) c.params.beta0 = parse_complex(p["beta0"], "beta0");
        if (p.contains("occupation")) {
            const json& o = p["occupation"];
            reject_unknown(o, {"type", "m_k", "T"}, "occupation");
            const std::string type = o.value("type", "flat");
            if (type == "flat")
                c.params.occupation = Occupation::flat(get_num(o, "m_k", 100.0));
            else if (type == "bose_einstein")
                c.params.occupation = Occupation::bose_einstein(get_num(o, "T", 0.0));
            else
                throw ConfigError("occupation type must be 'flat' or 'bose_einstein'");
        }
    }

    if (doc.contains("schedule")) {
        const json& s = doc["schedule"];
        reject_unknown(s, {"segments"}, "schedule");
        if (s.contains("segments")) {
            if (!s["segments"].is_array() || s["segments"].empty())
                throw ConfigError("schedule.segments must be a non-empty array");
            c.schedule.segments.clear();
            for (const auto& seg : s["segments"]) {
                if (!seg.is_array() || seg.size() != 2)
                    throw ConfigError("each schedule segment is [start_time, kappa]");
                c.schedule.segments.push_back(
                    {seg[0].get<double>(), seg[1].get<double>()});
            }
        }
    }

    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        reject_unknown(g, {"dt", "t_max", "n_steps"}, "grid");
        const double dt = get_num(g, "dt", 1e-3);
        if (g.contains("n_steps"))
            c.grid = TimeGrid{dt, g["n_steps"].get<std::size_t>()};
        else
            c.grid = TimeGrid::from_t_max(dt, get_num(g, "t_max", 70.0));
    }

    if (doc.contains("output")) {
        const json& o = doc["output"];
        reject_unknown(o, {"dir", "stride", "components"}, "output");
        c.output.dir = o.value("dir", c.output.dir);
        c.output.stride = o.value("stride", c.output.stride);
        c.output.components = o.value("components", c.output.components);
    }

    if (doc.contains("mode")) c.mode = run_mode_from_string(doc["mode"].get<std::string>());

    if (doc.contains("trajectory")) {
        const std::string v = doc["trajectory"].get<std::string>();
        if (v == "ode") c.trajectory = TrajectoryModel::FullOde;
        else if (v == "envelope") c.trajectory = TrajectoryModel::StationaryEnvelope;
        else throw ConfigError("trajectory must be 'ode' or 'envelope'");
    }

    if (doc.contains("nu_i_convention")) {
        const std::string v = doc["nu_i_convention"].get<std::string>();
        if (v == "a") c.nu_convention = NuConvention::A;
        else if (v == "b") c.nu_convention = NuConvention::B;
        else throw ConfigError("nu_i_convention must be 'a' or 'b'");
    }

    if (doc.contains("workers")) c.workers = doc["workers"].get<unsigned>();

    if (doc.contains("oracle")) {
        const json& o = doc["oracle"];
        reject_unknown(o, {"K", "omega_max_factor", "traj_stride", "tolerance"},
                       "oracle");
        c.oracle.K = o.value("K", c.oracle.K);
        c.oracle.omega_max_factor = get_num(o, "omega_max_factor", c.oracle.omega_max_factor);
        c.oracle.traj_stride = o.value("traj_stride", c.oracle.traj_stride);
        c.oracle.tolerance = get_num(o, "tolerance", c.oracle.tolerance);
    }

    if (doc.contains("scan")) {
        const json& s = doc["scan"];
        reject_unknown(s, {"c1_values", "c2_values"}, "scan");
        auto load_list = [](const json& arr, const char* key) {
            if (!arr.is_array() || arr.empty())
                throw ConfigError(std::string(key) + " must be a non-empty array");
            std::vector<complexd> out;
            for (const auto& v : arr) out.push_back(parse_complex(v, key));
            return out;
        };
        if (s.contains("c1_values")) c.scan.c1_values = load_list(s["c1_values"], "c1_values");
        if (s.contains("c2_values")) c.scan.c2_values = load_list(s["c2_values"], "c2_values");
    }

    if (doc.contains("qswitch")) {
        const json& q = doc["qswitch"];
        reject_unknown(q, {"t_switch", "kappa_hi"}, "qswitch");
        c.qswitch.t_switch = get_num(q, "t_switch", c.qswitch.t_switch);
        c.qswitch.kappa_hi = get_num(q, "kappa_hi", c.qswitch.kappa_hi);
    }

    resolve_detuning(c);
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return load_config_json(doc);
}

void resolve_detuning(RunConfig& config) {
    if (config.delta_c_given) return;
    const double kappa0 = config.schedule.segments.front().kappa;
    config.params.delta_c =
        delta_c_for_target(config.delta_eff_target, config.params, kappa0);
}

ordered_json resolved_json(const RunConfig& c) {
    ordered_json j;
    ordered_json params;
    params["delta_c"] = c.params.delta_c;
    if (!c.delta_c_given) params["delta_c_prime_target"] = c.delta_eff_target;
    params["g0"] = c.params.g0;
    params["drive_E"] = c.params.drive_E;
    params["eta"] = c.params.eta;
    params["omega_l"] = c.params.omega_l;
    params["s_exponent"] = c.params.s_exponent;
    if (c.params.occupation.kind == Occupation::Kind::Flat)
        params["occupation"] = {{"type", "flat"}, {"m_k", c.params.occupation.m_k}};
    else
        params["occupation"] = {{"type", "bose_einstein"},
                                {"T", c.params.occupation.temperature}};
    params["n0"] = c.params.n0;
    params["m0"] = c.params.m0;
    params["c1"] = {c.params.c1.real(), c.params.c1.imag()};
    params["c2"] = {c.params.c2.real(), c.params.c2.imag()};
    params["alpha0"] = {c.params.alpha0.real(), c.params.alpha0.imag()};
    params["beta0"] = {c.params.beta0.real(), c.params.beta0.imag()};
    j["params"] = params;

    ordered_json segs = ordered_json::array();
    for (const auto& seg : c.schedule.segments)
        segs.push_back({seg.start_time, seg.kappa});
    j["schedule"] = {{"segments", segs}};
    j["grid"] = {{"dt", c.grid.dt}, {"n_steps", c.grid.n_steps}, {"t_max", c.grid.t_max()}};
    j["output"] = {{"dir", c.output.dir},
                   {"stride", c.output.stride},
                   {"components", c.output.components}};
    j["mode"] = to_string(c.mode);
    j["trajectory"] =
        c.trajectory == TrajectoryModel::FullOde ? "ode" : "envelope";
    j["nu_i_convention"] = c.nu_convention == NuConvention::A ? "a" : "b";
    j["workers"] = c.workers;
    j["oracle"] = {{"K", c.oracle.K},
                   {"omega_max_factor", c.oracle.omega_max_factor},
                   {"traj_stride", c.oracle.traj_stride},
                   {"tolerance", c.oracle.tolerance}};
    ordered_json c1s = ordered_json::array(), c2s = ordered_json::array();
    for (const auto& v : c.scan.c1_values) c1s.push_back({v.real(), v.imag()});
    for (const auto& v : c.scan.c2_values) c2s.push_back({v.real(), v.imag()});
    j["scan"] = {{"c1_values", c1s}, {"c2_values", c2s}};
    j["qswitch"] = {{"t_switch", c.qswitch.t_switch}, {"kappa_hi", c.qswitch.kappa_hi}};
    j["version"] = kVersion;
    return j;
}

}  // namespace coolsim
