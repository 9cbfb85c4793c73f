#include "tlsim/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tlsim/circuit.hpp"
#include "tlsim/units.hpp"

namespace tlsim {

using nlohmann::json;

namespace {

double require_number(const json& node, const std::string& key, const std::string& where) {
    if (!node.contains(key) || !node[key].is_number())
        throw config_error(where + " requires numeric field '" + key + "'");
    return node[key].get<double>();
}

std::optional<double> optional_number(const json& node, const std::string& key,
                                      const std::string& where) {
    if (!node.contains(key)) return std::nullopt;
    if (!node[key].is_number())
        throw config_error(where + " field '" + key + "' must be numeric");
    return node[key].get<double>();
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw config_error("config root must be an object");

    RunConfig cfg;
    cfg.raw_text = text;

    if (!root.contains("resonator") || !root["resonator"].is_object())
        throw config_error("config requires a 'resonator' section");
    const json& res = root["resonator"];
    cfg.omega_c_mhz = optional_number(res, "omega_c_mhz", "resonator");
    cfg.delta_c_mhz = optional_number(res, "delta_c_mhz", "resonator");
    cfg.kappa_mhz = require_number(res, "kappa_mhz", "resonator");
    if (!res.contains("fock_dim") || !res["fock_dim"].is_number_integer())
        throw config_error("resonator requires integer 'fock_dim'");
    cfg.fock_dim = res["fock_dim"].get<int>();

    if (root.contains("drive")) {
        const json& drv = root["drive"];
        cfg.epsilon0_mhz = optional_number(drv, "epsilon0_mhz", "drive").value_or(0.0);
        cfg.omega_d_mhz = optional_number(drv, "omega_d_mhz", "drive");
    }

    if (!root.contains("tls") || !root["tls"].is_array() || root["tls"].empty())
        throw config_error("config requires a nonempty 'tls' array");
    for (const auto& entry : root["tls"]) {
        TlsEntry t;
        if (!entry.contains("label") || !entry["label"].is_string())
            throw config_error("each TLS entry requires a string 'label'");
        t.label = entry["label"].get<std::string>();
        t.omega_mhz = optional_number(entry, "omega_mhz", "tls");
        t.delta_mhz = optional_number(entry, "delta_mhz", "tls");
        t.g_mhz = optional_number(entry, "g_mhz", "tls");
        cfg.tls.push_back(std::move(t));
    }

    if (root.contains("circuit")) {
        const json& circ = root["circuit"];
        CircuitSection c;
        c.e_j_mhz = require_number(circ, "e_j_mhz", "circuit");
        c.e_l_mhz = require_number(circ, "e_l_mhz", "circuit");
        c.e_c_mhz = require_number(circ, "e_c_mhz", "circuit");
        c.phi_ex = require_number(circ, "phi_ex", "circuit");
        if (!circ.contains("j_x") || !circ["j_x"].is_array() ||
            circ["j_x"].size() != cfg.tls.size())
            throw config_error("circuit requires a 'j_x' array with one entry per TLS");
        for (const auto& v : circ["j_x"]) {
            if (!v.is_number()) throw config_error("circuit j_x entries must be numeric");
            c.j_x.push_back(v.get<double>());
        }
        cfg.circuit = std::move(c);
    }

    if (root.contains("simulation")) {
        const json& sim = root["simulation"];
        cfg.simulation.t_end_us =
            optional_number(sim, "t_end_us", "simulation").value_or(cfg.simulation.t_end_us);
        cfg.simulation.dt_us =
            optional_number(sim, "dt_us", "simulation").value_or(cfg.simulation.dt_us);
        if (sim.contains("samples")) {
            if (!sim["samples"].is_number_integer())
                throw config_error("simulation 'samples' must be an integer");
            cfg.simulation.samples = sim["samples"].get<int>();
        }
        if (sim.contains("method")) {
            const std::string m = sim["method"].get<std::string>();
            if (m == "rk4")
                cfg.simulation.method = Method::rk4;
            else if (m == "adaptive")
                cfg.simulation.method = Method::adaptive;
            else
                throw config_error("simulation method must be 'rk4' or 'adaptive'");
        }
        if (cfg.simulation.samples < 2 || !(cfg.simulation.t_end_us > 0.0))
            throw config_error("simulation requires t_end_us > 0 and samples >= 2");
    }

    if (root.contains("sweep")) {
        const json& sw = root["sweep"];
        SweepSection s;
        if (!sw.contains("parameter") || !sw["parameter"].is_string())
            throw config_error("sweep requires a string 'parameter'");
        s.parameter = sw["parameter"].get<std::string>();
        s.start_mhz = require_number(sw, "start", "sweep");
        s.stop_mhz = require_number(sw, "stop", "sweep");
        if (!sw.contains("points") || !sw["points"].is_number_integer())
            throw config_error("sweep requires integer 'points'");
        s.points = sw["points"].get<int>();
        if (s.points < 2) throw config_error("sweep requires points >= 2");
        cfg.sweep = std::move(s);
    }

    if (root.contains("thresholds")) {
        const json& th = root["thresholds"];
        cfg.thresholds.dispersive_ratio = optional_number(th, "dispersive_ratio", "thresholds")
                                              .value_or(cfg.thresholds.dispersive_ratio);
        cfg.thresholds.badcavity_ratio = optional_number(th, "badcavity_ratio", "thresholds")
                                             .value_or(cfg.thresholds.badcavity_ratio);
    }

    if (root.contains("compare")) {
        const json& cmp = root["compare"];
        if (cmp.contains("regime")) {
            const std::string r = cmp["regime"].get<std::string>();
            if (r == "dispersive")
                cfg.compare.regime = Regime::dispersive;
            else if (r == "bad_cavity")
                cfg.compare.regime = Regime::bad_cavity;
            else
                throw config_error("compare regime must be 'dispersive' or 'bad_cavity'");
        }
        if (cmp.contains("initial_tls"))
            cfg.compare.initial_tls = cmp["initial_tls"].get<std::string>();
    }

    // Structural validation beyond field presence.
    if (cfg.fock_dim < 2) throw config_error("fock_dim must be >= 2");
    if (cfg.kappa_mhz < 0.0) throw config_error("kappa_mhz must be nonnegative");
    if (cfg.epsilon0_mhz < 0.0) throw config_error("epsilon0_mhz must be nonnegative");

    if (cfg.circuit) {
        if (!cfg.omega_d_mhz)
            throw config_error("circuit-driven configs require drive omega_d_mhz");
        if (cfg.omega_c_mhz || cfg.delta_c_mhz)
            throw config_error("circuit section overrides the resonator frequency; "
                               "remove omega_c_mhz/delta_c_mhz");
    } else {
        if (cfg.omega_c_mhz.has_value() == cfg.delta_c_mhz.has_value())
            throw config_error("resonator requires exactly one of omega_c_mhz or delta_c_mhz");
        if (cfg.omega_c_mhz && !cfg.omega_d_mhz)
            throw config_error("absolute omega_c_mhz requires drive omega_d_mhz");
    }
    for (const auto& t : cfg.tls) {
        if (t.omega_mhz.has_value() == t.delta_mhz.has_value())
            throw config_error("TLS '" + t.label +
                               "' requires exactly one of omega_mhz or delta_mhz");
        if (t.omega_mhz && !cfg.omega_d_mhz)
            throw config_error("absolute TLS omega_mhz requires drive omega_d_mhz");
        if (!t.g_mhz && !cfg.circuit)
            throw config_error("TLS '" + t.label + "' requires g_mhz (no circuit section)");
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

SystemModel RunConfig::to_model() const {
    double delta_c_rad;
    std::vector<double> g_rad(tls.size());

    if (circuit) {
        CircuitParams params(mhz_to_rad_us(circuit->e_j_mhz), mhz_to_rad_us(circuit->e_l_mhz),
                             mhz_to_rad_us(circuit->e_c_mhz), circuit->phi_ex);
        const double omega_c = resonator_frequency(params);
        delta_c_rad = omega_c - mhz_to_rad_us(*omega_d_mhz);
        for (size_t n = 0; n < tls.size(); ++n)
            g_rad[n] = coupling_constant(params, TlsPolarization(circuit->j_x[n]));
    } else {
        delta_c_rad = delta_c_mhz ? mhz_to_rad_us(*delta_c_mhz)
                                  : mhz_to_rad_us(*omega_c_mhz - *omega_d_mhz);
        for (size_t n = 0; n < tls.size(); ++n) g_rad[n] = mhz_to_rad_us(*tls[n].g_mhz);
    }

    std::vector<TlsSpec> roster;
    roster.reserve(tls.size());
    for (size_t n = 0; n < tls.size(); ++n) {
        const double delta_n = tls[n].delta_mhz
                                   ? mhz_to_rad_us(*tls[n].delta_mhz)
                                   : mhz_to_rad_us(*tls[n].omega_mhz - *omega_d_mhz);
        roster.push_back({tls[n].label, delta_n, g_rad[n]});
    }

    return SystemModel(ResonatorSpec{delta_c_rad, mhz_to_rad_us(kappa_mhz), fock_dim},
                       DriveSpec{mhz_to_rad_us(epsilon0_mhz)}, std::move(roster));
}

std::vector<double> RunConfig::time_grid() const {
    std::vector<double> grid(simulation.samples);
    for (int k = 0; k < simulation.samples; ++k)
        grid[k] = simulation.t_end_us * double(k) / double(simulation.samples - 1);
    return grid;
}

}  // namespace tlsim
