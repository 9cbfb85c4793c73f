#ifndef TLSIM_CONFIG_HPP
#define TLSIM_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "tlsim/effective.hpp"
#include "tlsim/model.hpp"
#include "tlsim/solver.hpp"

namespace tlsim {

// Run configuration parsed from a JSON document. All *_mhz values are
// omega/2pi in MHz and convert to rad/us internally; times are us.

struct CircuitSection {
    double e_j_mhz;
    double e_l_mhz;
    double e_c_mhz;
    double phi_ex;
    std::vector<double> j_x;  // one entry per TLS
};

struct SimulationSection {
    double t_end_us = 1.0;
    double dt_us = 0.0;  // 0 -> automatic step size
    Method method = Method::rk4;
    int samples = 201;
};

struct SweepSection {
    std::string parameter;  // only "delta_c" is defined
    double start_mhz;
    double stop_mhz;
    int points;
};

struct CompareSection {
    Regime regime = Regime::dispersive;
    std::string initial_tls;  // comma-separated "e"/"g" per TLS; default: first excited
};

struct TlsEntry {
    std::string label;
    std::optional<double> omega_mhz;
    std::optional<double> delta_mhz;
    std::optional<double> g_mhz;  // may be omitted when a circuit section is given
};

struct RunConfig {
    std::optional<double> omega_c_mhz;
    std::optional<double> delta_c_mhz;
    double kappa_mhz = 0.0;
    int fock_dim = 2;

    double epsilon0_mhz = 0.0;
    std::optional<double> omega_d_mhz;

    std::vector<TlsEntry> tls;
    std::optional<CircuitSection> circuit;
    SimulationSection simulation;
    std::optional<SweepSection> sweep;
    ValidityThresholds thresholds;
    CompareSection compare;

    std::string raw_text;  // byte-exact config echo for the manifest

    SystemModel to_model() const;
    std::vector<double> time_grid() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

}  // namespace tlsim

#endif
