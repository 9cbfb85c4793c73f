#ifndef TLSIM_COMMANDS_HPP
#define TLSIM_COMMANDS_HPP

#include <string>

#include <json.hpp>

#include "tlsim/config.hpp"

namespace tlsim {

struct CommandResult {
    std::string csv;
    nlohmann::json manifest;
};

// Fixed CSV float format: scientific, nine significant digits, so identical
// configs produce byte-identical output regardless of thread count.
std::string format_sci(double v);

// |lambda| vs delta_c for the dispersive and bad-cavity couplings; dispersive
// cells are blank (and flagged) where |Delta_nc| < 3 g_n.
CommandResult cmd_sweep_coupling(const RunConfig& config, int threads = 1);

// Full-model propagation against the selected effective model: per-TLS Bloch
// components, reduced-state trace distance, and the adiabatic <a> prediction.
CommandResult cmd_compare_effective(const RunConfig& config, int threads = 1);

// iSWAP duration, unitary and open-system fidelity, and operations budget
// for the dispersive and bad-cavity parameters of the configured model.
CommandResult cmd_gate(const RunConfig& config);

// Quadrature weights, measurement phases, dispersive pulls, and (for N = 1)
// the photon-number correlation identity residual.
CommandResult cmd_readout(const RunConfig& config);

// Lie-closure dimension of the drift/drive generator pair per regime.
CommandResult cmd_universality(const RunConfig& config);

}  // namespace tlsim

#endif
