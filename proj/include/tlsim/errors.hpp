#ifndef TLSIM_ERRORS_HPP
#define TLSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tlsim {

// Base for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid or mismatched Hilbert-space dimensions.
struct dimension_error : error {
    using error::error;
};

// Circuit has no stable expansion point (hysteretic regime).
struct degenerate_circuit_error : error {
    using error::error;
};

// A TLS sits exactly on resonance where a dispersive formula diverges.
struct resonant_input_error : error {
    using error::error;
};

// Requested effective model is undefined for these parameters (e.g. kappa = 0).
struct invalid_regime_error : error {
    using error::error;
};

// Time integration failed (trace drift, step-size underflow).
struct integrator_error : error {
    using error::error;
};

// Liouvillian kernel is not one-dimensional, or no kernel found.
struct steady_state_error : error {
    using error::error;
};

// iSWAP scheduling with unequal effective detunings.
struct requires_echo_error : error {
    using error::error;
};

// Rotation rate is zero; the requested axis cannot be driven.
struct unreachable_rotation_error : error {
    using error::error;
};

// Quadrature readout undefined (kappa and delta_c both zero).
struct undefined_signal_error : error {
    using error::error;
};

// Configuration file is missing, malformed, or inconsistent.
struct config_error : error {
    using error::error;
};

}  // namespace tlsim

#endif
