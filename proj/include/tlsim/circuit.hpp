#ifndef TLSIM_CIRCUIT_HPP
#define TLSIM_CIRCUIT_HPP

#include "tlsim/errors.hpp"

namespace tlsim {

// RF-SQUID circuit in reduced phase units: the Josephson, inductive and
// charging energies are angular frequencies (rad/us) and the external flux
// enters as the dimensionless phase phi_ex = 2e*Phi_ex/hbar.
struct CircuitParams {
    double e_j;     // Josephson energy
    double e_l;     // inductive energy (hbar/2e)^2 / L
    double e_c;     // charging energy e^2 / 2C0
    double phi_ex;  // external phase, radians

    CircuitParams(double ej, double el, double ec, double phiex);
};

// Critical-current coupling polarization, restricted to the x component.
struct TlsPolarization {
    double j_x;

    explicit TlsPolarization(double jx);
};

// Stationary phase of U(phi) = -E_J cos(phi) + E_L (phi + phi_ex)^2 / 2,
// i.e. root of E_L (phi + phi_ex) + E_J sin(phi) = 0, selected as the local
// minimum with the smallest |phi + phi_ex|. Newton refinement to 1e-12 with
// bisection fallback. Throws degenerate_circuit_error when no stable minimum
// exists.
double solve_phase_shift(const CircuitParams& circuit);

// omega_c = sqrt(8 E_C (E_L + E_J cos(phi_s))).
double resonator_frequency(const CircuitParams& circuit);

// g = E_J j_x sin(phi_s) * phi_zpf with phi_zpf = sqrt(4 E_C / omega_c).
double coupling_constant(const CircuitParams& circuit, const TlsPolarization& pol);

}  // namespace tlsim

#endif
