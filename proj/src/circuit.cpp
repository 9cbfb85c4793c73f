#include "tlsim/circuit.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace tlsim {

namespace {

double potential_slope(const CircuitParams& c, double phi) {
    return c.e_l * (phi + c.phi_ex) + c.e_j * std::sin(phi);
}

double potential_curvature(const CircuitParams& c, double phi) {
    return c.e_l + c.e_j * std::cos(phi);
}

// Safeguarded Newton inside a sign-change bracket [lo, hi]; falls back to
// bisection whenever a Newton step leaves the bracket or stalls.
double refine_root(const CircuitParams& c, double lo, double hi) {
    double flo = potential_slope(c, lo);
    double phi = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = potential_slope(c, phi);
        const double fp = potential_curvature(c, phi);
        double next = phi - (fp != 0.0 ? f / fp : 0.0);
        if (!(next > lo && next < hi) || fp == 0.0) next = 0.5 * (lo + hi);
        if ((f > 0) == (flo > 0)) {
            lo = phi;
            flo = f;
        } else {
            hi = phi;
        }
        if (std::abs(next - phi) <= 1e-12 * (1.0 + std::abs(next))) return next;
        phi = next;
    }
    return phi;
}

}  // namespace

CircuitParams::CircuitParams(double ej, double el, double ec, double phiex)
    : e_j(ej), e_l(el), e_c(ec), phi_ex(phiex) {
    if (!(e_j > 0.0) || !(e_l > 0.0) || !(e_c > 0.0))
        throw degenerate_circuit_error("circuit energies must be positive");
}

TlsPolarization::TlsPolarization(double jx) : j_x(jx) {
    if (std::abs(j_x) > 1.0)
        throw error("polarization component must satisfy |j_x| <= 1");
}

double solve_phase_shift(const CircuitParams& c) {
    // All stationary points lie where |phi + phi_ex| <= E_J / E_L.
    const double span = c.e_j / c.e_l + 1.0;
    const double lo = -c.phi_ex - span;
    const double hi = -c.phi_ex + span;
    const int n_scan = 4096;

    double best = std::numeric_limits<double>::quiet_NaN();
    double best_dist = std::numeric_limits<double>::infinity();

    double x_prev = lo;
    double f_prev = potential_slope(c, x_prev);
    for (int k = 1; k <= n_scan; ++k) {
        const double x = lo + (hi - lo) * double(k) / n_scan;
        const double f = potential_slope(c, x);
        if (f_prev == 0.0 || (f_prev < 0) != (f < 0)) {
            const double root = (f_prev == 0.0) ? x_prev : refine_root(c, x_prev, x);
            if (potential_curvature(c, root) > 0.0) {
                const double dist = std::abs(root + c.phi_ex);
                if (dist < best_dist) {
                    best_dist = dist;
                    best = root;
                }
            }
        }
        x_prev = x;
        f_prev = f;
    }

    if (!std::isfinite(best))
        throw degenerate_circuit_error("no stable potential minimum found (hysteretic regime)");
    return best;
}

double resonator_frequency(const CircuitParams& c) {
    const double phi_s = solve_phase_shift(c);
    const double curvature = potential_curvature(c, phi_s);
    if (!(curvature > 0.0))
        throw degenerate_circuit_error("expansion point is not a stable minimum");
    return std::sqrt(8.0 * c.e_c * curvature);
}

double coupling_constant(const CircuitParams& c, const TlsPolarization& pol) {
    const double phi_s = solve_phase_shift(c);
    const double omega_c = resonator_frequency(c);
    const double phi_zpf = std::sqrt(4.0 * c.e_c / omega_c);
    return c.e_j * pol.j_x * std::sin(phi_s) * phi_zpf;
}

}  // namespace tlsim
