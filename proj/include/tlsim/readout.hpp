#ifndef TLSIM_READOUT_HPP
#define TLSIM_READOUT_HPP

#include <vector>

#include "tlsim/effective.hpp"
#include "tlsim/solver.hpp"

namespace tlsim {

// Stationary quadrature of a strongly damped resonator:
//   <a + a^dag> = offset + sum_n (w_x_n <s_nx> + w_y_n <s_ny>)
// with offset = -2 eps0 Delta_c / (kappa^2 + Delta_c^2),
//      w_x_n  = -g_n Delta_c / (kappa^2 + Delta_c^2),
//      w_y_n  = -g_n kappa  / (kappa^2 + Delta_c^2).
struct QuadratureSignal {
    double offset;
    std::vector<double> w_x;
    std::vector<double> w_y;
};

QuadratureSignal quadrature_weights(const SystemModel& model);

double quadrature_signal(const SystemModel& model,
                         const std::vector<std::pair<double, double>>& spin_xy);

// phi = arg(-i g1 / (kappa + i Delta_c)), principal value in (-pi, pi].
// Measuring the quadrature a e^{-i phi} + a^dag e^{i phi} then picks out
// sigma_1x with a positive real gain.
double measurement_phase(double g1, double kappa, double delta_c);

struct CorrelationRecord {
    std::vector<double> times;
    std::vector<double> C;       // <s_1+ s_1-> (excited population)
    std::vector<double> M;       // <s_1+ + s_1->
    std::vector<double> photon;  // <a^dag a>
    std::vector<double> predicted_photon;  // (g^2 C + g eps0 M + eps0^2) / (kappa^2 + Delta_c^2)
    double residual;             // max |photon - predicted| after the transient
    double transient;            // scoring starts at 5/kappa
    bool kappa_warning;          // raised when kappa < 3 g1
};

// Propagates the full model and scores the photon-number identity against
// the TLS correlators C(t), M(t).
CorrelationRecord photon_correlation_check(const SystemModel& model, const DensityMatrix& rho0,
                                           const std::vector<double>& t_grid);

struct RegressionFit {
    double rate;        // coherence decay estimate, compare with gamma2_bar
    double frequency;   // oscillation estimate, compare with delta_bar_1
    double fit_residual;
    bool quality_warning;  // fit residual above 10%
    std::vector<Complex> correlation;
};

// Fits <s_1+(tau) s_1-(0)> computed by the quantum regression theorem to a
// single complex exponential over the window where the amplitude stays above
// 1e-3 of its initial value.
RegressionFit regression_extract(const Liouvillian& liouv_eff, const DensityMatrix& rho_ref,
                                 const std::vector<double>& taus);

struct ReadoutShift {
    double pull;         // g_n^2 / Delta_nc
    double delta_plus;   // Delta_c + pull (TLS excited)
    double delta_minus;  // Delta_c - pull (TLS ground)
};

// TLS-state-dependent resonator pull from the dispersive Stark term.
ReadoutShift dispersive_readout_shift(const SystemModel& model, int n);

}  // namespace tlsim

#endif
