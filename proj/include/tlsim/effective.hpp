#ifndef TLSIM_EFFECTIVE_HPP
#define TLSIM_EFFECTIVE_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tlsim/algebra.hpp"
#include "tlsim/model.hpp"

namespace tlsim {

// Effective TLS-only model in the dispersive (high-Q) regime. Per-TLS
//   delta_bar_n = Delta_n + (g_n^2/Delta_nc)(1 - 2 eps0/Delta_c)
//   omega_x_n   = 2 eps0 g_n / Delta_nc
//   induced_decay_n = (g_n/Delta_nc)^2 kappa
// and the real symmetric exchange coupling
//   lambda_nm = g_n g_m (Delta_nc + Delta_mc) / (2 Delta_nc Delta_mc).
struct EffectiveDispersive {
    std::vector<double> delta_bar;
    std::vector<double> omega_x;
    std::vector<double> induced_decay;
    std::vector<double> delta_nc;  // Delta_n - Delta_c per TLS
    Eigen::MatrixXd lambda;        // symmetric, zero diagonal

    int tls_count() const { return static_cast<int>(delta_bar.size()); }
};

// Effective TLS-only model after adiabatic elimination of a strongly damped
// resonator. Per-TLS
//   delta_bar_n = Delta_n - Delta_c g_n^2 / (kappa^2 + Delta_c^2)
//   omega_n     = -i g_n eps0 / (kappa + i Delta_c)
//   gamma2_n    = g_n^2 kappa / (kappa^2 + Delta_c^2),  gamma1_n = 2 gamma2_n
// and the complex coupling lambda_nm = -i g_n g_m / (kappa + i Delta_c) on
// the upper triangle, with lambda_mn = conj(lambda_nm).
struct EffectiveBadCavity {
    std::vector<double> delta_bar;
    std::vector<Complex> omega;
    std::vector<double> gamma2;
    std::vector<double> gamma1;
    Eigen::MatrixXcd lambda;  // conjugate-symmetric, zero diagonal

    int tls_count() const { return static_cast<int>(delta_bar.size()); }
};

enum class Regime { dispersive, bad_cavity };

struct ValidityRatio {
    std::string name;
    double value;
    double threshold;
    bool flagged;
};

struct ValidityReport {
    Regime regime;
    std::vector<ValidityRatio> ratios;
    bool all_pass;
};

struct ValidityThresholds {
    double dispersive_ratio = 0.1;  // flags g/|Delta_nc| and kappa/|Delta_nc|
    double badcavity_ratio = 0.5;   // flags g/kappa
};

EffectiveDispersive dispersive_params(const SystemModel& model);
EffectiveBadCavity badcavity_params(const SystemModel& model);

// Frame-change unitary: displacement exp(-eps0 (a - a^dag)/Delta_c) followed
// by the TLS factors exp(-g_n (a^dag s_n- - s_n+ a)/Delta_nc) in roster order.
OperatorMatrix dispersive_unitary(const SystemModel& model);

// Effective Hamiltonians on the 2^N TLS space (slot n = TLS n).
OperatorMatrix build_effective_hamiltonian(const EffectiveDispersive& params);
OperatorMatrix build_effective_hamiltonian(const EffectiveBadCavity& params);

// One amplitude-damping channel per TLS: sigma_n- at gamma1_n (bad cavity)
// or at induced_decay_n (dispersive).
std::vector<LindbladTerm> build_effective_lindblad(const EffectiveDispersive& params);
std::vector<LindbladTerm> build_effective_lindblad(const EffectiveBadCavity& params);

// Residual TLS-resonator coupling after the dispersive transformation:
// H_x = sum_n (g_n^2/Delta_nc) s_nz [a^dag a + eps0 (Delta_c - 2 Delta_nc)/
// (2 Delta_nc Delta_c) (a + a^dag)], on the full space.
OperatorMatrix residual_coupling(const SystemModel& model);

// <a> = -(i eps0 + i sum_n g_n <s_n->) / (kappa + i Delta_c).
Complex adiabatic_cavity_amplitude(const SystemModel& model,
                                   const std::vector<Complex>& spin_minus);

ValidityReport validity_report(const SystemModel& model, Regime regime,
                               const ValidityThresholds& thresholds = {});

}  // namespace tlsim

#endif
