#ifndef TLSIM_GATES_HPP
#define TLSIM_GATES_HPP

#include <utility>
#include <vector>

#include "tlsim/effective.hpp"
#include "tlsim/solver.hpp"

namespace tlsim {

// iSWAP synthesis from the exchange interaction: after t* = pi/(2|lambda|)
// under H_int alone, exp(-i H_int t*) = Rz_n(phase_n) Rz_m(phase_m) * iSWAP
// exactly, with Rz(theta) = exp(-i theta sz/2).
struct IswapPlan {
    int n, m;
    double duration;  // us
    double phase_n;   // z-phase correction on TLS n, radians
    double phase_m;
};

IswapPlan iswap_schedule(const EffectiveDispersive& params, int n, int m);
IswapPlan iswap_schedule(const EffectiveBadCavity& params, int n, int m);

enum class Axis { x, z };

struct RotationPlan {
    SystemModel segment;
    double duration;  // us
};

// Realizes a rotation of `angle` about x (rate omega_x_n) or z (rate
// delta_bar_n) by holding the given model segment for angle/rate. Negative
// results wrap by one full period.
RotationPlan single_qubit_rotation(const SystemModel& model, const EffectiveDispersive& params,
                                   int n, Axis axis, double angle);

// Phase-insensitive overlap |Tr(target^dag actual)| / d for unitaries.
double gate_fidelity_unitary(const OperatorMatrix& actual, const OperatorMatrix& target);

// Mean state fidelity <psi_t|rho_out|psi_t> over the 6^N product input set
// {|0>, |1>, |+x>, |-x>, |+y>, |-y>}^N, propagating each input through the
// piecewise-constant segments under the given Lindblad terms. dt_max = 0
// derives the step from the generator scale.
double gate_fidelity_open(const std::vector<std::pair<OperatorMatrix, double>>& segments,
                          const std::vector<LindbladTerm>& terms,
                          const OperatorMatrix& target, double dt_max = 0.0);

struct LieClosureResult {
    int dimension;
    int generations;
    std::vector<double> basis_norms;  // singular values of the final span
};

// Real Lie-algebra closure of traceless Hermitian generators under i[A, B],
// with Hilbert-Schmidt orthonormalization; singular values above
// 1e-8 * sigma_max count toward the dimension.
LieClosureResult universality_closure(const std::vector<OperatorMatrix>& generators,
                                      int max_generations = 16);

// Drift (delta_bar + interaction) and drive generator pair used for the
// universality check.
std::pair<OperatorMatrix, OperatorMatrix> closure_generators(const EffectiveDispersive& params);
std::pair<OperatorMatrix, OperatorMatrix> closure_generators(const EffectiveBadCavity& params);

struct PairBudget {
    int n, m;
    double n_ops;  // |lambda_nm| / max induced rate; infinity when undamped
};

std::vector<PairBudget> decoherence_budget(const EffectiveDispersive& params);
std::vector<PairBudget> decoherence_budget(const EffectiveBadCavity& params);

// The ideal iSWAP on the (n, m) pair of an N-qubit register.
OperatorMatrix iswap_matrix(int n_qubits, int n, int m);

// Rz(angle) = exp(-i angle sz/2) on qubit n of an N-qubit register.
OperatorMatrix rz_on(int n_qubits, int n, double angle);

}  // namespace tlsim

#endif
