#ifndef TLSIM_SOLVER_HPP
#define TLSIM_SOLVER_HPP

#include <string>
#include <vector>

#include "tlsim/algebra.hpp"
#include "tlsim/model.hpp"

namespace tlsim {

// Lindblad generator L[rho] = -i[H, rho] + sum_k rate_k D(c_k)[rho] with
// D(c)[rho] = c rho c^dag - (c^dag c rho + rho c^dag c)/2. The action is
// applied matrix-free; the dense d^2 x d^2 superoperator is materialized on
// demand (column-major vec convention) and both paths agree. Dissipation-free
// generators propagate through the cached spectral decomposition of H, which
// is exact and keeps states positive to machine precision.
class Liouvillian {
public:
    Liouvillian(OperatorMatrix h, std::vector<LindbladTerm> terms);

    int dim() const { return h_.dim(); }
    const OperatorMatrix& hamiltonian() const { return h_; }
    const std::vector<LindbladTerm>& terms() const { return terms_; }

    Matrix apply(const Matrix& rho) const;
    const Matrix& superoperator() const;

    bool dissipation_free() const { return dissipation_free_; }
    // exp(-iHt) X exp(+iHt) through the cached eigendecomposition.
    Matrix unitary_conjugate(const Matrix& x, double t) const;

    // Conservative angular-frequency scale used for default step sizes.
    double frequency_scale() const;

private:
    OperatorMatrix h_;
    std::vector<LindbladTerm> terms_;
    std::vector<Matrix> scaled_cdc_;  // 0.5 * rate_k * c_k^dag c_k
    bool dissipation_free_ = true;
    mutable Matrix superop_;
    mutable bool superop_built_ = false;
    mutable Matrix h_vectors_;
    mutable Eigen::VectorXd h_values_;
    mutable bool h_diagonalized_ = false;
};

enum class Method { rk4, adaptive };

struct Observable {
    std::string name;
    OperatorMatrix op;
};

struct EvolveOptions {
    Method method = Method::rk4;
    double dt_max = 0.0;       // 0 -> derived from the segment parameters
    bool store_states = true;
    std::vector<Observable> observables;
    double trace_tol = 1e-6;        // hard integrator-failure threshold
    double positivity_tol = 1e-7;   // sampled-state eigenvalue floor
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;               // if store_states
    std::vector<std::string> observable_names;
    std::vector<std::vector<Complex>> expectations;  // [observable][time]
    double max_trace_drift = 0.0;
    double min_eigenvalue = 1.0;

    const std::vector<Complex>& series(const std::string& name) const;
};

// Integrates the master equation segment-by-segment; the state is carried
// across segment boundaries unchanged. Trace is never renormalized; drift
// beyond opts.trace_tol raises integrator_error.
Trajectory evolve(const DensityMatrix& rho0, const Schedule& schedule,
                  const std::vector<double>& t_grid, const EvolveOptions& opts = {});

// Single-segment convenience for a constant (H, terms) pair, e.g. effective
// TLS-space models.
Trajectory evolve_constant(const DensityMatrix& rho0, const OperatorMatrix& h,
                           const std::vector<LindbladTerm>& terms,
                           const std::vector<double>& t_grid, const EvolveOptions& opts = {});

// Raw fixed- or adaptive-step propagation of an arbitrary matrix under L.
// No density-matrix invariants are checked; used for regression-theorem
// states and operator-weighted intermediates.
Matrix propagate_raw(const Liouvillian& liouv, Matrix state, double duration,
                     Method method = Method::rk4, double dt_max = 0.0);

// Trace-one kernel element of L via a null-space solve on the dense
// superoperator. Throws steady_state_error when the kernel is absent or has
// dimension above one.
DensityMatrix steady_state(const Liouvillian& liouv);

OperatorMatrix unitary_propagator(const OperatorMatrix& h, double t);

// <A(tau) B(0)> = Tr(A e^{L tau}[B rho_ref]) for tau >= 0 on an increasing
// grid. rho_ref should be a steady state of L for the quantum-regression
// reading; the propagation itself accepts any reference state.
std::vector<Complex> two_time_correlation(const Liouvillian& liouv,
                                          const DensityMatrix& rho_ref,
                                          const OperatorMatrix& a,
                                          const OperatorMatrix& b,
                                          const std::vector<double>& taus,
                                          Method method = Method::rk4);

}  // namespace tlsim

#endif
