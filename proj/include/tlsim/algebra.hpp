#ifndef TLSIM_ALGEBRA_HPP
#define TLSIM_ALGEBRA_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "tlsim/errors.hpp"

namespace tlsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Ordered subsystem dimensions; slot 0 is the resonator, slots 1..N the TLS's
// in roster order. Product of entries equals the Hilbert-space dimension.
using SpaceTag = std::vector<int>;

int space_tag_dim(const SpaceTag& tag);

// Dense operator on a tensor-product Hilbert space. The constructor checks
// that the matrix is square, matches the space tag, and has finite entries.
class OperatorMatrix {
public:
    OperatorMatrix(Matrix entries, SpaceTag tag);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix& entries() const { return entries_; }
    const SpaceTag& space_tag() const { return tag_; }

    OperatorMatrix adjoint() const { return {entries_.adjoint(), tag_}; }
    bool is_hermitian(double tol = 1e-12) const;

private:
    Matrix entries_;
    SpaceTag tag_;
};

// State of the same shape with the density-matrix invariants enforced:
// Hermitian to hermiticity_tol, trace within trace_tol of one, and minimum
// eigenvalue >= -positivity_tol. Defaults are the construction-time
// invariants; solvers pass looser bounds (1e-7 / 1e-6) for sampled
// trajectory points.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix entries, SpaceTag tag,
                           double positivity_tol = 1e-9,
                           double hermiticity_tol = 1e-10,
                           double trace_tol = 1e-9);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Matrix& entries() const { return entries_; }
    const SpaceTag& space_tag() const { return tag_; }
    double min_eigenvalue() const;

private:
    Matrix entries_;
    SpaceTag tag_;
};

// Normalized pure state; norm must be within 1e-12 of one.
class PureState {
public:
    PureState(CVector amplitudes, SpaceTag tag);

    int dim() const { return static_cast<int>(amplitudes_.size()); }
    const CVector& amplitudes() const { return amplitudes_; }
    const SpaceTag& space_tag() const { return tag_; }
    DensityMatrix to_density() const;

private:
    CVector amplitudes_;
    SpaceTag tag_;
};

enum class Pauli { x, y, z, plus, minus };

// Bosonic annihilation operator on the truncated Fock space:
// a[n-1, n] = sqrt(n). Throws dimension_error for fock_dim < 2.
OperatorMatrix annihilation(int fock_dim);
OperatorMatrix creation(int fock_dim);
OperatorMatrix number_operator(int fock_dim);

OperatorMatrix pauli(Pauli which);
OperatorMatrix identity_on(SpaceTag tag);

// Places a single-subsystem operator into the given slot of the product
// space, identity everywhere else.
OperatorMatrix embed(const OperatorMatrix& op, int slot, const SpaceTag& tag);

Complex expectation(const DensityMatrix& state, const OperatorMatrix& op);
Complex expectation_raw(const Matrix& state, const Matrix& op);

// Reduced density matrix on the kept slots (ascending order preserved).
DensityMatrix partial_trace(const DensityMatrix& state, const std::vector<int>& keep);
Matrix partial_trace_raw(const Matrix& state, const SpaceTag& tag, const std::vector<int>& keep);

// exp(scale * op). Hermitian inputs go through an eigendecomposition; anything
// else falls back to scaling-and-squaring Pade.
OperatorMatrix matrix_exp(const OperatorMatrix& op, Complex scale);
Matrix matrix_exp_raw(const Matrix& m, Complex scale);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix commutator(const Matrix& a, const Matrix& b);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double trace_distance_raw(const Matrix& a, const Matrix& b);

}  // namespace tlsim

#endif
