#include "tlsim/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace tlsim {

namespace {

bool all_finite(const Matrix& m) {
    return m.allFinite();
}

double max_abs(const Matrix& m) {
    return m.cwiseAbs().maxCoeff();
}

}  // namespace

int space_tag_dim(const SpaceTag& tag) {
    if (tag.empty()) throw dimension_error("space tag must not be empty");
    int d = 1;
    for (int s : tag) {
        if (s < 2) throw dimension_error("subsystem dimension must be >= 2");
        d *= s;
    }
    return d;
}

OperatorMatrix::OperatorMatrix(Matrix entries, SpaceTag tag)
    : entries_(std::move(entries)), tag_(std::move(tag)) {
    if (entries_.rows() != entries_.cols())
        throw dimension_error("operator matrix must be square");
    if (space_tag_dim(tag_) != entries_.rows())
        throw dimension_error("space tag does not match matrix dimension");
    if (!all_finite(entries_))
        throw error("operator matrix has non-finite entries");
}

bool OperatorMatrix::is_hermitian(double tol) const {
    return max_abs(entries_ - entries_.adjoint()) <= tol * (1.0 + max_abs(entries_));
}

DensityMatrix::DensityMatrix(Matrix entries, SpaceTag tag,
                             double positivity_tol, double hermiticity_tol,
                             double trace_tol)
    : entries_(std::move(entries)), tag_(std::move(tag)) {
    if (entries_.rows() != entries_.cols())
        throw dimension_error("density matrix must be square");
    if (space_tag_dim(tag_) != entries_.rows())
        throw dimension_error("space tag does not match matrix dimension");
    if (!all_finite(entries_))
        throw error("density matrix has non-finite entries");
    if (max_abs(entries_ - entries_.adjoint()) > hermiticity_tol)
        throw error("density matrix not Hermitian within tolerance");
    const Complex tr = entries_.trace();
    if (std::abs(tr - 1.0) > trace_tol)
        throw error("density matrix trace deviates from one");
    if (min_eigenvalue() < -positivity_tol)
        throw error("density matrix has a negative eigenvalue beyond tolerance");
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (entries_ + entries_.adjoint()),
                                             Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

PureState::PureState(CVector amplitudes, SpaceTag tag)
    : amplitudes_(std::move(amplitudes)), tag_(std::move(tag)) {
    if (space_tag_dim(tag_) != amplitudes_.size())
        throw dimension_error("space tag does not match state dimension");
    if (std::abs(amplitudes_.norm() - 1.0) > 1e-12)
        throw error("pure state is not normalized");
}

DensityMatrix PureState::to_density() const {
    Matrix rho = amplitudes_ * amplitudes_.adjoint();
    return DensityMatrix(std::move(rho), tag_);
}

OperatorMatrix annihilation(int fock_dim) {
    if (fock_dim < 2) throw dimension_error("annihilation requires fock_dim >= 2");
    Matrix a = Matrix::Zero(fock_dim, fock_dim);
    for (int n = 1; n < fock_dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return {std::move(a), {fock_dim}};
}

OperatorMatrix creation(int fock_dim) {
    return annihilation(fock_dim).adjoint();
}

OperatorMatrix number_operator(int fock_dim) {
    if (fock_dim < 2) throw dimension_error("number_operator requires fock_dim >= 2");
    Matrix n = Matrix::Zero(fock_dim, fock_dim);
    for (int k = 0; k < fock_dim; ++k) n(k, k) = double(k);
    return {std::move(n), {fock_dim}};
}

OperatorMatrix pauli(Pauli which) {
    Matrix m = Matrix::Zero(2, 2);
    const Complex i(0.0, 1.0);
    switch (which) {
        case Pauli::x:     m << 0, 1, 1, 0; break;
        case Pauli::y:     m << 0, -i, i, 0; break;
        case Pauli::z:     m << 1, 0, 0, -1; break;
        case Pauli::plus:  m << 0, 1, 0, 0; break;
        case Pauli::minus: m << 0, 0, 1, 0; break;
    }
    return {std::move(m), {2}};
}

OperatorMatrix identity_on(SpaceTag tag) {
    const int d = space_tag_dim(tag);
    return {Matrix::Identity(d, d), std::move(tag)};
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

OperatorMatrix embed(const OperatorMatrix& op, int slot, const SpaceTag& tag) {
    if (slot < 0 || slot >= static_cast<int>(tag.size()))
        throw dimension_error("embed slot out of range");
    if (op.dim() != tag[slot])
        throw dimension_error("operator dimension does not match target slot");
    int before = 1, after = 1;
    for (int k = 0; k < slot; ++k) before *= tag[k];
    for (int k = slot + 1; k < static_cast<int>(tag.size()); ++k) after *= tag[k];
    Matrix m = kron(Matrix::Identity(before, before),
                    kron(op.entries(), Matrix::Identity(after, after)));
    return {std::move(m), tag};
}

Complex expectation_raw(const Matrix& state, const Matrix& op) {
    if (state.rows() != op.rows())
        throw dimension_error("expectation: dimension mismatch");
    // Tr(rho * op) without forming the product.
    return (state.cwiseProduct(op.transpose())).sum();
}

Complex expectation(const DensityMatrix& state, const OperatorMatrix& op) {
    return expectation_raw(state.entries(), op.entries());
}

Matrix partial_trace_raw(const Matrix& state, const SpaceTag& tag, const std::vector<int>& keep) {
    if (keep.empty()) throw dimension_error("partial_trace: keep set must be nonempty");
    const int n_slots = static_cast<int>(tag.size());
    std::vector<int> kept = keep;
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
        throw dimension_error("partial_trace: duplicate slot in keep set");
    for (int k : kept)
        if (k < 0 || k >= n_slots) throw dimension_error("partial_trace: slot out of range");
    if (space_tag_dim(tag) != state.rows())
        throw dimension_error("partial_trace: state does not match space tag");

    std::vector<int> traced;
    for (int k = 0; k < n_slots; ++k)
        if (!std::binary_search(kept.begin(), kept.end(), k)) traced.push_back(k);

    // Strides of each slot in the full row-major index.
    std::vector<long> stride(n_slots, 1);
    for (int k = n_slots - 2; k >= 0; --k) stride[k] = stride[k + 1] * tag[k + 1];

    long dim_keep = 1, dim_tr = 1;
    for (int k : kept) dim_keep *= tag[k];
    for (int k : traced) dim_tr *= tag[k];

    auto full_index = [&](long part, const std::vector<int>& slots, long base) {
        long idx = base;
        for (int s = static_cast<int>(slots.size()) - 1; s >= 0; --s) {
            const int slot = slots[s];
            idx += (part % tag[slot]) * stride[slot];
            part /= tag[slot];
        }
        return idx;
    };

    Matrix out = Matrix::Zero(dim_keep, dim_keep);
    for (long i = 0; i < dim_keep; ++i) {
        const long row_base = full_index(i, kept, 0);
        for (long j = 0; j < dim_keep; ++j) {
            const long col_base = full_index(j, kept, 0);
            Complex acc(0.0, 0.0);
            for (long t = 0; t < dim_tr; ++t) {
                const long off = traced.empty() ? 0 : full_index(t, traced, 0);
                acc += state(row_base + off, col_base + off);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& state, const std::vector<int>& keep) {
    std::vector<int> kept = keep;
    std::sort(kept.begin(), kept.end());
    Matrix out = partial_trace_raw(state.entries(), state.space_tag(), kept);
    SpaceTag new_tag;
    for (int k : kept) new_tag.push_back(state.space_tag()[k]);
    return DensityMatrix(std::move(out), std::move(new_tag));
}

Matrix matrix_exp_raw(const Matrix& m, Complex scale) {
    const double scale_mag = std::abs(scale);
    if (scale_mag == 0.0 || m.cwiseAbs().maxCoeff() == 0.0)
        return Matrix::Identity(m.rows(), m.cols());

    const double mnorm = m.cwiseAbs().maxCoeff();
    Matrix result;
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * (1.0 + mnorm)) {
        // Hermitian input: exact exponential through the spectral decomposition.
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
        CVector phases(m.rows());
        for (Eigen::Index k = 0; k < m.rows(); ++k)
            phases(k) = std::exp(scale * es.eigenvalues()(k));
        result = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    } else {
        Matrix scaled = scale * m;
        result = scaled.exp();
    }
    if (!result.allFinite())
        throw error("matrix_exp overflowed to non-finite values");
    return result;
}

OperatorMatrix matrix_exp(const OperatorMatrix& op, Complex scale) {
    return {matrix_exp_raw(op.entries(), scale), op.space_tag()};
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    return a * b - b * a;
}

double trace_distance_raw(const Matrix& a, const Matrix& b) {
    Matrix diff = a - b;
    diff = 0.5 * (diff + diff.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Matrix> es(diff, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw dimension_error("trace_distance: dimension mismatch");
    return trace_distance_raw(a.entries(), b.entries());
}

}  // namespace tlsim
