#include "tlsim/gates.hpp"

#include "tlsim/units.hpp"

#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace tlsim {

namespace {

constexpr double pi = 3.14159265358979323846;

IswapPlan iswap_plan_from(Complex lambda_nm, double delta_bar_n, double delta_bar_m,
                          int n, int m) {
    const double mag = std::abs(lambda_nm);
    if (mag == 0.0)
        throw error("iswap_schedule: pair coupling lambda is zero");
    const double scale = std::max({1.0, std::abs(delta_bar_n), std::abs(delta_bar_m)});
    if (std::abs(delta_bar_n - delta_bar_m) > 1e-9 * scale)
        throw requires_echo_error(
            "effective detunings differ; schedule an echo or retune delta_c");
    const double theta = std::arg(lambda_nm);
    IswapPlan plan;
    plan.n = n;
    plan.m = m;
    plan.duration = pi / (2.0 * mag);
    plan.phase_n = -(theta + pi);
    plan.phase_m = theta + pi;
    return plan;
}

void check_pair(int n, int m, int count) {
    if (n == m || n < 0 || m < 0 || n >= count || m >= count)
        throw dimension_error("invalid TLS pair");
}

Matrix rz_matrix(double angle) {
    Matrix r = Matrix::Zero(2, 2);
    r(0, 0) = std::exp(Complex(0.0, -0.5 * angle));
    r(1, 1) = std::exp(Complex(0.0, 0.5 * angle));
    return r;
}

std::vector<CVector> axis_states() {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i_unit(0.0, 1.0);
    std::vector<CVector> states;
    CVector v(2);
    v << 1, 0; states.push_back(v);
    v << 0, 1; states.push_back(v);
    v << s, s; states.push_back(v);
    v << s, -s; states.push_back(v);
    v << s, i_unit * s; states.push_back(v);
    v << s, -i_unit * s; states.push_back(v);
    return states;
}

// Hermitian d x d -> real vector of length d^2 preserving the
// Hilbert-Schmidt inner product.
Eigen::VectorXd vectorize_hermitian(const Matrix& a) {
    const int d = static_cast<int>(a.rows());
    Eigen::VectorXd v(d * d);
    int idx = 0;
    for (int i = 0; i < d; ++i) v(idx++) = a(i, i).real();
    const double s = std::sqrt(2.0);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            v(idx++) = s * a(i, j).real();
            v(idx++) = s * a(i, j).imag();
        }
    return v;
}

Matrix unvectorize_hermitian(const Eigen::VectorXd& v, int d) {
    Matrix a = Matrix::Zero(d, d);
    int idx = 0;
    for (int i = 0; i < d; ++i) a(i, i) = v(idx++);
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const double re = v(idx++) * s;
            const double im = v(idx++) * s;
            a(i, j) = Complex(re, im);
            a(j, i) = Complex(re, -im);
        }
    return a;
}

}  // namespace

IswapPlan iswap_schedule(const EffectiveDispersive& params, int n, int m) {
    check_pair(n, m, params.tls_count());
    return iswap_plan_from(Complex(params.lambda(n, m), 0.0),
                           params.delta_bar[n], params.delta_bar[m], n, m);
}

IswapPlan iswap_schedule(const EffectiveBadCavity& params, int n, int m) {
    check_pair(n, m, params.tls_count());
    return iswap_plan_from(params.lambda(n, m), params.delta_bar[n], params.delta_bar[m], n, m);
}

RotationPlan single_qubit_rotation(const SystemModel& model, const EffectiveDispersive& params,
                                   int n, Axis axis, double angle) {
    if (n < 0 || n >= params.tls_count()) throw dimension_error("TLS index out of range");
    const double rate = (axis == Axis::x) ? params.omega_x[n] : params.delta_bar[n];
    if (rate == 0.0)
        throw unreachable_rotation_error("rotation rate is zero for the requested axis");
    double duration = angle / rate;
    if (angle != 0.0 && duration < 0.0) duration += two_pi / std::abs(rate);
    return RotationPlan{model, duration};
}

double gate_fidelity_unitary(const OperatorMatrix& actual, const OperatorMatrix& target) {
    if (actual.dim() != target.dim())
        throw dimension_error("gate fidelity: dimension mismatch");
    const int d = actual.dim();
    const Matrix id = Matrix::Identity(d, d);
    if ((actual.entries().adjoint() * actual.entries() - id).cwiseAbs().maxCoeff() > 1e-8 ||
        (target.entries().adjoint() * target.entries() - id).cwiseAbs().maxCoeff() > 1e-8)
        throw error("gate fidelity requires unitary inputs");
    return std::abs((target.entries().adjoint() * actual.entries()).trace()) / double(d);
}

double gate_fidelity_open(const std::vector<std::pair<OperatorMatrix, double>>& segments,
                          const std::vector<LindbladTerm>& terms,
                          const OperatorMatrix& target, double dt_max) {
    if (segments.empty()) throw error("gate_fidelity_open: no segments");
    const int d = target.dim();
    int n_qubits = 0;
    for (int probe = d; probe > 1; probe >>= 1) ++n_qubits;
    if ((1 << n_qubits) != d)
        throw dimension_error("gate_fidelity_open expects a qubit register");

    std::vector<Liouvillian> liouvs;
    liouvs.reserve(segments.size());
    for (const auto& [h, dur] : segments) {
        if (h.dim() != d) throw dimension_error("segment dimension mismatch");
        if (dur < 0.0) throw error("segment duration must be nonnegative");
        liouvs.emplace_back(h, terms);
    }

    const auto basis6 = axis_states();
    long n_inputs = 1;
    for (int q = 0; q < n_qubits; ++q) n_inputs *= 6;

    double total = 0.0;
    for (long idx = 0; idx < n_inputs; ++idx) {
        CVector psi = CVector::Ones(1);
        long rem = idx;
        for (int q = 0; q < n_qubits; ++q) {
            const CVector& s = basis6[rem % 6];
            rem /= 6;
            CVector next(psi.size() * 2);
            for (Eigen::Index k = 0; k < psi.size(); ++k) {
                next(2 * k) = psi(k) * s(0);
                next(2 * k + 1) = psi(k) * s(1);
            }
            psi = next;
        }
        Matrix rho = psi * psi.adjoint();
        for (size_t seg = 0; seg < segments.size(); ++seg)
            rho = propagate_raw(liouvs[seg], std::move(rho), segments[seg].second,
                                Method::rk4, dt_max);
        const CVector psi_t = target.entries() * psi;
        total += (psi_t.adjoint() * rho * psi_t)(0, 0).real();
    }
    return total / double(n_inputs);
}

LieClosureResult universality_closure(const std::vector<OperatorMatrix>& generators,
                                      int max_generations) {
    if (generators.empty()) throw error("universality_closure: no generators");
    const int d = generators.front().dim();
    for (const auto& g : generators) {
        if (g.dim() != d) throw dimension_error("generators must share a dimension");
        if (!g.is_hermitian(1e-10)) throw error("generators must be Hermitian");
    }

    // Traceless projections of the generators, dropping numerically-zero ones.
    std::vector<Matrix> basis;
    for (const auto& g : generators) {
        Matrix a = g.entries();
        a -= (a.trace() / double(d)) * Matrix::Identity(d, d);
        if (a.cwiseAbs().maxCoeff() > 0.0) basis.push_back(std::move(a));
    }
    if (basis.empty()) return {0, 0, {}};

    auto span_rank = [&](const std::vector<Matrix>& mats,
                         std::vector<Matrix>& ortho, std::vector<double>& norms) {
        Eigen::MatrixXd rows(static_cast<int>(mats.size()), d * d);
        for (size_t k = 0; k < mats.size(); ++k)
            rows.row(static_cast<int>(k)) = vectorize_hermitian(mats[k]).transpose();
        Eigen::BDCSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        const double cutoff = 1e-8 * sv(0);
        ortho.clear();
        norms.clear();
        for (Eigen::Index k = 0; k < sv.size(); ++k) {
            if (sv(k) > cutoff) {
                ortho.push_back(unvectorize_hermitian(svd.matrixV().col(k), d));
                norms.push_back(sv(k));
            }
        }
        return static_cast<int>(ortho.size());
    };

    std::vector<double> norms;
    std::vector<Matrix> ortho;
    int rank = span_rank(basis, ortho, norms);
    basis = ortho;

    const Complex i_unit(0.0, 1.0);
    int generation = 0;
    while (generation < max_generations && rank < d * d - 1) {
        ++generation;
        std::vector<Matrix> candidates = basis;
        for (size_t a = 0; a < basis.size(); ++a)
            for (size_t b = a + 1; b < basis.size(); ++b)
                candidates.push_back(i_unit * commutator(basis[a], basis[b]));
        const int new_rank = span_rank(candidates, ortho, norms);
        if (new_rank == rank) break;
        rank = new_rank;
        basis = ortho;
    }
    return {rank, generation, norms};
}

std::pair<OperatorMatrix, OperatorMatrix> closure_generators(const EffectiveDispersive& params) {
    const int n_tls = params.tls_count();
    const SpaceTag tag(static_cast<size_t>(n_tls), 2);
    const int d = space_tag_dim(tag);
    Matrix drift = Matrix::Zero(d, d);
    Matrix drive = Matrix::Zero(d, d);
    for (int n = 0; n < n_tls; ++n) {
        drift += 0.5 * params.delta_bar[n] * embed(pauli(Pauli::z), n, tag).entries();
        drive += 0.5 * params.omega_x[n] * embed(pauli(Pauli::x), n, tag).entries();
    }
    for (int n = 0; n < n_tls; ++n)
        for (int m = n + 1; m < n_tls; ++m) {
            const Matrix flip = embed(pauli(Pauli::plus), n, tag).entries() *
                                embed(pauli(Pauli::minus), m, tag).entries();
            drift += params.lambda(n, m) * (flip + flip.adjoint().eval());
        }
    return {OperatorMatrix(std::move(drift), tag), OperatorMatrix(std::move(drive), tag)};
}

std::pair<OperatorMatrix, OperatorMatrix> closure_generators(const EffectiveBadCavity& params) {
    const int n_tls = params.tls_count();
    const SpaceTag tag(static_cast<size_t>(n_tls), 2);
    const int d = space_tag_dim(tag);
    Matrix drift = Matrix::Zero(d, d);
    Matrix drive = Matrix::Zero(d, d);
    for (int n = 0; n < n_tls; ++n) {
        drift += 0.5 * params.delta_bar[n] * embed(pauli(Pauli::z), n, tag).entries();
        const Matrix sp = embed(pauli(Pauli::plus), n, tag).entries();
        drive += params.omega[n] * sp + std::conj(params.omega[n]) * sp.adjoint().eval();
    }
    for (int n = 0; n < n_tls; ++n)
        for (int m = n + 1; m < n_tls; ++m) {
            const Matrix flip = embed(pauli(Pauli::plus), n, tag).entries() *
                                embed(pauli(Pauli::minus), m, tag).entries();
            drift += params.lambda(n, m) * flip +
                     std::conj(params.lambda(n, m)) * flip.adjoint().eval();
        }
    return {OperatorMatrix(std::move(drift), tag), OperatorMatrix(std::move(drive), tag)};
}

namespace {

template <typename Params, typename RateGetter, typename LambdaGetter>
std::vector<PairBudget> budget_impl(const Params& params, RateGetter rate, LambdaGetter lam) {
    double rate_max = 0.0;
    for (int n = 0; n < params.tls_count(); ++n) rate_max = std::max(rate_max, rate(n));
    std::vector<PairBudget> out;
    for (int n = 0; n < params.tls_count(); ++n)
        for (int m = n + 1; m < params.tls_count(); ++m) {
            const double mag = std::abs(lam(n, m));
            const double ops = (rate_max > 0.0) ? mag / rate_max
                                                : std::numeric_limits<double>::infinity();
            out.push_back({n, m, ops});
        }
    return out;
}

}  // namespace

std::vector<PairBudget> decoherence_budget(const EffectiveDispersive& params) {
    return budget_impl(params, [&](int n) { return params.induced_decay[n]; },
                       [&](int n, int m) { return params.lambda(n, m); });
}

std::vector<PairBudget> decoherence_budget(const EffectiveBadCavity& params) {
    return budget_impl(params, [&](int n) { return params.gamma2[n]; },
                       [&](int n, int m) { return std::abs(params.lambda(n, m)); });
}

OperatorMatrix iswap_matrix(int n_qubits, int n, int m) {
    check_pair(n, m, n_qubits);
    const SpaceTag tag(static_cast<size_t>(n_qubits), 2);
    const int d = 1 << n_qubits;
    const Complex i_unit(0.0, 1.0);
    Matrix u = Matrix::Zero(d, d);
    const int bit_n = n_qubits - 1 - n;
    const int bit_m = n_qubits - 1 - m;
    for (int idx = 0; idx < d; ++idx) {
        const int bn = (idx >> bit_n) & 1;
        const int bm = (idx >> bit_m) & 1;
        if (bn == bm) {
            u(idx, idx) = 1.0;
        } else {
            const int swapped = (idx ^ (1 << bit_n)) ^ (1 << bit_m);
            u(swapped, idx) = i_unit;
        }
    }
    return {std::move(u), tag};
}

OperatorMatrix rz_on(int n_qubits, int n, double angle) {
    const SpaceTag tag(static_cast<size_t>(n_qubits), 2);
    return embed(OperatorMatrix(rz_matrix(angle), {2}), n, tag);
}

}  // namespace tlsim
