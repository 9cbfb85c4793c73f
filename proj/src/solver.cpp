#include "tlsim/solver.hpp"

#include "tlsim/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace tlsim {

namespace {

double inf_norm(const Matrix& m) {
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

// Classic RK4 with fixed step count over a span.
void rk4_span(const Liouvillian& liouv, Matrix& x, double span, double dt_max) {
    if (span <= 0.0) return;
    const int n = std::max(1, static_cast<int>(std::ceil(span / dt_max)));
    const double h = span / n;
    Matrix k1, k2, k3, k4;
    for (int s = 0; s < n; ++s) {
        k1 = liouv.apply(x);
        k2 = liouv.apply(x + (0.5 * h) * k1);
        k3 = liouv.apply(x + (0.5 * h) * k2);
        k4 = liouv.apply(x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
}

// Embedded Cash-Karp 4(5) with step-size control.
void rk45_span(const Liouvillian& liouv, Matrix& x, double span) {
    if (span <= 0.0) return;
    constexpr double a21 = 1.0 / 5.0;
    constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    constexpr double a41 = 3.0 / 10.0, a42 = -9.0 / 10.0, a43 = 6.0 / 5.0;
    constexpr double a51 = -11.0 / 54.0, a52 = 5.0 / 2.0, a53 = -70.0 / 27.0, a54 = 35.0 / 27.0;
    constexpr double a61 = 1631.0 / 55296.0, a62 = 175.0 / 512.0, a63 = 575.0 / 13824.0,
                     a64 = 44275.0 / 110592.0, a65 = 253.0 / 4096.0;
    constexpr double b1 = 37.0 / 378.0, b3 = 250.0 / 621.0, b4 = 125.0 / 594.0, b6 = 512.0 / 1771.0;
    constexpr double d1 = b1 - 2825.0 / 27648.0, d3 = b3 - 18575.0 / 48384.0,
                     d4 = b4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0, d6 = b6 - 1.0 / 4.0;
    constexpr double atol = 1e-12, rtol = 1e-9;

    const double scale = liouv.frequency_scale();
    double h = (scale > 0.0) ? std::min(span, 0.1 / scale) : span;
    double t = 0.0;
    Matrix k1, k2, k3, k4, k5, k6, x5, err;
    while (t < span) {
        h = std::min(h, span - t);
        if (h < span * 1e-14)
            throw integrator_error("adaptive step size underflow");
        k1 = liouv.apply(x);
        k2 = liouv.apply(x + h * (a21 * k1));
        k3 = liouv.apply(x + h * (a31 * k1 + a32 * k2));
        k4 = liouv.apply(x + h * (a41 * k1 + a42 * k2 + a43 * k3));
        k5 = liouv.apply(x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        k6 = liouv.apply(x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        x5 = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b6 * k6);
        err = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6);
        const double y_scale = atol + rtol * std::max(x.cwiseAbs().maxCoeff(),
                                                      x5.cwiseAbs().maxCoeff());
        const double err_norm = err.cwiseAbs().maxCoeff() / y_scale;
        if (err_norm <= 1.0) {
            t += h;
            x = x5;
        }
        const double factor = (err_norm > 0.0)
                                  ? std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0)
                                  : 5.0;
        h *= factor;
    }
}

double model_frequency_scale(const SystemModel& model) {
    double s = std::max({std::abs(model.resonator().delta_c), model.resonator().kappa,
                         model.drive().epsilon0});
    for (const auto& t : model.tls()) s = std::max({s, std::abs(t.delta_n), std::abs(t.g_n)});
    return s;
}

double default_segment_dt(const SystemModel& model, const Liouvillian& liouv) {
    const double scale = model_frequency_scale(model);
    double dt = (scale > 0.0) ? (two_pi / scale) / 50.0
                              : std::numeric_limits<double>::infinity();
    // Stability/accuracy clamp against the actual generator norm
    // (drive-populated cavities and fast collapse channels push the spectral
    // radius above the bare parameter scale).
    const double gen_scale = liouv.frequency_scale();
    if (gen_scale > 0.0) dt = std::min(dt, 0.25 / gen_scale);
    if (!std::isfinite(dt)) dt = 1.0;
    return dt;
}

struct Leg {
    Liouvillian liouv;
    double duration;
    double dt_default;
};

Trajectory run_legs(const DensityMatrix& rho0, std::vector<Leg>& legs,
                    const std::vector<double>& t_grid, const EvolveOptions& opts) {
    double total = 0.0;
    for (const auto& leg : legs) total += leg.duration;
    if (t_grid.empty()) throw error("time grid must not be empty");
    for (size_t i = 0; i + 1 < t_grid.size(); ++i)
        if (!(t_grid[i] < t_grid[i + 1])) throw error("time grid must be strictly increasing");
    if (t_grid.front() < 0.0 || t_grid.back() > total * (1.0 + 1e-12) + 1e-12)
        throw error("time grid must lie within the schedule duration");

    Trajectory traj;
    traj.observable_names.reserve(opts.observables.size());
    for (const auto& obs : opts.observables) traj.observable_names.push_back(obs.name);
    traj.expectations.assign(opts.observables.size(), {});

    Matrix x = rho0.entries();
    size_t leg_idx = 0;
    double leg_elapsed = 0.0;
    double t_cur = 0.0;

    auto integrate_to = [&](double t_target) {
        while (t_target - t_cur > 1e-13) {
            double remaining_in_leg = legs[leg_idx].duration - leg_elapsed;
            double span = std::min(t_target - t_cur, remaining_in_leg);
            if (span > 0.0) {
                const Liouvillian& liouv = legs[leg_idx].liouv;
                if (liouv.dissipation_free()) {
                    x = liouv.unitary_conjugate(x, span);
                } else if (opts.method == Method::rk4) {
                    const double dt =
                        (opts.dt_max > 0.0) ? opts.dt_max : legs[leg_idx].dt_default;
                    rk4_span(liouv, x, span, dt);
                } else {
                    rk45_span(liouv, x, span);
                }
                t_cur += span;
                leg_elapsed += span;
            }
            if (legs[leg_idx].duration - leg_elapsed <= 1e-13 && leg_idx + 1 < legs.size()) {
                ++leg_idx;
                leg_elapsed = 0.0;
            } else if (span <= 0.0) {
                break;
            }
        }
    };

    for (double t : t_grid) {
        integrate_to(t);
        const double drift = std::abs(x.trace() - Complex(1.0, 0.0));
        traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
        if (drift > opts.trace_tol)
            throw integrator_error("trace drift exceeded tolerance during evolution");
        DensityMatrix sample(x, rho0.space_tag(), opts.positivity_tol, 1e-8, opts.trace_tol);
        traj.min_eigenvalue = std::min(traj.min_eigenvalue, sample.min_eigenvalue());
        for (size_t k = 0; k < opts.observables.size(); ++k)
            traj.expectations[k].push_back(expectation_raw(x, opts.observables[k].op.entries()));
        traj.times.push_back(t);
        if (opts.store_states) traj.states.push_back(std::move(sample));
    }
    return traj;
}

}  // namespace

Liouvillian::Liouvillian(OperatorMatrix h, std::vector<LindbladTerm> terms)
    : h_(std::move(h)), terms_(std::move(terms)) {
    if (!h_.is_hermitian(1e-10))
        throw error("Liouvillian requires a Hermitian Hamiltonian");
    for (const auto& term : terms_) {
        if (term.collapse.dim() != h_.dim())
            throw dimension_error("collapse operator dimension does not match Hamiltonian");
        if (term.rate > 0.0) dissipation_free_ = false;
    }
    scaled_cdc_.reserve(terms_.size());
    for (const auto& term : terms_) {
        const Matrix& c = term.collapse.entries();
        scaled_cdc_.push_back(0.5 * term.rate * (c.adjoint() * c));
    }
}

Matrix Liouvillian::unitary_conjugate(const Matrix& x, double t) const {
    if (!h_diagonalized_) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(
            0.5 * (h_.entries() + h_.entries().adjoint()));
        h_vectors_ = es.eigenvectors();
        h_values_ = es.eigenvalues();
        h_diagonalized_ = true;
    }
    CVector phases(h_values_.size());
    for (Eigen::Index k = 0; k < h_values_.size(); ++k)
        phases(k) = std::exp(Complex(0.0, -t * h_values_(k)));
    const Matrix u = h_vectors_ * phases.asDiagonal() * h_vectors_.adjoint();
    return u * x * u.adjoint();
}

Matrix Liouvillian::apply(const Matrix& rho) const {
    if (rho.rows() != h_.dim() || rho.cols() != h_.dim())
        throw dimension_error("Liouvillian applied to a mismatched state");
    const Complex i_unit(0.0, 1.0);
    Matrix out = -i_unit * (h_.entries() * rho - rho * h_.entries());
    for (size_t k = 0; k < terms_.size(); ++k) {
        if (terms_[k].rate == 0.0) continue;
        const Matrix& c = terms_[k].collapse.entries();
        out += terms_[k].rate * (c * rho * c.adjoint());
        out -= scaled_cdc_[k] * rho + rho * scaled_cdc_[k];
    }
    return out;
}

const Matrix& Liouvillian::superoperator() const {
    if (!superop_built_) {
        const int d = dim();
        const Matrix id = Matrix::Identity(d, d);
        const Complex i_unit(0.0, 1.0);
        // Column-major vec: vec(A X B) = (B^T kron A) vec(X).
        Matrix sop = -i_unit * (kron(id, h_.entries()) - kron(h_.entries().transpose(), id));
        for (size_t k = 0; k < terms_.size(); ++k) {
            if (terms_[k].rate == 0.0) continue;
            const Matrix& c = terms_[k].collapse.entries();
            sop += terms_[k].rate * kron(c.conjugate(), c);
            sop -= kron(id, scaled_cdc_[k]);
            sop -= kron(scaled_cdc_[k].transpose(), id);
        }
        superop_ = std::move(sop);
        superop_built_ = true;
    }
    return superop_;
}

double Liouvillian::frequency_scale() const {
    // Spectral-radius bound: the commutator contributes up to 2 ||H|| and
    // each dissipator up to 2 rate ||c^dag c||.
    double s = 2.0 * inf_norm(h_.entries());
    for (size_t k = 0; k < terms_.size(); ++k)
        s += terms_[k].rate > 0.0 ? 4.0 * inf_norm(scaled_cdc_[k]) : 0.0;
    return s;
}

const std::vector<Complex>& Trajectory::series(const std::string& name) const {
    for (size_t k = 0; k < observable_names.size(); ++k)
        if (observable_names[k] == name) return expectations[k];
    throw error("trajectory holds no observable named " + name);
}

Trajectory evolve(const DensityMatrix& rho0, const Schedule& schedule,
                  const std::vector<double>& t_grid, const EvolveOptions& opts) {
    std::vector<Leg> legs;
    legs.reserve(schedule.segments().size());
    for (const auto& seg : schedule.segments()) {
        if (seg.model.dim() != rho0.dim())
            throw dimension_error("initial state does not match the schedule dimension");
        Liouvillian liouv(build_hamiltonian(seg.model), build_collapse_operators(seg.model));
        const double dt = default_segment_dt(seg.model, liouv);
        legs.push_back(Leg{std::move(liouv), seg.duration, dt});
    }
    return run_legs(rho0, legs, t_grid, opts);
}

Trajectory evolve_constant(const DensityMatrix& rho0, const OperatorMatrix& h,
                           const std::vector<LindbladTerm>& terms,
                           const std::vector<double>& t_grid, const EvolveOptions& opts) {
    Liouvillian liouv(h, terms);
    const double scale = liouv.frequency_scale();
    const double dt = (scale > 0.0) ? (two_pi / scale) / 50.0 : 1.0;
    std::vector<Leg> legs;
    const double duration = t_grid.empty() ? 0.0 : t_grid.back();
    legs.push_back(Leg{std::move(liouv), std::max(duration, 1e-30), dt});
    return run_legs(rho0, legs, t_grid, opts);
}

Matrix propagate_raw(const Liouvillian& liouv, Matrix state, double duration,
                     Method method, double dt_max) {
    if (duration < 0.0) throw error("propagation duration must be nonnegative");
    if (liouv.dissipation_free()) return liouv.unitary_conjugate(state, duration);
    if (method == Method::rk4) {
        double dt = dt_max;
        if (dt <= 0.0) {
            const double scale = liouv.frequency_scale();
            dt = (scale > 0.0) ? (two_pi / scale) / 50.0 : duration;
        }
        rk4_span(liouv, state, duration, dt);
    } else {
        rk45_span(liouv, state, duration);
    }
    return state;
}

DensityMatrix steady_state(const Liouvillian& liouv) {
    const int d = liouv.dim();
    const Matrix& sop = liouv.superoperator();
    const double sop_norm = sop.norm();

    Eigen::BDCSVD<Matrix> svd(sop);
    const auto& sv = svd.singularValues();
    const double sigma_max = sv(0);
    int kernel_dim = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k)
        if (sv(k) <= 1e-10 * sigma_max) ++kernel_dim;
    if (kernel_dim == 0)
        throw steady_state_error("Liouvillian has no kernel within tolerance");
    if (kernel_dim > 1)
        throw steady_state_error("Liouvillian kernel is degenerate; steady state not unique");

    // Bordered least squares: L[rho] = 0 with Tr(rho) = 1 appended.
    Matrix a(d * d + 1, d * d);
    a.topRows(d * d) = sop;
    a.row(d * d).setZero();
    for (int i = 0; i < d; ++i) a(d * d, i * (d + 1)) = 1.0;
    CVector b = CVector::Zero(d * d + 1);
    b(d * d) = 1.0;
    CVector x = a.colPivHouseholderQr().solve(b);

    Matrix rho = Eigen::Map<Matrix>(x.data(), d, d);
    rho = 0.5 * (rho + rho.adjoint().eval());
    rho /= rho.trace().real();

    const double residual = (sop * Eigen::Map<CVector>(rho.data(), d * d)).norm();
    if (residual > 1e-9 * sop_norm)
        throw steady_state_error("steady-state residual exceeds tolerance");
    return DensityMatrix(std::move(rho), liouv.hamiltonian().space_tag());
}

OperatorMatrix unitary_propagator(const OperatorMatrix& h, double t) {
    if (!h.is_hermitian(1e-10))
        throw error("unitary_propagator requires a Hermitian generator");
    return matrix_exp(h, Complex(0.0, -t));
}

std::vector<Complex> two_time_correlation(const Liouvillian& liouv,
                                          const DensityMatrix& rho_ref,
                                          const OperatorMatrix& a,
                                          const OperatorMatrix& b,
                                          const std::vector<double>& taus,
                                          Method method) {
    if (a.dim() != liouv.dim() || b.dim() != liouv.dim() || rho_ref.dim() != liouv.dim())
        throw dimension_error("two_time_correlation: dimension mismatch");
    if (taus.empty()) throw error("tau grid must not be empty");
    for (size_t i = 0; i + 1 < taus.size(); ++i)
        if (!(taus[i] < taus[i + 1])) throw error("tau grid must be strictly increasing");
    if (taus.front() < 0.0) throw error("tau grid must be nonnegative");

    Matrix x = b.entries() * rho_ref.entries();
    std::vector<Complex> out;
    out.reserve(taus.size());
    double t_cur = 0.0;
    for (double tau : taus) {
        x = propagate_raw(liouv, std::move(x), tau - t_cur, method);
        t_cur = tau;
        out.push_back((a.entries() * x).trace());
    }
    return out;
}

}  // namespace tlsim
