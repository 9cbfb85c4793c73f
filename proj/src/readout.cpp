#include "tlsim/readout.hpp"

#include <cmath>

namespace tlsim {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

QuadratureSignal quadrature_weights(const SystemModel& model) {
    const double kappa = model.resonator().kappa;
    const double delta_c = model.resonator().delta_c;
    const double denom = kappa * kappa + delta_c * delta_c;
    if (!(denom > 0.0))
        throw undefined_signal_error("quadrature undefined for kappa = delta_c = 0");
    QuadratureSignal q;
    q.offset = -2.0 * model.drive().epsilon0 * delta_c / denom;
    for (const auto& t : model.tls()) {
        q.w_x.push_back(-t.g_n * delta_c / denom);
        q.w_y.push_back(-t.g_n * kappa / denom);
    }
    return q;
}

double quadrature_signal(const SystemModel& model,
                         const std::vector<std::pair<double, double>>& spin_xy) {
    if (static_cast<int>(spin_xy.size()) != model.tls_count())
        throw dimension_error("spin expectation list does not match the TLS roster");
    const QuadratureSignal q = quadrature_weights(model);
    double s = q.offset;
    for (size_t n = 0; n < spin_xy.size(); ++n)
        s += q.w_x[n] * spin_xy[n].first + q.w_y[n] * spin_xy[n].second;
    return s;
}

double measurement_phase(double g1, double kappa, double delta_c) {
    if (g1 == 0.0) throw undefined_signal_error("measurement phase undefined for g1 = 0");
    if (!(kappa * kappa + delta_c * delta_c > 0.0))
        throw undefined_signal_error("measurement phase undefined for kappa = delta_c = 0");
    const Complex i_unit(0.0, 1.0);
    return std::arg(-i_unit * g1 / Complex(kappa, delta_c));
}

CorrelationRecord photon_correlation_check(const SystemModel& model, const DensityMatrix& rho0,
                                           const std::vector<double>& t_grid) {
    if (model.tls_count() != 1)
        throw error("photon_correlation_check requires exactly one TLS");
    const double kappa = model.resonator().kappa;
    if (!(kappa > 0.0))
        throw invalid_regime_error("photon_correlation_check requires kappa > 0");
    const double g1 = model.tls()[0].g_n;
    const double eps = model.drive().epsilon0;
    const double delta_c = model.resonator().delta_c;
    const double denom = kappa * kappa + delta_c * delta_c;
    const double transient = 5.0 / kappa;
    if (t_grid.empty() || t_grid.back() <= transient)
        throw error("time grid must extend beyond the transient window 5/kappa");

    const SpaceTag tag = model.space_tag();
    const OperatorMatrix n_op = embed(number_operator(model.resonator().fock_dim), 0, tag);
    const OperatorMatrix sp = embed(pauli(Pauli::plus), 1, tag);
    const OperatorMatrix sm = embed(pauli(Pauli::minus), 1, tag);
    const OperatorMatrix pop{sp.entries() * sm.entries(), tag};
    const OperatorMatrix sx = embed(pauli(Pauli::x), 1, tag);

    EvolveOptions opts;
    opts.store_states = false;
    opts.observables = {{"photon", n_op}, {"C", pop}, {"M", sx}};
    Schedule schedule({{model, t_grid.back() * (1.0 + 1e-12)}});
    Trajectory traj = evolve(rho0, schedule, t_grid, opts);

    CorrelationRecord rec;
    rec.times = traj.times;
    rec.transient = transient;
    rec.kappa_warning = kappa < 3.0 * std::abs(g1);
    rec.residual = 0.0;
    const auto& photon = traj.series("photon");
    const auto& c_ser = traj.series("C");
    const auto& m_ser = traj.series("M");
    for (size_t k = 0; k < traj.times.size(); ++k) {
        const double c_val = c_ser[k].real();
        const double m_val = m_ser[k].real();
        const double n_val = photon[k].real();
        if (std::abs(c_ser[k].imag()) > 1e-9 || c_val < -1e-9)
            throw error("correlation C(t) must be a real nonnegative population");
        if (n_val < -1e-9)
            throw error("photon number must be nonnegative");
        rec.C.push_back(c_val);
        rec.M.push_back(m_val);
        rec.photon.push_back(n_val);
        const double predicted = (g1 * g1 * c_val + g1 * eps * m_val + eps * eps) / denom;
        rec.predicted_photon.push_back(predicted);
        if (traj.times[k] >= transient)
            rec.residual = std::max(rec.residual, std::abs(n_val - predicted));
    }
    return rec;
}

RegressionFit regression_extract(const Liouvillian& liouv_eff, const DensityMatrix& rho_ref,
                                 const std::vector<double>& taus) {
    const SpaceTag tag = rho_ref.space_tag();
    const OperatorMatrix sp = embed(pauli(Pauli::plus), 0, tag);
    const OperatorMatrix sm = embed(pauli(Pauli::minus), 0, tag);

    RegressionFit fit;
    fit.correlation = two_time_correlation(liouv_eff, rho_ref, sp, sm, taus);

    const double c0 = std::abs(fit.correlation.front());
    fit.rate = 0.0;
    fit.frequency = 0.0;
    fit.fit_residual = 0.0;
    fit.quality_warning = false;
    if (c0 == 0.0) {
        fit.quality_warning = true;
        return fit;
    }

    // Log-linear least squares on the window where the amplitude stays above
    // 1e-3 of its initial value; the phase is unwrapped before fitting.
    std::vector<double> ts, log_mag, phase;
    double prev_arg = std::arg(fit.correlation.front());
    double offset = 0.0;
    for (size_t k = 0; k < taus.size(); ++k) {
        const double mag = std::abs(fit.correlation[k]);
        if (mag <= 1e-3 * c0) break;
        double arg = std::arg(fit.correlation[k]);
        while (arg + offset - prev_arg > kPi) offset -= 2.0 * kPi;
        while (arg + offset - prev_arg < -kPi) offset += 2.0 * kPi;
        prev_arg = arg + offset;
        ts.push_back(taus[k]);
        log_mag.push_back(std::log(mag));
        phase.push_back(prev_arg);
    }
    if (ts.size() < 3) {
        fit.quality_warning = true;
        return fit;
    }

    const size_t n = ts.size();
    double st = 0, stt = 0, sy_m = 0, sty_m = 0, sy_p = 0, sty_p = 0;
    for (size_t k = 0; k < n; ++k) {
        st += ts[k];
        stt += ts[k] * ts[k];
        sy_m += log_mag[k];
        sty_m += ts[k] * log_mag[k];
        sy_p += phase[k];
        sty_p += ts[k] * phase[k];
    }
    const double det = double(n) * stt - st * st;
    const double slope_mag = (double(n) * sty_m - st * sy_m) / det;
    const double icpt_mag = (sy_m - slope_mag * st) / double(n);
    const double slope_ph = (double(n) * sty_p - st * sy_p) / det;
    const double icpt_ph = (sy_p - slope_ph * st) / double(n);

    fit.rate = -slope_mag;
    fit.frequency = slope_ph;

    double rss = 0.0;
    for (size_t k = 0; k < n; ++k) {
        const Complex model_val =
            std::exp(Complex(icpt_mag + slope_mag * ts[k], icpt_ph + slope_ph * ts[k]));
        rss += std::norm(fit.correlation[k] - model_val);
    }
    fit.fit_residual = std::sqrt(rss / double(n)) / c0;
    fit.quality_warning = fit.fit_residual > 0.10;
    return fit;
}

ReadoutShift dispersive_readout_shift(const SystemModel& model, int n) {
    if (n < 0 || n >= model.tls_count()) throw dimension_error("TLS index out of range");
    const auto& t = model.tls()[n];
    const double dnc = t.delta_n - model.resonator().delta_c;
    if (dnc == 0.0)
        throw resonant_input_error("TLS '" + t.label + "' is resonant; pull undefined");
    ReadoutShift shift;
    shift.pull = t.g_n * t.g_n / dnc;
    shift.delta_plus = model.resonator().delta_c + shift.pull;
    shift.delta_minus = model.resonator().delta_c - shift.pull;
    return shift;
}

}  // namespace tlsim
