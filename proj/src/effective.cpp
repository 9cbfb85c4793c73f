#include "tlsim/effective.hpp"

#include <cmath>
#include <limits>

namespace tlsim {

namespace {

SpaceTag tls_space_tag(int n) {
    return SpaceTag(static_cast<size_t>(n), 2);
}

void require_offresonant(const SystemModel& model) {
    for (const auto& t : model.tls()) {
        if (t.delta_n == model.resonator().delta_c)
            throw resonant_input_error("TLS '" + t.label +
                                       "' is exactly resonant with the resonator");
    }
    if (model.drive().epsilon0 != 0.0 && model.resonator().delta_c == 0.0)
        throw resonant_input_error("driven dispersive model requires delta_c != 0");
}

}  // namespace

EffectiveDispersive dispersive_params(const SystemModel& model) {
    require_offresonant(model);
    const int n_tls = model.tls_count();
    const double delta_c = model.resonator().delta_c;
    const double kappa = model.resonator().kappa;
    const double eps = model.drive().epsilon0;

    EffectiveDispersive p;
    p.delta_bar.resize(n_tls);
    p.omega_x.resize(n_tls);
    p.induced_decay.resize(n_tls);
    p.delta_nc.resize(n_tls);
    p.lambda = Eigen::MatrixXd::Zero(n_tls, n_tls);

    for (int n = 0; n < n_tls; ++n) {
        const auto& t = model.tls()[n];
        const double dnc = t.delta_n - delta_c;
        p.delta_nc[n] = dnc;
        const double drive_factor = (eps != 0.0) ? (1.0 - 2.0 * eps / delta_c) : 1.0;
        p.delta_bar[n] = t.delta_n + (t.g_n * t.g_n / dnc) * drive_factor;
        p.omega_x[n] = 2.0 * eps * t.g_n / dnc;
        p.induced_decay[n] = (t.g_n / dnc) * (t.g_n / dnc) * kappa;
    }
    for (int n = 0; n < n_tls; ++n) {
        for (int m = n + 1; m < n_tls; ++m) {
            const double gn = model.tls()[n].g_n, gm = model.tls()[m].g_n;
            const double v = gn * gm * (p.delta_nc[n] + p.delta_nc[m]) /
                             (2.0 * p.delta_nc[n] * p.delta_nc[m]);
            p.lambda(n, m) = v;
            p.lambda(m, n) = v;
        }
    }
    return p;
}

EffectiveBadCavity badcavity_params(const SystemModel& model) {
    const double kappa = model.resonator().kappa;
    if (!(kappa > 0.0))
        throw invalid_regime_error("bad-cavity reduction requires kappa > 0");
    const double delta_c = model.resonator().delta_c;
    const double eps = model.drive().epsilon0;
    const double denom = kappa * kappa + delta_c * delta_c;
    const Complex pole(kappa, delta_c);  // kappa + i Delta_c
    const Complex i_unit(0.0, 1.0);

    const int n_tls = model.tls_count();
    EffectiveBadCavity p;
    p.delta_bar.resize(n_tls);
    p.omega.resize(n_tls);
    p.gamma2.resize(n_tls);
    p.gamma1.resize(n_tls);
    p.lambda = Eigen::MatrixXcd::Zero(n_tls, n_tls);

    for (int n = 0; n < n_tls; ++n) {
        const auto& t = model.tls()[n];
        p.delta_bar[n] = t.delta_n - delta_c * t.g_n * t.g_n / denom;
        p.omega[n] = -i_unit * t.g_n * eps / pole;
        p.gamma2[n] = t.g_n * t.g_n * kappa / denom;
        p.gamma1[n] = 2.0 * p.gamma2[n];
    }
    for (int n = 0; n < n_tls; ++n) {
        for (int m = n + 1; m < n_tls; ++m) {
            const Complex v = -i_unit * model.tls()[n].g_n * model.tls()[m].g_n / pole;
            p.lambda(n, m) = v;
            p.lambda(m, n) = std::conj(v);
        }
    }
    return p;
}

OperatorMatrix dispersive_unitary(const SystemModel& model) {
    require_offresonant(model);
    const SpaceTag tag = model.space_tag();
    const int fock = model.resonator().fock_dim;
    const double eps = model.drive().epsilon0;
    const double delta_c = model.resonator().delta_c;

    const Matrix a = embed(annihilation(fock), 0, tag).entries();
    const Matrix ad = a.adjoint();
    const int d = space_tag_dim(tag);

    Matrix u = Matrix::Identity(d, d);
    if (eps != 0.0) {
        Matrix gen = -(eps / delta_c) * (a - ad);
        u = matrix_exp_raw(gen, 1.0);
    }
    for (int n = 0; n < model.tls_count(); ++n) {
        const auto& t = model.tls()[n];
        if (t.g_n == 0.0) continue;
        const Matrix sm = embed(pauli(Pauli::minus), n + 1, tag).entries();
        const Matrix sp = sm.adjoint();
        Matrix gen = -(t.g_n / (t.delta_n - delta_c)) * (ad * sm - sp * a);
        u = u * matrix_exp_raw(gen, 1.0);
    }
    return {std::move(u), tag};
}

OperatorMatrix build_effective_hamiltonian(const EffectiveDispersive& params) {
    const int n_tls = params.tls_count();
    const SpaceTag tag = tls_space_tag(n_tls);
    const int d = space_tag_dim(tag);
    Matrix h = Matrix::Zero(d, d);
    for (int n = 0; n < n_tls; ++n) {
        h += 0.5 * params.delta_bar[n] * embed(pauli(Pauli::z), n, tag).entries();
        h += 0.5 * params.omega_x[n] * embed(pauli(Pauli::x), n, tag).entries();
    }
    for (int n = 0; n < n_tls; ++n) {
        for (int m = n + 1; m < n_tls; ++m) {
            const Matrix spn = embed(pauli(Pauli::plus), n, tag).entries();
            const Matrix smm = embed(pauli(Pauli::minus), m, tag).entries();
            const Matrix flip = spn * smm;
            h += params.lambda(n, m) * (flip + flip.adjoint().eval());
        }
    }
    h = 0.5 * (h + h.adjoint().eval());
    return {std::move(h), tag};
}

OperatorMatrix build_effective_hamiltonian(const EffectiveBadCavity& params) {
    const int n_tls = params.tls_count();
    const SpaceTag tag = tls_space_tag(n_tls);
    const int d = space_tag_dim(tag);
    Matrix h = Matrix::Zero(d, d);
    for (int n = 0; n < n_tls; ++n) {
        h += 0.5 * params.delta_bar[n] * embed(pauli(Pauli::z), n, tag).entries();
        const Matrix sp = embed(pauli(Pauli::plus), n, tag).entries();
        h += params.omega[n] * sp;
        h += std::conj(params.omega[n]) * sp.adjoint().eval();
    }
    for (int n = 0; n < n_tls; ++n) {
        for (int m = n + 1; m < n_tls; ++m) {
            const Matrix spn = embed(pauli(Pauli::plus), n, tag).entries();
            const Matrix smm = embed(pauli(Pauli::minus), m, tag).entries();
            const Matrix flip = spn * smm;
            h += params.lambda(n, m) * flip;
            h += std::conj(params.lambda(n, m)) * flip.adjoint().eval();
        }
    }
    h = 0.5 * (h + h.adjoint().eval());
    return {std::move(h), tag};
}

namespace {

std::vector<LindbladTerm> damping_terms(const std::vector<double>& rates) {
    const int n_tls = static_cast<int>(rates.size());
    const SpaceTag tag = tls_space_tag(n_tls);
    std::vector<LindbladTerm> terms;
    terms.reserve(rates.size());
    for (int n = 0; n < n_tls; ++n)
        terms.emplace_back(embed(pauli(Pauli::minus), n, tag), rates[n]);
    return terms;
}

}  // namespace

std::vector<LindbladTerm> build_effective_lindblad(const EffectiveDispersive& params) {
    return damping_terms(params.induced_decay);
}

std::vector<LindbladTerm> build_effective_lindblad(const EffectiveBadCavity& params) {
    return damping_terms(params.gamma1);
}

OperatorMatrix residual_coupling(const SystemModel& model) {
    require_offresonant(model);
    const SpaceTag tag = model.space_tag();
    const int fock = model.resonator().fock_dim;
    const double eps = model.drive().epsilon0;
    const double delta_c = model.resonator().delta_c;

    const Matrix a = embed(annihilation(fock), 0, tag).entries();
    const Matrix ad = a.adjoint();
    const Matrix n_op = ad * a;
    const int d = space_tag_dim(tag);

    Matrix h = Matrix::Zero(d, d);
    for (int n = 0; n < model.tls_count(); ++n) {
        const auto& t = model.tls()[n];
        const double dnc = t.delta_n - delta_c;
        const Matrix sz = embed(pauli(Pauli::z), n + 1, tag).entries();
        Matrix cavity_part = n_op;
        if (eps != 0.0)
            cavity_part += eps * ((delta_c - 2.0 * dnc) / (2.0 * dnc * delta_c)) * (a + ad);
        h += (t.g_n * t.g_n / dnc) * (sz * cavity_part);
    }
    h = 0.5 * (h + h.adjoint().eval());
    return {std::move(h), tag};
}

Complex adiabatic_cavity_amplitude(const SystemModel& model,
                                   const std::vector<Complex>& spin_minus) {
    if (static_cast<int>(spin_minus.size()) != model.tls_count())
        throw dimension_error("spin expectation list does not match the TLS roster");
    const Complex i_unit(0.0, 1.0);
    Complex num = i_unit * model.drive().epsilon0;
    for (int n = 0; n < model.tls_count(); ++n)
        num += i_unit * model.tls()[n].g_n * spin_minus[n];
    return -num / Complex(model.resonator().kappa, model.resonator().delta_c);
}

ValidityReport validity_report(const SystemModel& model, Regime regime,
                               const ValidityThresholds& thresholds) {
    ValidityReport rep;
    rep.regime = regime;
    rep.all_pass = true;
    const double kappa = model.resonator().kappa;
    const double delta_c = model.resonator().delta_c;

    auto add = [&rep](std::string name, double value, double threshold) {
        const bool flagged = !(value <= threshold);
        rep.ratios.push_back({std::move(name), value, threshold, flagged});
        if (flagged) rep.all_pass = false;
    };

    for (int n = 0; n < model.tls_count(); ++n) {
        const auto& t = model.tls()[n];
        const double abs_dnc = std::abs(t.delta_n - delta_c);
        if (regime == Regime::dispersive) {
            const double inf = std::numeric_limits<double>::infinity();
            add("g/|delta_nc| (" + t.label + ")",
                abs_dnc > 0.0 ? std::abs(t.g_n) / abs_dnc : inf, thresholds.dispersive_ratio);
            add("kappa/|delta_nc| (" + t.label + ")",
                abs_dnc > 0.0 ? kappa / abs_dnc : inf, thresholds.dispersive_ratio);
        } else {
            const double inf = std::numeric_limits<double>::infinity();
            add("g/kappa (" + t.label + ")",
                kappa > 0.0 ? std::abs(t.g_n) / kappa : inf, thresholds.badcavity_ratio);
        }
    }
    return rep;
}

}  // namespace tlsim
