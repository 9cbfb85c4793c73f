#include "tlsim/model.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace tlsim {

SystemModel::SystemModel(ResonatorSpec resonator, DriveSpec drive, std::vector<TlsSpec> tls)
    : resonator_(resonator), drive_(drive), tls_(std::move(tls)) {
    if (resonator_.fock_dim < 2)
        throw dimension_error("fock_dim must be >= 2");
    if (resonator_.kappa < 0.0)
        throw error("kappa must be nonnegative");
    if (!std::isfinite(drive_.epsilon0) || drive_.epsilon0 < 0.0)
        throw error("epsilon0 must be finite and nonnegative");
    if (tls_.empty() || tls_.size() > 8)
        throw error("TLS roster must hold between 1 and 8 entries");
    std::set<std::string> labels;
    for (const auto& t : tls_) {
        if (!std::isfinite(t.g_n) || !std::isfinite(t.delta_n))
            throw error("TLS parameters must be finite");
        if (!labels.insert(t.label).second)
            throw error("duplicate TLS label: " + t.label);
    }
}

SpaceTag SystemModel::space_tag() const {
    SpaceTag tag{resonator_.fock_dim};
    tag.insert(tag.end(), tls_.size(), 2);
    return tag;
}

int SystemModel::dim() const {
    return resonator_.fock_dim << tls_.size();
}

std::vector<int> SystemModel::tls_slots() const {
    std::vector<int> slots(tls_.size());
    for (size_t n = 0; n < tls_.size(); ++n) slots[n] = static_cast<int>(n) + 1;
    return slots;
}

SystemModel SystemModel::with_epsilon0(double epsilon0) const {
    return SystemModel(resonator_, DriveSpec{epsilon0}, tls_);
}

SystemModel SystemModel::with_delta_c(double delta_c) const {
    ResonatorSpec r = resonator_;
    r.delta_c = delta_c;
    return SystemModel(r, drive_, tls_);
}

LindbladTerm::LindbladTerm(OperatorMatrix op, double r) : collapse(std::move(op)), rate(r) {
    if (!(rate >= 0.0)) throw error("Lindblad rate must be nonnegative");
}

Schedule::Schedule(std::vector<Segment> segments) : segments_(std::move(segments)) {
    if (segments_.empty()) throw error("schedule must hold at least one segment");
    const auto& first = segments_.front().model;
    for (const auto& seg : segments_) {
        if (!(seg.duration > 0.0)) throw error("segment durations must be positive");
        if (seg.model.resonator().fock_dim != first.resonator().fock_dim)
            throw dimension_error("all schedule segments must share fock_dim");
        if (seg.model.tls_count() != first.tls_count())
            throw dimension_error("all schedule segments must share the TLS count");
    }
}

double Schedule::total_duration() const {
    double t = 0.0;
    for (const auto& seg : segments_) t += seg.duration;
    return t;
}

OperatorMatrix build_hamiltonian(const SystemModel& model, int dim_budget) {
    if (model.dim() > dim_budget)
        throw dimension_error("Hilbert dimension exceeds the configured budget");
    const SpaceTag tag = model.space_tag();
    const int fock = model.resonator().fock_dim;

    const Matrix a = embed(annihilation(fock), 0, tag).entries();
    const Matrix ad = a.adjoint();

    Matrix h = model.resonator().delta_c * (ad * a);
    h += model.drive().epsilon0 * (a + ad);
    for (int n = 0; n < model.tls_count(); ++n) {
        const auto& t = model.tls()[n];
        const Matrix sz = embed(pauli(Pauli::z), n + 1, tag).entries();
        const Matrix sp = embed(pauli(Pauli::plus), n + 1, tag).entries();
        h += 0.5 * t.delta_n * sz;
        h += t.g_n * (a * sp + ad * sp.adjoint());
    }
    h = 0.5 * (h + h.adjoint().eval());
    return {std::move(h), tag};
}

std::vector<LindbladTerm> build_collapse_operators(const SystemModel& model) {
    std::vector<LindbladTerm> terms;
    terms.emplace_back(embed(annihilation(model.resonator().fock_dim), 0, model.space_tag()),
                       2.0 * model.resonator().kappa);
    return terms;
}

OperatorMatrix excitation_number(const SystemModel& model) {
    const SpaceTag tag = model.space_tag();
    Matrix n = embed(number_operator(model.resonator().fock_dim), 0, tag).entries();
    const Matrix id = Matrix::Identity(n.rows(), n.cols());
    for (int k = 0; k < model.tls_count(); ++k) {
        const Matrix sz = embed(pauli(Pauli::z), k + 1, tag).entries();
        n += 0.5 * (sz + id);
    }
    return {std::move(n), tag};
}

TruncationReport validate_truncation(const SystemModel& model) {
    TruncationReport rep{};
    const double kappa = model.resonator().kappa;
    const double delta_c = model.resonator().delta_c;
    const double eps = model.drive().epsilon0;
    rep.unbounded_warning = (kappa == 0.0 && delta_c == 0.0 && eps > 0.0);
    if (rep.unbounded_warning) {
        rep.n_bar = std::numeric_limits<double>::infinity();
        rep.required_dim = std::numeric_limits<double>::infinity();
        rep.pass = false;
        return rep;
    }
    const double denom = kappa * kappa + delta_c * delta_c;
    rep.n_bar = (eps == 0.0) ? 0.0 : eps * eps / denom;
    if (eps == 0.0) {
        // Undriven cavity holds at most the roster's excitations; any valid
        // truncation passes.
        rep.required_dim = 2.0;
        rep.pass = true;
        return rep;
    }
    rep.required_dim = rep.n_bar + 5.0 * std::sqrt(rep.n_bar) + 5.0;
    rep.pass = model.resonator().fock_dim >= rep.required_dim;
    return rep;
}

}  // namespace tlsim
