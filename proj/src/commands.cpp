#include "tlsim/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>

#include "tlsim/gates.hpp"
#include "tlsim/readout.hpp"
#include "tlsim/units.hpp"

namespace tlsim {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

json ratios_to_json(const ValidityReport& rep) {
    json arr = json::array();
    for (const auto& r : rep.ratios) {
        arr.push_back({{"name", r.name},
                       {"value", r.value},
                       {"threshold", r.threshold},
                       {"flagged", r.flagged}});
    }
    return {{"all_pass", rep.all_pass}, {"ratios", arr}};
}

json dispersive_to_json(const EffectiveDispersive& p) {
    json lambda = json::array();
    for (int n = 0; n < p.tls_count(); ++n) {
        json row = json::array();
        for (int m = 0; m < p.tls_count(); ++m) row.push_back(p.lambda(n, m));
        lambda.push_back(row);
    }
    return {{"delta_bar_rad_us", p.delta_bar},
            {"omega_x_rad_us", p.omega_x},
            {"induced_decay_rad_us", p.induced_decay},
            {"delta_nc_rad_us", p.delta_nc},
            {"lambda_rad_us", lambda}};
}

json badcavity_to_json(const EffectiveBadCavity& p) {
    json omega = json::array();
    for (const auto& o : p.omega) omega.push_back({{"re", o.real()}, {"im", o.imag()}});
    json lambda = json::array();
    for (int n = 0; n < p.tls_count(); ++n) {
        json row = json::array();
        for (int m = 0; m < p.tls_count(); ++m)
            row.push_back({{"re", p.lambda(n, m).real()}, {"im", p.lambda(n, m).imag()}});
        lambda.push_back(row);
    }
    return {{"delta_bar_rad_us", p.delta_bar},
            {"omega_rad_us", omega},
            {"gamma1_rad_us", p.gamma1},
            {"gamma2_rad_us", p.gamma2},
            {"lambda_rad_us", lambda}};
}

// Config echo, derived parameter bundles for both regimes, validity reports,
// version. Commands add their own entries before returning.
json base_manifest(const RunConfig& config, const SystemModel& model) {
    json m;
    m["artifact_version"] = kVersion;
    m["config_echo"] = config.raw_text;
    json derived;
    try {
        derived["dispersive"] = dispersive_to_json(dispersive_params(model));
    } catch (const error& e) {
        derived["dispersive"] = {{"error", e.what()}};
    }
    try {
        derived["bad_cavity"] = badcavity_to_json(badcavity_params(model));
    } catch (const error& e) {
        derived["bad_cavity"] = {{"error", e.what()}};
    }
    m["derived"] = derived;
    m["validity"] = {
        {"dispersive",
         ratios_to_json(validity_report(model, Regime::dispersive, config.thresholds))},
        {"bad_cavity",
         ratios_to_json(validity_report(model, Regime::bad_cavity, config.thresholds))}};
    return m;
}

class WallClock {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Deterministic parallel map: workers fill disjoint row slots by index.
void parallel_rows(int n_rows, int threads, const std::function<void(int)>& fill) {
    if (threads <= 1 || n_rows <= 1) {
        for (int i = 0; i < n_rows; ++i) fill(i);
        return;
    }
    const int n_workers = std::min(threads, n_rows);
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) {
        pool.emplace_back([=, &fill]() {
            for (int i = w; i < n_rows; i += n_workers) fill(i);
        });
    }
    for (auto& t : pool) t.join();
}

std::vector<int> tls_pattern(const RunConfig& config, int n_tls) {
    std::vector<int> bits(n_tls, 1);  // 1 = ground
    if (config.compare.initial_tls.empty()) {
        bits[0] = 0;  // default: first TLS excited
        return bits;
    }
    std::stringstream ss(config.compare.initial_tls);
    std::string tok;
    int idx = 0;
    while (std::getline(ss, tok, ',')) {
        if (idx >= n_tls) throw config_error("initial_tls lists more entries than TLS's");
        if (tok == "e")
            bits[idx] = 0;
        else if (tok == "g")
            bits[idx] = 1;
        else
            throw config_error("initial_tls entries must be 'e' or 'g'");
        ++idx;
    }
    if (idx != n_tls) throw config_error("initial_tls must list one entry per TLS");
    return bits;
}

PureState product_state(const SpaceTag& tag, const std::vector<int>& indices) {
    const int d = space_tag_dim(tag);
    long pos = 0;
    for (size_t k = 0; k < tag.size(); ++k) pos = pos * tag[k] + indices[k];
    CVector amps = CVector::Zero(d);
    amps(pos) = 1.0;
    return PureState(std::move(amps), tag);
}

}  // namespace

std::string format_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.8e", v);
    return buf;
}

CommandResult cmd_sweep_coupling(const RunConfig& config, int threads) {
    WallClock clock;
    const SystemModel base = config.to_model();
    if (base.tls_count() != 2)
        throw config_error("sweep-coupling requires exactly two TLS entries");
    if (!config.sweep || config.sweep->parameter != "delta_c")
        throw config_error("sweep-coupling requires a sweep section with parameter 'delta_c'");
    if (!(base.resonator().kappa > 0.0))
        throw config_error("sweep-coupling requires kappa > 0 for the bad-cavity branch");

    const auto& sweep = *config.sweep;
    const int n_rows = sweep.points;
    std::vector<std::string> rows(n_rows);

    parallel_rows(n_rows, threads, [&](int i) {
        const double dc_mhz =
            sweep.start_mhz + (sweep.stop_mhz - sweep.start_mhz) * double(i) / double(n_rows - 1);
        const SystemModel m = base.with_delta_c(mhz_to_rad_us(dc_mhz));

        const EffectiveBadCavity bad = badcavity_params(m);
        const Complex lam_bad = bad.lambda(0, 1);

        bool dispersive_ok = true;
        for (const auto& t : m.tls()) {
            const double dnc = t.delta_n - m.resonator().delta_c;
            if (dnc == 0.0 || std::abs(dnc) < 3.0 * std::abs(t.g_n)) dispersive_ok = false;
        }
        std::string disp_cell;
        if (dispersive_ok) {
            const EffectiveDispersive disp = dispersive_params(m);
            disp_cell = format_sci(rad_us_to_mhz(std::abs(disp.lambda(0, 1))));
        }

        std::ostringstream line;
        line << format_sci(dc_mhz) << ',' << disp_cell << ','
             << format_sci(rad_us_to_mhz(std::abs(lam_bad))) << ','
             << format_sci(std::arg(lam_bad)) << ',' << (dispersive_ok ? 1 : 0);
        rows[i] = line.str();
    });

    std::ostringstream csv;
    csv << "delta_c_over_2pi_mhz,abs_lambda_dispersive_over_2pi_mhz,"
           "abs_lambda_badcavity_over_2pi_mhz,arg_lambda_badcavity_rad,dispersive_valid\n";
    for (const auto& r : rows) csv << r << '\n';

    json manifest = base_manifest(config, base);
    manifest["command"] = "sweep-coupling";
    manifest["rows"] = n_rows;
    manifest["wall_time_s"] = clock.seconds();
    return {csv.str(), std::move(manifest)};
}

CommandResult cmd_compare_effective(const RunConfig& config, int threads) {
    (void)threads;  // a single comparison run; assembly is ordered regardless
    WallClock clock;
    const SystemModel model = config.to_model();
    const int n_tls = model.tls_count();
    if (n_tls > 3)
        throw config_error("compare is limited to N <= 3 for full-model tractability");
    const TruncationReport trunc = validate_truncation(model);
    if (!trunc.pass)
        throw integrator_error("Fock truncation too small: need fock_dim >= " +
                               std::to_string(trunc.required_dim) +
                               " for the configured drive");

    const SpaceTag full_tag = model.space_tag();
    const std::vector<int> bits = tls_pattern(config, n_tls);
    std::vector<int> full_idx{0};
    full_idx.insert(full_idx.end(), bits.begin(), bits.end());
    const DensityMatrix rho0_full = product_state(full_tag, full_idx).to_density();

    const SpaceTag tls_tag(static_cast<size_t>(n_tls), 2);
    const DensityMatrix rho0_eff = product_state(tls_tag, bits).to_density();

    // Effective branch.
    OperatorMatrix h_eff = (config.compare.regime == Regime::dispersive)
                               ? build_effective_hamiltonian(dispersive_params(model))
                               : build_effective_hamiltonian(badcavity_params(model));
    std::vector<LindbladTerm> terms_eff =
        (config.compare.regime == Regime::dispersive)
            ? build_effective_lindblad(dispersive_params(model))
            : build_effective_lindblad(badcavity_params(model));

    const std::vector<double> grid = config.time_grid();
    EvolveOptions opts;
    opts.method = config.simulation.method;
    opts.dt_max = config.simulation.dt_us;
    opts.store_states = true;

    Schedule schedule({{model, grid.back() * (1.0 + 1e-12) + 1e-12}});
    const Trajectory full = evolve(rho0_full, schedule, grid, opts);
    const Trajectory eff = evolve_constant(rho0_eff, h_eff, terms_eff, grid, opts);

    // Observables on each space.
    std::vector<OperatorMatrix> sx_f, sy_f, sz_f, sm_f, sx_e, sy_e, sz_e;
    for (int n = 0; n < n_tls; ++n) {
        sx_f.push_back(embed(pauli(Pauli::x), n + 1, full_tag));
        sy_f.push_back(embed(pauli(Pauli::y), n + 1, full_tag));
        sz_f.push_back(embed(pauli(Pauli::z), n + 1, full_tag));
        sm_f.push_back(embed(pauli(Pauli::minus), n + 1, full_tag));
        sx_e.push_back(embed(pauli(Pauli::x), n, tls_tag));
        sy_e.push_back(embed(pauli(Pauli::y), n, tls_tag));
        sz_e.push_back(embed(pauli(Pauli::z), n, tls_tag));
    }
    const OperatorMatrix a_full = embed(annihilation(model.resonator().fock_dim), 0, full_tag);
    std::vector<int> tls_slots = model.tls_slots();

    std::ostringstream csv;
    csv << "time_us";
    for (int n = 0; n < n_tls; ++n)
        csv << ",tls" << (n + 1) << "_sx_full,tls" << (n + 1) << "_sy_full,tls" << (n + 1)
            << "_sz_full";
    for (int n = 0; n < n_tls; ++n)
        csv << ",tls" << (n + 1) << "_sx_eff,tls" << (n + 1) << "_sy_eff,tls" << (n + 1)
            << "_sz_eff";
    csv << ",trace_distance,re_a_full,im_a_full,re_a_adiabatic,im_a_adiabatic\n";

    double max_distance = 0.0;
    for (size_t k = 0; k < grid.size(); ++k) {
        const DensityMatrix& rho_f = full.states[k];
        const DensityMatrix& rho_e = eff.states[k];
        csv << format_sci(grid[k]);
        for (int n = 0; n < n_tls; ++n) {
            csv << ',' << format_sci(expectation(rho_f, sx_f[n]).real());
            csv << ',' << format_sci(expectation(rho_f, sy_f[n]).real());
            csv << ',' << format_sci(expectation(rho_f, sz_f[n]).real());
        }
        for (int n = 0; n < n_tls; ++n) {
            csv << ',' << format_sci(expectation(rho_e, sx_e[n]).real());
            csv << ',' << format_sci(expectation(rho_e, sy_e[n]).real());
            csv << ',' << format_sci(expectation(rho_e, sz_e[n]).real());
        }
        const DensityMatrix reduced = partial_trace(rho_f, tls_slots);
        const double dist = trace_distance(reduced, rho_e);
        max_distance = std::max(max_distance, dist);

        std::vector<Complex> spins(n_tls);
        for (int n = 0; n < n_tls; ++n) spins[n] = expectation(rho_f, sm_f[n]);
        const Complex a_meas = expectation(rho_f, a_full);
        const Complex a_pred = adiabatic_cavity_amplitude(model, spins);
        csv << ',' << format_sci(dist) << ',' << format_sci(a_meas.real()) << ','
            << format_sci(a_meas.imag()) << ',' << format_sci(a_pred.real()) << ','
            << format_sci(a_pred.imag()) << '\n';
    }

    json manifest = base_manifest(config, model);
    manifest["command"] = "compare";
    manifest["regime"] =
        config.compare.regime == Regime::dispersive ? "dispersive" : "bad_cavity";
    manifest["max_trace_distance"] = max_distance;
    manifest["solver"] = {{"max_trace_drift", full.max_trace_drift},
                          {"min_eigenvalue", full.min_eigenvalue}};
    manifest["truncation"] = {{"n_bar", trunc.n_bar},
                              {"required_dim", trunc.required_dim},
                              {"pass", trunc.pass}};
    manifest["wall_time_s"] = clock.seconds();
    return {csv.str(), std::move(manifest)};
}

namespace {

struct GateRow {
    std::string regime;
    bool available = false;
    double duration = 0.0;
    double fidelity_unitary = 0.0;
    double fidelity_open = 0.0;
    double ops_budget = 0.0;
};

template <typename Params>
GateRow gate_row_for(const std::string& name, const Params& params) {
    GateRow row;
    row.regime = name;
    const IswapPlan plan = iswap_schedule(params, 0, 1);
    row.duration = plan.duration;

    const OperatorMatrix h_eff = build_effective_hamiltonian(params);
    const std::vector<LindbladTerm> terms = build_effective_lindblad(params);

    // Target absorbs the returned interaction phases plus the delta_bar
    // z-rotation accumulated over the gate.
    const double phase_n = plan.phase_n + params.delta_bar[0] * plan.duration;
    const double phase_m = plan.phase_m + params.delta_bar[1] * plan.duration;
    const OperatorMatrix target{rz_on(2, 0, phase_n).entries() *
                                    rz_on(2, 1, phase_m).entries() *
                                    iswap_matrix(2, 0, 1).entries(),
                                h_eff.space_tag()};

    const OperatorMatrix u_act = matrix_exp(h_eff, Complex(0.0, -plan.duration));
    row.fidelity_unitary = gate_fidelity_unitary(u_act, target);
    row.fidelity_open = gate_fidelity_open({{h_eff, plan.duration}}, terms, target);
    row.ops_budget = decoherence_budget(params).front().n_ops;
    row.available = true;
    return row;
}

}  // namespace

CommandResult cmd_gate(const RunConfig& config) {
    WallClock clock;
    const SystemModel model = config.to_model();
    if (model.tls_count() != 2)
        throw config_error("gate requires exactly two TLS entries");

    // Gates run with the drive off; the drive section only shapes the
    // derived-parameter report.
    const SystemModel gate_model = model.with_epsilon0(0.0);

    std::vector<GateRow> table;
    table.push_back(gate_row_for("dispersive", dispersive_params(gate_model)));
    if (gate_model.resonator().kappa > 0.0) {
        table.push_back(gate_row_for("bad_cavity", badcavity_params(gate_model)));
    } else {
        GateRow row;
        row.regime = "bad_cavity";
        table.push_back(row);  // blank: undefined at kappa = 0
    }

    std::ostringstream csv;
    csv << "regime,duration_us,fidelity_unitary,fidelity_open,ops_budget\n";
    for (const auto& row : table) {
        csv << row.regime;
        if (row.available) {
            csv << ',' << format_sci(row.duration) << ',' << format_sci(row.fidelity_unitary)
                << ',' << format_sci(row.fidelity_open) << ',' << format_sci(row.ops_budget);
        } else {
            csv << ",,,,";
        }
        csv << '\n';
    }

    json manifest = base_manifest(config, model);
    manifest["command"] = "gate";
    manifest["wall_time_s"] = clock.seconds();
    return {csv.str(), std::move(manifest)};
}

CommandResult cmd_readout(const RunConfig& config) {
    WallClock clock;
    const SystemModel model = config.to_model();
    const QuadratureSignal weights = quadrature_weights(model);

    double residual = 0.0;
    double photon_scale = 0.0;
    bool have_residual = false;
    if (model.tls_count() == 1 && model.resonator().kappa > 0.0) {
        const double transient = 5.0 / model.resonator().kappa;
        if (config.simulation.t_end_us <= transient)
            throw config_error("readout correlation check requires t_end_us > 5/kappa");
        const DensityMatrix rho0 =
            product_state(model.space_tag(), std::vector<int>{0, 0}).to_density();
        const CorrelationRecord rec = photon_correlation_check(model, rho0, config.time_grid());
        residual = rec.residual;
        for (double v : rec.photon) photon_scale = std::max(photon_scale, v);
        have_residual = true;
    }

    std::ostringstream csv;
    csv << "tls_label,w_x,w_y,phase_rad,pull_over_2pi_mhz,delta_plus_over_2pi_mhz,"
           "delta_minus_over_2pi_mhz,correlation_residual,photon_scale\n";
    for (int n = 0; n < model.tls_count(); ++n) {
        const auto& t = model.tls()[n];
        csv << t.label << ',' << format_sci(weights.w_x[n]) << ',' << format_sci(weights.w_y[n]);
        if (t.g_n != 0.0)
            csv << ',' << format_sci(measurement_phase(t.g_n, model.resonator().kappa,
                                                       model.resonator().delta_c));
        else
            csv << ',';
        if (t.delta_n != model.resonator().delta_c) {
            const ReadoutShift shift = dispersive_readout_shift(model, n);
            csv << ',' << format_sci(rad_us_to_mhz(shift.pull)) << ','
                << format_sci(rad_us_to_mhz(shift.delta_plus)) << ','
                << format_sci(rad_us_to_mhz(shift.delta_minus));
        } else {
            csv << ",,,";
        }
        if (n == 0 && have_residual)
            csv << ',' << format_sci(residual) << ',' << format_sci(photon_scale);
        else
            csv << ",,";
        csv << '\n';
    }

    json manifest = base_manifest(config, model);
    manifest["command"] = "readout";
    if (have_residual) {
        manifest["correlation_identity"] = {{"residual", residual},
                                            {"photon_scale", photon_scale}};
    }
    manifest["wall_time_s"] = clock.seconds();
    return {csv.str(), std::move(manifest)};
}

CommandResult cmd_universality(const RunConfig& config) {
    WallClock clock;
    const SystemModel model = config.to_model();
    if (model.tls_count() > 3)
        throw config_error("universality is limited to N <= 3");
    const int full_dim = (1 << (2 * model.tls_count())) - 1;  // 4^N - 1

    std::ostringstream csv;
    csv << "regime,closure_dim,full_dim,generations,closed\n";
    json report = json::array();

    auto emit = [&](const std::string& name, const OperatorMatrix& h1, const OperatorMatrix& h2) {
        const LieClosureResult res = universality_closure({h1, h2});
        csv << name << ',' << res.dimension << ',' << full_dim << ',' << res.generations << ','
            << (res.dimension == full_dim ? 1 : 0) << '\n';
        report.push_back({{"regime", name},
                          {"closure_dim", res.dimension},
                          {"full_dim", full_dim},
                          {"generations", res.generations},
                          {"closed", res.dimension == full_dim}});
    };

    try {
        const auto [h1, h2] = closure_generators(dispersive_params(model));
        emit("dispersive", h1, h2);
    } catch (const error& e) {
        csv << "dispersive,,,,\n";
        report.push_back({{"regime", "dispersive"}, {"error", e.what()}});
    }
    try {
        const auto [h1, h2] = closure_generators(badcavity_params(model));
        emit("bad_cavity", h1, h2);
    } catch (const error& e) {
        csv << "bad_cavity,,,,\n";
        report.push_back({{"regime", "bad_cavity"}, {"error", e.what()}});
    }

    json manifest = base_manifest(config, model);
    manifest["command"] = "universality";
    manifest["closure"] = report;
    manifest["wall_time_s"] = clock.seconds();
    return {csv.str(), std::move(manifest)};
}

}  // namespace tlsim
