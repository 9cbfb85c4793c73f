#ifndef TLSIM_MODEL_HPP
#define TLSIM_MODEL_HPP

#include <string>
#include <vector>

#include "tlsim/algebra.hpp"

namespace tlsim {

// All detunings are relative to the drive frequency and all rates are
// angular, rad/us. kappa is the field-amplitude decay rate of the resonator.

struct TlsSpec {
    std::string label;
    double delta_n;  // omega_n - omega_d
    double g_n;      // exchange coupling to the resonator
};

struct ResonatorSpec {
    double delta_c;  // omega_c - omega_d
    double kappa;    // amplitude decay rate
    int fock_dim;    // Fock truncation, >= 2
};

struct DriveSpec {
    double epsilon0;  // in-frame drive amplitude, >= 0
};

class SystemModel {
public:
    SystemModel(ResonatorSpec resonator, DriveSpec drive, std::vector<TlsSpec> tls);

    const ResonatorSpec& resonator() const { return resonator_; }
    const DriveSpec& drive() const { return drive_; }
    const std::vector<TlsSpec>& tls() const { return tls_; }

    int tls_count() const { return static_cast<int>(tls_.size()); }
    SpaceTag space_tag() const;
    int dim() const;
    std::vector<int> tls_slots() const;

    SystemModel with_epsilon0(double epsilon0) const;
    SystemModel with_delta_c(double delta_c) const;

private:
    ResonatorSpec resonator_;
    DriveSpec drive_;
    std::vector<TlsSpec> tls_;
};

struct LindbladTerm {
    OperatorMatrix collapse;
    double rate;  // nonnegative, rad/us

    LindbladTerm(OperatorMatrix op, double r);
};

// Piecewise-constant parameter sequence; the state is carried across segment
// boundaries unchanged (instantaneous switching).
class Schedule {
public:
    struct Segment {
        SystemModel model;
        double duration;  // us, > 0
    };

    explicit Schedule(std::vector<Segment> segments);

    const std::vector<Segment>& segments() const { return segments_; }
    double total_duration() const;

private:
    std::vector<Segment> segments_;
};

// Hilbert dimension cap for full-model construction.
inline constexpr int kDefaultDimBudget = 2048;

// Rotating-frame Hamiltonian
//   H = delta_c a^dag a + sum_n (delta_n/2) sigma_nz
//       + sum_n g_n (a sigma_n+ + a^dag sigma_n-) + epsilon0 (a + a^dag),
// symmetrized so the result is exactly Hermitian.
OperatorMatrix build_hamiltonian(const SystemModel& model, int dim_budget = kDefaultDimBudget);

// Single photon-loss channel: collapse a, Lindblad rate 2*kappa, so the field
// amplitude decays at kappa and the photon number at 2*kappa.
std::vector<LindbladTerm> build_collapse_operators(const SystemModel& model);

// Total excitation number a^dag a + sum_n (sigma_nz + 1)/2; commutes with the
// Hamiltonian when epsilon0 = 0.
OperatorMatrix excitation_number(const SystemModel& model);

struct TruncationReport {
    double n_bar;          // estimated steady photon number
    double required_dim;   // n_bar + 5 sqrt(n_bar) + 5
    bool pass;
    bool unbounded_warning;  // kappa = delta_c = 0 with epsilon0 > 0
};

TruncationReport validate_truncation(const SystemModel& model);

}  // namespace tlsim

#endif
