#ifndef TLSIM_TEST_HELPERS_HPP
#define TLSIM_TEST_HELPERS_HPP

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "tlsim/algebra.hpp"

namespace tlsim_test {

using tlsim::Complex;
using tlsim::Matrix;

inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eed1234);
    return gen;
}

inline Matrix random_matrix(int d, std::mt19937& gen) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = Complex(dist(gen), dist(gen));
    return m;
}

inline Matrix random_hermitian(int d, std::mt19937& gen) {
    Matrix m = random_matrix(d, gen);
    return 0.5 * (m + m.adjoint().eval());
}

inline Matrix random_anti_hermitian(int d, std::mt19937& gen) {
    Matrix m = random_matrix(d, gen);
    return 0.5 * (m - m.adjoint().eval());
}

inline Matrix random_density(int d, std::mt19937& gen) {
    Matrix m = random_matrix(d, gen);
    Matrix rho = m * m.adjoint();
    rho /= rho.trace();
    return 0.5 * (rho + rho.adjoint().eval());
}

// Independent exponential oracle: scaling-and-squaring on a plain Taylor
// series, no shared code with the library path.
inline Matrix taylor_exp(const Matrix& a) {
    const int d = static_cast<int>(a.rows());
    double norm = a.cwiseAbs().maxCoeff() * d;
    int squarings = 0;
    while (norm > 0.5) {
        norm *= 0.5;
        ++squarings;
    }
    const double scale = std::pow(0.5, squarings);
    Matrix term = Matrix::Identity(d, d);
    Matrix sum = term;
    for (int k = 1; k <= 30; ++k) {
        term = (term * a) * (scale / double(k));
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

// Brute-force partial trace: walks every full-space element pair and
// accumulates those whose traced-out indices coincide.
inline Matrix brute_force_partial_trace(const Matrix& rho, const std::vector<int>& dims,
                                        const std::vector<int>& keep) {
    const int n_slots = static_cast<int>(dims.size());
    auto decompose = [&](long idx) {
        std::vector<int> parts(n_slots);
        for (int k = n_slots - 1; k >= 0; --k) {
            parts[k] = static_cast<int>(idx % dims[k]);
            idx /= dims[k];
        }
        return parts;
    };
    long dim_keep = 1;
    for (int k : keep) dim_keep *= dims[k];
    auto kept_index = [&](const std::vector<int>& parts) {
        long idx = 0;
        for (int k : keep) idx = idx * dims[k] + parts[k];
        return idx;
    };

    Matrix out = Matrix::Zero(dim_keep, dim_keep);
    const long d = rho.rows();
    for (long r = 0; r < d; ++r) {
        const auto pr = decompose(r);
        for (long c = 0; c < d; ++c) {
            const auto pc = decompose(c);
            bool traced_match = true;
            for (int k = 0; k < n_slots; ++k) {
                bool kept = false;
                for (int kk : keep) kept = kept || (kk == k);
                if (!kept && pr[k] != pc[k]) traced_match = false;
            }
            if (traced_match) out(kept_index(pr), kept_index(pc)) += rho(r, c);
        }
    }
    return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace tlsim_test

#endif
