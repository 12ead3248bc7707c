#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdc/errors.hpp"
#include "qdc/params.hpp"
#include "qdc/pauli.hpp"

namespace qdc {

/// Dense complex Hermitian matrix over the 2^N computational basis.
using HermitianOperator = Eigen::MatrixXcd;

/// Largest chain stored as a dense matrix (2^14 x 2^14 complex doubles).
inline constexpr int kMaxDenseSites = 14;

inline bool is_hermitian(const HermitianOperator& op, double tol = 1e-12) {
    if (op.rows() != op.cols()) return false;
    return (op - op.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// The Hamiltonian as a list of Pauli strings:
///
///   H = -J/4 * sum_n [ (1+gamma) x_n x_{n+1} + (1-gamma) y_n y_{n+1}
///                      + alpha/2 * (x_{n-1} z_n y_{n+1} - y_{n-1} z_n x_{n+1}) ]
///       - h/2 * sum_n z_n
///
/// with n = 1..N and periodic wrapping on both sides. The three-body
/// coupling sits inside the bracket, so it carries the global J/4 factor.
inline std::vector<PauliString> hamiltonian_terms(const SpinChainParams& params) {
    validate(params);
    const int n_sites = params.n_sites;
    const double bond = -params.j / 4.0;
    const double chiral = bond * params.alpha / 2.0;

    std::vector<PauliString> terms;
    terms.reserve(static_cast<std::size_t>(n_sites) * 5);
    for (int n = 1; n <= n_sites; ++n) {
        const int next = n % n_sites + 1;
        const int prev = (n + n_sites - 2) % n_sites + 1;
        terms.push_back({{{n, Axis::X}, {next, Axis::X}}, bond * (1.0 + params.gamma)});
        terms.push_back({{{n, Axis::Y}, {next, Axis::Y}}, bond * (1.0 - params.gamma)});
        terms.push_back({{{prev, Axis::X}, {n, Axis::Z}, {next, Axis::Y}}, chiral});
        terms.push_back({{{prev, Axis::Y}, {n, Axis::Z}, {next, Axis::X}}, -chiral});
        terms.push_back({{{n, Axis::Z}}, -params.h / 2.0});
    }
    return terms;
}

inline void check_dense_budget(int n_sites) {
    if (n_sites > kMaxDenseSites) {
        throw CapacityError("dense storage refused: dimension 2^" +
                            std::to_string(n_sites) + " = " +
                            std::to_string(std::uint64_t{1} << n_sites) +
                            " exceeds the " + std::to_string(kMaxDenseSites) +
                            "-site budget");
    }
}

/// Assemble the Hamiltonian column by column from its Pauli strings.
inline HermitianOperator build_hamiltonian(const SpinChainParams& params) {
    validate(params);
    check_dense_budget(params.n_sites);
    const std::uint64_t dim = std::uint64_t{1} << params.n_sites;

    HermitianOperator h_op = HermitianOperator::Zero(static_cast<Eigen::Index>(dim),
                                                     static_cast<Eigen::Index>(dim));
    for (const PauliString& term : hamiltonian_terms(params)) {
        for (std::uint64_t col = 0; col < dim; ++col) {
            const PauliAction a = pauli_string_action(term, col, params.n_sites);
            h_op(static_cast<Eigen::Index>(a.index), static_cast<Eigen::Index>(col)) +=
                a.amplitude;
        }
    }
    return h_op;
}

/// Total magnetization sum_n z_n, diagonal in the computational basis.
/// Commutes with the Hamiltonian exactly when gamma = 0.
inline HermitianOperator total_sz_operator(int n_sites) {
    if (n_sites < 1) {
        throw InputError("total_sz_operator: n_sites must be >= 1");
    }
    check_dense_budget(n_sites);
    const std::uint64_t dim = std::uint64_t{1} << n_sites;
    HermitianOperator sz = HermitianOperator::Zero(static_cast<Eigen::Index>(dim),
                                                   static_cast<Eigen::Index>(dim));
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        const int down = std::popcount(idx & ((std::uint64_t{1} << n_sites) - 1));
        sz(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) =
            static_cast<double>(n_sites - 2 * down);
    }
    return sz;
}

} // namespace qdc
