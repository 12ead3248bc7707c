#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdc/errors.hpp"
#include "qdc/eigensolver.hpp"
#include "qdc/hamiltonian.hpp"

namespace qdc {

/// Eigenvalues of a density matrix below this threshold contribute zero
/// entropy; values below -kPositivityTol violate the positivity contract.
inline constexpr double kEntropyClamp = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

/// Positive unit-trace Hermitian matrix over a labeled subset of sites.
/// Local bit j of a row/column index corresponds to sites[j], so the
/// original chain's bit arithmetic keeps working after partial traces.
struct DensityMatrix {
    std::vector<int> sites;
    Eigen::MatrixXcd entries;

    Eigen::Index dimension() const { return entries.rows(); }
};

inline DensityMatrix density_from_pure(const QuantumState& state) {
    const Eigen::Index dim = state.amplitudes.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw InputError("density_from_pure: amplitude count is not a power of two");
    }
    if (std::abs(state.amplitudes.norm() - 1.0) > 1e-10) {
        throw ContractViolation("density_from_pure: state is not normalized");
    }
    DensityMatrix rho;
    int n_sites = 0;
    while ((Eigen::Index{1} << n_sites) < dim) ++n_sites;
    rho.sites.resize(static_cast<std::size_t>(n_sites));
    for (int s = 1; s <= n_sites; ++s) rho.sites[static_cast<std::size_t>(s - 1)] = s;
    rho.entries = state.amplitudes * state.amplitudes.adjoint();
    return rho;
}

namespace detail {

/// Positions (local bit indices) of the requested labels, in the order
/// they appear in rho.sites. Throws if a label is missing or repeated.
inline std::vector<int> site_positions(const DensityMatrix& rho,
                                       const std::vector<int>& labels,
                                       const char* op_name) {
    if (labels.empty()) {
        throw InputError(std::string(op_name) + ": empty site set");
    }
    std::vector<int> positions;
    positions.reserve(labels.size());
    for (std::size_t bit = 0; bit < rho.sites.size(); ++bit) {
        const auto hits = std::count(labels.begin(), labels.end(), rho.sites[bit]);
        if (hits > 1) {
            throw InputError(std::string(op_name) + ": repeated site label " +
                             std::to_string(rho.sites[bit]));
        }
        if (hits == 1) positions.push_back(static_cast<int>(bit));
    }
    if (positions.size() != labels.size()) {
        throw InputError(std::string(op_name) + ": site set is not a subset of the matrix sites");
    }
    return positions;
}

/// Scatter the low bits of `value` into the given bit positions.
inline std::uint64_t scatter_bits(std::uint64_t value, const std::vector<int>& positions) {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < positions.size(); ++k) {
        out |= ((value >> k) & 1u) << positions[k];
    }
    return out;
}

} // namespace detail

/// Trace out every site not listed in `keep`. The result is over the kept
/// sites in their original order, and its trace equals the input trace.
inline DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    const std::vector<int> kept_bits = detail::site_positions(rho, keep, "partial_trace");
    std::vector<int> traced_bits;
    for (int bit = 0; bit < static_cast<int>(rho.sites.size()); ++bit) {
        if (!std::count(kept_bits.begin(), kept_bits.end(), bit)) traced_bits.push_back(bit);
    }

    const std::uint64_t dim_keep = std::uint64_t{1} << kept_bits.size();
    const std::uint64_t dim_trace = std::uint64_t{1} << traced_bits.size();

    std::vector<std::uint64_t> keep_index(dim_keep), trace_index(dim_trace);
    for (std::uint64_t r = 0; r < dim_keep; ++r) keep_index[r] = detail::scatter_bits(r, kept_bits);
    for (std::uint64_t t = 0; t < dim_trace; ++t) trace_index[t] = detail::scatter_bits(t, traced_bits);

    DensityMatrix out;
    out.sites.reserve(kept_bits.size());
    for (int bit : kept_bits) out.sites.push_back(rho.sites[static_cast<std::size_t>(bit)]);
    out.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_keep),
                                         static_cast<Eigen::Index>(dim_keep));
    for (std::uint64_t r = 0; r < dim_keep; ++r) {
        for (std::uint64_t c = 0; c < dim_keep; ++c) {
            std::complex<double> sum = 0.0;
            for (std::uint64_t t = 0; t < dim_trace; ++t) {
                sum += rho.entries(static_cast<Eigen::Index>(keep_index[r] | trace_index[t]),
                                   static_cast<Eigen::Index>(keep_index[c] | trace_index[t]));
            }
            out.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = sum;
        }
    }
    return out;
}

/// S(rho) = -sum_i lambda_i log2 lambda_i, in bits.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries,
                                                           Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw SolverError("von_neumann_entropy: eigensolver did not converge");
    }
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (lambda < -kPositivityTol) {
            throw ContractViolation("von_neumann_entropy: eigenvalue " +
                                    std::to_string(lambda) + " below positivity tolerance");
        }
        if (lambda > kEntropyClamp) entropy -= lambda * std::log2(lambda);
    }
    return entropy;
}

/// Transpose the indices of the chosen subsystem only. The result is
/// Hermitian with unit trace but may have negative eigenvalues.
inline HermitianOperator partial_transpose(const DensityMatrix& rho,
                                           const std::vector<int>& transpose_sites) {
    const std::vector<int> bits = detail::site_positions(rho, transpose_sites, "partial_transpose");
    if (bits.size() == rho.sites.size()) {
        throw InputError("partial_transpose: site set must be a proper subset");
    }
    std::uint64_t mask = 0;
    for (int bit : bits) mask |= std::uint64_t{1} << bit;

    const std::uint64_t dim = static_cast<std::uint64_t>(rho.dimension());
    HermitianOperator out(rho.dimension(), rho.dimension());
    for (std::uint64_t row = 0; row < dim; ++row) {
        for (std::uint64_t col = 0; col < dim; ++col) {
            const std::uint64_t swapped_row = (row & ~mask) | (col & mask);
            const std::uint64_t swapped_col = (col & ~mask) | (row & mask);
            out(static_cast<Eigen::Index>(swapped_row),
                static_cast<Eigen::Index>(swapped_col)) =
                rho.entries(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
        }
    }
    return out;
}

struct NptResult {
    bool is_npt = false;
    double min_eigenvalue = 0.0;
};

/// Negativity-under-partial-transpose verdict: true when the smallest
/// eigenvalue of the partially transposed matrix falls below -tol.
inline NptResult is_npt(const DensityMatrix& rho,
                        const std::vector<int>& transpose_sites,
                        double tol = 1e-10) {
    if (tol <= 0.0) {
        throw InputError("is_npt: tol must be positive");
    }
    const HermitianOperator pt = partial_transpose(rho, transpose_sites);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pt, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw SolverError("is_npt: eigensolver did not converge");
    }
    const double min_eig = solver.eigenvalues()(0);
    return {min_eig < -tol, min_eig};
}

} // namespace qdc
