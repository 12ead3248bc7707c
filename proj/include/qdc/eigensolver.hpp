#pragma once

#include <algorithm>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "qdc/errors.hpp"
#include "qdc/hamiltonian.hpp"

namespace qdc {

/// Ground states closer in energy than this to the next level are
/// reported as degenerate.
inline constexpr double kDefaultDegeneracyTol = 1e-9;

/// Normalized ground-state vector with energy and degeneracy metadata.
/// The global phase is fixed so the largest-magnitude amplitude is real
/// and nonnegative, making the vector reproducible bit for bit on a
/// given platform.
struct QuantumState {
    Eigen::VectorXcd amplitudes;
    double energy = 0.0;
    double degeneracy_gap = 0.0;  ///< E1 - E0
    bool is_degenerate = false;
};

inline void fix_global_phase(Eigen::VectorXcd& v) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::norm(v(i));
        if (mag > best) {
            best = mag;
            pivot = i;
        }
    }
    const std::complex<double> a = v(pivot);
    v *= std::conj(a) / std::abs(a);
}

/// Lowest eigenpair of a dense Hermitian operator via LAPACK zheevr
/// (tridiagonal reduction + MRRR, a deterministic dense solver). The two
/// lowest eigenvalues are requested so the gap E1 - E0 is available for
/// degeneracy detection.
inline QuantumState ground_state(const HermitianOperator& h_op,
                                 double degeneracy_tol = kDefaultDegeneracyTol) {
    if (degeneracy_tol <= 0.0) {
        throw InputError("ground_state: degeneracy_tol must be positive");
    }
    if (h_op.rows() == 0 || !is_hermitian(h_op)) {
        throw ContractViolation("ground_state: operator is not Hermitian");
    }

    const lapack_int n = static_cast<lapack_int>(h_op.rows());
    const lapack_int want = std::min<lapack_int>(2, n);
    Eigen::MatrixXcd work = h_op;  // zheevr overwrites its input
    std::vector<double> eigenvalues(static_cast<std::size_t>(n));
    Eigen::MatrixXcd vectors(n, want);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(want));
    lapack_int found = 0;

    const lapack_int info = LAPACKE_zheevr(
        LAPACK_COL_MAJOR, 'V', 'I', 'L', n, work.data(), n,
        /*vl=*/0.0, /*vu=*/0.0, /*il=*/1, /*iu=*/want, /*abstol=*/0.0,
        &found, eigenvalues.data(), vectors.data(), n, isuppz.data());
    if (info != 0 || found < want) {
        throw SolverError("ground_state: zheevr failed with info=" +
                          std::to_string(info));
    }

    QuantumState state;
    state.amplitudes = vectors.col(0);
    state.energy = eigenvalues[0];
    state.degeneracy_gap = want == 2 ? eigenvalues[1] - eigenvalues[0]
                                     : std::numeric_limits<double>::infinity();
    state.is_degenerate = state.degeneracy_gap < degeneracy_tol;
    fix_global_phase(state.amplitudes);
    return state;
}

/// Full eigendecomposition, ascending eigenvalues. Small dimensions only;
/// intended as a reference for tests and cross-checks.
struct Spectrum {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
};

inline Spectrum full_spectrum(const HermitianOperator& h_op) {
    if (h_op.rows() > 256) {
        throw CapacityError("full_spectrum: dimension " +
                            std::to_string(h_op.rows()) + " exceeds 256");
    }
    if (h_op.rows() == 0 || !is_hermitian(h_op)) {
        throw ContractViolation("full_spectrum: operator is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h_op);
    if (solver.info() != Eigen::Success) {
        throw SolverError("full_spectrum: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

} // namespace qdc
