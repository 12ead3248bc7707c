#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "qdc/eigensolver.hpp"
#include "qdc/hamiltonian.hpp"

#include "oracles.hpp"

using Catch::Matchers::WithinAbs;

namespace {

qdc::SpinChainParams make_params(int n, double j, double alpha, double gamma,
                                 double h) {
    qdc::SpinChainParams p;
    p.n_sites = n;
    p.j = j;
    p.alpha = alpha;
    p.gamma = gamma;
    p.h = h;
    return p;
}

qdc::HermitianOperator diagonal_matrix(std::initializer_list<double> values) {
    const Eigen::Index n = static_cast<Eigen::Index>(values.size());
    qdc::HermitianOperator m = qdc::HermitianOperator::Zero(n, n);
    Eigen::Index i = 0;
    for (const double v : values) {
        m(i, i) = v;
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("ground state of a diagonal matrix", "[eigensolver]") {
    const qdc::QuantumState state =
        qdc::ground_state(diagonal_matrix({-1.0, 0.0, 0.0, 1.0}));

    CHECK_THAT(state.energy, WithinAbs(-1.0, 1e-14));
    CHECK_THAT(std::abs(state.amplitudes(0)), WithinAbs(1.0, 1e-14));
    CHECK(state.amplitudes(0).real() > 0.0);
    CHECK_FALSE(state.is_degenerate);
    CHECK_THAT(state.degeneracy_gap, WithinAbs(1.0, 1e-14));
}

TEST_CASE("field-only chain polarizes to the all-up state", "[eigensolver]") {
    const qdc::QuantumState state = qdc::ground_state(
        qdc::build_hamiltonian(make_params(3, 0.0, 0.0, 0.0, 1.0)));

    CHECK_THAT(state.energy, WithinAbs(-1.5, 1e-12));
    CHECK_THAT(std::abs(state.amplitudes(0)), WithinAbs(1.0, 1e-12));
}

TEST_CASE("four-site chain matches the general-solver reference",
          "[eigensolver]") {
    const qdc::SpinChainParams p = make_params(4, 1.0, 0.6, 0.7, 0.4);
    const qdc::QuantumState state = qdc::ground_state(qdc::build_hamiltonian(p));
    const oracle::Matrix ref = oracle::chain_hamiltonian(p);

    CHECK_THAT(state.energy, WithinAbs(oracle::ground_energy(ref), 1e-10));
    CHECK_THAT(state.energy, WithinAbs(-1.80622577482986, 1e-10));
    CHECK_THAT(state.degeneracy_gap,
               WithinAbs(-1.79522534276347 - -1.80622577482986, 1e-9));
    CHECK_FALSE(state.is_degenerate);
}

TEST_CASE("known closed-form levels are reproduced", "[eigensolver]") {
    const qdc::QuantumState state = qdc::ground_state(
        qdc::build_hamiltonian(make_params(4, 1.0, 1.8, 0.0, 0.9)));
    CHECK_THAT(state.energy, WithinAbs(-1.9, 1e-10));
    CHECK_THAT(state.degeneracy_gap, WithinAbs(0.1, 1e-10));

    const qdc::QuantumState six = qdc::ground_state(
        qdc::build_hamiltonian(make_params(6, 1.0, 0.6, 0.7, 0.4)));
    CHECK_THAT(six.energy, WithinAbs(-2.70256071774751, 1e-9));
}

TEST_CASE("ground state satisfies the eigenvalue equation", "[eigensolver]") {
    const qdc::HermitianOperator h_op =
        qdc::build_hamiltonian(make_params(6, 1.3, 0.7, 0.35, 0.25));
    const qdc::QuantumState state = qdc::ground_state(h_op);

    const double residual =
        (h_op * state.amplitudes - state.energy * state.amplitudes).norm();
    const double scale =
        h_op.cwiseAbs().maxCoeff() * static_cast<double>(h_op.rows());
    CHECK(residual < 1e-8 * scale);
    CHECK_THAT(state.amplitudes.norm(), WithinAbs(1.0, 1e-12));

    const double rayleigh =
        (state.amplitudes.adjoint() * h_op * state.amplitudes)(0, 0).real();
    CHECK_THAT(state.energy, WithinAbs(rayleigh, 1e-8));
}

TEST_CASE("no random vector beats the ground energy", "[eigensolver]") {
    const qdc::HermitianOperator h_op =
        qdc::build_hamiltonian(make_params(4, 1.0, 0.6, 0.7, 0.4));
    const qdc::QuantumState state = qdc::ground_state(h_op);

    std::mt19937 rng(777);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::VectorXcd v(h_op.rows());
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            v(i) = std::complex<double>(gauss(rng), gauss(rng));
        }
        v /= v.norm();
        const double energy = (v.adjoint() * h_op * v)(0, 0).real();
        CHECK(energy >= state.energy - 1e-10);
    }
}

TEST_CASE("global phase pins the dominant amplitude", "[eigensolver]") {
    const qdc::QuantumState state = qdc::ground_state(
        qdc::build_hamiltonian(make_params(5, 1.0, 1.8, 0.7, 0.9)));

    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
        if (std::norm(state.amplitudes(i)) > best) {
            best = std::norm(state.amplitudes(i));
            pivot = i;
        }
    }
    CHECK(std::abs(state.amplitudes(pivot).imag()) < 1e-12);
    CHECK(state.amplitudes(pivot).real() > 0.0);
}

TEST_CASE("repeated solves are bit-identical", "[eigensolver]") {
    const qdc::HermitianOperator h_op =
        qdc::build_hamiltonian(make_params(6, 1.0, 0.6, 0.7, 0.4));
    const qdc::QuantumState a = qdc::ground_state(h_op);
    const qdc::QuantumState b = qdc::ground_state(h_op);

    CHECK(a.energy == b.energy);
    CHECK(a.degeneracy_gap == b.degeneracy_gap);
    REQUIRE(a.amplitudes.size() == b.amplitudes.size());
    for (Eigen::Index i = 0; i < a.amplitudes.size(); ++i) {
        CHECK(a.amplitudes(i) == b.amplitudes(i));
    }
}

TEST_CASE("degenerate ground levels are flagged", "[eigensolver]") {
    const qdc::QuantumState state =
        qdc::ground_state(diagonal_matrix({-1.0, -1.0, 0.0, 1.0}));
    CHECK(state.is_degenerate);
    CHECK_THAT(state.degeneracy_gap, WithinAbs(0.0, 1e-14));
}

TEST_CASE("full spectrum on small matrices", "[eigensolver]") {
    qdc::HermitianOperator sx(2, 2);
    sx << 0.0, 1.0, 1.0, 0.0;
    const qdc::Spectrum flip = qdc::full_spectrum(sx);
    CHECK_THAT(flip.eigenvalues(0), WithinAbs(-1.0, 1e-14));
    CHECK_THAT(flip.eigenvalues(1), WithinAbs(1.0, 1e-14));

    const qdc::Spectrum diag = qdc::full_spectrum(diagonal_matrix({3.0, 1.0, 2.0}));
    CHECK_THAT(diag.eigenvalues(0), WithinAbs(1.0, 1e-14));
    CHECK_THAT(diag.eigenvalues(1), WithinAbs(2.0, 1e-14));
    CHECK_THAT(diag.eigenvalues(2), WithinAbs(3.0, 1e-14));
}

TEST_CASE("full spectrum reconstructs the operator", "[eigensolver]") {
    const qdc::HermitianOperator h_op =
        qdc::build_hamiltonian(make_params(4, 1.0, 0.0, 0.0, 0.5));
    const qdc::Spectrum spectrum = qdc::full_spectrum(h_op);

    const Eigen::MatrixXcd rebuilt = spectrum.eigenvectors *
                                     spectrum.eigenvalues.asDiagonal() *
                                     spectrum.eigenvectors.adjoint();
    CHECK((rebuilt - h_op).cwiseAbs().maxCoeff() < 1e-9);

    const std::vector<double> ref = oracle::spectrum(oracle::chain_hamiltonian(
        make_params(4, 1.0, 0.0, 0.0, 0.5)));
    for (Eigen::Index i = 0; i < spectrum.eigenvalues.size(); ++i) {
        CHECK_THAT(spectrum.eigenvalues(i),
                   WithinAbs(ref[static_cast<std::size_t>(i)], 1e-10));
    }
}

TEST_CASE("solver input contracts are enforced", "[eigensolver]") {
    qdc::HermitianOperator skew(2, 2);
    skew << 0.0, 1.0, 2.0, 0.0;
    CHECK_THROWS_AS(qdc::ground_state(skew), qdc::ContractViolation);
    CHECK_THROWS_AS(qdc::full_spectrum(skew), qdc::ContractViolation);

    CHECK_THROWS_AS(qdc::ground_state(diagonal_matrix({1.0, 2.0}), 0.0),
                    qdc::InputError);

    const qdc::HermitianOperator big =
        qdc::HermitianOperator::Zero(512, 512);
    CHECK_THROWS_AS(qdc::full_spectrum(big), qdc::CapacityError);
}
