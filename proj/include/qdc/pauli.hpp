#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qdc/errors.hpp"

namespace qdc {

enum class Axis { X, Y, Z };

struct PauliFactor {
    int site;  ///< 1-based site label
    Axis axis;
};

/// A product of single-site Pauli operators times a scalar. Site labels
/// within one string must be distinct.
struct PauliString {
    std::vector<PauliFactor> factors;
    std::complex<double> coefficient{1.0, 0.0};
};

struct PauliAction {
    std::uint64_t index;
    std::complex<double> amplitude;
};

/// Apply a Pauli string to a computational basis state.
///
/// Basis convention: site n corresponds to bit (n-1) of the index, and
/// bit value 0 encodes spin up (sigma_z eigenvalue +1). Pauli strings
/// map basis states to single basis states, so the result is one index
/// plus an amplitude: p|basis_index> = amplitude * |result index>.
inline PauliAction pauli_string_action(const PauliString& p,
                                       std::uint64_t basis_index,
                                       int n_sites) {
    if (n_sites < 1 || n_sites >= 64) {
        throw InputError("pauli_string_action: n_sites out of range");
    }
    const std::uint64_t dim = std::uint64_t{1} << n_sites;
    if (basis_index >= dim) {
        throw InputError("pauli_string_action: basis index " +
                         std::to_string(basis_index) + " out of range for " +
                         std::to_string(n_sites) + " sites");
    }

    std::uint64_t seen = 0;
    std::uint64_t index = basis_index;
    std::complex<double> amplitude = p.coefficient;
    constexpr std::complex<double> kImag{0.0, 1.0};

    for (const PauliFactor& f : p.factors) {
        if (f.site < 1 || f.site > n_sites) {
            throw InputError("pauli_string_action: site " +
                             std::to_string(f.site) + " out of range");
        }
        const std::uint64_t mask = std::uint64_t{1} << (f.site - 1);
        if (seen & mask) {
            throw InputError("pauli_string_action: repeated site " +
                             std::to_string(f.site));
        }
        seen |= mask;

        const bool down = (index & mask) != 0;  // bit 1 = spin down
        switch (f.axis) {
            case Axis::X:
                index ^= mask;
                break;
            case Axis::Y:
                index ^= mask;
                amplitude *= down ? -kImag : kImag;
                break;
            case Axis::Z:
                if (down) amplitude = -amplitude;
                break;
        }
    }
    return {index, amplitude};
}

} // namespace qdc
