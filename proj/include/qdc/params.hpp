#pragma once

#include <cmath>
#include <string>

#include "qdc/errors.hpp"

namespace qdc {

/// Couplings of the ring Hamiltonian. All quantities are dimensionless
/// (hbar = 1). Boundary conditions are always periodic: site n_sites+1
/// is site 1 and site 0 is site n_sites.
struct SpinChainParams {
    int n_sites = 10;    ///< number of spin-1/2 sites N
    double j = 1.0;      ///< two-body XX/YY coupling J
    double alpha = 0.0;  ///< three-body (chiral) coupling, applied as J/4 * alpha/2
    double gamma = 0.0;  ///< XX/YY anisotropy
    double h = 0.0;      ///< transverse field along z
};

/// The three-body term couples sites n-1, n, n+1, which must be distinct
/// on the ring, hence the minimum of three sites.
inline void validate(const SpinChainParams& params) {
    if (params.n_sites < 3) {
        throw InputError("SpinChainParams: n_sites must be >= 3, got " +
                         std::to_string(params.n_sites));
    }
    if (!std::isfinite(params.j) || !std::isfinite(params.alpha) ||
        !std::isfinite(params.gamma) || !std::isfinite(params.h)) {
        throw InputError("SpinChainParams: all couplings must be finite");
    }
}

} // namespace qdc
