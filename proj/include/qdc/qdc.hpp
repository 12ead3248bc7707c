#pragma once

/// Umbrella header: ground states of a ring of spin-1/2 sites with
/// two-site and chiral three-site couplings in a transverse field, the
/// dense coding rates of channels built from those states, and the
/// sweep engine that tabulates them.

#include "qdc/capacity.hpp"
#include "qdc/density_matrix.hpp"
#include "qdc/eigensolver.hpp"
#include "qdc/errors.hpp"
#include "qdc/hamiltonian.hpp"
#include "qdc/params.hpp"
#include "qdc/pauli.hpp"
#include "qdc/sweep.hpp"
