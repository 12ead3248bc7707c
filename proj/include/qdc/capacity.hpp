#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "qdc/density_matrix.hpp"
#include "qdc/eigensolver.hpp"
#include "qdc/errors.hpp"
#include "qdc/hamiltonian.hpp"
#include "qdc/params.hpp"

namespace qdc {

/// Sender and receiver site groups of one protocol, 1-based labels.
/// Both groups are nonempty and disjoint.
struct ChannelSpec {
    std::vector<int> senders;
    std::vector<int> receiver_sites;
};

inline void validate(const ChannelSpec& spec) {
    if (spec.senders.empty()) {
        throw InputError("channel needs at least one sender");
    }
    if (spec.receiver_sites.empty()) {
        throw InputError("channel needs at least one receiver");
    }
    for (std::size_t i = 0; i < spec.senders.size(); ++i) {
        if (std::count(spec.senders.begin(), spec.senders.end(), spec.senders[i]) != 1) {
            throw InputError("channel sender listed twice");
        }
    }
    for (std::size_t i = 0; i < spec.receiver_sites.size(); ++i) {
        if (std::count(spec.receiver_sites.begin(), spec.receiver_sites.end(),
                       spec.receiver_sites[i]) != 1) {
            throw InputError("channel receiver listed twice");
        }
    }
    for (int sender : spec.senders) {
        if (std::count(spec.receiver_sites.begin(), spec.receiver_sites.end(), sender)) {
            throw InputError("channel sender and receiver groups overlap");
        }
    }
}

inline ChannelSpec single_channel(int sender, int receiver) {
    return {{sender}, {receiver}};
}

inline ChannelSpec multiport_channel(int n_sites, int receiver) {
    ChannelSpec spec;
    spec.receiver_sites.push_back(receiver);
    for (int site = 1; site <= n_sites; ++site) {
        if (site != receiver) spec.senders.push_back(site);
    }
    return spec;
}

/// Message rate achievable with no shared correlations, per qubit the
/// channel handles: k sender qubits carry k bits over k + r qubits.
inline double classical_capacity(const ChannelSpec& spec) {
    validate(spec);
    const double k = static_cast<double>(spec.senders.size());
    const double r = static_cast<double>(spec.receiver_sites.size());
    return k / (k + r);
}

/// Per-qubit rate of the two-site protocol, in bits. Exceeds 1/2 only
/// when the pair is usefully correlated; smaller values are reported as
/// computed, with no clamping.
inline double single_channel_capacity(const DensityMatrix& rho_ab,
                                      int sender, int receiver) {
    if (sender == receiver) {
        throw InputError("single_channel_capacity: sender equals receiver");
    }
    const bool covers_pair =
        rho_ab.sites.size() == 2 &&
        std::count(rho_ab.sites.begin(), rho_ab.sites.end(), sender) == 1 &&
        std::count(rho_ab.sites.begin(), rho_ab.sites.end(), receiver) == 1;
    if (!covers_pair) {
        throw InputError("single_channel_capacity: matrix must cover exactly the sender and receiver sites");
    }
    const DensityMatrix rho_receiver = partial_trace(rho_ab, {receiver});
    return (1.0 + von_neumann_entropy(rho_receiver) -
            von_neumann_entropy(rho_ab)) / 2.0;
}

/// Per-qubit rate when every site except the receiver encodes
/// independently and the receiver decodes all ports jointly. For a pure
/// input the result sits in [(n-1)/n, 1].
inline double multiport_capacity(const DensityMatrix& rho_full, int receiver) {
    const int n = static_cast<int>(rho_full.sites.size());
    if (n < 2) {
        throw InputError("multiport_capacity: need at least two sites");
    }
    if (std::count(rho_full.sites.begin(), rho_full.sites.end(), receiver) != 1) {
        throw InputError("multiport_capacity: receiver is not one of the matrix sites");
    }
    const DensityMatrix rho_receiver = partial_trace(rho_full, {receiver});
    return (static_cast<double>(n - 1) + von_neumann_entropy(rho_receiver) -
            von_neumann_entropy(rho_full)) / static_cast<double>(n);
}

/// Best two-site rate a fixed sender reaches over all partner choices.
struct ExclusionCapacity {
    double value = 0.0;
    int best_receiver = 0;
};

/// Scans partners in ascending site order; ties keep the smallest site.
inline ExclusionCapacity exclusion_capacity(const DensityMatrix& rho_full,
                                            int sender = 1) {
    if (rho_full.sites.size() < 3) {
        throw InputError("exclusion_capacity: need at least three sites");
    }
    if (std::count(rho_full.sites.begin(), rho_full.sites.end(), sender) != 1) {
        throw InputError("exclusion_capacity: sender is not one of the matrix sites");
    }
    ExclusionCapacity best;
    best.value = -std::numeric_limits<double>::infinity();
    for (int site : rho_full.sites) {
        if (site == sender) continue;
        const DensityMatrix rho_pair = partial_trace(rho_full, {sender, site});
        const double c = single_channel_capacity(rho_pair, sender, site);
        if (c > best.value) {
            best.value = c;
            best.best_receiver = site;
        }
    }
    return best;
}

inline ExclusionCapacity exclusion_capacity(const QuantumState& ground,
                                            int sender = 1) {
    return exclusion_capacity(density_from_pure(ground), sender);
}

/// Compares the receiver's summed two-site rates against the joint
/// multiport rate. `holds` is a strict inequality, so boundary cases
/// with equal sides report false.
struct MonogamyCheck {
    double sum_single = 0.0;
    double multiport = 0.0;
    bool holds = false;
};

inline MonogamyCheck receiver_monogamy_check(const QuantumState& ground,
                                             int receiver) {
    const DensityMatrix rho = density_from_pure(ground);
    MonogamyCheck check;
    for (int site : rho.sites) {
        if (site == receiver) continue;
        const DensityMatrix rho_pair = partial_trace(rho, {site, receiver});
        check.sum_single += single_channel_capacity(rho_pair, site, receiver);
    }
    check.multiport = multiport_capacity(rho, receiver);
    check.holds = check.sum_single < check.multiport;
    return check;
}

/// Mean multiport rate over the field grid h_i = i / m for i = 1..m,
/// with the chain otherwise fixed. Every term is computed from a fresh
/// ground state; terms are summed in ascending field order.
inline double field_averaged_capacity(SpinChainParams params, int receiver,
                                      int m = 100) {
    if (m < 1) {
        throw InputError("field_averaged_capacity: m must be at least 1");
    }
    double sum = 0.0;
    for (int i = 1; i <= m; ++i) {
        params.h = static_cast<double>(i) / static_cast<double>(m);
        validate(params);
        check_dense_budget(params.n_sites);
        const QuantumState ground = ground_state(build_hamiltonian(params));
        sum += multiport_capacity(density_from_pure(ground), receiver);
    }
    return sum / static_cast<double>(m);
}

/// Everything reported for one parameter point. `averaged` marks records
/// whose multiport rate is a mean over a transverse-field grid; such
/// records carry NaN in the field and in the two-site columns. `failed`
/// marks records whose computation threw; their rate columns are NaN,
/// their flags false, and `diagnostic` holds the error text.
struct CapacityRecord {
    SpinChainParams params;
    double c_single_nn = 0.0;
    double c_multiport = 0.0;
    double c_exclusion = 0.0;
    double classical_capacity = 0.0;
    bool npt_nn = false;
    bool ground_degenerate = false;
    bool averaged = false;
    bool failed = false;
    std::string diagnostic;
};

/// Solves one parameter point end to end. The two-site columns use the
/// adjacent pair (1, 2), the multiport receiver is the last site, and
/// the exclusion scan fixes site 1 as the sender.
inline CapacityRecord capacity_record(const SpinChainParams& params,
                                      double degeneracy_tol = kDefaultDegeneracyTol) {
    validate(params);
    check_dense_budget(params.n_sites);
    const HermitianOperator h_op = build_hamiltonian(params);
    const QuantumState ground = ground_state(h_op, degeneracy_tol);
    const DensityMatrix rho = density_from_pure(ground);
    const DensityMatrix rho_nn = partial_trace(rho, {1, 2});

    CapacityRecord rec;
    rec.params = params;
    rec.c_single_nn = single_channel_capacity(rho_nn, 1, 2);
    rec.c_multiport = multiport_capacity(rho, params.n_sites);
    rec.c_exclusion = exclusion_capacity(rho, 1).value;
    rec.classical_capacity =
        classical_capacity(multiport_channel(params.n_sites, params.n_sites));
    rec.npt_nn = is_npt(rho_nn, {2}).is_npt;
    rec.ground_degenerate = ground.is_degenerate;
    return rec;
}

/// Folds per-field sample records into one averaged record. Summation
/// runs in sample order, so callers that fill `samples` by ascending
/// field index get the same mean no matter how the samples were
/// produced.
inline CapacityRecord reduce_field_samples(const SpinChainParams& base,
                                           const std::vector<CapacityRecord>& samples) {
    if (samples.empty()) {
        throw InputError("reduce_field_samples: no samples");
    }
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    CapacityRecord rec;
    rec.params = base;
    rec.params.h = nan;
    rec.averaged = true;
    rec.c_single_nn = nan;
    rec.c_exclusion = nan;
    rec.classical_capacity =
        classical_capacity(multiport_channel(base.n_sites, base.n_sites));

    bool all_npt = true;
    bool any_degenerate = false;
    double sum = 0.0;
    for (const CapacityRecord& sample : samples) {
        if (sample.failed && !rec.failed) {
            rec.failed = true;
            rec.diagnostic = sample.diagnostic;
        }
        all_npt = all_npt && sample.npt_nn;
        any_degenerate = any_degenerate || sample.ground_degenerate;
        sum += sample.c_multiport;
    }
    if (rec.failed) {
        rec.c_multiport = nan;
        rec.npt_nn = false;
        rec.ground_degenerate = false;
    } else {
        rec.c_multiport = sum / static_cast<double>(samples.size());
        rec.npt_nn = all_npt;
        rec.ground_degenerate = any_degenerate;
    }
    return rec;
}

/// Record-level companion of field_averaged_capacity: evaluates the full
/// record at every h_i = i / m_samples and folds the samples in
/// ascending field order.
inline CapacityRecord field_averaged_record(SpinChainParams params,
                                            int m_samples = 100,
                                            double degeneracy_tol = kDefaultDegeneracyTol) {
    if (m_samples < 1) {
        throw InputError("field_averaged_record: m_samples must be at least 1");
    }
    const SpinChainParams base = params;
    std::vector<CapacityRecord> samples;
    samples.reserve(static_cast<std::size_t>(m_samples));
    for (int i = 1; i <= m_samples; ++i) {
        params.h = static_cast<double>(i) / static_cast<double>(m_samples);
        samples.push_back(capacity_record(params, degeneracy_tol));
    }
    return reduce_field_samples(base, samples);
}

} // namespace qdc
