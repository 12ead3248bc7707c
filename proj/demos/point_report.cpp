// Minimal library walkthrough: solve one parameter point and print every
// rate and diagnostic the library computes for it.
//
// Usage: point_report [n_sites [j [alpha [gamma [h]]]]]

#include <cstdlib>
#include <iostream>

#include "qdc/qdc.hpp"

int main(int argc, char** argv) {
    setenv("OPENBLAS_NUM_THREADS", "1", 1);

    qdc::SpinChainParams params;
    params.n_sites = 6;
    params.j = 1.0;
    params.alpha = 0.6;
    params.gamma = 0.7;
    params.h = 0.4;
    if (argc > 1) params.n_sites = std::atoi(argv[1]);
    if (argc > 2) params.j = std::atof(argv[2]);
    if (argc > 3) params.alpha = std::atof(argv[3]);
    if (argc > 4) params.gamma = std::atof(argv[4]);
    if (argc > 5) params.h = std::atof(argv[5]);

    try {
        qdc::validate(params);
        const qdc::HermitianOperator h_op = qdc::build_hamiltonian(params);
        const qdc::QuantumState ground = qdc::ground_state(h_op);
        const qdc::CapacityRecord record = qdc::capacity_record(params);
        const qdc::ExclusionCapacity exclusion = qdc::exclusion_capacity(ground, 1);
        const qdc::MonogamyCheck monogamy =
            qdc::receiver_monogamy_check(ground, params.n_sites);

        std::cout << "chain: n=" << params.n_sites << " j=" << params.j
                  << " alpha=" << params.alpha << " gamma=" << params.gamma
                  << " h=" << params.h << '\n';
        std::cout << "ground energy:        " << ground.energy
                  << (ground.is_degenerate ? "  (degenerate)" : "") << '\n';
        std::cout << "gap to next level:    " << ground.degeneracy_gap << '\n';
        std::cout << "pair (1,2) rate:      " << record.c_single_nn << '\n';
        std::cout << "pair (1,2) is NPT:    " << (record.npt_nn ? "yes" : "no") << '\n';
        std::cout << "multiport rate:       " << record.c_multiport << '\n';
        std::cout << "classical floor:      " << record.classical_capacity << '\n';
        std::cout << "best pair for site 1: site " << exclusion.best_receiver
                  << " at rate " << exclusion.value << '\n';
        std::cout << "receiver monogamy:    sum of pair rates "
                  << monogamy.sum_single << (monogamy.holds ? " < " : " >= ")
                  << monogamy.multiport << " multiport rate\n";
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 0;
}
