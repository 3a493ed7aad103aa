// quantities.hpp
// Closed-form entanglement and information quantities. Everything here is
// pure arithmetic over the degeneracies and block probabilities; no state
// vectors are materialized, so it scales to J = 16.

#pragma once

#include "ordermix/states.hpp"

namespace ordermix::quantities {

using states::SchmidtParam;

struct SweepRecord {
    int J = 0;
    double alpha = 0.0;
    double e_initial = 0.0;  // bits
    double e_distillable = 0.0;
    double delta_i = 0.0;
    double ratio = 0.0;
    bool ratio_defined = false;  // false when delta_i ~ 0
};

inline constexpr int kMaxClosedFormJ = 16;

// N times the binary entropy of alpha^2, in bits.
double initial_entanglement(int N, const SchmidtParam& s);

// Entanglement entropy of the normalized j block state.
double block_entanglement(int j, const SchmidtParam& s);

// sum_j d_j^2 p_j S_j; reduces to sum_j d_j^2 p_j log2(2j+1) at maximal
// entanglement.
double distillable_entanglement(int J, const SchmidtParam& s);

// Entropy of the block spectrum, -sum_j d_j^2 p_j log2 p_j.
double information_loss(int J, const SchmidtParam& s);

SweepRecord ratio(int J, const SchmidtParam& s);

}  // namespace ordermix::quantities
