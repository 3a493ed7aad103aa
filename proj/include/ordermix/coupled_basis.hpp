// coupled_basis.hpp
// Coupled angular-momentum basis |j,m,alpha> for 2J qubits, built by
// recursive Clebsch-Gordan coupling one qubit at a time. The alpha=1
// multiplicity vector of each j sector is aligned with the Dicke-block
// representative |j,m> (x) singlet^(J-j).

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ordermix/numkit.hpp"

namespace ordermix::coupled_basis {

using numkit::Operator;
using numkit::StateVector;

struct CoupledLabel {
    int j = 0;      // total spin, integer since the qubit count is even
    int m = 0;      // -j..j
    int alpha = 1;  // 1..d_j multiplicity index

    bool operator<(const CoupledLabel& o) const {
        if (j != o.j) return j < o.j;
        if (alpha != o.alpha) return alpha < o.alpha;
        return m < o.m;
    }
};

struct CoupledBasis {
    int J = 0;        // half the qubit count
    int n_qubits = 0; // 2J
    std::map<CoupledLabel, StateVector> vectors;
    // per j sector, the coupling paths (sequence of 2*j_intermediate after
    // each qubit) in lexicographic order; size equals the degeneracy d_j
    std::map<int, std::vector<std::vector<int>>> path_table;

    const StateVector& vector(int j, int m, int alpha) const;
};

// d_j = (2j+1)/(2J+1) * C(2J+1, J-j), exact integer arithmetic.
std::int64_t degeneracy(int J, int j);

std::int64_t binomial(int n, int k);

// Dicke state of 2j qubits with j+m excitations (|1> = spin up).
StateVector dicke_block(int j, int m);

// Two-qubit singlet (|01> - |10>)/sqrt(2).
StateVector singlet();

// Dicke block padded with J-j trailing singlet pairs, on 2J qubits.
StateVector representative(int J, int j, int m);

CoupledBasis build_basis(int J);

// Projector onto span{|j,m,alpha> : m}, acting on 2J qubits.
Operator sector_projector(const CoupledBasis& basis, int j, int alpha);

// Unitary swapping the alpha <-> 1 multiplicity labels of sector j, identity
// elsewhere.
Operator label_swap_unitary(const CoupledBasis& basis, int j, int alpha);

// Total S_z and S^2 operators on n qubits, in units where each qubit is
// spin one half and |1> carries m = +1/2.
Operator total_sz(int n_qubits);
Operator total_s_squared(int n_qubits);

// Permutation operator on computational basis states: qubit k of the input
// becomes qubit perm[k] of the output.
Operator qubit_permutation_operator(const std::vector<int>& perm);

}  // namespace ordermix::coupled_basis
