// states.hpp
// Initial pair states, the order-randomizing channel on Bob's register,
// and the closed-form block decomposition of the resulting mixed state.

#pragma once

#include <vector>

#include "ordermix/coupled_basis.hpp"
#include "ordermix/numkit.hpp"

namespace ordermix::states {

using coupled_basis::CoupledBasis;
using numkit::Operator;
using numkit::StateVector;

// Schmidt coefficient pair (alpha, beta) of alpha|00> + beta|11|>.
struct SchmidtParam {
    double alpha = 0.0;
    double beta = 0.0;

    static SchmidtParam from_alpha(double a);
    static SchmidtParam from_alpha_sq(double a2);
    static SchmidtParam maximal();  // alpha = beta = 1/sqrt(2)
};

struct BlockEntry {
    int j = 0;
    int alpha_j = 1;
    int beta_j = 1;
    double probability = 0.0;
    StateVector block_state;  // normalized, on 4J qubits, [Alice|Bob] layout
};

struct BlockSpectrum {
    int J = 0;
    std::vector<BlockEntry> entries;
};

// Classical-quantum joint state of the order record (ancilla) and the
// shared register.
struct CQState {
    std::size_t ancilla_dim = 0;
    Operator joint;  // block diagonal in the ancilla index
};

// Matrix paths materialize 2^{4J} x 2^{4J} operators; by default they are
// limited to J <= 2 and with the big override to J <= 3.
void check_size_guard(int J, bool big_override = false);

class size_guard_error : public std::runtime_error {
public:
    explicit size_guard_error(const std::string& what) : std::runtime_error(what) {}
};

// (alpha|00> + beta|11>)^(x)2J re-laid-out to [Alice qubits | Bob qubits].
StateVector initial_state(int J, const SchmidtParam& s);

// Reorder qubit wires: qubit k of the input becomes qubit perm[k] of the
// output.
StateVector reorder_qubits(const StateVector& psi, const std::vector<int>& perm);

// Conversion from the interleaved pair labeling (A1 B1 A2 B2 ...) to the
// internal [Alice|Bob] block layout.
StateVector interleaved_to_blocks(const StateVector& psi);

// Permute only Bob's 2J wires; perm has 2J entries.
StateVector permute_bob(const StateVector& psi, const std::vector<int>& perm);

std::vector<std::vector<int>> all_permutations(int n);

// Uniform average of rho over all (2J)! permutations of Bob's qubits.
Operator shuffle_channel(const Operator& rho, int J, bool big_override = false);

// Block probability p_j = sum_m alpha^{2(J-m)} beta^{2(J+m)} / d_j.
double block_probability(int J, int j, const SchmidtParam& s);

// Closed-form decomposition of the shuffled state; needs the coupled basis,
// so J <= 4.
BlockSpectrum closed_form_sigma(int J, const SchmidtParam& s, const CoupledBasis& basis);

Operator assemble_operator(const BlockSpectrum& b, bool big_override = false);

// Fully materialized order-record/system joint state (J = 1 only; the
// (2J)! ancilla flags make larger J a pure bookkeeping identity).
CQState cq_joint_state(int J, const SchmidtParam& s);

double mutual_information(const CQState& c);

}  // namespace ordermix::states
