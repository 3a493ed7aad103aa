// distill.hpp
// The optimal distillation protocol: Alice projects onto a (j, alpha)
// sector, rotates the multiplicity label to 1, discards the trailing
// singlet pairs; Bob does the same on his register. Exhaustive branch
// enumeration and seeded Monte Carlo realizations.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordermix/coupled_basis.hpp"
#include "ordermix/states.hpp"

namespace ordermix::distill {

using coupled_basis::CoupledBasis;
using numkit::StateVector;
using states::SchmidtParam;

struct ProtocolOutcome {
    int j = 0;
    int alpha_j = 1;
    int beta_j = 1;
    double probability = 0.0;
    StateVector final_state;  // on 4j qubits, [Alice 2j | Bob 2j]
    double yield_bits = 0.0;
};

struct TraceStep {
    int step = 0;
    std::string label;
    double norm = 1.0;  // post-measurement branch norm (sqrt of probability)
    std::vector<int> discarded;
};

struct ProtocolTrace {
    std::uint64_t seed = 0;
    std::vector<TraceStep> steps;

    std::string to_ldjson() const;  // one JSON record per line
};

// Counter-based splitmix64 stream; identical seeds give identical shots.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform();  // [0, 1)

private:
    std::uint64_t state_;
};

// Single protocol steps on pure states of the full [Alice|Bob] register.
// Projectors act on one side only; operators are arbitrary one-side maps.
StateVector apply_alice_projector(const StateVector& psi, const CoupledBasis& basis,
                                  int j, int alpha);
StateVector apply_bob_projector(const StateVector& psi, const CoupledBasis& basis,
                                int j, int alpha);
StateVector apply_alice_operator(const StateVector& psi, const numkit::Operator& op);
StateVector apply_bob_operator(const StateVector& psi, const numkit::Operator& op);

// Project the trailing J-j singlet pairs out of both registers, leaving a
// (possibly sub-normalized) state on 4j qubits.
StateVector contract_singlets(const StateVector& psi, int J, int j);

// One branch per (j, alpha_j, beta_j); probabilities sum to 1. Matrix
// simulation, so the usual J <= 2 guard applies.
std::vector<ProtocolOutcome> enumerate_outcomes(int J, const SchmidtParam& s,
                                                const CoupledBasis& basis,
                                                bool big_override = false);

double average_yield(const std::vector<ProtocolOutcome>& outcomes);

std::pair<ProtocolOutcome, ProtocolTrace> run_shot(int J, const SchmidtParam& s,
                                                   const CoupledBasis& basis,
                                                   std::uint64_t seed,
                                                   bool big_override = false);

struct ShotSummary {
    struct Branch {
        int j = 0;
        int alpha_j = 1;
        int beta_j = 1;
        std::uint64_t count = 0;
        double frequency = 0.0;
        double expected = 0.0;
        double std_error = 0.0;
    };
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::vector<Branch> branches;
};

ShotSummary monte_carlo(int J, const SchmidtParam& s, const CoupledBasis& basis,
                        std::uint64_t shots, std::uint64_t seed, bool big_override = false);

// Smallest fidelity of any discarded pair's reduced state with the singlet,
// over both registers, for a post-measurement state in the j sector.
double min_discarded_singlet_fidelity(const StateVector& psi, int J, int j);

}  // namespace ordermix::distill
