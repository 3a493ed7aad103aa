// bounds.hpp
// The separable reference state, the relative-entropy upper bound on the
// distillable entanglement, and the optimality certificate.

#pragma once

#include "ordermix/quantities.hpp"
#include "ordermix/states.hpp"

namespace ordermix::bounds {

using coupled_basis::CoupledBasis;
using numkit::Operator;
using states::SchmidtParam;

// Explicit product decomposition rho = sum_k w_k A_k (x) B_k.
struct SeparableCertificate {
    struct Term {
        double weight = 0.0;
        Operator alice_state;
        Operator bob_state;
    };
    std::vector<Term> terms;

    Operator reconstruct() const;
};

// The (j,m,alpha,beta)-diagonal dephasing of sigma in the product coupled
// basis; manifestly separable, and equal to the uniform mixture
// sum p_j/(2j+1) |j,m,a>|j,m,b><...| at maximal entanglement.
std::pair<Operator, SeparableCertificate> separable_rho(int J, const SchmidtParam& s,
                                                        const CoupledBasis& basis);

// S(sigma||rho) by the closed form sum_j d_j^2 p_j S_j; identical to the
// protocol's average yield.
double relative_entropy_bound_closed_form(int J, const SchmidtParam& s);

// Same value via full eigendecompositions of the assembled matrices.
double relative_entropy_bound_matrix(int J, const SchmidtParam& s, const CoupledBasis& basis);

struct OptimalityReport {
    int J = 0;
    double alpha = 0.0;
    double yield = 0.0;
    double bound = 0.0;
    double gap = 0.0;
    bool pass = false;
};

// Compares the exhaustive protocol yield against the bound.
OptimalityReport certify_optimality(int J, const SchmidtParam& s, const CoupledBasis& basis);

std::string report_to_json(const OptimalityReport& r);

}  // namespace ordermix::bounds
