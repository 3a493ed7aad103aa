#include "ordermix/bounds.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

#include "ordermix/distill.hpp"

namespace ordermix::bounds {

using coupled_basis::degeneracy;
using numkit::cx;
using states::block_probability;

Operator SeparableCertificate::reconstruct() const {
    if (terms.empty()) throw std::invalid_argument("certificate is empty");
    Operator out = numkit::scale(
        numkit::tensor(terms[0].alice_state, terms[0].bob_state), terms[0].weight);
    for (std::size_t k = 1; k < terms.size(); ++k)
        out = numkit::add(out, numkit::scale(
                                   numkit::tensor(terms[k].alice_state, terms[k].bob_state),
                                   terms[k].weight));
    out.hermitian = true;
    return out;
}

std::pair<Operator, SeparableCertificate> separable_rho(int J, const SchmidtParam& s,
                                                        const CoupledBasis& basis) {
    states::check_size_guard(J, true);
    if (basis.J != J) throw std::invalid_argument("separable_rho: basis J mismatch");

    const double a2 = s.alpha * s.alpha;
    const double b2 = s.beta * s.beta;

    SeparableCertificate cert;
    Operator rho(4 * J, true);
    for (int j = 0; j <= J; ++j) {
        const int d = static_cast<int>(degeneracy(J, j));
        const double pj = block_probability(J, j, s);
        // block normalization: sum_m alpha^{2(j-m)} beta^{2(j+m)}
        double z = 0.0;
        for (int m = -j; m <= j; ++m) z += std::pow(a2, j - m) * std::pow(b2, j + m);
        for (int a = 1; a <= d; ++a)
            for (int b = 1; b <= d; ++b)
                for (int m = -j; m <= j; ++m) {
                    const double q = std::pow(a2, j - m) * std::pow(b2, j + m) / z;
                    const double weight = pj * q;
                    if (weight == 0.0) continue;
                    Operator pa = numkit::outer(basis.vector(j, m, a));
                    Operator pb = numkit::outer(basis.vector(j, m, b));
                    rho = numkit::add(rho, numkit::scale(numkit::tensor(pa, pb), weight));
                    cert.terms.push_back({weight, std::move(pa), std::move(pb)});
                }
    }
    rho.hermitian = true;
    return {std::move(rho), std::move(cert)};
}

double relative_entropy_bound_closed_form(int J, const SchmidtParam& s) {
    return quantities::distillable_entanglement(J, s);
}

double relative_entropy_bound_matrix(int J, const SchmidtParam& s, const CoupledBasis& basis) {
    states::check_size_guard(J, true);
    const states::BlockSpectrum spec = states::closed_form_sigma(J, s, basis);
    const Operator sigma = states::assemble_operator(spec, true);
    auto [rho, cert] = separable_rho(J, s, basis);
    return numkit::relative_entropy(sigma, rho);
}

OptimalityReport certify_optimality(int J, const SchmidtParam& s, const CoupledBasis& basis) {
    OptimalityReport r;
    r.J = J;
    r.alpha = s.alpha;
    r.yield = distill::average_yield(distill::enumerate_outcomes(J, s, basis));
    r.bound = relative_entropy_bound_closed_form(J, s);
    r.gap = std::abs(r.yield - r.bound);
    r.pass = r.gap < 1e-9 && r.yield <= r.bound + 1e-12;
    return r;
}

std::string report_to_json(const OptimalityReport& r) {
    nlohmann::json j;
    j["J"] = r.J;
    j["alpha"] = r.alpha;
    j["yield"] = r.yield;
    j["bound"] = r.bound;
    j["gap"] = r.gap;
    j["pass"] = r.pass;
    return j.dump();
}

}  // namespace ordermix::bounds
