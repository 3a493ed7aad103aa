// Acceptance suite: one PASS/FAIL line per headline claim, nonzero exit on
// any failure. Each check is self-contained and prints the measured numbers
// next to its verdict so a failing run can be read without a debugger.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <vector>

#include "ordermix/bounds.hpp"
#include "ordermix/distill.hpp"
#include "ordermix/quantities.hpp"

using namespace ordermix;
using states::SchmidtParam;
using Clock = std::chrono::steady_clock;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
int g_failures = 0;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int idx, const char* name, bool pass, const std::string& detail) {
    std::printf("%s %d %s (%s)\n", pass ? "PASS" : "FAIL", idx, name, detail.c_str());
    if (!pass) ++g_failures;
}

std::string num(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

// two-pair distillable entanglement, closed form written out by hand
double two_pair_formula(double a2) {
    const double b2 = 1.0 - a2;
    const double c = a2 * b2;
    auto xlog = [](double x) { return x > 0.0 ? x * std::log2(x) : 0.0; };
    return (1.0 - c) * std::log2(std::max(1.0 - c, 1e-300)) -
           (xlog(a2 * a2) + xlog(b2 * b2) + xlog(c));
}

void criterion_1() {
    const auto t0 = Clock::now();
    const SchmidtParam s = SchmidtParam::maximal();
    const auto basis = coupled_basis::build_basis(1);
    const double want = 0.75 * std::log2(3.0);
    const double closed = quantities::distillable_entanglement(1, s);
    const double yield = distill::average_yield(distill::enumerate_outcomes(1, s, basis));
    const double matrix = bounds::relative_entropy_bound_matrix(1, s, basis);
    const double dt = seconds_since(t0);
    const bool pass = std::abs(closed - want) < 1e-9 && std::abs(yield - want) < 1e-9 &&
                      std::abs(matrix - want) < 1e-9 && dt < 1.0;
    report(1, "two maximal pairs distill (3/4)log2(3) by all three routes", pass,
           "closed=" + num(closed) + " yield=" + num(yield) + " matrix=" + num(matrix) +
               " time=" + num(dt) + "s");
}

void criterion_2() {
    const SchmidtParam s = SchmidtParam::maximal();
    const auto basis = coupled_basis::build_basis(1);
    numkit::Operator sigma = states::shuffle_channel(
        numkit::outer(states::initial_state(1, s)), 1);
    numkit::Spectrum spec = numkit::hermitian_eig(sigma);

    int nonzero = 0;
    bool values_ok = true;
    for (double lam : spec.eigenvalues)
        if (lam > 1e-10) {
            ++nonzero;
            if (std::abs(lam - 0.25) > 1e-10 && std::abs(lam - 0.75) > 1e-10)
                values_ok = false;
        }

    // reference eigenvectors: twin singlet sectors and the uniform triplet sum
    numkit::StateVector phi1 =
        numkit::tensor(basis.vector(0, 0, 1), basis.vector(0, 0, 1));
    numkit::StateVector phi2(4);
    for (int m = -1; m <= 1; ++m) {
        numkit::StateVector t = numkit::tensor(basis.vector(1, m, 1), basis.vector(1, m, 1));
        for (std::size_t i = 0; i < phi2.dim(); ++i)
            phi2.amp[i] += t.amp[i] / std::sqrt(3.0);
    }
    double ov1 = 0.0, ov2 = 0.0;
    for (std::size_t col = 0; col < spec.eigenvectors.n; ++col) {
        numkit::StateVector v(4);
        for (std::size_t i = 0; i < v.dim(); ++i) v.amp[i] = spec.eigenvectors(i, col);
        if (std::abs(spec.eigenvalues[col] - 0.25) < 1e-8)
            ov1 = std::abs(numkit::inner(phi1, v));
        if (std::abs(spec.eigenvalues[col] - 0.75) < 1e-8)
            ov2 = std::abs(numkit::inner(phi2, v));
    }
    const bool pass = nonzero == 2 && values_ok && ov1 > 1.0 - 1e-10 && ov2 > 1.0 - 1e-10;
    report(2, "mixed two-pair state has spectrum {1/4, 3/4} with the known eigenvectors",
           pass, "nonzero=" + num(nonzero) + " ov1=" + num(ov1) + " ov2=" + num(ov2));
}

void criterion_3() {
    double max_formula_dev = 0.0, max_ratio_dev = 0.0;
    for (int k = 0; k <= 100; ++k) {
        const double a2 = k / 100.0;
        const SchmidtParam s = SchmidtParam::from_alpha_sq(a2);
        max_formula_dev = std::max(
            max_formula_dev,
            std::abs(quantities::distillable_entanglement(1, s) - two_pair_formula(a2)));
        const auto rec = quantities::ratio(1, s);
        if (rec.delta_i > 1e-6)
            max_ratio_dev = std::max(max_ratio_dev, std::abs(rec.ratio - 1.0));
    }
    const bool pass = max_formula_dev < 1e-10 && max_ratio_dev < 1e-9;
    report(3, "two-pair closed form matches the explicit formula and the loss ratio is 1",
           pass, "formula_dev=" + num(max_formula_dev) + " ratio_dev=" + num(max_ratio_dev));
}

void criterion_4() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (int J = 1; J <= 2; ++J) {
        const auto basis = coupled_basis::build_basis(J);
        for (double a : {0.0, 0.3, kInvSqrt2, 0.9, 1.0}) {
            const SchmidtParam s = SchmidtParam::from_alpha(a);
            const auto cf = states::assemble_operator(states::closed_form_sigma(J, s, basis));
            const auto bf =
                states::shuffle_channel(numkit::outer(states::initial_state(J, s)), J);
            worst = std::max(worst, numkit::trace_distance(cf, bf));
        }
    }
    const double dt = seconds_since(t0);
    const bool pass = worst < 1e-10 && dt < 30.0;
    report(4, "closed-form state equals the brute-force order average for 2 and 4 pairs",
           pass, "max_trace_distance=" + num(worst) + " time=" + num(dt) + "s");
}

void criterion_5() {
    double max_ratio = 0.0;
    for (int J = 1; J <= 4; ++J)
        for (int k = 0; k <= 100; ++k) {
            const auto rec =
                quantities::ratio(J, SchmidtParam::from_alpha_sq(k / 100.0));
            if (rec.ratio_defined) max_ratio = std::max(max_ratio, rec.ratio);
        }
    const double r2 = quantities::ratio(2, SchmidtParam::maximal()).ratio;
    const bool pass = max_ratio <= 1.0 + 1e-9 && std::abs(r2 - 0.700964) < 1e-6;
    report(5, "loss ratio stays at most one and hits 0.700964 for four maximal pairs",
           pass, "max_ratio=" + num(max_ratio) + " four_pair_ratio=" + num(r2));
}

void criterion_6() {
    double worst = 0.0;
    for (int k = 0; k <= 100; ++k) {
        const SchmidtParam s = SchmidtParam::from_alpha_sq(k / 100.0);
        const double mi = states::mutual_information(states::cq_joint_state(1, s));
        const double entropy = numkit::von_neumann_entropy(
            states::shuffle_channel(numkit::outer(states::initial_state(1, s)), 1));
        worst = std::max(worst, std::abs(mi - entropy));
    }
    const bool pass = worst < 1e-10;
    report(6, "information carried by the order record equals the state entropy", pass,
           "max_dev=" + num(worst));
}

void criterion_7() {
    const auto basis2 = coupled_basis::build_basis(2);
    const SchmidtParam s = SchmidtParam::from_alpha(0.6);

    // branch probabilities against the block spectrum, sector agreement,
    // singlet purity of the discarded pairs
    double prob_dev = 0.0, min_fid = 1.0;
    bool sectors_ok = true;
    for (const auto& o : distill::enumerate_outcomes(2, s, basis2)) {
        prob_dev = std::max(
            prob_dev, std::abs(o.probability - states::block_probability(2, o.j, s)));
        if (o.beta_j < 1 || o.beta_j > coupled_basis::degeneracy(2, o.j)) sectors_ok = false;
    }
    for (int j = 0; j <= 1; ++j) {
        numkit::StateVector psi = states::initial_state(2, s);
        psi = distill::apply_alice_projector(psi, basis2, j, 1);
        psi = distill::apply_bob_projector(psi, basis2, j, 1);
        const double norm = psi.norm();
        if (norm < 1e-8) continue;
        for (auto& amp : psi.amp) amp /= norm;
        min_fid = std::min(min_fid, distill::min_discarded_singlet_fidelity(psi, 2, j));
    }

    // 1e5-shot Monte Carlo within 3 standard errors, reproducible traces
    const auto basis1 = coupled_basis::build_basis(1);
    distill::ShotSummary mc = distill::monte_carlo(1, s, basis1, 100000, 2024);
    double worst_sigmas = 0.0;
    for (const auto& b : mc.branches)
        if (b.std_error > 0.0)
            worst_sigmas =
                std::max(worst_sigmas, std::abs(b.frequency - b.expected) / b.std_error);
    auto [o1, t1] = distill::run_shot(1, s, basis1, 42);
    auto [o2, t2] = distill::run_shot(1, s, basis1, 42);
    const bool deterministic =
        t1.to_ldjson() == t2.to_ldjson() && o1.j == o2.j && o1.beta_j == o2.beta_j;

    const bool pass = prob_dev < 1e-10 && sectors_ok && min_fid > 1.0 - 1e-10 &&
                      worst_sigmas < 3.0 && deterministic;
    report(7, "protocol structure: probabilities, sectors, singlets, Monte Carlo, replay",
           pass,
           "prob_dev=" + num(prob_dev) + " min_singlet_fid=" + num(min_fid) +
               " mc_sigmas=" + num(worst_sigmas) +
               " deterministic=" + (deterministic ? "yes" : "no"));
}

void criterion_8() {
    bool pass = true;
    std::string detail;
    for (int J = 1; J <= 4 && pass; ++J) {
        const auto basis = coupled_basis::build_basis(J);
        if (basis.vectors.size() != (std::size_t{1} << (2 * J))) pass = false;

        std::int64_t total = 0;
        for (int j = 0; j <= J; ++j) {
            const auto d = coupled_basis::degeneracy(J, j);
            if (static_cast<std::int64_t>(basis.path_table.at(j).size()) != d) pass = false;
            total += d * (2 * j + 1);
        }
        if (total != static_cast<std::int64_t>(std::size_t{1} << (2 * J))) pass = false;

        double ortho_dev = 0.0;
        std::vector<const numkit::StateVector*> all;
        for (const auto& [lab, v] : basis.vectors) all.push_back(&v);
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t k = i; k < all.size(); ++k) {
                const double expect = i == k ? 1.0 : 0.0;
                ortho_dev = std::max(
                    ortho_dev,
                    std::abs(std::abs(numkit::inner(*all[i], *all[k])) - expect));
            }

        const auto s2 = coupled_basis::total_s_squared(2 * J);
        const auto sz = coupled_basis::total_sz(2 * J);
        double spin_res = 0.0;
        for (const auto& [lab, v] : basis.vectors) {
            double r2 = 0.0, rz = 0.0;
            for (std::size_t i = 0; i < v.dim(); ++i) {
                numkit::cx a2{}, az{};
                for (std::size_t k = 0; k < v.dim(); ++k) {
                    a2 += s2(i, k) * v.amp[k];
                    az += sz(i, k) * v.amp[k];
                }
                r2 += std::norm(a2 - double(lab.j * (lab.j + 1)) * v.amp[i]);
                rz += std::norm(az - double(lab.m) * v.amp[i]);
            }
            spin_res = std::max(spin_res, std::max(std::sqrt(r2), std::sqrt(rz)));
        }
        if (ortho_dev > 1e-10 || spin_res > 1e-10) pass = false;
        detail = "J=" + std::to_string(J) + " ortho_dev=" + num(ortho_dev) +
                 " spin_residual=" + num(spin_res);
    }
    report(8, "coupled basis is orthonormal, complete, correctly counted, spin-diagonal",
           pass, detail);
}

void criterion_9() {
    double recon_dev = 0.0, fixed_dev = 0.0;
    for (int J = 1; J <= 2; ++J) {
        const auto basis = coupled_basis::build_basis(J);
        for (double a : {0.6, kInvSqrt2}) {
            auto [rho, cert] = bounds::separable_rho(J, SchmidtParam::from_alpha(a), basis);
            recon_dev =
                std::max(recon_dev, numkit::trace_distance(cert.reconstruct(), rho));
            fixed_dev =
                std::max(fixed_dev, numkit::trace_distance(states::shuffle_channel(rho, J), rho));
        }
    }
    const bool pass = recon_dev < 1e-10 && fixed_dev < 1e-10;
    report(9, "separable reference reconstructs from products and survives the shuffle",
           pass, "reconstruction_dev=" + num(recon_dev) + " fixed_point_dev=" + num(fixed_dev));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (g_failures) {
        std::printf("%d of 9 checks failed\n", g_failures);
        return 1;
    }
    std::printf("all 9 checks passed\n");
    return 0;
}
