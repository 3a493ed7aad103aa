// ordermix command line: closed-form tables, alpha sweeps, protocol runs
// and the verification suite for order-randomized entangled pairs.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ordermix/bounds.hpp"
#include "ordermix/distill.hpp"
#include "ordermix/quantities.hpp"

namespace {

using namespace ordermix;
using states::SchmidtParam;

constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSizeGuard = 3;

std::string fmt(double x) {
    char buf[40];
    if (x == 0.0) x = 0.0;  // never print -0
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty() || output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(output, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + output);
    os << text;
}

struct AlphaOpts {
    double alpha = -1.0;
    double alpha_sq = -1.0;

    SchmidtParam resolve() const {
        if (alpha_sq >= 0.0) return SchmidtParam::from_alpha_sq(alpha_sq);
        if (alpha >= 0.0) return SchmidtParam::from_alpha(alpha);
        return SchmidtParam::maximal();
    }
};

std::string table_text(int J, const SchmidtParam& s, const std::string& format) {
    const quantities::SweepRecord rec = quantities::ratio(J, s);
    std::ostringstream os;
    if (format == "csv") {
        os << "j,d_j,p_j,weight,block_yield_bits\n";
        for (int j = 0; j <= J; ++j) {
            const auto d = coupled_basis::degeneracy(J, j);
            const double p = states::block_probability(J, j, s);
            os << j << "," << d << "," << fmt(p) << "," << fmt(double(d) * double(d) * p)
               << "," << fmt(quantities::block_entanglement(j, s)) << "\n";
        }
        os << "# J=" << J << " alpha=" << fmt(s.alpha) << "\n";
        os << "# E_initial=" << fmt(rec.e_initial) << "\n";
        os << "# E_D=" << fmt(rec.e_distillable) << "\n";
        os << "# delta_I=" << fmt(rec.delta_i) << "\n";
        os << "# ratio=" << (rec.ratio_defined ? fmt(rec.ratio) : std::string("undefined"))
           << "\n";
    } else {
        os << "{\"J\":" << J << ",\"alpha\":" << fmt(s.alpha) << ",\"rows\":[";
        for (int j = 0; j <= J; ++j) {
            const auto d = coupled_basis::degeneracy(J, j);
            const double p = states::block_probability(J, j, s);
            if (j) os << ",";
            os << "{\"j\":" << j << ",\"d_j\":" << d << ",\"p_j\":" << fmt(p)
               << ",\"weight\":" << fmt(double(d) * double(d) * p)
               << ",\"block_yield_bits\":" << fmt(quantities::block_entanglement(j, s))
               << "}";
        }
        os << "],\"E_initial\":" << fmt(rec.e_initial) << ",\"E_D\":"
           << fmt(rec.e_distillable) << ",\"delta_I\":" << fmt(rec.delta_i)
           << ",\"ratio\":" << (rec.ratio_defined ? fmt(rec.ratio) : std::string("null"))
           << ",\"ratio_defined\":" << (rec.ratio_defined ? "true" : "false") << "}\n";
    }
    return os.str();
}

std::string sweep_text(int J, double start, double stop, int count,
                       const std::string& format) {
    std::ostringstream os;
    if (format == "csv") os << "J,alpha,E_initial,E_D,delta_I,ratio\n";
    for (int i = 0; i < count; ++i) {
        const double a = start + (stop - start) * i / (count - 1);
        const quantities::SweepRecord rec =
            quantities::ratio(J, SchmidtParam::from_alpha(a));
        const std::string ratio_str =
            rec.ratio_defined ? fmt(rec.ratio)
                              : std::string(format == "csv" ? "undefined" : "null");
        if (format == "csv") {
            os << J << "," << fmt(a) << "," << fmt(rec.e_initial) << ","
               << fmt(rec.e_distillable) << "," << fmt(rec.delta_i) << "," << ratio_str
               << "\n";
        } else {
            os << "{\"J\":" << J << ",\"alpha\":" << fmt(a) << ",\"E_initial\":"
               << fmt(rec.e_initial) << ",\"E_D\":" << fmt(rec.e_distillable)
               << ",\"delta_I\":" << fmt(rec.delta_i) << ",\"ratio\":" << ratio_str
               << ",\"ratio_defined\":" << (rec.ratio_defined ? "true" : "false") << "}\n";
        }
    }
    return os.str();
}

std::string distill_text(int J, const SchmidtParam& s, std::uint64_t shots,
                         std::uint64_t seed, bool big, const std::string& format,
                         const std::string& trace_path) {
    const auto basis = coupled_basis::build_basis(J);
    const auto outcomes = distill::enumerate_outcomes(J, s, basis, big);
    const double avg = distill::average_yield(outcomes);

    if (seed == 0) seed = std::random_device{}();

    if (!trace_path.empty()) {
        auto [oc, tr] = distill::run_shot(J, s, basis, seed, big);
        emit(tr.to_ldjson(), trace_path);
    }

    distill::ShotSummary mc;
    if (shots > 0) mc = distill::monte_carlo(J, s, basis, shots, seed, big);

    std::ostringstream os;
    if (format == "csv") {
        os << "j,alpha_j,beta_j,probability,yield_bits\n";
        for (const auto& oc : outcomes)
            os << oc.j << "," << oc.alpha_j << "," << oc.beta_j << ","
               << fmt(oc.probability) << "," << fmt(oc.yield_bits) << "\n";
        os << "# average_yield=" << fmt(avg) << "\n";
        if (shots > 0) {
            os << "# shots=" << shots << " seed=" << seed << "\n";
            os << "# mc: j,alpha_j,beta_j,count,frequency,expected,std_error\n";
            for (const auto& b : mc.branches)
                os << "# mc: " << b.j << "," << b.alpha_j << "," << b.beta_j << ","
                   << b.count << "," << fmt(b.frequency) << "," << fmt(b.expected) << ","
                   << fmt(b.std_error) << "\n";
        }
    } else {
        for (const auto& oc : outcomes)
            os << "{\"record\":\"outcome\",\"j\":" << oc.j << ",\"alpha_j\":" << oc.alpha_j
               << ",\"beta_j\":" << oc.beta_j << ",\"probability\":" << fmt(oc.probability)
               << ",\"yield_bits\":" << fmt(oc.yield_bits) << "}\n";
        os << "{\"record\":\"summary\",\"average_yield\":" << fmt(avg) << "}\n";
        if (shots > 0)
            for (const auto& b : mc.branches)
                os << "{\"record\":\"mc\",\"j\":" << b.j << ",\"alpha_j\":" << b.alpha_j
                   << ",\"beta_j\":" << b.beta_j << ",\"count\":" << b.count
                   << ",\"frequency\":" << fmt(b.frequency) << ",\"expected\":"
                   << fmt(b.expected) << ",\"std_error\":" << fmt(b.std_error) << "}\n";
    }
    return os.str();
}

int run_verify(int J, bool big, bool inject_failure) {
    using Check = std::pair<std::string, std::function<bool()>>;
    const SchmidtParam maximal = SchmidtParam::maximal();
    const auto basis = coupled_basis::build_basis(J);

    std::vector<Check> checks;
    checks.emplace_back("basis_orthonormal_complete", [&] {
        std::size_t n = 0;
        for (const auto& [la, va] : basis.vectors) {
            ++n;
            for (const auto& [lb, vb] : basis.vectors) {
                const double expect = (la.j == lb.j && la.m == lb.m && la.alpha == lb.alpha)
                                          ? 1.0 : 0.0;
                if (std::abs(std::abs(numkit::inner(va, vb)) - expect) > 1e-10) return false;
            }
        }
        return n == (std::size_t{1} << (2 * J));
    });
    checks.emplace_back("degeneracy_counts", [&] {
        std::int64_t total = 0;
        for (int j = 0; j <= J; ++j) {
            const auto d = coupled_basis::degeneracy(J, j);
            if (static_cast<std::int64_t>(basis.path_table.at(j).size()) != d) return false;
            total += d * (2 * j + 1);
        }
        return total == static_cast<std::int64_t>(std::size_t{1} << (2 * J));
    });
    checks.emplace_back("spin_eigenvectors", [&] {
        const auto s2 = coupled_basis::total_s_squared(2 * J);
        const auto sz = coupled_basis::total_sz(2 * J);
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
            if (std::sqrt(r2) > 1e-10 || std::sqrt(rz) > 1e-10) return false;
        }
        return true;
    });
    checks.emplace_back("closed_form_matches_brute_force", [&] {
        for (double a : {0.3, 1.0 / std::sqrt(2.0), 0.9}) {
            const auto s = SchmidtParam::from_alpha(a);
            const auto cf = states::assemble_operator(states::closed_form_sigma(J, s, basis), big);
            const auto bf =
                states::shuffle_channel(numkit::outer(states::initial_state(J, s)), J, big);
            if (numkit::trace_distance(cf, bf) > 1e-10) return false;
        }
        return true;
    });
    checks.emplace_back("distillable_three_routes", [&] {
        for (double a : {0.6, 1.0 / std::sqrt(2.0)}) {
            const auto s = SchmidtParam::from_alpha(a);
            const double closed = quantities::distillable_entanglement(J, s);
            const double yield =
                distill::average_yield(distill::enumerate_outcomes(J, s, basis, big));
            const double matrix = bounds::relative_entropy_bound_matrix(J, s, basis);
            if (std::abs(closed - yield) > 1e-9 || std::abs(closed - matrix) > 1e-9)
                return false;
        }
        return true;
    });
    checks.emplace_back("information_loss_matches_entropy", [&] {
        const auto sigma =
            states::shuffle_channel(numkit::outer(states::initial_state(J, maximal)), J, big);
        return std::abs(quantities::information_loss(J, maximal) -
                        numkit::von_neumann_entropy(sigma)) < 1e-10;
    });
    checks.emplace_back("ratio_bounded", [&] {
        for (int i = 0; i <= 100; ++i) {
            const auto rec = quantities::ratio(J, SchmidtParam::from_alpha(i / 100.0));
            if (rec.ratio_defined && rec.ratio > 1.0 + 1e-9) return false;
        }
        return true;
    });
    checks.emplace_back("certificate_and_fixed_point", [&] {
        auto [rho, cert] = bounds::separable_rho(J, maximal, basis);
        if (numkit::trace_distance(cert.reconstruct(), rho) > 1e-10) return false;
        return numkit::trace_distance(states::shuffle_channel(rho, J, big), rho) < 1e-10;
    });
    if (inject_failure)
        checks.emplace_back("injected_failure", [] { return false; });

    int failures = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        bool ok = false;
        try {
            ok = checks[i].second();
        } catch (const std::exception& e) {
            std::cout << "# exception: " << e.what() << "\n";
        }
        std::cout << (ok ? "ok" : "not ok") << " " << (i + 1) << " - " << checks[i].first
                  << "\n";
        if (!ok) ++failures;
    }
    std::cout << "1.." << checks.size() << "\n";
    return failures == 0 ? 0 : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distillable entanglement of qubit pairs after Bob's qubit order is lost"};
    app.require_subcommand(1);

    int J = 1;
    AlphaOpts alpha;
    std::string format = "csv";
    std::string output;
    bool big = false;

    auto add_common = [&](CLI::App* cmd, bool with_alpha) {
        cmd->add_option("--J", J, "number of pairs is 2J")->check(CLI::Range(1, 16));
        if (with_alpha) {
            cmd->add_option("--alpha", alpha.alpha, "Schmidt coefficient in [0,1]")
                ->check(CLI::Range(0.0, 1.0));
            cmd->add_option("--alpha-sq", alpha.alpha_sq,
                            "Schmidt weight alpha^2 in [0,1], exact rational input")
                ->check(CLI::Range(0.0, 1.0));
        }
        cmd->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--output,-o", output, "output file path (default stdout)");
        cmd->add_flag("--big", big, "allow J=3 matrix paths (memory heavy)");
    };

    auto* t = app.add_subcommand("table", "per-sector table of d_j, p_j and yields");
    add_common(t, true);

    auto* sw = app.add_subcommand("sweep", "alpha sweep of the closed-form quantities");
    double a_start = 0.0, a_stop = 1.0;
    int a_count = 101;
    add_common(sw, false);
    sw->add_option("--alpha-start", a_start)->check(CLI::Range(0.0, 1.0));
    sw->add_option("--alpha-stop", a_stop)->check(CLI::Range(0.0, 1.0));
    sw->add_option("--alpha-count", a_count, "grid points (>= 2)")->check(CLI::Range(2, 1000000));

    auto* di = app.add_subcommand("distill", "exhaustive protocol outcomes and Monte Carlo");
    std::uint64_t shots = 0, seed = 1;
    std::string trace_path;
    add_common(di, true);
    di->add_option("--shots", shots, "Monte Carlo shots (0 disables)");
    di->add_option("--seed", seed, "RNG seed; 0 draws one from the entropy source");
    di->add_option("--trace", trace_path, "write one seeded shot trace as line-delimited JSON");

    auto* ve = app.add_subcommand("verify", "run the verification suite, TAP-style output");
    bool inject = false;
    add_common(ve, false);
    ve->add_flag("--inject-failure", inject)->group("");  // test hook, hidden

    auto* in = app.add_subcommand("info", "conventions and build information");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : kExitUsage;
    }

    try {
        if (t->parsed()) {
            emit(table_text(J, alpha.resolve(), format), output);
        } else if (sw->parsed()) {
            emit(sweep_text(J, a_start, a_stop, a_count, format), output);
        } else if (di->parsed()) {
            emit(distill_text(J, alpha.resolve(), shots, seed, big, format, trace_path),
                 output);
        } else if (ve->parsed()) {
            return run_verify(J, big, inject);
        } else if (in->parsed()) {
            std::cout << "ordermix: mixed-state entanglement after losing the order of "
                         "Bob's qubits\n"
                      << "conventions: log base 2; qubit 0 is the leftmost ket position;\n"
                      << "  registers are [Alice | Bob]; |1> carries spin +1/2\n"
                      << "rng: splitmix64 counter stream, seed 0 = entropy-derived (CLI only)\n"
                      << "matrix paths: J <= 2, or J <= 3 with --big (about 0.5 GiB)\n";
        }
    } catch (const states::size_guard_error& e) {
        std::cerr << "size guard: " << e.what() << "\n";
        return kExitSizeGuard;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
