#include "ordermix/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace ordermix::states {

using coupled_basis::degeneracy;
using numkit::cx;

SchmidtParam SchmidtParam::from_alpha(double a) {
    if (a < 0.0 || a > 1.0) throw std::invalid_argument("SchmidtParam: alpha outside [0,1]");
    return SchmidtParam{a, std::sqrt(1.0 - a * a)};
}

SchmidtParam SchmidtParam::from_alpha_sq(double a2) {
    if (a2 < 0.0 || a2 > 1.0) throw std::invalid_argument("SchmidtParam: alpha^2 outside [0,1]");
    return SchmidtParam{std::sqrt(a2), std::sqrt(1.0 - a2)};
}

SchmidtParam SchmidtParam::maximal() { return from_alpha_sq(0.5); }

void check_size_guard(int J, bool big_override) {
    const int cap = big_override ? 3 : 2;
    if (J < 1 || J > cap)
        throw size_guard_error("matrix path limited to J <= " + std::to_string(cap) +
                               " (got J = " + std::to_string(J) + ")");
}

StateVector initial_state(int J, const SchmidtParam& s) {
    if (J < 1) throw std::invalid_argument("initial_state: J must be >= 1");
    const int n = 2 * J;
    StateVector psi(2 * n);
    psi.n_alice = n;
    for (std::size_t a = 0; a < (std::size_t{1} << n); ++a) {
        const int w = std::popcount(a);
        psi.amp[(a << n) | a] = std::pow(s.alpha, n - w) * std::pow(s.beta, w);
    }
    return psi;
}

StateVector reorder_qubits(const StateVector& psi, const std::vector<int>& perm) {
    const int n = psi.n_qubits;
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("reorder_qubits: bad permutation length");
    StateVector out(n);
    out.n_alice = psi.n_alice;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        std::size_t t = 0;
        for (int k = 0; k < n; ++k) {
            const std::size_t bit = (i >> (n - 1 - k)) & 1;
            t |= bit << (n - 1 - perm[k]);
        }
        out.amp[t] = psi.amp[i];
    }
    return out;
}

StateVector interleaved_to_blocks(const StateVector& psi) {
    const int n = psi.n_qubits;
    if (n % 2 != 0) throw std::invalid_argument("interleaved_to_blocks: odd qubit count");
    std::vector<int> perm(n);
    for (int k = 0; k < n; ++k)
        perm[k] = (k % 2 == 0) ? k / 2 : n / 2 + k / 2;
    StateVector out = reorder_qubits(psi, perm);
    out.n_alice = n / 2;
    return out;
}

StateVector permute_bob(const StateVector& psi, const std::vector<int>& perm) {
    const int n = psi.n_qubits;
    const int half = n / 2;
    if (static_cast<int>(perm.size()) != half)
        throw std::invalid_argument("permute_bob: bad permutation length");
    std::vector<int> full(n);
    for (int k = 0; k < half; ++k) full[k] = k;
    for (int k = 0; k < half; ++k) full[half + k] = half + perm[k];
    return reorder_qubits(psi, full);
}

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

Operator shuffle_channel(const Operator& rho, int J, bool big_override) {
    check_size_guard(J, big_override);
    const int n = 4 * J;
    if (rho.n_qubits != n)
        throw std::invalid_argument("shuffle_channel: operator is not on 4J qubits");
    const int half = 2 * J;
    const auto perms = all_permutations(half);

    // full-space index map for each Bob-side wire permutation
    std::vector<std::size_t> bobmap(std::size_t{1} << half);
    Operator out(n, rho.hermitian);
    const double w = 1.0 / static_cast<double>(perms.size());
    const std::size_t half_dim = std::size_t{1} << half;
    for (const auto& perm : perms) {
        for (std::size_t b = 0; b < half_dim; ++b) {
            std::size_t t = 0;
            for (int k = 0; k < half; ++k) {
                const std::size_t bit = (b >> (half - 1 - k)) & 1;
                t |= bit << (half - 1 - perm[k]);
            }
            bobmap[b] = t;
        }
        for (std::size_t i = 0; i < rho.n; ++i) {
            const std::size_t fi = (i & ~(half_dim - 1)) | bobmap[i & (half_dim - 1)];
            for (std::size_t j = 0; j < rho.n; ++j) {
                const std::size_t fj = (j & ~(half_dim - 1)) | bobmap[j & (half_dim - 1)];
                out(fi, fj) += w * rho(i, j);
            }
        }
    }
    return out;
}

double block_probability(int J, int j, const SchmidtParam& s) {
    const double a2 = s.alpha * s.alpha;
    const double b2 = s.beta * s.beta;
    double sum = 0.0;
    for (int m = -j; m <= j; ++m)
        sum += std::pow(a2, J - m) * std::pow(b2, J + m);
    return sum / static_cast<double>(degeneracy(J, j));
}

BlockSpectrum closed_form_sigma(int J, const SchmidtParam& s, const CoupledBasis& basis) {
    if (basis.J != J) throw std::invalid_argument("closed_form_sigma: basis J mismatch");
    BlockSpectrum spec;
    spec.J = J;
    for (int j = 0; j <= J; ++j) {
        const int d = static_cast<int>(degeneracy(J, j));
        const double p = block_probability(J, j, s);
        for (int a = 1; a <= d; ++a)
            for (int b = 1; b <= d; ++b) {
                StateVector block(4 * J);
                block.n_alice = 2 * J;
                for (int m = -j; m <= j; ++m) {
                    const double c = std::pow(s.alpha, j - m) * std::pow(s.beta, j + m);
                    if (c == 0.0) continue;
                    StateVector t = numkit::tensor(basis.vector(j, m, a), basis.vector(j, m, b));
                    for (std::size_t i = 0; i < block.dim(); ++i)
                        block.amp[i] += c * t.amp[i];
                }
                block.normalize();
                spec.entries.push_back(BlockEntry{j, a, b, p, std::move(block)});
            }
    }
    return spec;
}

Operator assemble_operator(const BlockSpectrum& b, bool big_override) {
    check_size_guard(b.J, big_override);
    Operator out(4 * b.J, true);
    for (const BlockEntry& e : b.entries) {
        if (e.probability == 0.0) continue;
        Operator term = numkit::outer(e.block_state);
        for (std::size_t i = 0; i < out.entries.size(); ++i)
            out.entries[i] += e.probability * term.entries[i];
    }
    return out;
}

CQState cq_joint_state(int J, const SchmidtParam& s) {
    if (J != 1)
        throw size_guard_error("cq_joint_state: only J = 1 is materialized");
    const StateVector psi = initial_state(J, s);
    const auto perms = all_permutations(2 * J);
    const std::size_t na = perms.size();  // 2, one ancilla qubit

    CQState c;
    c.ancilla_dim = na;
    c.joint = Operator(1 + 4 * J, true);
    const std::size_t sys_dim = std::size_t{1} << (4 * J);
    for (std::size_t k = 0; k < na; ++k) {
        const StateVector branch = permute_bob(psi, perms[k]);
        const Operator b = numkit::outer(branch);
        for (std::size_t i = 0; i < sys_dim; ++i)
            for (std::size_t j = 0; j < sys_dim; ++j)
                c.joint(k * sys_dim + i, k * sys_dim + j) = b(i, j) / static_cast<double>(na);
    }
    return c;
}

double mutual_information(const CQState& c) {
    const int n = c.joint.n_qubits;
    int anc_qubits = 0;
    while ((std::size_t{1} << anc_qubits) < c.ancilla_dim) ++anc_qubits;
    const Operator anc = numkit::reduce_to_first_qubits(c.joint, anc_qubits);
    const Operator sys = numkit::reduce_to_last_qubits(c.joint, n - anc_qubits);
    return numkit::von_neumann_entropy(anc) + numkit::von_neumann_entropy(sys) -
           numkit::von_neumann_entropy(c.joint);
}

}  // namespace ordermix::states
