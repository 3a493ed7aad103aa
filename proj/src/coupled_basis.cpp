#include "ordermix/coupled_basis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace ordermix::coupled_basis {

using numkit::cx;

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

std::int64_t degeneracy(int J, int j) {
    if (j < 0 || j > J) throw std::out_of_range("degeneracy: j out of [0, J]");
    return (2 * j + 1) * binomial(2 * J + 1, J - j) / (2 * J + 1);
}

StateVector dicke_block(int j, int m) {
    if (std::abs(m) > j) throw std::out_of_range("dicke_block: |m| > j");
    const int n = 2 * j;
    const int weight = j + m;
    StateVector v(n);
    if (n == 0) {
        v.amp[0] = 1.0;
        return v;
    }
    const double amp = 1.0 / std::sqrt(static_cast<double>(binomial(n, weight)));
    for (std::size_t i = 0; i < v.dim(); ++i)
        if (std::popcount(i) == weight) v.amp[i] = amp;
    return v;
}

StateVector singlet() {
    StateVector v(2);
    v.amp[1] = 1.0 / std::sqrt(2.0);   // |01>
    v.amp[2] = -1.0 / std::sqrt(2.0);  // |10>
    return v;
}

StateVector representative(int J, int j, int m) {
    StateVector v = dicke_block(j, m);
    const StateVector s = singlet();
    for (int k = 0; k < J - j; ++k) v = numkit::tensor(v, s);
    return v;
}

const StateVector& CoupledBasis::vector(int j, int m, int alpha) const {
    auto it = vectors.find(CoupledLabel{j, m, alpha});
    if (it == vectors.end())
        throw std::out_of_range("CoupledBasis: no such label");
    return it->second;
}

namespace {

// family of vectors for one intermediate spin value, indexed by
// (twom + twoj)/2
struct Family {
    int twoj = 0;
    std::vector<StateVector> by_m;
};

StateVector append_qubit(const StateVector& v, int bit) {
    StateVector q(1);
    q.amp[bit] = 1.0;
    return numkit::tensor(v, q);
}

// Couple one more spin-1/2 with Condon-Shortley coefficients. |1> is up.
Family couple_step(const Family& f, int twoj_new) {
    const int twoj = f.twoj;
    Family out;
    out.twoj = twoj_new;
    out.by_m.resize(twoj_new + 1);
    const double den = 2.0 * (twoj + 1);
    for (int twom = -twoj_new; twom <= twoj_new; twom += 2) {
        const double c_plus = std::sqrt((twoj + twom + 1) / den);   // m1 = m - 1/2
        const double c_minus = std::sqrt((twoj - twom + 1) / den);  // m1 = m + 1/2
        StateVector acc(f.by_m[0].n_qubits + 1);
        auto have = [&](int twom1) { return std::abs(twom1) <= twoj; };
        if (twoj_new == twoj + 1) {
            if (have(twom - 1)) {
                StateVector t = append_qubit(f.by_m[(twom - 1 + twoj) / 2], 1);
                for (std::size_t i = 0; i < acc.dim(); ++i) acc.amp[i] += c_plus * t.amp[i];
            }
            if (have(twom + 1)) {
                StateVector t = append_qubit(f.by_m[(twom + 1 + twoj) / 2], 0);
                for (std::size_t i = 0; i < acc.dim(); ++i) acc.amp[i] += c_minus * t.amp[i];
            }
        } else {
            if (have(twom - 1)) {
                StateVector t = append_qubit(f.by_m[(twom - 1 + twoj) / 2], 1);
                for (std::size_t i = 0; i < acc.dim(); ++i) acc.amp[i] -= c_minus * t.amp[i];
            }
            if (have(twom + 1)) {
                StateVector t = append_qubit(f.by_m[(twom + 1 + twoj) / 2], 0);
                for (std::size_t i = 0; i < acc.dim(); ++i) acc.amp[i] += c_plus * t.amp[i];
            }
        }
        out.by_m[(twom + twoj_new) / 2] = std::move(acc);
    }
    return out;
}

void enumerate_paths(const Family& f, int n_qubits, std::vector<int>& path,
                     std::map<int, std::vector<std::vector<int>>>& paths,
                     std::map<int, std::vector<Family>>& families) {
    if (static_cast<int>(path.size()) == n_qubits) {
        const int j = f.twoj / 2;
        paths[j].push_back(path);
        families[j].push_back(f);
        return;
    }
    // lexicographic: smaller intermediate spin first
    if (f.twoj - 1 >= 0) {
        path.push_back(f.twoj - 1);
        enumerate_paths(couple_step(f, f.twoj - 1), n_qubits, path, paths, families);
        path.pop_back();
    }
    path.push_back(f.twoj + 1);
    enumerate_paths(couple_step(f, f.twoj + 1), n_qubits, path, paths, families);
    path.pop_back();
}

std::size_t first_support(const StateVector& v) {
    for (std::size_t i = 0; i < v.dim(); ++i)
        if (std::abs(v.amp[i]) > 1e-10) return i;
    throw std::logic_error("zero basis vector");
}

}  // namespace

CoupledBasis build_basis(int J) {
    if (J < 1 || J > 4) throw std::out_of_range("build_basis: J must be in [1, 4]");
    const int n = 2 * J;

    Family seed;
    seed.twoj = 1;
    seed.by_m.resize(2);
    seed.by_m[0] = StateVector(1);
    seed.by_m[0].amp[0] = 1.0;  // |1/2,-1/2> = |0>
    seed.by_m[1] = StateVector(1);
    seed.by_m[1].amp[1] = 1.0;  // |1/2,+1/2> = |1>

    std::map<int, std::vector<std::vector<int>>> paths;
    std::map<int, std::vector<Family>> families;
    std::vector<int> path{1};
    enumerate_paths(seed, n, path, paths, families);

    CoupledBasis basis;
    basis.J = J;
    basis.n_qubits = n;
    basis.path_table = paths;

    for (auto& [j, fams] : families) {
        const int d = static_cast<int>(fams.size());
        if (d != degeneracy(J, j))
            throw std::logic_error("build_basis: path count does not match degeneracy");

        // overlap of each path state with the Dicke (x) singlets representative;
        // by Schur the coefficients are m independent, which we verify
        std::vector<cx> coeff(d);
        {
            const StateVector rep_top = representative(J, j, j);
            double nrm = 0.0;
            for (int a = 0; a < d; ++a) {
                coeff[a] = numkit::inner(fams[a].by_m[2 * j], rep_top);
                nrm += std::norm(coeff[a]);
            }
            if (std::abs(nrm - 1.0) > 1e-10)
                throw std::logic_error("build_basis: representative outside path span");
            for (int m = -j; m <= j; ++m) {
                const StateVector rep = representative(J, j, m);
                for (int a = 0; a < d; ++a) {
                    cx c = numkit::inner(fams[a].by_m[m + j], rep);
                    if (std::abs(c - coeff[a]) > 1e-10)
                        throw std::logic_error("build_basis: multiplicity overlap depends on m");
                }
            }
        }

        // orthonormal multiplicity rotation: column 0 is the representative
        // direction, the rest completed from identity columns by Gram-Schmidt
        std::vector<std::vector<cx>> cols;
        cols.push_back(coeff);
        for (int e = 0; e < d && static_cast<int>(cols.size()) < d; ++e) {
            std::vector<cx> v(d, cx{});
            v[e] = 1.0;
            for (const auto& c : cols) {
                cx ov{};
                for (int a = 0; a < d; ++a) ov += std::conj(c[a]) * v[a];
                for (int a = 0; a < d; ++a) v[a] -= ov * c[a];
            }
            double nrm = 0.0;
            for (int a = 0; a < d; ++a) nrm += std::norm(v[a]);
            if (nrm < 1e-12) continue;
            nrm = std::sqrt(nrm);
            for (int a = 0; a < d; ++a) v[a] /= nrm;
            cols.push_back(std::move(v));
        }
        if (static_cast<int>(cols.size()) != d)
            throw std::logic_error("build_basis: multiplicity completion failed");

        for (int alpha = 1; alpha <= d; ++alpha) {
            // family phase fixed by the top-m vector's first supported amplitude
            std::vector<StateVector> vecs(2 * j + 1);
            for (int m = -j; m <= j; ++m) {
                StateVector v(n);
                for (int a = 0; a < d; ++a) {
                    const StateVector& pv = fams[a].by_m[m + j];
                    const cx c = cols[alpha - 1][a];
                    if (c == cx{}) continue;
                    for (std::size_t i = 0; i < v.dim(); ++i) v.amp[i] += c * pv.amp[i];
                }
                vecs[m + j] = std::move(v);
            }
            const StateVector& top = vecs[2 * j];
            cx lead = top.amp[first_support(top)];
            cx phase = std::conj(lead) / std::abs(lead);
            for (int m = -j; m <= j; ++m) {
                for (cx& a : vecs[m + j].amp) a *= phase;
                basis.vectors[CoupledLabel{j, m, alpha}] = std::move(vecs[m + j]);
            }
        }
    }
    return basis;
}

Operator sector_projector(const CoupledBasis& basis, int j, int alpha) {
    Operator p(basis.n_qubits, true);
    for (int m = -j; m <= j; ++m) {
        const StateVector& v = basis.vector(j, m, alpha);
        p = numkit::add(p, numkit::outer(v));
    }
    p.hermitian = true;
    return p;
}

Operator label_swap_unitary(const CoupledBasis& basis, int j, int alpha) {
    Operator u = Operator::identity(basis.n_qubits);
    u.hermitian = false;
    if (alpha == 1) return u;
    for (int m = -j; m <= j; ++m) {
        const StateVector& a = basis.vector(j, m, alpha);
        const StateVector& one = basis.vector(j, m, 1);
        for (std::size_t r = 0; r < u.n; ++r)
            for (std::size_t c = 0; c < u.n; ++c) {
                u(r, c) += one.amp[r] * std::conj(a.amp[c]) + a.amp[r] * std::conj(one.amp[c]) -
                           one.amp[r] * std::conj(one.amp[c]) - a.amp[r] * std::conj(a.amp[c]);
            }
    }
    return u;
}

Operator total_sz(int n_qubits) {
    Operator sz(n_qubits, true);
    for (std::size_t i = 0; i < sz.n; ++i) {
        const int ones = std::popcount(i);
        sz(i, i) = ones - n_qubits / 2.0;
    }
    return sz;
}

Operator total_s_squared(int n_qubits) {
    const int n = n_qubits;
    Operator s2(n, true);
    const double diag = 0.75 * n - n * (n - 1) / 4.0;
    for (std::size_t i = 0; i < s2.n; ++i) s2(i, i) = diag;
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
            const std::size_t bk = std::size_t{1} << (n - 1 - k);
            const std::size_t bl = std::size_t{1} << (n - 1 - l);
            for (std::size_t i = 0; i < s2.n; ++i) {
                const bool vk = i & bk, vl = i & bl;
                std::size_t swapped = i;
                if (vk != vl) swapped = (i ^ bk) ^ bl;
                s2(swapped, i) += 1.0;
            }
        }
    return s2;
}

Operator qubit_permutation_operator(const std::vector<int>& perm) {
    const int n = static_cast<int>(perm.size());
    Operator p(n, false);
    for (std::size_t i = 0; i < p.n; ++i) {
        std::size_t out = 0;
        for (int k = 0; k < n; ++k) {
            const std::size_t bit = (i >> (n - 1 - k)) & 1;
            out |= bit << (n - 1 - perm[k]);
        }
        p(out, i) = 1.0;
    }
    return p;
}

}  // namespace ordermix::coupled_basis
