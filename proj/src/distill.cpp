#include "ordermix/distill.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace ordermix::distill {

using coupled_basis::degeneracy;
using numkit::cx;
using numkit::Operator;

std::uint64_t SplitMix64::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::string ProtocolTrace::to_ldjson() const {
    std::ostringstream os;
    for (const TraceStep& st : steps) {
        nlohmann::json rec;
        rec["step"] = st.step;
        rec["label"] = st.label;
        rec["norm"] = st.norm;
        if (!st.discarded.empty()) rec["discarded"] = st.discarded;
        os << rec.dump() << "\n";
    }
    return os.str();
}

// half-register helpers: full index = (alice << half_bits) | bob

StateVector apply_alice_projector(const StateVector& psi, const CoupledBasis& basis,
                                  int j, int alpha) {
    const int half = basis.n_qubits;
    const std::size_t hd = std::size_t{1} << half;
    StateVector out(psi.n_qubits);
    out.n_alice = psi.n_alice;
    for (int m = -j; m <= j; ++m) {
        const StateVector& v = basis.vector(j, m, alpha);
        std::vector<cx> t(hd, cx{});
        for (std::size_t a = 0; a < hd; ++a) {
            const cx va = std::conj(v.amp[a]);
            if (va == cx{}) continue;
            for (std::size_t b = 0; b < hd; ++b) t[b] += va * psi.amp[(a << half) | b];
        }
        for (std::size_t a = 0; a < hd; ++a) {
            if (v.amp[a] == cx{}) continue;
            for (std::size_t b = 0; b < hd; ++b)
                out.amp[(a << half) | b] += v.amp[a] * t[b];
        }
    }
    return out;
}

StateVector apply_bob_projector(const StateVector& psi, const CoupledBasis& basis,
                                int j, int alpha) {
    const int half = basis.n_qubits;
    const std::size_t hd = std::size_t{1} << half;
    StateVector out(psi.n_qubits);
    out.n_alice = psi.n_alice;
    for (int m = -j; m <= j; ++m) {
        const StateVector& v = basis.vector(j, m, alpha);
        std::vector<cx> t(hd, cx{});
        for (std::size_t b = 0; b < hd; ++b) {
            const cx vb = std::conj(v.amp[b]);
            if (vb == cx{}) continue;
            for (std::size_t a = 0; a < hd; ++a) t[a] += vb * psi.amp[(a << half) | b];
        }
        for (std::size_t b = 0; b < hd; ++b) {
            if (v.amp[b] == cx{}) continue;
            for (std::size_t a = 0; a < hd; ++a)
                out.amp[(a << half) | b] += v.amp[b] * t[a];
        }
    }
    return out;
}

StateVector apply_alice_operator(const StateVector& psi, const Operator& op) {
    const int half = op.n_qubits;
    const std::size_t hd = std::size_t{1} << half;
    StateVector out(psi.n_qubits);
    out.n_alice = psi.n_alice;
    for (std::size_t a2 = 0; a2 < hd; ++a2)
        for (std::size_t a = 0; a < hd; ++a) {
            const cx o = op(a2, a);
            if (o == cx{}) continue;
            for (std::size_t b = 0; b < hd; ++b)
                out.amp[(a2 << half) | b] += o * psi.amp[(a << half) | b];
        }
    return out;
}

StateVector apply_bob_operator(const StateVector& psi, const Operator& op) {
    const int half = op.n_qubits;
    const std::size_t hd = std::size_t{1} << half;
    StateVector out(psi.n_qubits);
    out.n_alice = psi.n_alice;
    for (std::size_t b2 = 0; b2 < hd; ++b2)
        for (std::size_t b = 0; b < hd; ++b) {
            const cx o = op(b2, b);
            if (o == cx{}) continue;
            for (std::size_t a = 0; a < hd; ++a)
                out.amp[(a << half) | b2] += o * psi.amp[(a << half) | b];
        }
    return out;
}

namespace {

StateVector singlet_power(int pairs) {
    StateVector v(0);
    v.amp[0] = 1.0;
    const StateVector s = coupled_basis::singlet();
    for (int k = 0; k < pairs; ++k) v = numkit::tensor(v, s);
    return v;
}

}  // namespace

// Project the trailing J-j singlet pairs out of both registers, leaving a
// state on 4j qubits.
StateVector contract_singlets(const StateVector& psi, int J, int j) {
    const int keep = 2 * j;
    const int drop = 2 * (J - j);
    const StateVector s = singlet_power(J - j);
    const std::size_t kd = std::size_t{1} << keep;
    const std::size_t dd = std::size_t{1} << drop;
    const int half = 2 * J;
    StateVector out(4 * j);
    out.n_alice = keep;
    for (std::size_t ka = 0; ka < kd; ++ka)
        for (std::size_t kb = 0; kb < kd; ++kb) {
            cx acc{};
            for (std::size_t da = 0; da < dd; ++da) {
                const cx sa = std::conj(s.amp[da]);
                if (sa == cx{}) continue;
                for (std::size_t db = 0; db < dd; ++db) {
                    const cx sb = std::conj(s.amp[db]);
                    if (sb == cx{}) continue;
                    const std::size_t full =
                        (((ka << drop) | da) << half) | ((kb << drop) | db);
                    acc += sa * sb * psi.amp[full];
                }
            }
            out.amp[(ka << keep) | kb] = acc;
        }
    return out;
}

namespace {

void canonical_phase(StateVector& v) {
    for (const cx& a : v.amp)
        if (std::abs(a) > 1e-10) {
            const cx phase = std::conj(a) / std::abs(a);
            for (cx& x : v.amp) x *= phase;
            return;
        }
}

double norm_sq(const StateVector& v) {
    double s = 0.0;
    for (const cx& a : v.amp) s += std::norm(a);
    return s;
}

}  // namespace

std::vector<ProtocolOutcome> enumerate_outcomes(int J, const SchmidtParam& s,
                                                const CoupledBasis& basis,
                                                bool big_override) {
    states::check_size_guard(J, big_override);
    if (basis.J != J) throw std::invalid_argument("enumerate_outcomes: basis J mismatch");

    const StateVector psi0 = states::initial_state(J, s);
    const auto perms = states::all_permutations(2 * J);
    std::vector<StateVector> branches;
    branches.reserve(perms.size());
    for (const auto& p : perms) branches.push_back(states::permute_bob(psi0, p));
    const double w = 1.0 / static_cast<double>(perms.size());

    std::vector<ProtocolOutcome> outcomes;
    for (int j = 0; j <= J; ++j) {
        const int dj = static_cast<int>(degeneracy(J, j));
        for (int a = 1; a <= dj; ++a) {
            // every Bob sector, including k != j, which must carry no weight
            for (int k = 0; k <= J; ++k) {
                const int dk = static_cast<int>(degeneracy(J, k));
                for (int b = 1; b <= dk; ++b) {
                    std::vector<StateVector> ws;
                    double prob = 0.0;
                    for (const StateVector& br : branches) {
                        StateVector v = apply_alice_projector(br, basis, j, a);
                        v = apply_bob_projector(v, basis, k, b);
                        prob += w * norm_sq(v);
                        ws.push_back(std::move(v));
                    }
                    if (k != j) {
                        if (prob > 1e-12)
                            throw std::logic_error(
                                "enumerate_outcomes: Bob sector differs from Alice's with "
                                "probability " + std::to_string(prob));
                        continue;
                    }
                    ProtocolOutcome oc;
                    oc.j = j;
                    oc.alpha_j = a;
                    oc.beta_j = b;
                    oc.probability = prob;
                    if (prob > 1e-14) {
                        // the branch must be pure: all projected components parallel
                        int ref = -1;
                        for (std::size_t i = 0; i < ws.size(); ++i)
                            if (norm_sq(ws[i]) > 1e-12) { ref = static_cast<int>(i); break; }
                        for (std::size_t i = 0; i < ws.size(); ++i) {
                            const double ni = norm_sq(ws[i]);
                            if (ni < 1e-24) continue;
                            const double ov = std::abs(numkit::inner(ws[ref], ws[i]));
                            if (std::abs(ov * ov - norm_sq(ws[ref]) * ni) > 1e-10)
                                throw std::logic_error("enumerate_outcomes: branch is not pure");
                        }
                        StateVector v = ws[ref];
                        v.normalize();
                        if (a != 1) v = apply_alice_operator(v, label_swap_unitary(basis, j, a));
                        if (b != 1) v = apply_bob_operator(v, label_swap_unitary(basis, j, b));
                        StateVector fin = contract_singlets(v, J, j);
                        const double rem = norm_sq(fin);
                        if (std::abs(rem - 1.0) > 1e-9)
                            throw std::logic_error("enumerate_outcomes: discarded pairs not in singlets");
                        fin.normalize();
                        canonical_phase(fin);
                        oc.yield_bits = numkit::entanglement_entropy(fin, 2 * j);
                        oc.final_state = std::move(fin);
                    } else {
                        oc.final_state = StateVector(4 * j);
                        oc.final_state.n_alice = 2 * j;
                    }
                    outcomes.push_back(std::move(oc));
                }
            }
        }
    }
    return outcomes;
}

double average_yield(const std::vector<ProtocolOutcome>& outcomes) {
    double ptot = 0.0, y = 0.0;
    for (const ProtocolOutcome& oc : outcomes) {
        ptot += oc.probability;
        y += oc.probability * oc.yield_bits;
    }
    if (std::abs(ptot - 1.0) > 1e-9)
        throw std::invalid_argument("average_yield: probabilities do not sum to 1");
    return y;
}

std::pair<ProtocolOutcome, ProtocolTrace> run_shot(int J, const SchmidtParam& s,
                                                   const CoupledBasis& basis,
                                                   std::uint64_t seed,
                                                   bool big_override) {
    states::check_size_guard(J, big_override);
    SplitMix64 rng(seed);
    ProtocolTrace trace;
    trace.seed = seed;

    const auto perms = states::all_permutations(2 * J);
    const std::size_t pick =
        std::min(perms.size() - 1,
                 static_cast<std::size_t>(rng.uniform() * static_cast<double>(perms.size())));
    StateVector psi = states::permute_bob(states::initial_state(J, s), perms[pick]);
    trace.steps.push_back({0, "order_branch " + std::to_string(pick), 1.0, {}});

    // step 1: Alice projects onto a (j, alpha) sector
    double u = rng.uniform();
    int oj = J, oa = 1;
    StateVector collapsed;
    double acc = 0.0;
    bool done = false;
    for (int j = 0; j <= J && !done; ++j) {
        const int dj = static_cast<int>(degeneracy(J, j));
        for (int a = 1; a <= dj; ++a) {
            StateVector v = apply_alice_projector(psi, basis, j, a);
            const double p = norm_sq(v);
            acc += p;
            if (u < acc || (j == J && a == dj)) {
                oj = j;
                oa = a;
                collapsed = std::move(v);
                done = true;
                break;
            }
        }
    }
    const double pa = norm_sq(collapsed);
    psi = collapsed;
    psi.normalize();
    trace.steps.push_back({1, "alice_project j=" + std::to_string(oj) +
                                  " alpha=" + std::to_string(oa),
                           std::sqrt(pa), {}});

    // step 2: rotate the multiplicity label to 1
    if (oa != 1) psi = apply_alice_operator(psi, label_swap_unitary(basis, oj, oa));
    trace.steps.push_back({2, "alice_unitary alpha=" + std::to_string(oa), 1.0, {}});

    // step 3: Alice's trailing J-j singlet pairs drop out
    std::vector<int> disc_a;
    for (int q = 2 * oj; q < 2 * J; ++q) disc_a.push_back(q);
    trace.steps.push_back({3, "alice_discard", 1.0, disc_a});

    // step 4: Bob projects; his sector always matches Alice's
    u = rng.uniform();
    int ob = 1;
    acc = 0.0;
    const int dj = static_cast<int>(degeneracy(J, oj));
    double pb = 0.0;
    for (int b = 1; b <= dj; ++b) {
        StateVector v = apply_bob_projector(psi, basis, oj, b);
        const double p = norm_sq(v);
        acc += p;
        if (u < acc || b == dj) {
            ob = b;
            pb = p;
            collapsed = std::move(v);
            break;
        }
    }
    psi = collapsed;
    psi.normalize();
    trace.steps.push_back({4, "bob_project j=" + std::to_string(oj) +
                                  " beta=" + std::to_string(ob),
                           std::sqrt(pb), {}});

    // step 5
    if (ob != 1) psi = apply_bob_operator(psi, label_swap_unitary(basis, oj, ob));
    trace.steps.push_back({5, "bob_unitary beta=" + std::to_string(ob), 1.0, {}});

    // step 6: discard Bob's singlets, keep the entangled remainder
    std::vector<int> disc_b;
    for (int q = 2 * J + 2 * oj; q < 4 * J; ++q) disc_b.push_back(q);
    StateVector fin = contract_singlets(psi, J, oj);
    const double rem = std::sqrt(norm_sq(fin));
    fin.normalize();
    canonical_phase(fin);
    trace.steps.push_back({6, "final", rem, disc_b});

    ProtocolOutcome oc;
    oc.j = oj;
    oc.alpha_j = oa;
    oc.beta_j = ob;
    oc.probability = pa * pb;
    oc.yield_bits = numkit::entanglement_entropy(fin, 2 * oj);
    oc.final_state = std::move(fin);
    return {std::move(oc), std::move(trace)};
}

ShotSummary monte_carlo(int J, const SchmidtParam& s, const CoupledBasis& basis,
                        std::uint64_t shots, std::uint64_t seed, bool big_override) {
    if (shots < 1) throw std::invalid_argument("monte_carlo: shots must be >= 1");
    ShotSummary sum;
    sum.shots = shots;
    sum.seed = seed;

    std::map<std::tuple<int, int, int>, std::uint64_t> counts;
    SplitMix64 seeder(seed);
    for (std::uint64_t k = 0; k < shots; ++k) {
        auto [oc, tr] = run_shot(J, s, basis, seeder.next(), big_override);
        ++counts[{oc.j, oc.alpha_j, oc.beta_j}];
    }
    for (int j = 0; j <= J; ++j) {
        const int dj = static_cast<int>(degeneracy(J, j));
        const double expected = states::block_probability(J, j, s);
        for (int a = 1; a <= dj; ++a)
            for (int b = 1; b <= dj; ++b) {
                ShotSummary::Branch br;
                br.j = j;
                br.alpha_j = a;
                br.beta_j = b;
                auto it = counts.find({j, a, b});
                br.count = (it == counts.end()) ? 0 : it->second;
                br.frequency = static_cast<double>(br.count) / static_cast<double>(shots);
                br.expected = expected;
                br.std_error =
                    std::sqrt(expected * (1.0 - expected) / static_cast<double>(shots));
                sum.branches.push_back(br);
            }
    }
    return sum;
}

double min_discarded_singlet_fidelity(const StateVector& psi, int J, int j) {
    const StateVector s = coupled_basis::singlet();
    const Operator rho = numkit::outer(psi);
    const std::vector<std::size_t> dims(4 * J, 2);
    double min_f = 1.0;
    for (int side = 0; side < 2; ++side) {
        const int base = side == 0 ? 0 : 2 * J;
        for (int t = 0; t < J - j; ++t) {
            const std::vector<int> keep{base + 2 * j + 2 * t, base + 2 * j + 2 * t + 1};
            const Operator pair = numkit::partial_trace(rho, dims, keep);
            cx f{};
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c)
                    f += std::conj(s.amp[r]) * pair(r, c) * s.amp[c];
            min_f = std::min(min_f, f.real());
        }
    }
    return min_f;
}

}  // namespace ordermix::distill
