#include "ordermix/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ordermix::numkit {

namespace {
constexpr double kHermTol = 1e-12;
constexpr double kEigvalClamp = 1e-10;
constexpr double kSupportTol = 1e-12;

double log2_safe(double x) { return std::log2(x); }
}  // namespace

double StateVector::norm() const {
    double s = 0.0;
    for (const cx& a : amp) s += std::norm(a);
    return std::sqrt(s);
}

void StateVector::normalize() {
    double nrm = norm();
    if (nrm == 0.0) throw std::invalid_argument("normalize: zero vector");
    for (cx& a : amp) a /= nrm;
}

Operator Operator::identity(int nq) {
    Operator id(nq, true);
    for (std::size_t i = 0; i < id.n; ++i) id(i, i) = 1.0;
    return id;
}

double Operator::max_abs() const {
    double m = 0.0;
    for (const cx& e : entries) m = std::max(m, std::abs(e));
    return m;
}

cx Operator::trace() const {
    cx t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i);
    return t;
}

double Operator::hermiticity_defect() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    StateVector out(a.n_qubits + b.n_qubits);
    const std::size_t db = b.dim();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < db; ++j)
            out.amp[i * db + j] = a.amp[i] * b.amp[j];
    return out;
}

Operator tensor(const Operator& a, const Operator& b) {
    Operator out(a.n_qubits + b.n_qubits, a.hermitian && b.hermitian);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j) {
            const cx aij = a(i, j);
            if (aij == cx{}) continue;
            for (std::size_t k = 0; k < b.n; ++k)
                for (std::size_t l = 0; l < b.n; ++l)
                    out(i * b.n + k, j * b.n + l) = aij * b(k, l);
        }
    return out;
}

Operator outer(const StateVector& v) {
    Operator out(v.n_qubits, true);
    for (std::size_t i = 0; i < v.dim(); ++i)
        for (std::size_t j = 0; j < v.dim(); ++j)
            out(i, j) = v.amp[i] * std::conj(v.amp[j]);
    return out;
}

cx inner(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    cx s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
    return s;
}

Operator add(const Operator& a, const Operator& b) {
    if (a.n != b.n) throw std::invalid_argument("add: dimension mismatch");
    Operator out = a;
    out.hermitian = a.hermitian && b.hermitian;
    for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] += b.entries[i];
    return out;
}

Operator scale(const Operator& a, double s) {
    Operator out = a;
    for (cx& e : out.entries) e *= s;
    return out;
}

Operator multiply(const Operator& a, const Operator& b) {
    if (a.n != b.n) throw std::invalid_argument("multiply: dimension mismatch");
    Operator out(a.n_qubits, false);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t k = 0; k < a.n; ++k) {
            const cx aik = a(i, k);
            if (aik == cx{}) continue;
            for (std::size_t j = 0; j < a.n; ++j)
                out(i, j) += aik * b(k, j);
        }
    return out;
}

Operator adjoint(const Operator& a) {
    Operator out(a.n_qubits, a.hermitian);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j)
            out(i, j) = std::conj(a(j, i));
    return out;
}

Operator partial_trace(const Operator& rho, const std::vector<std::size_t>& dims,
                       const std::vector<int>& keep) {
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    if (total != rho.n)
        throw std::invalid_argument("partial_trace: subsystem dims do not match matrix");

    std::vector<bool> kept(dims.size(), false);
    std::size_t keep_dim = 1;
    int keep_qubits = 0;
    for (int k : keep) {
        kept.at(static_cast<std::size_t>(k)) = true;
        keep_dim *= dims[static_cast<std::size_t>(k)];
    }
    // result qubit count only meaningful when keep_dim is a power of two
    while ((std::size_t{1} << keep_qubits) < keep_dim) ++keep_qubits;

    // strides of each subsystem in the full index
    std::vector<std::size_t> stride(dims.size(), 1);
    for (int s = static_cast<int>(dims.size()) - 2; s >= 0; --s)
        stride[s] = stride[s + 1] * dims[s + 1];

    std::vector<int> keep_order, trace_order;
    for (std::size_t s = 0; s < dims.size(); ++s)
        (kept[s] ? keep_order : trace_order).push_back(static_cast<int>(s));

    std::size_t trace_dim = total / keep_dim;

    auto full_index = [&](std::size_t keep_idx, std::size_t trace_idx) {
        std::size_t idx = 0;
        for (int s = static_cast<int>(keep_order.size()) - 1; s >= 0; --s) {
            std::size_t d = dims[keep_order[s]];
            idx += (keep_idx % d) * stride[keep_order[s]];
            keep_idx /= d;
        }
        for (int s = static_cast<int>(trace_order.size()) - 1; s >= 0; --s) {
            std::size_t d = dims[trace_order[s]];
            idx += (trace_idx % d) * stride[trace_order[s]];
            trace_idx /= d;
        }
        return idx;
    };

    Operator out(keep_qubits, rho.hermitian);
    if (out.n != keep_dim) throw std::invalid_argument("partial_trace: kept dim not a power of two");
    for (std::size_t i = 0; i < keep_dim; ++i)
        for (std::size_t j = 0; j < keep_dim; ++j) {
            cx s = 0.0;
            for (std::size_t t = 0; t < trace_dim; ++t)
                s += rho(full_index(i, t), full_index(j, t));
            out(i, j) = s;
        }
    return out;
}

Operator reduce_to_first_qubits(const Operator& rho, int n_keep) {
    std::vector<std::size_t> dims(rho.n_qubits, 2);
    std::vector<int> keep(n_keep);
    std::iota(keep.begin(), keep.end(), 0);
    return partial_trace(rho, dims, keep);
}

Operator reduce_to_last_qubits(const Operator& rho, int n_keep) {
    std::vector<std::size_t> dims(rho.n_qubits, 2);
    std::vector<int> keep(n_keep);
    std::iota(keep.begin(), keep.end(), rho.n_qubits - n_keep);
    return partial_trace(rho, dims, keep);
}

namespace {

double offdiag_frobenius(const Operator& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t j = 0; j < a.n; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

double frobenius(const Operator& a) {
    double s = 0.0;
    for (const cx& e : a.entries) s += std::norm(e);
    return std::sqrt(s);
}

}  // namespace

Spectrum hermitian_eig(const Operator& H) {
    if (!H.hermitian)
        throw std::invalid_argument("hermitian_eig: operator not flagged hermitian");
    if (H.hermiticity_defect() > kHermTol)
        throw std::invalid_argument("hermitian_eig: matrix is not hermitian");

    const std::size_t n = H.n;
    Operator a = H;
    Operator v = Operator::identity(H.n_qubits);

    const double scale = frobenius(H);
    const double target = 1e-14 * scale;

    if (scale > 0.0) {
        const int max_sweeps = 100;
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
            if (offdiag_frobenius(a) <= target) break;
            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    const cx apq = a(p, q);
                    const double mag = std::abs(apq);
                    if (mag <= 1e-300) continue;
                    const double app = a(p, p).real();
                    const double aqq = a(q, q).real();
                    const cx phase = apq / mag;

                    // tan(2 theta) = 2|apq| / (app - aqq), stable small-root form
                    const double tau = (app - aqq) / (2.0 * mag);
                    double t;
                    if (std::abs(tau) > 1e150) {
                        t = 1.0 / (2.0 * tau);
                    } else {
                        const double sg = (tau >= 0.0) ? 1.0 : -1.0;
                        t = sg / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    }
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    const cx sp = s * phase;         // multiplies the p-component
                    const cx spc = std::conj(sp);

                    // columns: A <- A U with U = [[c, -sp],[conj(sp)* s/s? ...]]
                    // U(p,p)=c, U(p,q)=-sp, U(q,p)=spc, U(q,q)=c  (unitary)
                    for (std::size_t i = 0; i < n; ++i) {
                        const cx aip = a(i, p);
                        const cx aiq = a(i, q);
                        a(i, p) = c * aip + spc * aiq;
                        a(i, q) = -sp * aip + c * aiq;
                    }
                    // rows: A <- U^dagger A
                    for (std::size_t j = 0; j < n; ++j) {
                        const cx apj = a(p, j);
                        const cx aqj = a(q, j);
                        a(p, j) = c * apj + sp * aqj;
                        a(q, j) = -spc * apj + c * aqj;
                    }
                    for (std::size_t i = 0; i < n; ++i) {
                        const cx vip = v(i, p);
                        const cx viq = v(i, q);
                        v(i, p) = c * vip + spc * viq;
                        v(i, q) = -sp * vip + c * viq;
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    Spectrum spec;
    spec.eigenvalues.resize(n);
    spec.eigenvectors = Operator(H.n_qubits, false);
    for (std::size_t k = 0; k < n; ++k) {
        spec.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i)
            spec.eigenvectors(i, k) = v(i, order[k]);
    }
    return spec;
}

bool is_density_operator(const Operator& rho, double tol) {
    if (rho.hermiticity_defect() > kHermTol) return false;
    if (std::abs(rho.trace() - cx{1.0, 0.0}) > tol) return false;
    Operator h = rho;
    h.hermitian = true;
    Spectrum s = hermitian_eig(h);
    return s.eigenvalues.front() >= -kEigvalClamp;
}

namespace {

std::vector<double> density_eigenvalues(const Operator& rho, Spectrum* spec_out) {
    Operator h = rho;
    h.hermitian = true;
    if (h.hermiticity_defect() > kHermTol)
        throw std::invalid_argument("entropy: operator is not hermitian");
    Spectrum s = hermitian_eig(h);
    double tr = 0.0;
    for (double& lam : s.eigenvalues) {
        if (lam < -kEigvalClamp)
            throw std::invalid_argument("entropy: negative eigenvalue " + std::to_string(lam));
        if (lam < 0.0) lam = 0.0;
        tr += lam;
    }
    if (std::abs(tr - 1.0) > 1e-10)
        throw std::invalid_argument("entropy: trace is not 1");
    if (spec_out) *spec_out = s;
    return s.eigenvalues;
}

}  // namespace

double entropy_of_distribution(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * log2_safe(x);
    return h;
}

double von_neumann_entropy(const Operator& rho) {
    return entropy_of_distribution(density_eigenvalues(rho, nullptr));
}

double relative_entropy(const Operator& sigma, const Operator& rho) {
    if (sigma.n != rho.n)
        throw std::invalid_argument("relative_entropy: dimension mismatch");
    Spectrum ss, sr;
    std::vector<double> ps = density_eigenvalues(sigma, &ss);
    std::vector<double> pr = density_eigenvalues(rho, &sr);

    const std::size_t n = sigma.n;
    // overlap(i,j) = |<s_i|r_j>|^2
    double result = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (ps[i] > 0.0) result += ps[i] * log2_safe(ps[i]);

    for (std::size_t j = 0; j < n; ++j) {
        double mass = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (ps[i] <= 0.0) continue;
            cx ov = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                ov += std::conj(ss.eigenvectors(k, i)) * sr.eigenvectors(k, j);
            mass += ps[i] * std::norm(ov);
        }
        if (pr[j] < kSupportTol) {
            if (mass > 1e-10)
                throw support_error("relative_entropy: sigma has support outside rho");
            continue;
        }
        result -= mass * log2_safe(pr[j]);
    }
    return result;
}

double trace_distance(const Operator& a, const Operator& b) {
    Operator d = add(a, scale(b, -1.0));
    d.hermitian = true;
    if (d.hermiticity_defect() > 1e-10)
        throw std::invalid_argument("trace_distance: difference not hermitian");
    Spectrum s = hermitian_eig(d);
    double td = 0.0;
    for (double lam : s.eigenvalues) td += std::abs(lam);
    return td / 2.0;
}

double entanglement_entropy(const StateVector& psi, int n_alice) {
    Operator rho = outer(psi);
    Operator ra = reduce_to_first_qubits(rho, n_alice);
    return von_neumann_entropy(ra);
}

}  // namespace ordermix::numkit
