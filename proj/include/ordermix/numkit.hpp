// numkit.hpp
// Dense complex linear algebra and entropy primitives for small qubit
// registers. All logarithms are base 2.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordermix::numkit {

using cx = std::complex<double>;

// Thrown when the support of sigma leaks outside the support of rho in
// relative_entropy; the result would be infinite.
class support_error : public std::runtime_error {
public:
    explicit support_error(const std::string& what) : std::runtime_error(what) {}
};

// Pure state on n qubits. Basis index bit convention: qubit 0 is the
// leftmost (most significant) position of the ket string, so
// |01> on two qubits sits at index 1. Registers are laid out with all
// of Alice's qubits first, then Bob's.
struct StateVector {
    std::vector<cx> amp;
    int n_qubits = 0;
    int n_alice = 0;  // 0 when the Alice/Bob split is not meaningful

    StateVector() = default;
    explicit StateVector(int n)
        : amp(std::size_t{1} << n), n_qubits(n) {}
    StateVector(int n, std::vector<cx> a) : amp(std::move(a)), n_qubits(n) {
        if (amp.size() != (std::size_t{1} << n))
            throw std::invalid_argument("StateVector: amplitude count is not 2^n");
    }

    std::size_t dim() const { return amp.size(); }
    double norm() const;
    void normalize();
};

// Dense square operator on n qubits, row major.
struct Operator {
    std::vector<cx> entries;
    std::size_t n = 0;
    int n_qubits = 0;
    bool hermitian = false;

    Operator() = default;
    explicit Operator(int nq, bool herm = false)
        : entries((std::size_t{1} << nq) * (std::size_t{1} << nq)),
          n(std::size_t{1} << nq), n_qubits(nq), hermitian(herm) {}

    cx& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }
    const cx& operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

    static Operator identity(int nq);

    double max_abs() const;
    cx trace() const;
    double hermiticity_defect() const;  // max |M - M^dagger| entry
};

struct Spectrum {
    std::vector<double> eigenvalues;   // ascending
    Operator eigenvectors;             // orthonormal columns, same order
};

double inner_norm(const StateVector& v);

StateVector tensor(const StateVector& a, const StateVector& b);
Operator tensor(const Operator& a, const Operator& b);

Operator outer(const StateVector& v);                      // |v><v|
cx inner(const StateVector& a, const StateVector& b);      // <a|b>

Operator add(const Operator& a, const Operator& b);
Operator scale(const Operator& a, double s);
Operator multiply(const Operator& a, const Operator& b);
Operator adjoint(const Operator& a);

// Trace out every subsystem whose index is not in `keep`. `dims` are the
// subsystem dimensions from most significant to least significant.
Operator partial_trace(const Operator& rho, const std::vector<std::size_t>& dims,
                       const std::vector<int>& keep);

// Reduced state over the first n_keep or last n_keep qubits.
Operator reduce_to_first_qubits(const Operator& rho, int n_keep);
Operator reduce_to_last_qubits(const Operator& rho, int n_keep);

// Cyclic complex Jacobi rotations; converges when the off-diagonal
// Frobenius mass drops below 1e-14 * ||H||_F. Deterministic sweep order.
Spectrum hermitian_eig(const Operator& H);

bool is_density_operator(const Operator& rho, double tol = 1e-10);

// Von Neumann entropy in bits. Eigenvalues in [-1e-10, 0] are clamped to
// zero; anything more negative is rejected.
double von_neumann_entropy(const Operator& rho);
double entropy_of_distribution(const std::vector<double>& p);

// S(sigma||rho) in bits via eigendecompositions. Throws support_error when
// sigma has weight on the kernel of rho.
double relative_entropy(const Operator& sigma, const Operator& rho);

double trace_distance(const Operator& a, const Operator& b);

// Entanglement entropy of a pure state across the Alice|Bob cut.
double entanglement_entropy(const StateVector& psi, int n_alice);

}  // namespace ordermix::numkit
