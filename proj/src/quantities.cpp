#include "ordermix/quantities.hpp"

#include <cmath>
#include <stdexcept>

namespace ordermix::quantities {

using coupled_basis::degeneracy;
using states::block_probability;

namespace {
double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

void check_j(int J) {
    if (J < 1 || J > kMaxClosedFormJ)
        throw std::out_of_range("quantities: J outside [1, 16]");
}
}  // namespace

double initial_entanglement(int N, const SchmidtParam& s) {
    if (N < 1) throw std::out_of_range("initial_entanglement: N must be >= 1");
    const double a2 = s.alpha * s.alpha;
    const double b2 = s.beta * s.beta;
    return -N * (xlog2x(a2) + xlog2x(b2));
}

double block_entanglement(int j, const SchmidtParam& s) {
    const double a2 = s.alpha * s.alpha;
    const double b2 = s.beta * s.beta;
    double z = 0.0;
    for (int m = -j; m <= j; ++m)
        z += std::pow(a2, j - m) * std::pow(b2, j + m);
    if (z == 0.0) return 0.0;
    double h = 0.0;
    for (int m = -j; m <= j; ++m) {
        const double q = std::pow(a2, j - m) * std::pow(b2, j + m) / z;
        h -= xlog2x(q);
    }
    return h;
}

double distillable_entanglement(int J, const SchmidtParam& s) {
    check_j(J);
    double e = 0.0;
    for (int j = 0; j <= J; ++j) {
        const double d = static_cast<double>(degeneracy(J, j));
        e += d * d * block_probability(J, j, s) * block_entanglement(j, s);
    }
    return e;
}

double information_loss(int J, const SchmidtParam& s) {
    check_j(J);
    double h = 0.0;
    for (int j = 0; j <= J; ++j) {
        const double d = static_cast<double>(degeneracy(J, j));
        const double p = block_probability(J, j, s);
        h -= d * d * xlog2x(p);
    }
    return h;
}

SweepRecord ratio(int J, const SchmidtParam& s) {
    check_j(J);
    SweepRecord r;
    r.J = J;
    r.alpha = s.alpha;
    r.e_initial = initial_entanglement(2 * J, s);
    r.e_distillable = distillable_entanglement(J, s);
    r.delta_i = information_loss(J, s);
    if (r.delta_i > 1e-12) {
        r.ratio = (r.e_initial - r.e_distillable) / r.delta_i;
        r.ratio_defined = true;
    }
    return r;
}

}  // namespace ordermix::quantities
