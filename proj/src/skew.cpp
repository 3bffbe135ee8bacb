#include "qtherm/skew.hpp"

#include <cmath>
#include <string>

#include "qtherm/quadrature.hpp"

namespace qtherm {

double variance(const DensityMatrix& state, const HermitianOperator& obs) {
    const double mean = expectation(state, obs);
    const HermitianOperator sq(obs.matrix() * obs.matrix());
    const double var = expectation(state, sq) - mean * mean;
    if (var < -1e-12)
        throw NumericError("variance: negative value " + std::to_string(var));
    return var;
}

double skew_a(const DensityMatrix& state, const HermitianOperator& obs, double a) {
    if (!(a > 0.0 && a < 1.0))
        throw DomainError("skew_a: a must lie in (0,1), got " + std::to_string(a));
    if (state.dim() != obs.dim())
        throw SizeError("skew_a: dimension mismatch");
    const SpectralDecomposition sd = eigh(state.hermitian());
    const Matrix ra = matrix_power_clamped(sd, a).matrix();
    const Matrix rb = matrix_power_clamped(sd, 1.0 - a).matrix();
    const Matrix& A = obs.matrix();
    const Matrix ca = A * ra - ra * A;
    const Matrix cb = A * rb - rb * A;
    const Complex tr = (ca * cb).trace();
    return -0.5 * tr.real();
}

double skew_pair_weight(double pn, double pm) {
    const double dlog = std::log(pn) - std::log(pm);
    if (std::abs(dlog) < 1e-9) {
        // Removable 0/0: weight -> (p_n + p_m) * dlog^2 / 12.
        return (pn + pm) * dlog * dlog / 12.0;
    }
    return pn + pm - 2.0 * (pn - pm) / dlog;
}

VariancePartition skew_avg(const DensityMatrix& state, const HermitianOperator& obs) {
    if (state.dim() != obs.dim())
        throw SizeError("skew_avg: dimension mismatch");
    const SpectralDecomposition sd = eigh(state.hermitian());
    const int d = sd.dim();
    for (int i = 0; i < d; ++i)
        if (sd.eigenvalues[i] <= kRankFloor)
            throw DomainError("skew_avg: state not full rank, eigenvalue " +
                              std::to_string(sd.eigenvalues[i]));
    // Matrix elements of A in the state eigenbasis.
    const Matrix Ab = sd.eigenvectors.adjoint() * obs.matrix() * sd.eigenvectors;
    double q = 0.0;
    for (int n = 0; n < d; ++n)
        for (int m = n + 1; m < d; ++m)
            q += skew_pair_weight(sd.eigenvalues[n], sd.eigenvalues[m]) * std::norm(Ab(n, m));
    VariancePartition out;
    out.variance = variance(state, obs);
    out.quantum = q;
    out.classical = out.variance - q;
    if (out.quantum < -1e-10 || out.classical < -1e-10)
        throw NumericError("skew_avg: negative partition component (Q=" +
                           std::to_string(out.quantum) + ", K=" +
                           std::to_string(out.classical) + ")");
    return out;
}

double skew_avg_quadrature(const DensityMatrix& state, const HermitianOperator& obs,
                           double abs_tol) {
    if (!(abs_tol >= 1e-12))
        throw DomainError("skew_avg_quadrature: abs_tol must be >= 1e-12");
    const SpectralDecomposition sd = eigh(state.hermitian());
    for (int i = 0; i < sd.dim(); ++i)
        if (sd.eigenvalues[i] <= kRankFloor)
            throw DomainError("skew_avg_quadrature: state not full rank");
    const Matrix& A = obs.matrix();
    auto qa = [&](double a) {
        const Matrix ra = matrix_power_clamped(sd, a).matrix();
        const Matrix rb = matrix_power_clamped(sd, 1.0 - a).matrix();
        const Matrix ca = A * ra - ra * A;
        const Matrix cb = A * rb - rb * A;
        return -0.5 * (ca * cb).trace().real();
    };
    return integrate_adaptive(qa, 0.0, 1.0, abs_tol);
}

}  // namespace qtherm
