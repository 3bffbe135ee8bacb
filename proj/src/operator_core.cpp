#include "qtherm/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qtherm {

namespace {

bool all_finite(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
                return false;
    return true;
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw SizeError("HermitianOperator: matrix must be square and non-empty, got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    if (!all_finite(m))
        throw DomainError("HermitianOperator: non-finite entries");
    const double scale = 1.0 + m.cwiseAbs().maxCoeff();
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-8 * scale)
        throw DomainError("HermitianOperator: anti-hermitian part " + std::to_string(asym) +
                          " exceeds tolerance at scale " + std::to_string(scale));
    mat_ = 0.5 * (m + m.adjoint().eval());
}

double HermitianOperator::max_abs() const { return mat_.cwiseAbs().maxCoeff(); }

HermitianOperator HermitianOperator::identity(int dim) {
    return HermitianOperator(Matrix::Identity(dim, dim));
}

DensityMatrix::DensityMatrix(HermitianOperator op) : op_(std::move(op)) {
    const double tr = op_.matrix().trace().real();
    if (std::abs(tr - 1.0) > 1e-12)
        throw DomainError("DensityMatrix: trace " + std::to_string(tr) + " != 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(op_.matrix(), Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    if (lo < -1e-12)
        throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(lo));
}

SpectralDecomposition eigh(const HermitianOperator& op) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(op.matrix());
    if (es.info() != Eigen::Success) {
        std::ostringstream msg;
        msg << "eigh: eigensolver failed to converge, dim=" << op.dim()
            << " max|M|=" << op.max_abs();
        throw NumericError(msg.str());
    }
    // Eigen returns ascending order; flip to descending (p_n >= p_m for n < m).
    const int d = op.dim();
    SpectralDecomposition sd;
    sd.eigenvalues = es.eigenvalues().reverse();
    sd.eigenvectors = es.eigenvectors().rowwise().reverse();
    (void)d;
    return sd;
}

HermitianOperator matrix_function(const SpectralDecomposition& sd,
                                  const std::function<double(double)>& f) {
    Eigen::VectorXd fv(sd.dim());
    for (int i = 0; i < sd.dim(); ++i) {
        const double y = f(sd.eigenvalues[i]);
        if (!std::isfinite(y))
            throw DomainError("matrix_function: f not finite at eigenvalue " +
                              std::to_string(sd.eigenvalues[i]));
        fv[i] = y;
    }
    Matrix out = sd.eigenvectors * fv.asDiagonal() * sd.eigenvectors.adjoint();
    return HermitianOperator(std::move(out));
}

HermitianOperator matrix_function(const HermitianOperator& op,
                                  const std::function<double(double)>& f) {
    return matrix_function(eigh(op), f);
}

HermitianOperator matrix_exp(const HermitianOperator& op) {
    return matrix_function(op, [](double x) { return std::exp(x); });
}

HermitianOperator matrix_log(const HermitianOperator& op) {
    SpectralDecomposition sd = eigh(op);
    for (int i = 0; i < sd.dim(); ++i)
        if (sd.eigenvalues[i] <= kRankFloor)
            throw DomainError("matrix_log: eigenvalue " + std::to_string(sd.eigenvalues[i]) +
                              " at or below rank floor");
    return matrix_function(sd, [](double x) { return std::log(x); });
}

HermitianOperator matrix_power_clamped(const SpectralDecomposition& sd, double a) {
    if (!(a > 0.0))
        throw DomainError("matrix_power_clamped: exponent must be positive");
    return matrix_function(sd, [a](double x) {
        if (x <= kRankFloor) {
            if (x < -1e-12)
                throw DomainError("matrix_power_clamped: eigenvalue " + std::to_string(x) +
                                  " below clamp window");
            return 0.0;
        }
        return std::pow(x, a);
    });
}

Matrix kron_raw(const Matrix& a, const Matrix& b) {
    const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    Matrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ca; ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
    const long dim = static_cast<long>(a.dim()) * b.dim();
    if (dim > kDimCap)
        throw SizeError("kron: result dimension " + std::to_string(dim) + " exceeds cap " +
                        std::to_string(kDimCap));
    return HermitianOperator(kron_raw(a.matrix(), b.matrix()));
}

HermitianOperator partial_trace_R(const HermitianOperator& op, int dimS, int dimR) {
    if (dimS <= 0 || dimR <= 0 || op.dim() != dimS * dimR)
        throw SizeError("partial_trace_R: dim " + std::to_string(op.dim()) + " != " +
                        std::to_string(dimS) + "*" + std::to_string(dimR));
    Matrix out = Matrix::Zero(dimS, dimS);
    const Matrix& m = op.matrix();
    for (int i = 0; i < dimS; ++i)
        for (int j = 0; j < dimS; ++j)
            for (int k = 0; k < dimR; ++k)
                out(i, j) += m(i * dimR + k, j * dimR + k);
    return HermitianOperator(std::move(out));
}

double expectation(const DensityMatrix& state, const HermitianOperator& obs) {
    if (state.dim() != obs.dim())
        throw SizeError("expectation: dimension mismatch " + std::to_string(state.dim()) +
                        " vs " + std::to_string(obs.dim()));
    const Complex tr = (state.matrix() * obs.matrix()).trace();
    if (std::abs(tr.imag()) > 1e-10 * (1.0 + std::abs(tr.real())))
        throw NumericError("expectation: imaginary residue " + std::to_string(tr.imag()));
    return tr.real();
}

HermitianOperator sigma_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return HermitianOperator(std::move(m));
}

HermitianOperator sigma_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return HermitianOperator(std::move(m));
}

HermitianOperator sigma_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return HermitianOperator(std::move(m));
}

}  // namespace qtherm
