// operator_core.hpp — dense complex hermitian linear algebra substrate

#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qtherm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Eigenvalues below this are treated as exact zeros by ln/fractional powers.
inline constexpr double kRankFloor = 1e-14;

// Dense dimension cap for kron and composite models.
inline constexpr int kDimCap = 4096;

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Self-adjoint observable. Construction symmetrizes (M + M^dag)/2 and rejects
// inputs whose anti-hermitian part exceeds 1e-8 relative to the max entry.
class HermitianOperator {
  public:
    explicit HermitianOperator(Matrix m);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& matrix() const { return mat_; }

    double max_abs() const;

    static HermitianOperator identity(int dim);

  private:
    Matrix mat_;
};

// Unit-trace positive operator. Eigenvalues in [-1e-12, 0) are tolerated
// (clamped to zero where spectra are consumed); below that is rejected.
class DensityMatrix {
  public:
    explicit DensityMatrix(HermitianOperator op);
    explicit DensityMatrix(Matrix m) : DensityMatrix(HermitianOperator(std::move(m))) {}

    int dim() const { return op_.dim(); }
    const Matrix& matrix() const { return op_.matrix(); }
    const HermitianOperator& hermitian() const { return op_; }

  private:
    HermitianOperator op_;
};

// Eigenvalues sorted descending with matching orthonormal columns.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    Matrix eigenvectors;

    int dim() const { return static_cast<int>(eigenvalues.size()); }
};

SpectralDecomposition eigh(const HermitianOperator& op);

// U f(Lambda) U^dag. f must be finite on the spectrum.
HermitianOperator matrix_function(const HermitianOperator& op,
                                  const std::function<double(double)>& f);
HermitianOperator matrix_function(const SpectralDecomposition& sd,
                                  const std::function<double(double)>& f);

HermitianOperator matrix_exp(const HermitianOperator& op);
// ln and fractional powers require the spectrum strictly above kRankFloor.
HermitianOperator matrix_log(const HermitianOperator& op);
// rho^a with eigenvalues below kRankFloor treated as exact zeros (a > 0).
HermitianOperator matrix_power_clamped(const SpectralDecomposition& sd, double a);

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b);
Matrix kron_raw(const Matrix& a, const Matrix& b);

// Trace out the second (reservoir) factor; op.dim() == dimS * dimR.
HermitianOperator partial_trace_R(const HermitianOperator& op, int dimS, int dimR);

double expectation(const DensityMatrix& state, const HermitianOperator& obs);

// Pauli matrices and small helpers used across tests and models.
HermitianOperator sigma_x();
HermitianOperator sigma_y();
HermitianOperator sigma_z();

}  // namespace qtherm
