#include "qtherm/mean_force.hpp"

#include <cmath>
#include <omp.h>
#include <string>

namespace qtherm {

namespace {

Matrix richardson_diff(const std::function<Matrix(double)>& f, double x, double h) {
    const Matrix d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const Matrix d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

double richardson_diff_scalar(const std::function<double(double)>& f, double x, double h) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

// log of tr e^{-beta H} from a spectrum, shifted for overflow safety.
double log_partition(const Eigen::VectorXd& eigenvalues, double beta) {
    const double lam_min = eigenvalues.minCoeff();
    double s = 0.0;
    for (int i = 0; i < eigenvalues.size(); ++i)
        s += std::exp(-beta * (eigenvalues[i] - lam_min));
    return -beta * lam_min + std::log(s);
}

}  // namespace

CompositeModel::CompositeModel(int ds, int dr, HermitianOperator hs, HermitianOperator hr,
                               HermitianOperator v)
    : dimS(ds), dimR(dr), H_S(std::move(hs)), H_R(std::move(hr)), V(std::move(v)) {
    if (dimS <= 0 || dimR <= 0 || H_S.dim() != dimS || H_R.dim() != dimR ||
        V.dim() != dimS * dimR)
        throw SizeError("CompositeModel: inconsistent dimensions");
    if (static_cast<long>(dimS) * dimR > kDimCap)
        throw SizeError("CompositeModel: composite dimension exceeds cap");
}

HermitianOperator CompositeModel::composite() const {
    Matrix h = kron_raw(H_S.matrix(), Matrix::Identity(dimR, dimR)) +
               kron_raw(Matrix::Identity(dimS, dimS), H_R.matrix()) + V.matrix();
    return HermitianOperator(std::move(h));
}

DensityMatrix global_gibbs(const CompositeModel& model, double T) {
    if (!(T > 0.0)) throw DomainError("global_gibbs: T must be positive");
    const double beta = 1.0 / T;
    SpectralDecomposition sd = eigh(model.composite());
    const double lam_min = sd.eigenvalues.minCoeff();
    Matrix w =
        matrix_function(sd, [&](double x) { return std::exp(-beta * (x - lam_min)); }).matrix();
    w /= w.trace().real();
    return DensityMatrix(std::move(w));
}

HermitianOperator mean_force_hamiltonian(const CompositeModel& model, double T) {
    if (!(T > 0.0)) throw DomainError("mean_force_hamiltonian: T must be positive");
    const double beta = 1.0 / T;
    SpectralDecomposition sd = eigh(model.composite());
    const double lam_min = sd.eigenvalues.minCoeff();
    const Matrix shifted =
        matrix_function(sd, [&](double x) { return std::exp(-beta * (x - lam_min)); }).matrix();
    const HermitianOperator reduced = partial_trace_R(HermitianOperator(shifted),
                                                      model.dimS, model.dimR);
    SpectralDecomposition rsd = eigh(reduced);
    for (int i = 0; i < rsd.dim(); ++i)
        if (rsd.eigenvalues[i] <= kRankFloor)
            throw NumericError("mean_force_hamiltonian: reduced exponential not positive "
                               "definite (eigenvalue " + std::to_string(rsd.eigenvalues[i]) +
                               "); beta too large at this spectral gap");
    const double log_zr = log_partition(eigh(model.H_R).eigenvalues, beta);
    // H* = -T ln(tr_R e^{-bH}) + (lam_min + T ln Z_R) I, with the shift undone.
    Matrix h = -T * matrix_function(rsd, [](double x) { return std::log(x); }).matrix();
    h += (lam_min + T * log_zr) * Matrix::Identity(model.dimS, model.dimS);
    return HermitianOperator(std::move(h));
}

HermitianOperator effective_energy_operator(const CompositeModel& model, double T) {
    if (!(T > 0.0)) throw DomainError("effective_energy_operator: T must be positive");
    const double beta = 1.0 / T;
    auto f = [&](double b) {
        return (b * mean_force_hamiltonian(model, 1.0 / b).matrix()).eval();
    };
    return HermitianOperator(richardson_diff(f, beta, 1e-4 * beta));
}

ThermoReport thermo_report(const CompositeModel& model, double T) {
    if (!(T > 0.0)) throw DomainError("thermo_report: T must be positive");

    auto pi_at = [&](double t) {
        Matrix r = partial_trace_R(global_gibbs(model, t).hermitian(), model.dimS, model.dimR)
                       .matrix();
        r /= r.trace().real();
        return DensityMatrix(std::move(r));
    };

    ThermoReport rep(T, pi_at(T), mean_force_hamiltonian(model, T),
                     effective_energy_operator(model, T));

    rep.U = expectation(rep.pi_S, rep.E_star);
    const VariancePartition part = skew_avg(rep.pi_S, rep.E_star);
    rep.varU = part.variance;
    rep.Q = part.quantum;
    rep.K = part.classical;

    auto u_at = [&](double t) {
        return expectation(pi_at(t), effective_energy_operator(model, t));
    };
    rep.C = richardson_diff_scalar(u_at, T, 1e-3 * T);

    auto estar_at = [&](double t) {
        return effective_energy_operator(model, t).matrix();
    };
    rep.dT_E_star_mean =
        expectation(rep.pi_S, HermitianOperator(richardson_diff(estar_at, T, 1e-3 * T)));

    StateFamily family;
    family.evaluate = pi_at;
    rep.qfi_T = qfi(family, T).qfi;

    rep.snr_bound = rep.C - rep.dT_E_star_mean;
    rep.negative_snr_bound = rep.snr_bound < 0.0;
    rep.delta_beta_strong = 1.0 / std::sqrt(std::max(rep.varU - rep.Q, 0.0));
    rep.delta_beta_weak = 1.0 / std::sqrt(std::max(rep.varU, 0.0));

    rep.fdr_residual =
        rep.C - rep.varU / (T * T) + rep.Q / (T * T) - rep.dT_E_star_mean;
    if (std::abs(rep.fdr_residual) > 1e-5 * (1.0 + std::abs(rep.C)))
        throw NumericError("thermo_report: FDR residual " + std::to_string(rep.fdr_residual) +
                           " at T=" + std::to_string(T));
    const double t4f = T * T * T * T * rep.qfi_T;
    if (t4f > rep.K + 1e-8 * (1.0 + rep.K))
        throw NumericError("thermo_report: T^4 F(T) = " + std::to_string(t4f) +
                           " exceeds K = " + std::to_string(rep.K) + " at T=" +
                           std::to_string(T));
    return rep;
}

namespace {

void check_grid(const std::vector<double>& T_grid) {
    for (std::size_t i = 0; i < T_grid.size(); ++i) {
        if (!(T_grid[i] > 0.0))
            throw DomainError("temperature_sweep: grid point " + std::to_string(i) +
                              " not positive");
        if (i > 0 && T_grid[i] <= T_grid[i - 1])
            throw DomainError("temperature_sweep: grid not strictly ascending at index " +
                              std::to_string(i));
    }
}

}  // namespace

std::vector<SweepPoint> temperature_sweep_serial(const CompositeModel& model,
                                                 const std::vector<double>& T_grid) {
    check_grid(T_grid);
    std::vector<SweepPoint> out;
    out.reserve(T_grid.size());
    for (double T : T_grid) {
        SweepPoint pt;
        pt.temperature = T;
        try {
            pt.report = thermo_report(model, T);
        } catch (const std::exception& e) {
            pt.error = e.what();
        }
        out.push_back(std::move(pt));
    }
    return out;
}

std::vector<SweepPoint> temperature_sweep(const CompositeModel& model,
                                          const std::vector<double>& T_grid, int threads) {
    check_grid(T_grid);
    const int n = static_cast<int>(T_grid.size());
    std::vector<SweepPoint> out(n);
    if (threads > 0) omp_set_num_threads(threads);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        out[i].temperature = T_grid[i];
        try {
            out[i].report = thermo_report(model, T_grid[i]);
        } catch (const std::exception& e) {
            out[i].error = e.what();
        }
    }
    return out;
}

}  // namespace qtherm
