#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qtherm/mean_force.hpp"
#include "qtherm/sweeps.hpp"

using namespace qtherm;

namespace {

HermitianOperator half_sigma_z() {
    return HermitianOperator(Matrix(0.5 * sigma_z().matrix()));
}

CompositeModel uncoupled_qubits() {
    return CompositeModel(2, 2, half_sigma_z(), half_sigma_z(),
                          HermitianOperator(Matrix(Matrix::Zero(4, 4))));
}

CompositeModel coupled_qubits(double g) {
    // two coupling terms so that [d_beta H*, H*] != 0 and Q > 0
    const Matrix v = g * (kron_raw(sigma_x().matrix(), sigma_x().matrix()) +
                          0.6 * kron_raw(sigma_z().matrix(), sigma_x().matrix()));
    return CompositeModel(2, 2, half_sigma_z(), half_sigma_z(), HermitianOperator(Matrix(v)));
}

CompositeModel commuting_qubits(double g) {
    const Matrix v = g * kron_raw(sigma_z().matrix(), sigma_z().matrix());
    return CompositeModel(2, 2, half_sigma_z(), half_sigma_z(), HermitianOperator(Matrix(v)));
}

CompositeModel qubit_qutrit(double g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Matrix hr = Matrix::Zero(3, 3);
    hr(0, 0) = 0.0;
    hr(1, 1) = 0.7;
    hr(2, 2) = 1.9;
    const Matrix v = g * random_hermitian(6, rng).matrix();
    return CompositeModel(2, 3, half_sigma_z(), HermitianOperator(std::move(hr)),
                          HermitianOperator(Matrix(v)));
}

}  // namespace

TEST_CASE("model validation") {
    CHECK_THROWS_AS(CompositeModel(2, 2, half_sigma_z(), half_sigma_z(),
                                   HermitianOperator::identity(3)),
                    SizeError);
    CHECK_THROWS_AS(thermo_report(uncoupled_qubits(), 0.0), DomainError);
    CHECK_THROWS_AS(thermo_report(uncoupled_qubits(), -1.0), DomainError);
}

TEST_CASE("uncoupled composite reduces to bare weak-coupling thermodynamics") {
    const CompositeModel model = uncoupled_qubits();
    const double T = 0.8;
    const HermitianOperator hstar = mean_force_hamiltonian(model, T);
    CHECK((hstar.matrix() - model.H_S.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    const HermitianOperator estar = effective_energy_operator(model, T);
    CHECK((estar.matrix() - model.H_S.matrix()).cwiseAbs().maxCoeff() < 1e-9);

    const ThermoReport rep = thermo_report(model, T);
    // bare qubit oracles: U = -tanh(beta/2)/2, varU = sech^2(beta/2)/4
    const double b2 = 0.5 / T;
    CHECK(rep.U == doctest::Approx(-0.5 * std::tanh(b2)).epsilon(1e-8));
    const double var_oracle = 0.25 / std::pow(std::cosh(b2), 2);
    CHECK(rep.varU == doctest::Approx(var_oracle).epsilon(1e-8));
    CHECK(rep.Q == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rep.C == doctest::Approx(var_oracle / (T * T)).epsilon(1e-6));
    CHECK(rep.dT_E_star_mean == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(rep.delta_beta_strong == doctest::Approx(rep.delta_beta_weak).epsilon(1e-8));
    CHECK(rep.snr_bound == doctest::Approx(rep.varU / (T * T)).epsilon(1e-6));
    // weak coupling saturates the precision bound
    CHECK(T * T * T * T * rep.qfi_T == doctest::Approx(rep.K).epsilon(1e-6));
}

TEST_CASE("global Gibbs state matches direct exponentiation") {
    const CompositeModel model = coupled_qubits(0.3);
    const double beta = 1.25;
    const DensityMatrix rho = global_gibbs(model, 1.0 / beta);
    const SpectralDecomposition sd = eigh(model.composite());
    Matrix direct = Matrix::Zero(4, 4);
    double z = 0.0;
    for (int k = 0; k < 4; ++k) z += std::exp(-beta * sd.eigenvalues[k]);
    for (int k = 0; k < 4; ++k)
        direct += std::exp(-beta * sd.eigenvalues[k]) / z *
                  (sd.eigenvectors.col(k) * sd.eigenvectors.col(k).adjoint());
    CHECK((rho.matrix() - direct).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("mean-force state reproduces the reduced Gibbs state") {
    for (double g : {0.3, 0.8}) {
        const CompositeModel model = coupled_qubits(g);
        const double T = 0.7;
        const double beta = 1.0 / T;
        const HermitianOperator hstar = mean_force_hamiltonian(model, T);
        Matrix e = matrix_function(hstar, [&](double x) { return std::exp(-beta * x); }).matrix();
        e /= e.trace().real();
        const Matrix reduced =
            partial_trace_R(global_gibbs(model, T).hermitian(), 2, 2).matrix();
        CHECK((e - reduced).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("effective partition function normalization") {
    // tr_S e^{-beta H*} = Z / Z_R in the chosen gauge
    const CompositeModel model = coupled_qubits(0.5);
    const double T = 0.9, beta = 1.0 / T;
    const HermitianOperator hstar = mean_force_hamiltonian(model, T);
    const double z_star =
        matrix_function(hstar, [&](double x) { return std::exp(-beta * x); })
            .matrix().trace().real();
    double z = 0.0, zr = 0.0;
    for (double lam : eigh(model.composite()).eigenvalues) z += std::exp(-beta * lam);
    for (double lam : eigh(model.H_R).eigenvalues) zr += std::exp(-beta * lam);
    CHECK(z_star == doctest::Approx(z / zr).epsilon(1e-12));
}

TEST_CASE("internal energy equals the energy-difference oracle") {
    // U = <H>_rho - <H_R>_{gibbs(H_R)} follows from U = -d/dbeta ln(Z/Z_R)
    const CompositeModel model = coupled_qubits(0.4);
    const double T = 0.6, beta = 1.0 / T;
    const ThermoReport rep = thermo_report(model, T);
    const DensityMatrix rho = global_gibbs(model, T);
    const double h_mean = expectation(rho, model.composite());
    double zr = 0.0, er = 0.0;
    for (double lam : eigh(model.H_R).eigenvalues) {
        zr += std::exp(-beta * lam);
        er += lam * std::exp(-beta * lam);
    }
    CHECK(rep.U == doctest::Approx(h_mean - er / zr).epsilon(1e-6));
}

TEST_CASE("commuting coupling: scalar closed form and vanishing quantum share") {
    const double g = 0.35, T = 0.8, beta = 1.0 / T;
    const CompositeModel model = commuting_qubits(g);
    const HermitianOperator hstar = mean_force_hamiltonian(model, T);
    const double zr = 2.0 * std::cosh(0.5 * beta);
    for (int i = 0; i < 2; ++i) {
        const double s = (i == 0) ? 1.0 : -1.0;
        double w = 0.0;
        for (double r : {1.0, -1.0})
            w += std::exp(-beta * (0.5 * s + 0.5 * r + g * s * r)) / zr;
        CHECK(hstar.matrix()(i, i).real() == doctest::Approx(-T * std::log(w)).epsilon(1e-12));
        CHECK(std::abs(hstar.matrix()(i, 1 - i)) < 1e-12);
    }
    const ThermoReport rep = thermo_report(model, T);
    CHECK(rep.Q == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(T * T * T * T * rep.qfi_T == doctest::Approx(rep.K).epsilon(1e-6));
}

TEST_CASE("fluctuation-dissipation split and the precision bound, coupled qubits") {
    for (double T : {0.4, 0.8, 2.0}) {
        const ThermoReport rep = thermo_report(coupled_qubits(0.6), T);
        CHECK(rep.Q > 0.0);
        CHECK(rep.K > 0.0);
        CHECK(rep.varU == doctest::Approx(rep.Q + rep.K).epsilon(1e-9));
        CHECK(std::abs(rep.fdr_residual) <= 1e-5 * (1.0 + std::abs(rep.C)));
        // snr_bound is defined as C - <d_T E*> and must equal (varU - Q)/T^2
        CHECK(rep.snr_bound ==
              doctest::Approx(rep.K / (T * T)).epsilon(1e-4));
        CHECK(T * T * T * T * rep.qfi_T <= rep.K + 1e-8 * (1.0 + rep.K));
        CHECK(rep.delta_beta_strong >= rep.delta_beta_weak);
    }
}

TEST_CASE("quantum share decays quadratically with the coupling") {
    const double T = 0.8;
    double prev = -1.0;
    std::vector<double> qs;
    for (double g : {0.3, 0.03, 0.003}) {
        const ThermoReport rep = thermo_report(coupled_qubits(g), T);
        qs.push_back(rep.Q);
        if (prev >= 0.0) CHECK(rep.Q < prev / 50.0);  // expect ~1/100 per decade
        prev = rep.Q;
    }
    CHECK(qs.back() < 1e-5 * qs.front());
}

TEST_CASE("high-temperature limit is maximally mixed") {
    const ThermoReport rep = thermo_report(coupled_qubits(0.6), 1e4);
    CHECK((rep.pi_S.matrix() - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("heat capacity agrees with an external derivative of U") {
    const CompositeModel model = qubit_qutrit(0.5, 77);
    const double T = 0.9, dt = 1e-3;
    const ThermoReport rep = thermo_report(model, T);
    const double u_plus = thermo_report(model, T + dt).U;
    const double u_minus = thermo_report(model, T - dt).U;
    CHECK(rep.C == doctest::Approx((u_plus - u_minus) / (2.0 * dt)).epsilon(1e-4));
}

TEST_CASE("qubit-qutrit chain checks") {
    const ThermoReport rep = thermo_report(qubit_qutrit(0.5, 77), 0.9);
    CHECK(rep.varU == doctest::Approx(rep.Q + rep.K).epsilon(1e-9));
    CHECK(rep.Q > 0.0);
    const double t4f = std::pow(0.9, 4) * rep.qfi_T;
    CHECK(t4f <= rep.K + 1e-8 * (1.0 + rep.K));
    CHECK(rep.delta_beta_strong > rep.delta_beta_weak);
    CHECK(rep.snr_bound == doctest::Approx(rep.K / (0.9 * 0.9)).epsilon(1e-4));
}

TEST_CASE("temperature sweep: serial and parallel agree exactly") {
    const CompositeModel model = coupled_qubits(0.4);
    const std::vector<double> grid = log_spaced_grid(0.3, 3.0, 12);
    const auto serial = temperature_sweep_serial(model, grid);
    const auto parallel = temperature_sweep(model, grid, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        REQUIRE(serial[i].report.has_value());
        REQUIRE(parallel[i].report.has_value());
        CHECK(serial[i].report->U == parallel[i].report->U);
        CHECK(serial[i].report->Q == parallel[i].report->Q);
        CHECK(serial[i].report->qfi_T == parallel[i].report->qfi_T);
        CHECK(serial[i].report->C == parallel[i].report->C);
    }
    CHECK_THROWS_AS(temperature_sweep_serial(model, {0.5, 0.5}), DomainError);
    CHECK_THROWS_AS(temperature_sweep_serial(model, {-1.0}), DomainError);
}

TEST_CASE("sweep survives failing grid points") {
    // extremely low temperature underflows the reduced exponential
    const CompositeModel model = commuting_qubits(0.4);
    const auto pts = temperature_sweep_serial(model, {1e-4, 1.0});
    REQUIRE(pts.size() == 2);
    CHECK(!pts[0].report.has_value());
    CHECK(!pts[0].error.empty());
    CHECK(pts[1].report.has_value());
}
