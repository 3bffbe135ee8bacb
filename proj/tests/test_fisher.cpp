#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qtherm/fisher.hpp"
#include "qtherm/sweeps.hpp"

using namespace qtherm;

namespace {

// rho = e^{-theta sigma_z}/Z; outcome probabilities (1 -+ tanh theta)/2, so the
// Fisher information is sech^2(theta) = 1 - tanh^2(theta).
ExponentialFamily commuting_family() {
    return ExponentialFamily{[](double theta) {
        return HermitianOperator(Matrix(theta * sigma_z().matrix()));
    }};
}

// Thermal qubit in inverse temperature: H = sigma_z/2, F(beta) = sech^2(beta/2)/4.
ExponentialFamily thermal_qubit_beta() {
    return ExponentialFamily{[](double beta) {
        return HermitianOperator(Matrix(0.5 * beta * sigma_z().matrix()));
    }};
}

StateFamily qubit_tanh_family() {
    return StateFamily{[](double theta) {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = 0.5 * (1.0 + std::tanh(theta));
        m(1, 1) = 0.5 * (1.0 - std::tanh(theta));
        return DensityMatrix(std::move(m));
    }};
}

}  // namespace

TEST_CASE("constant family carries no information") {
    StateFamily family{[](double) {
        return DensityMatrix(Matrix(0.5 * Matrix::Identity(2, 2)));
    }};
    const QfiReport rep = qfi(family, 0.7);
    CHECK(rep.qfi == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("state_derivative matches the qubit closed form") {
    const StateFamily family = qubit_tanh_family();
    const double theta = 0.4;
    const HermitianOperator d = state_derivative(family, theta);
    const double sech2 = 1.0 - std::tanh(theta) * std::tanh(theta);
    CHECK(d.matrix()(0, 0).real() == doctest::Approx(0.5 * sech2).epsilon(1e-9));
    CHECK(d.matrix()(1, 1).real() == doctest::Approx(-0.5 * sech2).epsilon(1e-9));
    CHECK(std::abs(d.matrix()(0, 1)) < 1e-12);
    CHECK(std::abs(d.matrix().trace()) < 1e-12);
}

TEST_CASE("commuting exponential family: F = 1 - tanh^2(theta)") {
    const StateFamily family = commuting_family().family();
    const double theta = 0.5;
    const QfiReport rep = qfi(family, theta);
    const double oracle = 1.0 - std::tanh(theta) * std::tanh(theta);
    CHECK(oracle == doctest::Approx(0.7864477).epsilon(1e-6));
    CHECK(rep.qfi == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("thermal qubit: F(beta=1) and the resulting error bound") {
    const QfiReport rep = qfi(thermal_qubit_beta().family(), 1.0);
    const double oracle = 0.25 / std::pow(std::cosh(0.5), 2);
    CHECK(oracle == doctest::Approx(0.1966119).epsilon(1e-6));
    CHECK(rep.qfi == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(1.0 / rep.qfi == doctest::Approx(5.0861668).epsilon(1e-6));
}

TEST_CASE("SLD solves the Lyapunov equation and reproduces the QFI") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const int dim = 2 + trial % 4;
        const HermitianOperator a0 = random_hermitian(dim, rng);
        const HermitianOperator a1 = random_hermitian(dim, rng);
        ExponentialFamily fam{[&](double theta) {
            return HermitianOperator(Matrix(a0.matrix() + theta * a1.matrix()));
        }};
        const StateFamily family = fam.family();
        const double theta = 0.6;
        const QfiReport rep = qfi(family, theta);
        REQUIRE(rep.sld.has_value());
        const Matrix rho = family.evaluate(theta).matrix();
        const Matrix L = rep.sld->matrix();
        const Matrix drho = state_derivative(family, theta).matrix();
        const double scale = 1.0 + drho.cwiseAbs().maxCoeff();
        CHECK((0.5 * (rho * L + L * rho) - drho).cwiseAbs().maxCoeff() < 1e-7 * scale);
        const double tr_rho_l2 = (rho * L * L).trace().real();
        CHECK(rep.qfi == doctest::Approx(tr_rho_l2).epsilon(1e-7));
    }
}

TEST_CASE("reparametrization: inverse-temperature vs temperature QFI") {
    const ExponentialFamily fam_beta = thermal_qubit_beta();
    ExponentialFamily fam_T{[&](double T) { return fam_beta.generator(1.0 / T); }};
    for (double T : {0.5, 1.0, 2.0}) {
        const double f_T = qfi(fam_T.family(), T).qfi;
        const double f_beta = qfi(fam_beta.family(), 1.0 / T).qfi;
        CHECK(f_T == doctest::Approx(f_beta / std::pow(T, 4)).epsilon(1e-6));
    }
}

TEST_CASE("QFI is invariant under theta-independent unitaries") {
    std::mt19937_64 rng(13);
    // unitary from a random hermitian: U = e^{iG}
    const HermitianOperator g = random_hermitian(3, rng);
    const SpectralDecomposition sd = eigh(g);
    Matrix phases = Matrix::Zero(3, 3);
    for (int k = 0; k < 3; ++k) phases(k, k) = std::exp(Complex(0.0, sd.eigenvalues[k]));
    const Matrix uni = sd.eigenvectors * phases * sd.eigenvectors.adjoint();

    const HermitianOperator a0 = random_hermitian(3, rng);
    const HermitianOperator a1 = random_hermitian(3, rng);
    ExponentialFamily fam{[&](double theta) {
        return HermitianOperator(Matrix(a0.matrix() + theta * a1.matrix()));
    }};
    const StateFamily base = fam.family();
    StateFamily rotated{[&](double theta) {
        const Matrix r = uni * base.evaluate(theta).matrix() * uni.adjoint();
        return DensityMatrix(Matrix(r));
    }};
    const double theta = 0.8;
    CHECK(qfi(rotated, theta).qfi == doctest::Approx(qfi(base, theta).qfi).epsilon(1e-8));
}

TEST_CASE("classical-fluctuation bound on random quadratic families") {
    const auto trials = theorem1_sweep_serial(300, 2, 8, 4242);
    int violations = 0;
    for (const auto& t : trials)
        if (t.rel_gap > 1e-8) ++violations;
    CHECK(violations == 0);
}

TEST_CASE("theorem1_check fields and equality in the commuting case") {
    const QfiReport rep = theorem1_check(commuting_family(), 0.5);
    CHECK(rep.has_bound);
    // commuting generator: bound saturates, quantum share vanishes
    CHECK(rep.quantum_term == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(rep.qfi == doctest::Approx(rep.classical_bound).epsilon(1e-6));
    CHECK(rep.equality);
}

TEST_CASE("non-commuting generator keeps a strict gap") {
    ExponentialFamily fam{[](double theta) {
        return HermitianOperator(
            Matrix(sigma_x().matrix() + theta * sigma_z().matrix()));
    }};
    const QfiReport rep = theorem1_check(fam, 0.9);
    CHECK(rep.quantum_term > 1e-3);
    CHECK(rep.qfi < rep.classical_bound - 1e-4);
    CHECK(!rep.equality);
}

TEST_CASE("near-maximally-mixed family stays finite and bounded") {
    std::mt19937_64 rng(31);
    const HermitianOperator a1 = random_hermitian(4, rng);
    ExponentialFamily fam{[&](double theta) {
        return HermitianOperator(Matrix(theta * a1.matrix()));
    }};
    const double theta = 1e-4;
    const QfiReport rep = theorem1_check(fam, theta);
    CHECK(std::isfinite(rep.qfi));
    CHECK(rep.qfi <= rep.classical_bound + 1e-3 * (1.0 + rep.classical_bound));
}

TEST_CASE("MLE simulation saturates the Cramer-Rao scaling on a qubit") {
    const StateFamily family = thermal_qubit_beta().family();
    const double beta_true = 1.0;
    const int n_samples = 2000;
    const EstimationStats stats = simulate_estimation(family, beta_true, n_samples, 200, 99);
    CHECK(stats.qfi_at_true == doctest::Approx(0.1966119).epsilon(1e-6));
    // commuting family: the SLD measurement extracts all the information
    CHECK(stats.classical_fisher == doctest::Approx(stats.qfi_at_true).epsilon(1e-6));
    CHECK(stats.mean_estimate == doctest::Approx(beta_true).epsilon(0.05));
    const double ratio = n_samples * stats.variance * stats.qfi_at_true;
    CHECK(ratio > 0.8);
    CHECK(ratio < 1.3);
}

TEST_CASE("estimation rejects zero-information families") {
    StateFamily flat{[](double) {
        return DensityMatrix(Matrix(0.5 * Matrix::Identity(2, 2)));
    }};
    CHECK_THROWS_AS(simulate_estimation(flat, 1.0, 100, 5, 7), DomainError);
    CHECK_THROWS_AS(simulate_estimation(thermal_qubit_beta().family(), -1.0, 100, 5, 7),
                    DomainError);
}
