// oscillator.hpp — fully analytic damped harmonic oscillator with a
// Drude-Ullersma reservoir: complex digamma, characteristic frequencies,
// exact quadratures, closed-form thermodynamics and a truncated-Fock export.

#pragma once

#include <complex>
#include <utility>

#include "qtherm/mean_force.hpp"
#include "qtherm/operator_core.hpp"

namespace qtherm {

// psi(z) by upward recurrence to Re(z) >= 10 plus an 8-term Stirling series.
Complex digamma(Complex z);

struct OscillatorModel {
    double mass = 1.0;
    double omega = 1.0;   // bare frequency
    double gamma = 0.1;   // damping coefficient
    double cutoff = 50.0; // Drude cutoff omega_D; should be >> omega, gamma

    OscillatorModel(double m, double w, double g, double wd);
};

struct CharacteristicFrequencies {
    Complex lambda1;  // gamma/2 + sqrt(gamma^2/4 - omega^2)
    Complex lambda2;  // gamma/2 - sqrt(gamma^2/4 - omega^2)
    Complex lambda3;  // omega_D - gamma
};

CharacteristicFrequencies characteristic_frequencies(const OscillatorModel& model);

struct OscillatorDerived {
    double temperature = 0.0;
    double x2 = 0.0;  // <x^2>
    double p2 = 0.0;  // <p^2>
    double M_T = 0.0;
    double omega_T = 0.0;
    double A_T = 0.0;      // M_T * omega_T
    double alpha_T = 0.0;  // 1 - (omega_T'/omega_T) T
    double g_T = 0.0;      // omega_T * T * A_T'/A_T
    double d_omega_T = 0.0;
    double d_A_T = 0.0;
};

OscillatorDerived quadratures(const OscillatorModel& model, double T);

struct OscillatorReport {
    double temperature = 0.0;
    OscillatorDerived derived;
    double U = 0.0;
    double varU = 0.0;
    double Q = 0.0;
    double K = 0.0;
    double C = 0.0;
    double dT_E_star_mean = 0.0;
    double t4_qfi = 0.0;  // T^4 F(T)
    double qfi_T = 0.0;
    double snr_opt = 0.0;    // T^2 F(T)
    double snr_bound = 0.0;  // C - <d_T E*>
};

OscillatorReport oscillator_report(const OscillatorModel& model, double T);

// Finite number-basis state and effective energy operator, truncated so the
// discarded tail weight is below 1e-12. Feeding these to the generic modules
// reproduces the closed forms.
std::pair<DensityMatrix, HermitianOperator> truncated_fock_export(
    const OscillatorModel& model, double T, int n_max_cap = 512);

}  // namespace qtherm
