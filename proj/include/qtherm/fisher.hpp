// fisher.hpp — quantum Fisher information of a differentiable state family,
// the symmetric logarithmic derivative, the classical-fluctuation bound for
// exponential states, and a projective-measurement MLE simulator.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "qtherm/operator_core.hpp"
#include "qtherm/skew.hpp"

namespace qtherm {

struct StateFamily {
    std::function<DensityMatrix(double)> evaluate;
    double step_hint = 0.0;  // 0 -> 1e-5 * (1 + |theta|)

    double step_at(double theta) const {
        return step_hint > 0.0 ? step_hint : 1e-5 * (1.0 + std::abs(theta));
    }
};

// rho_theta = e^{-A_theta} / tr e^{-A_theta}; full rank by construction.
struct ExponentialFamily {
    std::function<HermitianOperator(double)> generator;
    double step_hint = 0.0;

    StateFamily family() const;
    double step_at(double theta) const {
        return step_hint > 0.0 ? step_hint : 1e-5 * (1.0 + std::abs(theta));
    }
};

struct QfiReport {
    double qfi = 0.0;
    std::optional<HermitianOperator> sld;
    int dropped_pairs = 0;  // p_n + p_m < 1e-12, skipped
    // Populated by theorem1_check only.
    double classical_bound = 0.0;  // K[rho_theta, B_theta]
    double quantum_term = 0.0;     // Q[rho_theta, B_theta]
    bool has_bound = false;
    bool equality = false;  // gap < 1e-6 * classical_bound
};

// Central difference with one Richardson refinement; traceless, hermitian.
HermitianOperator state_derivative(const StateFamily& family, double theta);

QfiReport qfi(const StateFamily& family, double theta);

// Fills the Theorem-1 fields: B_theta from central differences of the
// generator, K and Q from the skew-information module.
QfiReport theorem1_check(const ExponentialFamily& family, double theta);

struct EstimationStats {
    double mean_estimate = 0.0;
    double variance = 0.0;
    double qfi_at_true = 0.0;
    double classical_fisher = 0.0;  // of the SLD-basis outcome distribution
};

// Projective measurement in the SLD eigenbasis fixed at theta_true; per-trial
// MLE by multi-start golden-section over [theta_true/10, theta_true*10].
EstimationStats simulate_estimation(const StateFamily& family, double theta_true,
                                    int n_samples, int n_trials, std::uint64_t seed);

}  // namespace qtherm
