#include "qtherm/fisher.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace qtherm {

namespace {

DensityMatrix exponential_state(const HermitianOperator& gen) {
    // Shift by the smallest eigenvalue of -A so the exponent tops out at 0.
    SpectralDecomposition sd = eigh(gen);
    const double lam_min = sd.eigenvalues.minCoeff();
    Matrix num = matrix_function(sd, [lam_min](double x) { return std::exp(-(x - lam_min)); })
                     .matrix();
    num /= num.trace().real();
    return DensityMatrix(std::move(num));
}

Matrix central_diff(const std::function<Matrix(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// One Richardson refinement of the O(h^2) central difference.
Matrix richardson_diff(const std::function<Matrix(double)>& f, double x, double h) {
    const Matrix d1 = central_diff(f, x, h);
    const Matrix d2 = central_diff(f, x, 0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    return std::mt19937_64(seq);
}

// Golden-section maximization on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

StateFamily ExponentialFamily::family() const {
    auto gen = generator;
    StateFamily out;
    out.evaluate = [gen](double theta) { return exponential_state(gen(theta)); };
    out.step_hint = step_hint;
    return out;
}

HermitianOperator state_derivative(const StateFamily& family, double theta) {
    const double h = family.step_at(theta);
    auto f = [&](double t) { return family.evaluate(t).matrix(); };
    Matrix d = richardson_diff(f, theta, h);
    const double tr = std::abs(d.trace().real());
    if (tr > 1e-9)
        throw NumericError("state_derivative: trace residue " + std::to_string(tr));
    return HermitianOperator(std::move(d));
}

QfiReport qfi(const StateFamily& family, double theta) {
    const DensityMatrix rho = family.evaluate(theta);
    const HermitianOperator drho = state_derivative(family, theta);
    const SpectralDecomposition sd = eigh(rho.hermitian());
    const int d = sd.dim();
    const Matrix db = sd.eigenvectors.adjoint() * drho.matrix() * sd.eigenvectors;

    QfiReport rep;
    double f = 0.0;
    Matrix sld_eig = Matrix::Zero(d, d);
    for (int n = 0; n < d; ++n) {
        for (int m = n; m < d; ++m) {
            const double denom = sd.eigenvalues[n] + sd.eigenvalues[m];
            if (denom < 1e-12) {
                ++rep.dropped_pairs;
                continue;
            }
            // pairwise-symmetrized element; 1/denom would otherwise blow up
            // the anti-hermitian roundoff of the basis change
            const Complex e = 0.5 * (db(n, m) + std::conj(db(m, n)));
            f += (n == m ? 2.0 : 4.0) * std::norm(e) / denom;
            sld_eig(n, m) = 2.0 * e / denom;
            if (n != m) sld_eig(m, n) = std::conj(sld_eig(n, m));
        }
    }
    rep.qfi = f;
    rep.sld = HermitianOperator(sd.eigenvectors * sld_eig * sd.eigenvectors.adjoint());
    return rep;
}

QfiReport theorem1_check(const ExponentialFamily& family, double theta) {
    QfiReport rep = qfi(family.family(), theta);
    const double h = family.step_at(theta);
    auto gen = [&](double t) { return family.generator(t).matrix(); };
    const HermitianOperator b_theta(richardson_diff(gen, theta, h));
    const DensityMatrix rho = exponential_state(family.generator(theta));
    const VariancePartition part = skew_avg(rho, b_theta);
    rep.classical_bound = part.classical;
    rep.quantum_term = part.quantum;
    rep.has_bound = true;
    rep.equality = (rep.classical_bound - rep.qfi) < 1e-6 * rep.classical_bound;
    return rep;
}

EstimationStats simulate_estimation(const StateFamily& family, double theta_true,
                                    int n_samples, int n_trials, std::uint64_t seed) {
    if (n_samples < 1 || n_trials < 1)
        throw DomainError("simulate_estimation: n_samples and n_trials must be >= 1");
    if (!(theta_true > 0.0))
        throw DomainError("simulate_estimation: positive-parameter bracket requires theta_true > 0");

    const QfiReport rep = qfi(family, theta_true);
    const SpectralDecomposition basis = eigh(*rep.sld);
    const int d = basis.dim();

    auto probs = [&](double theta) {
        const Matrix rho = family.evaluate(theta).matrix();
        std::vector<double> p(d);
        for (int i = 0; i < d; ++i) {
            const Complex v = (basis.eigenvectors.col(i).adjoint() * rho *
                               basis.eigenvectors.col(i))(0, 0);
            p[i] = std::max(v.real(), 0.0);
        }
        return p;
    };

    // Classical Fisher information of the fixed-basis measurement at theta_true.
    const std::vector<double> p0 = probs(theta_true);
    const double h = family.step_at(theta_true);
    const std::vector<double> pp = probs(theta_true + h), pm = probs(theta_true - h);
    const std::vector<double> pp2 = probs(theta_true + 0.5 * h),
                              pm2 = probs(theta_true - 0.5 * h);
    double cfi = 0.0;
    for (int i = 0; i < d; ++i) {
        if (p0[i] < 1e-12) continue;
        const double d1 = (pp[i] - pm[i]) / (2.0 * h);
        const double d2 = (pp2[i] - pm2[i]) / h;
        const double dp = (4.0 * d2 - d1) / 3.0;
        cfi += dp * dp / p0[i];
    }
    if (cfi < 1e-12)
        throw DomainError("simulate_estimation: zero-information outcome distribution");

    const double lo = theta_true / 10.0, hi = theta_true * 10.0;
    double sum = 0.0, sumsq = 0.0;
    for (int trial = 0; trial < n_trials; ++trial) {
        auto rng = trial_rng(seed, trial);
        std::discrete_distribution<int> draw(p0.begin(), p0.end());
        std::vector<int> counts(d, 0);
        for (int s = 0; s < n_samples; ++s) ++counts[draw(rng)];

        auto loglik = [&](double theta) {
            const std::vector<double> p = probs(theta);
            double ll = 0.0;
            for (int i = 0; i < d; ++i) {
                if (counts[i] == 0) continue;
                if (p[i] < 1e-300) return -1e300;
                ll += counts[i] * std::log(p[i]);
            }
            return ll;
        };

        // Multi-start over three sub-brackets to dodge flat-likelihood traps.
        double best = lo;
        double best_ll = -1e301;
        const double edges[4] = {lo, theta_true / 2.0, theta_true * 2.0, hi};
        for (int k = 0; k < 3; ++k) {
            const double cand = golden_max(loglik, edges[k], edges[k + 1], 1e-8);
            const double ll = loglik(cand);
            if (ll > best_ll) {
                best_ll = ll;
                best = cand;
            }
        }
        if (best <= lo * (1.0 + 1e-6) || best >= hi * (1.0 - 1e-6))
            throw NumericError("simulate_estimation: MLE at bracket edge [" +
                               std::to_string(lo) + ", " + std::to_string(hi) +
                               "], loglik endpoints " + std::to_string(loglik(lo)) + ", " +
                               std::to_string(loglik(hi)));
        sum += best;
        sumsq += best * best;
    }

    EstimationStats stats;
    stats.mean_estimate = sum / n_trials;
    stats.variance = sumsq / n_trials - stats.mean_estimate * stats.mean_estimate;
    stats.qfi_at_true = rep.qfi;
    stats.classical_fisher = cfi;
    return stats;
}

}  // namespace qtherm
