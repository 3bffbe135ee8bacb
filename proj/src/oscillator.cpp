#include "qtherm/oscillator.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace qtherm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// B_{2n}/(2n) for the Stirling tail of psi.
constexpr double kStirling[8] = {1.0 / 12.0,   -1.0 / 120.0,     1.0 / 252.0, -1.0 / 240.0,
                                 1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0,  -3617.0 / 8160.0};

}  // namespace

Complex digamma(Complex z) {
    const double nearest = std::round(z.real());
    if (nearest <= 0.0 && std::abs(z - Complex(nearest, 0.0)) < 1e-12)
        throw DomainError("digamma: pole at z = " + std::to_string(nearest));
    Complex acc = 0.0;
    while (z.real() < 10.0) {
        acc -= 1.0 / z;
        z += 1.0;
    }
    const Complex inv2 = 1.0 / (z * z);
    Complex tail = 0.0;
    Complex p = inv2;
    for (double c : kStirling) {
        tail += c * p;
        p *= inv2;
    }
    return acc + std::log(z) - 0.5 / z - tail;
}

OscillatorModel::OscillatorModel(double m, double w, double g, double wd)
    : mass(m), omega(w), gamma(g), cutoff(wd) {
    if (!(m > 0.0 && w > 0.0 && g > 0.0 && wd > 0.0))
        throw DomainError("OscillatorModel: all parameters must be positive");
    const double floor = std::max(w, g);
    if (cutoff < 10.0 * floor)
        throw DomainError("OscillatorModel: cutoff " + std::to_string(cutoff) +
                          " below 10*max(omega, gamma)");
    if (cutoff < 25.0 * floor)
        std::fprintf(stderr,
                     "warning: OscillatorModel cutoff %g below 25*max(omega, gamma)=%g; "
                     "large-cutoff formulas degrade\n",
                     cutoff, 25.0 * floor);
}

CharacteristicFrequencies characteristic_frequencies(const OscillatorModel& model) {
    const Complex disc(model.gamma * model.gamma / 4.0 - model.omega * model.omega, 0.0);
    const Complex s = std::sqrt(disc);
    CharacteristicFrequencies cf;
    cf.lambda1 = model.gamma / 2.0 + s;
    cf.lambda2 = model.gamma / 2.0 - s;
    cf.lambda3 = Complex(model.cutoff - model.gamma, 0.0);
    return cf;
}

namespace {

// Cyclic three-term sum sum_i f(l_i) / ((l_{i+1}-l_i)(l_{i-1}-l_i)), which is
// the second divided difference f[l1,l2,l3]. Near critical damping l1 ~= l2
// the confluent form with f' is used (removable singularity).
Complex divided_difference3(const std::function<Complex(Complex)>& f,
                            const std::function<Complex(Complex)>& fprime,
                            const CharacteristicFrequencies& cf, double scale) {
    const Complex l1 = cf.lambda1, l2 = cf.lambda2, l3 = cf.lambda3;
    if (std::abs(l1 - l2) < 1e-6 * scale) {
        const Complex l = 0.5 * (l1 + l2);
        const Complex d = l3 - l;
        return (f(l3) - f(l) - fprime(l) * d) / (d * d);
    }
    return f(l1) / ((l2 - l1) * (l3 - l1)) + f(l2) / ((l3 - l2) * (l1 - l2)) +
           f(l3) / ((l1 - l3) * (l2 - l3));
}

double real_checked(Complex z, const char* what) {
    if (std::abs(z.imag()) > 1e-9 * (1.0 + std::abs(z.real())))
        throw NumericError(std::string(what) + ": imaginary residue " +
                           std::to_string(z.imag()));
    return z.real();
}

struct BareQuadratures {
    double x2, p2, omega_T, A_T;
};

BareQuadratures bare_quadratures(const OscillatorModel& model, double T) {
    if (!(T > 0.0)) throw DomainError("quadratures: T must be positive");
    const double beta = 1.0 / T;
    const CharacteristicFrequencies cf = characteristic_frequencies(model);
    const double wD = model.cutoff, M = model.mass, w = model.omega, g = model.gamma;

    auto psi_arg = [&](Complex l) { return 1.0 + beta * l / (2.0 * kPi); };
    auto psi = [&](Complex l) { return digamma(psi_arg(l)); };
    auto psi_prime = [&](Complex l) {
        // trigamma by a small central step on digamma
        const double h = 1e-6;
        return (digamma(psi_arg(l) + h) - digamma(psi_arg(l) - h)) / (2.0 * h) * beta /
               (2.0 * kPi);
    };

    auto fx = [&](Complex l) { return (l - wD) * psi(l); };
    auto fx_prime = [&](Complex l) { return psi(l) + (l - wD) * psi_prime(l); };
    auto fp = [&](Complex l) { return l * psi(l); };
    auto fp_prime = [&](Complex l) { return psi(l) + l * psi_prime(l); };

    const double sx = real_checked(divided_difference3(fx, fx_prime, cf, w), "x2 sum");
    const double sp = real_checked(divided_difference3(fp, fp_prime, cf, w), "p2 sum");

    BareQuadratures q;
    q.x2 = 1.0 / (M * beta * w * w) + sx / (M * kPi);
    q.p2 = M * w * w * q.x2 + M * g * wD * sp / kPi;
    if (!(q.x2 > 0.0 && q.p2 > 0.0))
        throw NumericError("quadratures: non-positive <x^2> or <p^2>");
    const double uncert = 2.0 * std::sqrt(q.x2 * q.p2);
    if (!(uncert > 1.0))
        throw NumericError("quadratures: uncertainty product " + std::to_string(uncert) +
                           " <= 1, arcoth undefined (outside model validity)");
    q.omega_T = T * std::log((uncert + 1.0) / (uncert - 1.0));  // 2T arcoth(uncert)
    q.A_T = std::sqrt(q.p2 / q.x2);
    return q;
}

double richardson_diff_scalar(const std::function<double(double)>& f, double x, double h) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

OscillatorDerived quadratures(const OscillatorModel& model, double T) {
    const BareQuadratures q = bare_quadratures(model, T);
    OscillatorDerived d;
    d.temperature = T;
    d.x2 = q.x2;
    d.p2 = q.p2;
    d.omega_T = q.omega_T;
    d.A_T = q.A_T;
    d.M_T = q.A_T / q.omega_T;
    const double h = 1e-4 * T;
    d.d_omega_T = richardson_diff_scalar(
        [&](double t) { return bare_quadratures(model, t).omega_T; }, T, h);
    d.d_A_T = richardson_diff_scalar(
        [&](double t) { return bare_quadratures(model, t).A_T; }, T, h);
    d.alpha_T = 1.0 - d.d_omega_T / d.omega_T * T;
    d.g_T = d.omega_T * T * d.d_A_T / d.A_T;
    return d;
}

OscillatorReport oscillator_report(const OscillatorModel& model, double T) {
    const OscillatorDerived d = quadratures(model, T);
    const double wT = d.omega_T, a = d.alpha_T, g = d.g_T, beta = 1.0 / T;
    const double u = beta * wT;
    const double em = std::exp(-u);    // e^{-beta omega_T}
    const double em2 = em * em;        // e^{-2 beta omega_T}
    const double om = -std::expm1(-u); // 1 - e^{-u}, safe for small u
    const double om2 = om * om;

    // sinh(u/2) e^{-u/2} = (1 - e^{-u})/2 collapses the sinh/exp ratios
    // into underflow-safe rational forms.
    const double var_h = wT * wT * em / om2;  // Var of H* = omega_T^2/(4 sinh^2(u/2))
    const double coth_half = (1.0 + em) / om;

    OscillatorReport rep;
    rep.temperature = T;
    rep.derived = d;
    rep.U = a * wT / 2.0 * coth_half;
    // pair {n, n+2} carries weight p_n + p_{n+2} = p_n (1 + e^{-2u}), hence
    // the (1 + e^{-2u})/2 factor on the g_T^2 term
    rep.varU = a * a * var_h + g * g * (1.0 + em2) / (2.0 * om2);
    rep.t4_qfi = a * a * var_h +
                 g * g * T * T / (wT * wT) * (1.0 - em2) * (1.0 - em2) /
                     ((1.0 + em2) * 2.0 * om2);
    rep.Q = g * g / (2.0 * om2) * (1.0 + em2 - (T / wT) * (1.0 - em2));
    rep.K = rep.varU - rep.Q;

    // C(T) from the closed three-term form; alpha_T' numerically.
    const double da = richardson_diff_scalar(
        [&](double t) { return quadratures(model, t).alpha_T; }, T, 1e-4 * T);
    rep.C = 0.5 * coth_half * (da * wT + a * d.d_omega_T) -
            a * wT * beta * (d.d_omega_T - wT * beta) * em / om2;

    // <d_T E*> = C - (Var - Q)/T^2 with Var - Q written out in closed form
    rep.dT_E_star_mean = rep.C - a * a * var_h / (T * T) -
                         g * g / (T * wT) * (1.0 - em2) / (2.0 * om2);
    rep.qfi_T = rep.t4_qfi / (T * T * T * T);
    rep.snr_opt = T * T * rep.qfi_T;
    rep.snr_bound = rep.C - rep.dT_E_star_mean;
    return rep;
}

std::pair<DensityMatrix, HermitianOperator> truncated_fock_export(
    const OscillatorModel& model, double T, int n_max_cap) {
    const OscillatorDerived d = quadratures(model, T);
    const double beta = 1.0 / T;
    const double x = std::exp(-beta * d.omega_T);
    // Tail weight fraction past level N is x^{N+1}.
    int n_max = 10;
    if (x > 0.0) {
        const double need = std::ceil(std::log(1e-12) / std::log(x)) - 1.0;
        n_max = std::max(n_max, static_cast<int>(need));
    }
    if (n_max > n_max_cap)
        throw SizeError("truncated_fock_export: requires n_max = " + std::to_string(n_max) +
                        " > cap " + std::to_string(n_max_cap));
    const int dim = n_max + 1;

    Eigen::VectorXd p(dim);
    for (int n = 0; n < dim; ++n) p[n] = std::pow(x, n);
    p /= p.sum();

    Matrix rho = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) rho(n, n) = p[n];

    Matrix estar = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        const double eps_n = d.omega_T * (n + 0.5);
        estar(n, n) = d.alpha_T * eps_n;
        if (n + 2 < dim) {
            const double v = -0.5 * d.g_T * std::sqrt(double(n + 1) * double(n + 2));
            estar(n, n + 2) = v;
            estar(n + 2, n) = v;
        }
    }
    return {DensityMatrix(std::move(rho)), HermitianOperator(std::move(estar))};
}

}  // namespace qtherm
