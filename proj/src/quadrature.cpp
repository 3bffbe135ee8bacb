#include "qtherm/quadrature.hpp"

#include <cmath>
#include <string>

#include "qtherm/operator_core.hpp"

namespace qtherm {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1].
constexpr double g7x[] = {0.0, 0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
constexpr double g7w[] = {0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
                          0.1294849661688697};
constexpr double g15x[] = {0.0,
                           0.2011940939974345,
                           0.3941513470775634,
                           0.5709721726085388,
                           0.7244177313601701,
                           0.8482065834104272,
                           0.9372733924007060,
                           0.9879925180204854};
constexpr double g15w[] = {0.2025782419255613, 0.1984314853271116, 0.1861610000155622,
                           0.1662692058169939, 0.1395706779261543, 0.1071592204671719,
                           0.0703660474881081, 0.0307532419961173};

struct Panel {
    double lo, hi;
};

double gauss(const std::function<double(double)>& f, double lo, double hi, int order,
             int& nodes) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double sum = 0.0;
    if (order == 7) {
        sum = g7w[0] * f(c);
        for (int i = 1; i < 4; ++i)
            sum += g7w[i] * (f(c + h * g7x[i]) + f(c - h * g7x[i]));
        nodes += 7;
    } else {
        sum = g15w[0] * f(c);
        for (int i = 1; i < 8; ++i)
            sum += g15w[i] * (f(c + h * g15x[i]) + f(c - h * g15x[i]));
        nodes += 15;
    }
    return sum * h;
}

double adapt(const std::function<double(double)>& f, double lo, double hi, double tol,
             int depth, int max_nodes, int& nodes, double& err_est) {
    const double coarse = gauss(f, lo, hi, 7, nodes);
    const double fine = gauss(f, lo, hi, 15, nodes);
    const double disc = std::abs(fine - coarse);
    if (disc <= tol || depth >= 48) {
        err_est += disc;
        return fine;
    }
    if (nodes > max_nodes)
        throw NumericError("integrate_adaptive: node cap " + std::to_string(max_nodes) +
                           " reached, achieved tolerance " + std::to_string(disc));
    const double mid = 0.5 * (lo + hi);
    return adapt(f, lo, mid, 0.5 * tol, depth + 1, max_nodes, nodes, err_est) +
           adapt(f, mid, hi, 0.5 * tol, depth + 1, max_nodes, nodes, err_est);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double abs_tol, int max_nodes) {
    if (!(abs_tol >= 1e-12))
        throw DomainError("integrate_adaptive: abs_tol must be >= 1e-12");
    int nodes = 0;
    double err_est = 0.0;
    return adapt(f, lo, hi, abs_tol, 0, max_nodes, nodes, err_est);
}

}  // namespace qtherm
