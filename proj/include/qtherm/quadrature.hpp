#pragma once

#include <functional>

namespace qtherm {

// Adaptive Gauss-Legendre integration by interval bisection. Each panel is
// estimated with 7- and 15-node rules; panels whose discrepancy exceeds their
// share of abs_tol are split. Throws NumericError past max_nodes evaluations.
double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double abs_tol, int max_nodes = 200000);

}  // namespace qtherm
