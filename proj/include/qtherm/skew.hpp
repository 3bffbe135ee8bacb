// skew.hpp — quantum/classical partition of observable variance:
// Q_a = -1/2 tr([A,rho^a][A,rho^{1-a}]) and its a-average Q, with K = Var - Q.

#pragma once

#include "qtherm/operator_core.hpp"

namespace qtherm {

struct VariancePartition {
    double variance = 0.0;
    double quantum = 0.0;   // Q
    double classical = 0.0; // K
};

double variance(const DensityMatrix& state, const HermitianOperator& obs);

// WYD skew information at a fixed a in (0,1). Tolerates rank-deficient states
// (commutator path with clamped powers).
double skew_a(const DensityMatrix& state, const HermitianOperator& obs, double a);

// a-averaged partition via the eigenbasis closed form; requires full rank.
VariancePartition skew_avg(const DensityMatrix& state, const HermitianOperator& obs);

// Pair weight p_n + p_m - 2(p_n - p_m)/(ln p_n - ln p_m), with the analytic
// Taylor limit when the log gap is below 1e-9.
double skew_pair_weight(double pn, double pm);

// Independent oracle: adaptive quadrature of skew_a over a in (0,1).
double skew_avg_quadrature(const DensityMatrix& state, const HermitianOperator& obs,
                           double abs_tol);

}  // namespace qtherm
