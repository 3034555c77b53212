#pragma once

#include <vector>

#include "nla/analyzer.hpp"

namespace nla {

// Homogeneity route for f(t) = t^{p-1}: solve -lap v = v^{p-1} once, then
// u = s v solves the nonlocal problem iff lambda = (C_v/alpha)^{(p-2)/gamma}
// a(alpha) with alpha = C_v s^gamma.

enum class LimitClass { Zero, Finite, Infinite };

struct PowerlikeModel {
    double p = 1.5;
    double gamma = 1.0;
    Field v;          // normalized profile, -lap v = v^{p-1}
    double C_v = 0.0; // g(v)
};

struct ScaledSolution {
    double alpha = 0.0;
    double s = 0.0;
    bool tangential = false;
    std::string exactness;  // "exact" when a concavity hypothesis is detected
};

struct Mu0Report {
    LimitClass cls = LimitClass::Zero;
    double value = 0.0;  // meaningful for Finite
};

struct CrossValidation {
    double max_threshold_dev = 0.0;   // relative
    double max_fixed_point_dev = 0.0; // absolute, in alpha
    double max_qinv_dev = 0.0;        // relative
    bool pass = true;                 // all deviations within 1e-2
};

// Positive solution of -lap v = v^{p-1}; monotone bracket iteration for
// 1 < p < 2, Nehari-rescaled iteration for 2 < p <= 6 (uniqueness not
// claimed there; the deterministic start is phi1).
Field solve_normalized(const Mesh& mesh, double p, const EigenPair& eig);

PowerlikeModel make_powerlike_model(const Mesh& mesh, const EigenPair& eig,
                                    double p, const NonlocalFunctional& g);

double lambda_of_alpha(const PowerlikeModel& m, const Coefficient& a, double alpha);

// mu0 = lim_{alpha->0+} a(alpha) alpha^{(2-p)/gamma}, by Richardson
// extrapolation on alpha = 10^{-k}, k = 2..8.
Mu0Report mu0_limit(const PowerlikeModel& m, const Coefficient& a);

// lambda_{0,i}: max of lambda_of_alpha over the window (the alpha -> 0 limit
// enters through mu0 for p > 2 on window 0); may be +inf in that case.
double powerlike_threshold(const PowerlikeModel& m, const Coefficient& a, int window);

std::vector<ScaledSolution> enumerate_scaled_solutions(const PowerlikeModel& m,
                                                       const Coefficient& a,
                                                       double lambda, int window);

CrossValidation cross_validate(const AnalyzerContext& ctx, const PowerlikeModel& m,
                               const std::vector<int>& windows,
                               const std::vector<double>& lambdas);

}  // namespace nla
