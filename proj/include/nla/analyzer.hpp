#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nla/qmap.hpp"

namespace nla {

// Fixed-point engine for P(alpha) = Q(lambda / a(alpha)): admissible-set
// decomposition, the gap function c(lambda) = inf (P - id), thresholds
// lambda0 / lambda0_tilde, fixed-point enumeration and solution
// reconstruction, per degeneracy window of the coefficient.

enum class IntervalType { InfInf, InfZero, ZeroInf, ZeroZero };

std::string to_string(IntervalType t);

struct AdmissibleInterval {
    double lo = 0.0, hi = 0.0;
    IntervalType type = IntervalType::InfInf;
    // Endpoints sitting on the beta level belong to the extended set, where
    // P extends continuously by 0.
    bool lo_extended = false, hi_extended = false;
};

struct AdmissibleSet {
    int window = 0;
    double lambda = 0.0;
    double theta_level = 0.0;  // theta*lambda/lambda1
    double beta_level = kInf;  // beta*lambda/lambda1
    std::vector<AdmissibleInterval> intervals;
    bool empty() const { return intervals.empty(); }
};

struct FixedPoint {
    double alpha = 0.0;
    bool tangential = false;
    double t_resid = 0.0;  // |T(lambda, alpha)| on the interpolated map
};

struct SolutionEntry {
    double alpha = 0.0;   // certified g(u)
    double s = 0.0;       // lambda / a(alpha)
    Field u;
    double g_resid = 0.0;        // |g(u) - alpha|
    double pde_resid_rel = 0.0;  // ||a(g(u))(-lap u) - lambda f(u)|| / ||lambda f(u)||
    bool tangential = false;
};

struct Bracket {
    double lo = 0.0, hi = 0.0;
};

struct ThresholdReport {
    bool found_lambda0 = false;
    double lambda0 = 0.0;
    Bracket lambda0_bracket;
    bool found_lambda0_tilde = false;
    double lambda0_tilde = 0.0;
    Bracket lambda0_tilde_bracket;
    // Direct max of a(alpha) Q^{-1}(alpha), available when Q is
    // monotone-certified.
    std::optional<double> lambda0_direct;
    std::string note;
};

struct WindowReport {
    int window = 0;
    double lambda = 0.0;
    AdmissibleSet adm;
    double c_value = kInf;
    double c_argmin = 0.0;
    std::vector<FixedPoint> fixed_points;
    std::vector<SolutionEntry> solutions;
    ThresholdReport thresholds;
};

struct OscillationReport {
    std::vector<double> maximizers, minimizers;  // alpha locations
    double m = 0.0;  // sup H over minimizers
    double M = 0.0;  // inf H over maximizers
    int j = 0;       // number of local maximizers
    bool gap = false;  // m < M
    std::vector<std::pair<double, int>> probe_counts;  // (lambda, #fixed points)
};

struct AnalyzerOptions {
    int interval_grid = 4096;  // level-crossing and c-scan resolution
    int fp_grid = 8192;        // fixed-point scan resolution per interval
    int h_grid = 16384;        // H(alpha) sampling for oscillation analysis
    int lambda_grid = 128;     // geometric lambda grid for threshold scans
    double tol_T = 1e-9;       // scaled: tol_T * (1 + |alpha|)
    double tol_g = 1e-6;
    double bisect_rel = 1e-8;  // threshold bisection, relative on lambda
};

class AnalyzerContext {
public:
    AnalyzerContext(const Mesh& mesh, EigenPair eig, Nonlinearity nl,
                    Coefficient coef, NonlocalFunctional g, QTable qtable,
                    AnalyzerOptions opts = {}, AuxOptions aux = {});

    const Mesh& mesh() const { return *mesh_; }
    const EigenPair& eig() const { return eig_; }
    const Nonlinearity& nl() const { return nl_; }
    const Coefficient& coef() const { return coef_; }
    const NonlocalFunctional& g() const { return g_; }
    QTable& qtable() const { return *qtable_; }
    const AnalyzerOptions& opts() const { return opts_; }
    const AuxOptions& aux_opts() const { return aux_; }

    double lambda1() const { return eig_.lambda1; }

private:
    const Mesh* mesh_;
    EigenPair eig_;
    Nonlinearity nl_;
    Coefficient coef_;
    NonlocalFunctional g_;
    std::shared_ptr<QTable> qtable_;
    AnalyzerOptions opts_;
    AuxOptions aux_;
};

AdmissibleSet admissible_set(const AnalyzerContext& ctx, int window, double lambda);

// P(alpha) on the extended admissible set: interpolated Q at lambda/a(alpha),
// 0 at beta-level boundary points, +inf at theta-level points.
double p_eval(const AnalyzerContext& ctx, double lambda, double alpha);

// Gap function c(lambda) = inf over the extended set of P(alpha) - alpha.
// Returns (value, argmin); +inf sentinel on an empty admissible set.
std::pair<double, double> c_of_lambda(const AnalyzerContext& ctx, int window,
                                      double lambda);

ThresholdReport thresholds(const AnalyzerContext& ctx, int window);

std::vector<FixedPoint> find_fixed_points(const AnalyzerContext& ctx,
                                          double lambda, int window);

// Re-solves at s = lambda/a(alpha) with a local exact root polish, then
// verifies |g(u) - alpha| and the nonlocal PDE residual end to end.
SolutionEntry reconstruct_solution(const AnalyzerContext& ctx, double lambda,
                                   const FixedPoint& fp, int window);

OscillationReport oscillation_analysis(const AnalyzerContext& ctx, int window,
                                       const std::vector<double>& probe_lambdas);

WindowReport analyze_window(const AnalyzerContext& ctx, int window, double lambda,
                            bool reconstruct = true);

// Structural laws of the interval decomposition (used by tests and --verify):
// every InfZero interval is weakly followed by a ZeroInf one, ZeroZero
// intervals are preceded by InfZero, and the all-InfInf classification is
// equivalent to A_i < lambda beta / lambda1.
struct IntervalLawReport {
    bool inf0_followed = true;
    bool zero0_preceded = true;
    bool all_infinf_iff = true;
};
IntervalLawReport check_interval_laws(const AdmissibleSet& set, double window_max,
                                      double lambda, const Nonlinearity& nl,
                                      double lambda1);

}  // namespace nla
