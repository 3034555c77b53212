#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "nla/aux_solver.hpp"

namespace nla {

struct QSample {
    double s = 0.0;
    double q = 0.0;
    double residual = 0.0;
    double energy = 0.0;
    int iterations = 0;
};

struct SamplingSpec {
    int n = 64;                  // >= 16
    double endpoint_margin = 1e-6;  // relative margin at finite endpoints
    double s_min = 0.0;          // lower start when the range is (0, .)
    double s_max = 0.0;          // upper stop when the range is (., inf)
    double q_target = 0.0;       // grow s_max until Q >= q_target (if > 0)
    int refine_rounds = 3;       // endpoint refinement budget
    int threads = 1;
};

struct MonotoneReport {
    bool monotone = true;
    int first_violation = -1;  // index j with Q_j >= Q_{j+1}
};

// Sampled graph of s -> Q(s) = g(w_s) over the admissible range, with a
// monotone piecewise-cubic interpolant in log-log coordinates when the
// samples increase strictly (piecewise-linear otherwise).
class QTable {
public:
    const std::vector<QSample>& samples() const { return samples_; }
    const SRange& range() const { return range_; }
    bool monotone() const { return monotone_; }
    MonotoneReport certify_monotone() const;

    double s_hull_lo() const { return samples_.front().s; }
    double s_hull_hi() const { return samples_.back().s; }
    double q_hull_lo() const { return samples_.front().q; }
    double q_hull_hi() const { return samples_.back().q; }

    // Interpolated Q(s); exact at samples; throws on extrapolation.
    double q_eval(double s) const;
    // Inverse on the monotone interpolant; refines the table toward the
    // needed endpoint if alpha lies outside the sampled Q-hull.
    double q_inverse(double alpha);

    // Extend sampling until the Q-hull covers [q_lo, q_hi]; throws when the
    // refinement budget is exhausted.
    void ensure_q_covers(double q_lo, double q_hi);
    // Extend sampling until the s-hull covers s (clamped to the range).
    void ensure_s_covers(double s);

private:
    friend QTable tabulate_q(const Mesh&, const Nonlinearity&,
                             const NonlocalFunctional&, const EigenPair&,
                             const SamplingSpec&, const AuxOptions&);

    QSample solve_sample(double s) const;
    void insert(std::vector<double> new_s);
    void rebuild_interpolant();

    struct Context {
        const Mesh* mesh;
        Nonlinearity nl;
        NonlocalFunctional g;
        EigenPair eig;
        AuxOptions aux;
    };
    std::shared_ptr<Context> ctx_;
    std::vector<QSample> samples_;
    SRange range_;
    SamplingSpec spec_;
    bool monotone_ = false;
    int rounds_used_ = 0;
    // pchip data on (log s, log Q)
    std::vector<double> lx_, ly_, slope_;
};

QTable tabulate_q(const Mesh& mesh, const Nonlinearity& nl,
                  const NonlocalFunctional& g, const EigenPair& eig,
                  const SamplingSpec& spec = {}, const AuxOptions& aux = {});

}  // namespace nla
