#include "nla/aux_solver.hpp"

#include <Eigen/SparseCholesky>

namespace nla {

SRange admissible_s_range(const Nonlinearity& nl, double lambda1) {
    SRange r;
    r.lo = std::isinf(nl.beta()) ? 0.0 : lambda1 / nl.beta();
    r.hi = nl.theta() == 0.0 ? kInf : lambda1 / nl.theta();
    return r;
}

namespace {

Field apply_f(const Nonlinearity& nl, const Field& w) {
    Field out(w.size());
    for (int i = 0; i < w.size(); ++i) out[i] = nl.f(w[i]);
    return out;
}

double residual_inf(const Mesh& mesh, const Nonlinearity& nl, double s,
                    const Field& w) {
    return (mesh.neg_laplacian() * w - s * apply_f(nl, w)).lpNorm<Eigen::Infinity>();
}

double pde_tolerance(const Mesh& mesh, const Nonlinearity& nl, double s,
                     const Field& w, const AuxOptions& o) {
    return o.tol_pde_rel * (s * apply_f(nl, w)).lpNorm<Eigen::Infinity>() + o.tol_pde_abs;
}

// Damped Newton on G(w) = (-lap)w - s f(w), reusing the stencil pattern.
// Returns iterations spent; leaves w at the last (best) iterate.
int newton_polish(const Mesh& mesh, const Nonlinearity& nl, double s, Field& w,
                  const AuxOptions& o) {
    const auto& L = mesh.neg_laplacian();
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    bool analyzed = false;
    Field G = L * w - s * apply_f(nl, w);
    double gnorm = G.lpNorm<Eigen::Infinity>();
    int steps = 0;
    for (; steps < o.max_newton; ++steps) {
        if (gnorm <= pde_tolerance(mesh, nl, s, w, o)) break;
        Eigen::SparseMatrix<double> J = L;
        for (int i = 0; i < w.size(); ++i) J.coeffRef(i, i) -= s * nl.df(w[i]);
        if (!analyzed) {
            ldlt.analyzePattern(J);
            analyzed = true;
        }
        ldlt.factorize(J);
        if (ldlt.info() != Eigen::Success) break;
        const Field d = ldlt.solve(-G);
        double step = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 20; ++ls) {
            Field trial = w + step * d;
            Field Gt = L * trial - s * apply_f(nl, trial);
            const double gn = Gt.lpNorm<Eigen::Infinity>();
            if (gn < gnorm) {
                w = std::move(trial);
                G = std::move(Gt);
                gnorm = gn;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }
    return steps;
}

// Monotone pass: w <- (-lap)^{-1}(s f(w)) until the sup-norm update stalls
// below switch_tol, then Newton to the residual tolerance.
int relax_to_solution(const Mesh& mesh, const Nonlinearity& nl, double s,
                      Field& w, const AuxOptions& o) {
    const double scale0 = std::max(w.lpNorm<Eigen::Infinity>(), 1.0);
    const double switch_tol = 1e-4 * scale0;
    int iters = 0;
    for (; iters < o.max_iters; ++iters) {
        Field wn = mesh.solve(s * apply_f(nl, w));
        const double diff = (wn - w).lpNorm<Eigen::Infinity>();
        w = std::move(wn);
        if (diff <= std::max(o.tol_fp, switch_tol)) break;
    }
    iters += newton_polish(mesh, nl, s, w, o);
    // Plain monotone fallback if Newton stalled short of tolerance.
    while (residual_inf(mesh, nl, s, w) > pde_tolerance(mesh, nl, s, w, o)) {
        if (iters >= o.max_iters)
            throw NumericError("solve_auxiliary: no convergence after " +
                               std::to_string(o.max_iters) + " iterations at s=" +
                               std::to_string(s));
        Field wn = mesh.solve(s * apply_f(nl, w));
        const double diff = (wn - w).lpNorm<Eigen::Infinity>();
        w = std::move(wn);
        ++iters;
        if (diff <= 1e-16 * scale0 && iters > 100) {
            // Stationary but out of tolerance: one more Newton attempt.
            iters += newton_polish(mesh, nl, s, w, o);
            if (residual_inf(mesh, nl, s, w) > pde_tolerance(mesh, nl, s, w, o))
                throw NumericError("solve_auxiliary: iteration stagnated at s=" +
                                   std::to_string(s));
            break;
        }
    }
    return iters;
}

struct Supersolution {
    Field W;
    double scale = 0.0;
    std::string kind;
};

Supersolution build_supersolution(const Mesh& mesh, const Nonlinearity& nl,
                                  double s, double lambda1) {
    Supersolution sup;
    const Field torsion = mesh.solve(Field::Ones(mesh.size()));
    const double vmax = torsion.maxCoeff();

    if (nl.sup_f()) {
        // -lap(s L v) = s L >= s f(anything)
        const double M = s * (*nl.sup_f());
        sup.W = M * torsion;
        sup.scale = M;
        sup.kind = "bounded-torsion";
        return sup;
    }
    if (nl.theta() == 0.0) {
        // Double M until -lap(M v) = M >= s f(M ||v||_inf); sublinear f
        // guarantees success.
        double M = std::max(1.0, s * nl.f(vmax));
        for (int k = 0; k < 60; ++k) {
            if (M >= s * nl.f(M * vmax)) {
                sup.W = M * torsion;
                sup.scale = M;
                sup.kind = "torsion-doubling";
                return sup;
            }
            M *= 2.0;
        }
        throw NumericError(
            "solve_auxiliary: no torsion supersolution after 60 doublings");
    }
    // theta > 0, unbounded f: torsion multiples fail once s theta ||v|| is
    // order one, so use the linear growth bound f(t) <= (theta+eps) t + M_eps
    // and solve ((-lap) - s(theta+eps)) W = s M_eps.
    const double eps = 0.5 * (lambda1 / s - nl.theta());
    const double Teps = psi_inverse(nl, nl.theta() + eps);
    const double Meps = nl.f(Teps);
    Eigen::SparseMatrix<double> A = mesh.neg_laplacian();
    const double shift = s * (nl.theta() + eps);
    for (int i = 0; i < A.rows(); ++i) A.coeffRef(i, i) -= shift;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
    if (ldlt.info() != Eigen::Success)
        throw NumericError("solve_auxiliary: shifted supersolution solve failed");
    sup.W = ldlt.solve(Field::Constant(mesh.size(), s * Meps));
    if (sup.W.minCoeff() < 0.0)
        throw NumericError("solve_auxiliary: shifted supersolution not positive");
    sup.scale = Meps;
    sup.kind = "linear-shift";
    return sup;
}

}  // namespace

AuxSolution solve_auxiliary(const Mesh& mesh, const Nonlinearity& nl, double s,
                            const EigenPair& eig, const AuxOptions& opts) {
    const SRange range = admissible_s_range(nl, eig.lambda1);
    if (!range.contains(s, opts.margin))
        throw std::invalid_argument(
            "solve_auxiliary: s outside the admissible range margin");

    AuxSolution sol;
    sol.s = s;
    sol.eta = psi_inverse(nl, eig.lambda1 / s);

    // Upward pass from the subsolution z_s = eta_s phi1.
    Field up = sol.eta * eig.phi1;
    sol.iterations = relax_to_solution(mesh, nl, s, up, opts);

    if (opts.downward_pass) {
        Supersolution sup = build_supersolution(mesh, nl, s, eig.lambda1);
        sol.super_scale = sup.scale;
        sol.super_kind = sup.kind;
        Field down = sup.W;
        sol.iterations += relax_to_solution(mesh, nl, s, down, opts);
        sol.updown_gap = (up - down).lpNorm<Eigen::Infinity>();
        if (sol.updown_gap > 10.0 * opts.tol_fp *
                                 std::max(1.0, up.lpNorm<Eigen::Infinity>()))
            throw NumericError(
                "solve_auxiliary: upward/downward limits disagree (gap " +
                std::to_string(sol.updown_gap) + "); uniqueness hypothesis violated?");
    }

    sol.w = std::move(up);
    if (sol.w.minCoeff() <= 0.0)
        throw NumericError("solve_auxiliary: solution not strictly positive");
    sol.residual_inf = residual_inf(mesh, nl, s, sol.w);
    sol.energy = energy(mesh, nl, s, sol.w);
    return sol;
}

AuxSolution solve_auxiliary(const Mesh& mesh, const Nonlinearity& nl, double s,
                            const AuxOptions& opts) {
    return solve_auxiliary(mesh, nl, s, principal_eigenpair(mesh), opts);
}

double energy(const Mesh& mesh, const Nonlinearity& nl, double s, const Field& u) {
    const Field gm = gradient_magnitude(mesh, u);
    Field Fu(u.size());
    for (int i = 0; i < u.size(); ++i) Fu[i] = nl.F(u[i]);
    return 0.5 * integrate(mesh, gm.cwiseProduct(gm)) - s * integrate(mesh, Fu);
}

double residual(const Mesh& mesh, const Nonlinearity& nl, double s, const Field& u) {
    return residual_inf(mesh, nl, s, u);
}

}  // namespace nla
