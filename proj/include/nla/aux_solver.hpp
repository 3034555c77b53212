#pragma once

#include <string>

#include "nla/model.hpp"

namespace nla {

// Open range of s for which -lap w = s f(w) has a positive solution:
// (lambda1/beta, lambda1/theta) with lambda1/0 = inf and lambda1/inf = 0.
struct SRange {
    double lo = 0.0;
    double hi = kInf;
    bool contains(double s, double margin = 0.0) const {
        if (!(s > 0.0)) return false;
        if (lo > 0.0 && s < lo * (1.0 + margin)) return false;
        if (hi < kInf && s > hi * (1.0 - margin)) return false;
        return true;
    }
};

SRange admissible_s_range(const Nonlinearity& nl, double lambda1);

struct AuxOptions {
    double tol_fp = 1e-10;    // sup-norm stop for the monotone phase
    int max_iters = 50000;
    int max_newton = 50;
    double tol_pde_rel = 1e-9;
    double tol_pde_abs = 1e-12;
    double margin = 1e-8;     // refused relative distance to range endpoints
    bool downward_pass = true;
};

struct AuxSolution {
    double s = 0.0;
    Field w;                  // unique positive solution
    double residual_inf = 0.0;
    double energy = 0.0;      // Phi_s(w), negative
    int iterations = 0;
    double eta = 0.0;         // subsolution level; z_s = eta * phi1 <= w
    double super_scale = 0.0; // multiplier of the supersolution profile
    std::string super_kind;   // "bounded-torsion" | "torsion-doubling" | "linear-shift"
    double updown_gap = 0.0;  // sup distance between upward/downward limits
};

// Monotone iteration upward from the subsolution eta_s*phi1 and downward
// from a supersolution, each finished by damped Newton; the two limits must
// agree (discrete uniqueness witness).
AuxSolution solve_auxiliary(const Mesh& mesh, const Nonlinearity& nl, double s,
                            const EigenPair& eig, const AuxOptions& opts = {});

// Convenience overload computing the eigenpair on the fly.
AuxSolution solve_auxiliary(const Mesh& mesh, const Nonlinearity& nl, double s,
                            const AuxOptions& opts = {});

// Phi_s(u) = 1/2 int |grad u|^2 - s int F(u).
double energy(const Mesh& mesh, const Nonlinearity& nl, double s, const Field& u);

// sup |(-lap u) - s f(u)|.
double residual(const Mesh& mesh, const Nonlinearity& nl, double s, const Field& u);

}  // namespace nla
