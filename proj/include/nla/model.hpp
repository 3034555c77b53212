#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nla/mesh.hpp"

namespace nla {

// ---------------------------------------------------------------------------
// Nonlinearity f: sublinear or asymptotically linear, with psi(t) = f(t)/t
// strictly decreasing. beta = lim_{t->0+} psi (may be +inf), theta =
// lim_{t->inf} psi. Limits, antiderivative and sup are stored analytically
// per kind; they decide the admissible s-range and must be exact.
// ---------------------------------------------------------------------------

enum class NonlinKind {
    Power,          // f(t) = t^{p-1}, 1 < p < 2
    Saturating,     // f(t) = beta0 t / (1+t)
    SqrtShift,      // f(t) = theta0 t + sqrt(t)
    RationalInterp, // f(t) = t (theta0 + (beta0-theta0)/(1+t))
    ArctanInterp,   // f(t) = t [theta0 + (beta0-theta0)(1 - (2/pi) atan t)]
};

struct NonlinParams {
    double p = 1.5;
    double beta0 = 1.0;
    double theta0 = 0.0;
};

class Nonlinearity {
public:
    Nonlinearity() = default;

    NonlinKind kind() const { return kind_; }
    const NonlinParams& params() const { return params_; }
    std::string name() const;

    double f(double t) const;     // extended by 0 for t <= 0
    double df(double t) const;    // derivative for t > 0
    double psi(double t) const;   // f(t)/t, t > 0
    double F(double t) const;     // antiderivative, F(0) = 0

    double beta() const { return beta_; }    // may be kInf
    double theta() const { return theta_; }
    std::optional<double> sup_f() const { return sup_f_; }

    bool has_tail() const { return tail_p_.has_value(); }
    double tail_p() const { return *tail_p_; }
    double tail_c0() const { return *tail_c0_; }
    // Set for kinds with theta = 0 but no valid power tail (Saturating).
    bool no_f2_tail() const { return no_f2_tail_; }

private:
    friend Nonlinearity make_nonlinearity(NonlinKind, const NonlinParams&);

    NonlinKind kind_ = NonlinKind::Power;
    NonlinParams params_;
    double beta_ = kInf;
    double theta_ = 0.0;
    std::optional<double> sup_f_;
    std::optional<double> tail_p_;
    std::optional<double> tail_c0_;
    bool no_f2_tail_ = false;
};

Nonlinearity make_nonlinearity(NonlinKind kind, const NonlinParams& params);

// Inverse of the strictly decreasing psi on (theta, beta): closed form per
// kind where available, bisection with an expanding bracket otherwise.
double psi_inverse(const Nonlinearity& nl, double y);

// ---------------------------------------------------------------------------
// Degenerate coefficient a with zero list t_0 = 0 < t_1 < ... < t_k and
// per-window maxima A_i = max a on [t_i, t_{i+1}].
// ---------------------------------------------------------------------------

enum class CoefKind {
    AbsSin,             // a = |sin(alpha)|
    AbsSinPowerWeight,  // a = |sin(alpha)| alpha^{(p-2)/gamma}
    PolynomialBumps,    // a = |P(alpha)| for a polynomial P
    UserTable,          // piecewise-linear table of (alpha, a)
};

struct CoefParams {
    double p = 1.5;
    double gamma = 1.0;
    std::vector<double> poly_coeffs;   // ascending powers
    double range_max = 0.0;            // scan range for PolynomialBumps
    std::vector<double> table_alpha;
    std::vector<double> table_value;
    std::vector<double> declared_zeros;  // tangential zeros sign scans miss
};

class Coefficient {
public:
    Coefficient() = default;

    CoefKind kind() const { return kind_; }
    double operator()(double alpha) const;

    const std::vector<double>& zeros() const { return zeros_; }
    int window_count() const { return static_cast<int>(zeros_.size()) - 1; }
    std::pair<double, double> window(int i) const {
        return {zeros_.at(i), zeros_.at(i + 1)};
    }
    double window_max(int i) const { return window_max_.at(i); }

private:
    friend Coefficient make_coefficient(CoefKind, const CoefParams&, int);

    CoefKind kind_ = CoefKind::AbsSin;
    CoefParams params_;
    double power_exponent_ = 0.0;  // (p-2)/gamma for AbsSinPowerWeight
    std::vector<double> zeros_;
    std::vector<double> window_max_;
};

// k_max bounds the number of windows for kinds with unbounded zero sets.
Coefficient make_coefficient(CoefKind kind, const CoefParams& params, int k_max = 3);

// ---------------------------------------------------------------------------
// Nonlocal functional g with optional homogeneity degree gamma_hom
// (present iff g(tu) = t^{gamma_hom} g(u)).
// ---------------------------------------------------------------------------

enum class FuncKind {
    LpOfU,             // integral |u|^gamma
    LpOfGrad,          // integral |grad u|^gamma
    LpOfLaplacian,     // integral |lap u|^gamma (needs -lap u supplied)
    PhiOfNorm,         // phi(||u||) for a norm choice
    IntegralPhiOfU,    // integral phi(|u|)
    IntegralPhiOfGrad, // integral phi(|grad u|)
};

enum class PhiKind { Power, Log1p };
enum class NormKind { LpU, LpGrad, SupU, SupGrad };

struct FuncParams {
    double gamma = 2.0;        // exponent for Lp kinds
    PhiKind phi = PhiKind::Power;
    double phi_q = 1.0;        // exponent when phi is a power
    NormKind norm = NormKind::LpU;
    double norm_p = 2.0;
};

class NonlocalFunctional {
public:
    NonlocalFunctional() = default;

    FuncKind kind() const { return kind_; }
    double gamma() const { return params_.gamma; }
    std::optional<double> gamma_hom() const { return gamma_hom_; }
    bool needs_laplacian() const { return kind_ == FuncKind::LpOfLaplacian; }

    // neg_lap: pointwise -Laplacian of u; required for LpOfLaplacian (the
    // auxiliary solver supplies it exactly as s f(w_s)).
    double eval(const Mesh& mesh, const Field& u,
                const Field* neg_lap = nullptr) const;

private:
    friend NonlocalFunctional make_functional(FuncKind, const FuncParams&);

    double phi(double t) const;

    FuncKind kind_ = FuncKind::LpOfU;
    FuncParams params_;
    std::optional<double> gamma_hom_;
};

NonlocalFunctional make_functional(FuncKind kind, const FuncParams& params);

inline double eval_functional(const NonlocalFunctional& g, const Field& u,
                              const Mesh& mesh, const Field* neg_lap = nullptr) {
    return g.eval(mesh, u, neg_lap);
}

}  // namespace nla
