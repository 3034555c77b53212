#include "nla/model.hpp"

#include <algorithm>
#include <cmath>

namespace nla {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTolZero = 1e-10;
}  // namespace

// ---------------------------------------------------------------- Nonlinearity

Nonlinearity make_nonlinearity(NonlinKind kind, const NonlinParams& params) {
    Nonlinearity nl;
    nl.kind_ = kind;
    nl.params_ = params;
    switch (kind) {
        case NonlinKind::Power:
            if (!(params.p > 1.0 && params.p < 2.0))
                throw std::invalid_argument("power nonlinearity needs 1 < p < 2");
            nl.beta_ = kInf;
            nl.theta_ = 0.0;
            nl.tail_p_ = params.p;
            nl.tail_c0_ = 1.0;
            break;
        case NonlinKind::Saturating:
            if (!(params.beta0 > 0.0))
                throw std::invalid_argument("saturating nonlinearity needs beta0 > 0");
            nl.beta_ = params.beta0;
            nl.theta_ = 0.0;
            nl.sup_f_ = params.beta0;
            nl.no_f2_tail_ = true;  // f/t^{p-1} -> 0 for every p > 1
            break;
        case NonlinKind::SqrtShift:
            if (!(params.theta0 > 0.0))
                throw std::invalid_argument("sqrt-shift nonlinearity needs theta0 > 0");
            nl.beta_ = kInf;
            nl.theta_ = params.theta0;
            break;
        case NonlinKind::RationalInterp:
        case NonlinKind::ArctanInterp:
            if (!(params.theta0 > 0.0 && params.theta0 < params.beta0))
                throw std::invalid_argument("interpolating nonlinearity needs 0 < theta0 < beta0");
            nl.beta_ = params.beta0;
            nl.theta_ = params.theta0;
            break;
    }
    return nl;
}

std::string Nonlinearity::name() const {
    switch (kind_) {
        case NonlinKind::Power: return "power";
        case NonlinKind::Saturating: return "saturating";
        case NonlinKind::SqrtShift: return "sqrt_shift";
        case NonlinKind::RationalInterp: return "rational_interp";
        case NonlinKind::ArctanInterp: return "arctan_interp";
    }
    return "?";
}

double Nonlinearity::f(double t) const {
    if (t <= 0.0) return 0.0;
    switch (kind_) {
        case NonlinKind::Power:
            return std::pow(t, params_.p - 1.0);
        case NonlinKind::Saturating:
            return params_.beta0 * t / (1.0 + t);
        case NonlinKind::SqrtShift:
            return params_.theta0 * t + std::sqrt(t);
        case NonlinKind::RationalInterp:
            return t * (params_.theta0 + (params_.beta0 - params_.theta0) / (1.0 + t));
        case NonlinKind::ArctanInterp:
            return t * (params_.theta0 +
                        (params_.beta0 - params_.theta0) *
                            (1.0 - (2.0 / kPi) * std::atan(t)));
    }
    return 0.0;
}

double Nonlinearity::df(double t) const {
    t = std::max(t, 1e-300);
    switch (kind_) {
        case NonlinKind::Power:
            return (params_.p - 1.0) * std::pow(t, params_.p - 2.0);
        case NonlinKind::Saturating: {
            const double d = 1.0 + t;
            return params_.beta0 / (d * d);
        }
        case NonlinKind::SqrtShift:
            return params_.theta0 + 0.5 / std::sqrt(t);
        case NonlinKind::RationalInterp: {
            const double d = 1.0 + t;
            return params_.theta0 + (params_.beta0 - params_.theta0) / (d * d);
        }
        case NonlinKind::ArctanInterp:
            return params_.theta0 +
                   (params_.beta0 - params_.theta0) *
                       (1.0 - (2.0 / kPi) * (std::atan(t) + t / (1.0 + t * t)));
    }
    return 0.0;
}

double Nonlinearity::psi(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("psi: needs t > 0");
    switch (kind_) {
        case NonlinKind::Power:
            return std::pow(t, params_.p - 2.0);
        case NonlinKind::Saturating:
            return params_.beta0 / (1.0 + t);
        case NonlinKind::SqrtShift:
            return params_.theta0 + 1.0 / std::sqrt(t);
        case NonlinKind::RationalInterp:
            return params_.theta0 + (params_.beta0 - params_.theta0) / (1.0 + t);
        case NonlinKind::ArctanInterp:
            return params_.theta0 + (params_.beta0 - params_.theta0) *
                                        (1.0 - (2.0 / kPi) * std::atan(t));
    }
    return 0.0;
}

double Nonlinearity::F(double t) const {
    if (t <= 0.0) return 0.0;
    switch (kind_) {
        case NonlinKind::Power:
            return std::pow(t, params_.p) / params_.p;
        case NonlinKind::Saturating:
            return params_.beta0 * (t - std::log1p(t));
        case NonlinKind::SqrtShift:
            return 0.5 * params_.theta0 * t * t + (2.0 / 3.0) * std::pow(t, 1.5);
        case NonlinKind::RationalInterp:
            return 0.5 * params_.theta0 * t * t +
                   (params_.beta0 - params_.theta0) * (t - std::log1p(t));
        case NonlinKind::ArctanInterp:
            // int tau*atan(tau) = ((t^2+1) atan t - t) / 2
            return 0.5 * params_.theta0 * t * t +
                   (params_.beta0 - params_.theta0) *
                       (0.5 * t * t -
                        (1.0 / kPi) * ((t * t + 1.0) * std::atan(t) - t));
    }
    return 0.0;
}

double psi_inverse(const Nonlinearity& nl, double y) {
    if (!(y > nl.theta() && y < nl.beta()))
        throw std::invalid_argument("psi_inverse: y outside (theta, beta)");
    const auto& pr = nl.params();
    switch (nl.kind()) {
        case NonlinKind::Power:
            return std::pow(y, 1.0 / (pr.p - 2.0));
        case NonlinKind::Saturating:
            return pr.beta0 / y - 1.0;
        case NonlinKind::SqrtShift: {
            const double d = y - pr.theta0;
            return 1.0 / (d * d);
        }
        case NonlinKind::RationalInterp:
            return (pr.beta0 - pr.theta0) / (y - pr.theta0) - 1.0;
        case NonlinKind::ArctanInterp:
            return std::tan((1.0 - (y - pr.theta0) / (pr.beta0 - pr.theta0)) *
                            kPi / 2.0);
    }
    // Fallback: bisection on the strictly decreasing psi with an
    // exponentially expanded initial bracket.
    double lo = 1.0, hi = 1.0;
    while (nl.psi(lo) <= y) lo *= 0.5;
    while (nl.psi(hi) >= y) hi *= 2.0;
    return bisect([&](double t) { return nl.psi(t) - y; }, lo, hi, 0.0,
                  1e-13 * y, 400);
}

// ----------------------------------------------------------------- Coefficient

namespace {

double eval_poly(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
    return v;
}

// Locate sign changes of p on (0, hi] by dense scan + bisection.
std::vector<double> poly_zeros(const std::vector<double>& c, double hi) {
    const int n = 65536;
    std::vector<double> zeros;
    double x_prev = 0.0;
    double p_prev = eval_poly(c, 0.0);
    for (int i = 1; i <= n; ++i) {
        const double x = hi * i / n;
        const double p = eval_poly(c, x);
        if (p_prev == 0.0) {
            zeros.push_back(x_prev);
        } else if (p != 0.0 && (p < 0.0) != (p_prev < 0.0)) {
            zeros.push_back(bisect([&](double t) { return eval_poly(c, t); },
                                   x_prev, x, 1e-14 * hi));
        }
        x_prev = x;
        p_prev = p;
    }
    if (std::abs(p_prev) <= kTolZero) zeros.push_back(hi);
    return zeros;
}

}  // namespace

double Coefficient::operator()(double alpha) const {
    switch (kind_) {
        case CoefKind::AbsSin:
            return std::abs(std::sin(alpha));
        case CoefKind::AbsSinPowerWeight:
            if (alpha <= 0.0) return 0.0;
            return std::abs(std::sin(alpha)) * std::pow(alpha, power_exponent_);
        case CoefKind::PolynomialBumps:
            return std::abs(eval_poly(params_.poly_coeffs, alpha));
        case CoefKind::UserTable: {
            const auto& xs = params_.table_alpha;
            const auto& ys = params_.table_value;
            if (alpha <= xs.front()) return ys.front();
            if (alpha >= xs.back()) return ys.back();
            const auto it = std::upper_bound(xs.begin(), xs.end(), alpha);
            const size_t j = static_cast<size_t>(it - xs.begin());
            const double t = (alpha - xs[j - 1]) / (xs[j] - xs[j - 1]);
            return ys[j - 1] + t * (ys[j] - ys[j - 1]);
        }
    }
    return 0.0;
}

Coefficient make_coefficient(CoefKind kind, const CoefParams& params, int k_max) {
    Coefficient a;
    a.kind_ = kind;
    a.params_ = params;

    switch (kind) {
        case CoefKind::AbsSin:
        case CoefKind::AbsSinPowerWeight: {
            if (k_max < 1)
                throw std::invalid_argument("make_coefficient: k_max must be >= 1");
            if (kind == CoefKind::AbsSinPowerWeight) {
                a.power_exponent_ = (params.p - 2.0) / params.gamma;
                if (a.power_exponent_ <= -1.0)
                    throw std::invalid_argument(
                        "make_coefficient: (p-2)/gamma must exceed -1 so that a(0)=0");
            }
            for (int i = 0; i <= k_max; ++i) a.zeros_.push_back(i * kPi);
            break;
        }
        case CoefKind::PolynomialBumps: {
            if (params.poly_coeffs.empty() || !(params.range_max > 0.0))
                throw std::invalid_argument(
                    "make_coefficient: polynomial kind needs coefficients and range_max > 0");
            auto zs = poly_zeros(params.poly_coeffs, params.range_max);
            zs.insert(zs.end(), params.declared_zeros.begin(),
                      params.declared_zeros.end());
            zs.push_back(0.0);
            std::sort(zs.begin(), zs.end());
            for (double z : zs) {
                if (a.zeros_.empty() || z > a.zeros_.back() + 1e-9)
                    a.zeros_.push_back(z);
            }
            if (a.zeros_.front() > 1e-9) a.zeros_.insert(a.zeros_.begin(), 0.0);
            break;
        }
        case CoefKind::UserTable: {
            const auto& xs = params.table_alpha;
            const auto& ys = params.table_value;
            if (xs.size() < 2 || xs.size() != ys.size())
                throw std::invalid_argument("make_coefficient: bad table");
            if (std::abs(xs.front()) > 1e-12)
                throw std::invalid_argument("make_coefficient: table must start at alpha = 0");
            for (size_t i = 1; i < xs.size(); ++i)
                if (!(xs[i] > xs[i - 1]))
                    throw std::invalid_argument("make_coefficient: table alphas must increase");
            a.zeros_.push_back(0.0);
            for (size_t i = 1; i < xs.size(); ++i)
                if (std::abs(ys[i]) <= kTolZero) a.zeros_.push_back(xs[i]);
            for (double z : params.declared_zeros)
                if (z > 1e-12) a.zeros_.push_back(z);
            std::sort(a.zeros_.begin(), a.zeros_.end());
            a.zeros_.erase(std::unique(a.zeros_.begin(), a.zeros_.end(),
                                       [](double x, double y) {
                                           return std::abs(x - y) <= 1e-9;
                                       }),
                           a.zeros_.end());
            break;
        }
    }

    if (a.zeros_.size() < 2)
        throw std::invalid_argument("make_coefficient: no zeros found in range");

    // Verify the zeros, positivity on window interiors, and compute A_i.
    for (size_t i = 1; i < a.zeros_.size(); ++i)
        if (std::abs(a(a.zeros_[i])) > kTolZero)
            throw NumericError("make_coefficient: listed zero t_" +
                               std::to_string(i) + " has |a| > tol_zero");
    for (int i = 0; i < a.window_count(); ++i) {
        const auto [lo, hi] = a.window(i);
        const double off = 1e-3 * (hi - lo);
        double interior_min = kInf;
        for (int m = 0; m <= 256; ++m) {
            const double alpha = lo + off + (hi - lo - 2 * off) * m / 256.0;
            interior_min = std::min(interior_min, a(alpha));
        }
        if (!(interior_min > 0.0))
            throw NumericError("make_coefficient: coefficient not positive inside window " +
                               std::to_string(i));
        auto [argmax, A] = scan_max([&](double t) { return a(t); }, lo, hi,
                                    4096, 1e-12 * (hi - lo));
        (void)argmax;
        if (!(A > 0.0))
            throw NumericError("make_coefficient: window maximum not positive");
        a.window_max_.push_back(A);
    }
    return a;
}

// ---------------------------------------------------------- NonlocalFunctional

NonlocalFunctional make_functional(FuncKind kind, const FuncParams& params) {
    NonlocalFunctional g;
    g.kind_ = kind;
    g.params_ = params;
    switch (kind) {
        case FuncKind::LpOfU:
        case FuncKind::LpOfGrad:
        case FuncKind::LpOfLaplacian:
            if (!(params.gamma >= 1.0))
                throw std::invalid_argument("make_functional: gamma must be >= 1");
            g.gamma_hom_ = params.gamma;
            break;
        case FuncKind::PhiOfNorm:
            if (!(params.norm_p >= 1.0))
                throw std::invalid_argument("make_functional: norm exponent must be >= 1");
            [[fallthrough]];
        case FuncKind::IntegralPhiOfU:
        case FuncKind::IntegralPhiOfGrad:
            if (params.phi == PhiKind::Power) {
                if (!(params.phi_q > 0.0))
                    throw std::invalid_argument("make_functional: phi power must be positive");
                g.gamma_hom_ = params.phi_q;
            }
            break;
    }
    return g;
}

double NonlocalFunctional::phi(double t) const {
    switch (params_.phi) {
        case PhiKind::Power: return std::pow(t, params_.phi_q);
        case PhiKind::Log1p: return std::log1p(t);
    }
    return 0.0;
}

double NonlocalFunctional::eval(const Mesh& mesh, const Field& u,
                                const Field* neg_lap) const {
    switch (kind_) {
        case FuncKind::LpOfU:
            return integrate(mesh, u.array().abs().pow(params_.gamma).matrix());
        case FuncKind::LpOfGrad: {
            const Field gm = gradient_magnitude(mesh, u);
            return integrate(mesh, gm.array().pow(params_.gamma).matrix());
        }
        case FuncKind::LpOfLaplacian: {
            if (!neg_lap)
                throw std::invalid_argument(
                    "eval_functional: second-order kind needs -laplacian(u) supplied");
            return integrate(mesh,
                             neg_lap->array().abs().pow(params_.gamma).matrix());
        }
        case FuncKind::PhiOfNorm: {
            double nv = 0.0;
            switch (params_.norm) {
                case NormKind::LpU:
                    nv = std::pow(
                        integrate(mesh, u.array().abs().pow(params_.norm_p).matrix()),
                        1.0 / params_.norm_p);
                    break;
                case NormKind::LpGrad: {
                    const Field gm = gradient_magnitude(mesh, u);
                    nv = std::pow(
                        integrate(mesh, gm.array().pow(params_.norm_p).matrix()),
                        1.0 / params_.norm_p);
                    break;
                }
                case NormKind::SupU:
                    nv = u.lpNorm<Eigen::Infinity>();
                    break;
                case NormKind::SupGrad:
                    nv = gradient_magnitude(mesh, u).lpNorm<Eigen::Infinity>();
                    break;
            }
            return phi(nv);
        }
        case FuncKind::IntegralPhiOfU: {
            Field vals(u.size());
            for (int i = 0; i < u.size(); ++i) vals[i] = phi(std::abs(u[i]));
            return integrate(mesh, vals);
        }
        case FuncKind::IntegralPhiOfGrad: {
            const Field gm = gradient_magnitude(mesh, u);
            Field vals(gm.size());
            for (int i = 0; i < gm.size(); ++i) vals[i] = phi(gm[i]);
            return integrate(mesh, vals);
        }
    }
    return 0.0;
}

}  // namespace nla
