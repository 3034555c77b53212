#include "nla/analyzer.hpp"

#include <algorithm>
#include <cmath>

namespace nla {

std::string to_string(IntervalType t) {
    switch (t) {
        case IntervalType::InfInf: return "Iinfinf";
        case IntervalType::InfZero: return "Iinf0";
        case IntervalType::ZeroInf: return "I0inf";
        case IntervalType::ZeroZero: return "I00";
    }
    return "?";
}

AnalyzerContext::AnalyzerContext(const Mesh& mesh, EigenPair eig, Nonlinearity nl,
                                 Coefficient coef, NonlocalFunctional g,
                                 QTable qtable, AnalyzerOptions opts,
                                 AuxOptions aux)
    : mesh_(&mesh),
      eig_(std::move(eig)),
      nl_(std::move(nl)),
      coef_(std::move(coef)),
      g_(std::move(g)),
      qtable_(std::make_shared<QTable>(std::move(qtable))),
      opts_(opts),
      aux_(aux) {
    // The scans must resolve sign(P - alpha) everywhere: the Q-hull has to
    // reach below the smallest alpha compared against and above the largest
    // window endpoint t_k (with a 1.5x cushion).
    const auto& zeros = coef_.zeros();
    const double t1 = zeros.at(1);
    const double tk = zeros.back();
    const double q_floor = 1e-3 * std::min(t1, 1.0);
    const double q_cap = 1.5 * tk;
    qtable_->ensure_q_covers(std::min(q_floor, qtable_->q_hull_lo()),
                             std::max(q_cap, qtable_->q_hull_hi()));
}

namespace {

struct Levels {
    double theta_level;
    double beta_level;  // kInf when beta = inf
};

Levels levels_for(const AnalyzerContext& ctx, double lambda) {
    const double l1 = ctx.lambda1();
    Levels lv;
    lv.theta_level = ctx.nl().theta() * lambda / l1;
    lv.beta_level =
        std::isinf(ctx.nl().beta()) ? kInf : ctx.nl().beta() * lambda / l1;
    return lv;
}

// Interpolated P with hull-clamp bookkeeping: bound = +1 means the true P is
// >= value (above the sampled s-hull, where Q keeps growing), -1 means the
// true P is <= value.
struct PBound {
    double value;
    int bound;
};

PBound p_bounded(const AnalyzerContext& ctx, double lambda, double alpha,
                 const Levels& lv) {
    const double av = ctx.coef()(alpha);
    if (av <= lv.theta_level) return {kInf, 0};
    if (av >= lv.beta_level) return {0.0, 0};
    const double s = lambda / av;
    QTable& tab = ctx.qtable();
    if (s < tab.s_hull_lo()) return {tab.q_hull_lo(), -1};
    if (s > tab.s_hull_hi()) return {tab.q_hull_hi(), +1};
    return {tab.q_eval(s), 0};
}

// Sign of T = P - alpha; throws if the hull clamp leaves it undetermined.
int sign_of_T(const PBound& pb, double alpha) {
    if (pb.bound == 0) {
        const double t = pb.value - alpha;
        return t > 0.0 ? 1 : (t < 0.0 ? -1 : 0);
    }
    if (pb.bound > 0 && pb.value - alpha > 0.0) return 1;
    if (pb.bound < 0 && pb.value - alpha < 0.0) return -1;
    throw NumericError("analyzer: sign of T unresolved at the Q-hull clamp "
                       "(alpha=" + std::to_string(alpha) + ")");
}

double tol_T(const AnalyzerOptions& o, double alpha) {
    return o.tol_T * (1.0 + std::abs(alpha));
}

}  // namespace

AdmissibleSet admissible_set(const AnalyzerContext& ctx, int window, double lambda) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("admissible_set: lambda must be positive");
    const auto [lo, hi] = ctx.coef().window(window);
    const double A = ctx.coef().window_max(window);
    const Levels lv = levels_for(ctx, lambda);

    AdmissibleSet set;
    set.window = window;
    set.lambda = lambda;
    set.theta_level = lv.theta_level;
    set.beta_level = lv.beta_level;
    if (lv.theta_level >= A) return set;  // empty: lambda >= A_i lambda1/theta

    if (ctx.coef()(lo) > 1e-9 || ctx.coef()(hi) > 1e-9)
        throw std::invalid_argument(
            "admissible_set: window endpoints must be zeros of the coefficient");

    const int N = ctx.opts().interval_grid;
    const double step = (hi - lo) / (N + 1);
    auto inside = [&](double alpha) {
        const double av = ctx.coef()(alpha);
        return av > lv.theta_level && av < lv.beta_level;
    };
    // Which constraint fails just outside a run decides the crossing level.
    auto crossing = [&](double a_out, double a_in) {
        const double av = ctx.coef()(a_out);
        const bool theta_side = av <= lv.theta_level;
        const double level = theta_side ? lv.theta_level : lv.beta_level;
        const double root = bisect(
            [&](double x) { return ctx.coef()(x) - level; }, std::min(a_out, a_in),
            std::max(a_out, a_in), 1e-12);
        return std::make_pair(root, theta_side);
    };

    bool in_run = false;
    AdmissibleInterval cur;
    bool cur_lo_theta = true;
    for (int m = 1; m <= N + 1; ++m) {
        const double alpha = (m <= N) ? lo + m * step : hi;
        const bool now = (m <= N) ? inside(alpha) : false;  // a(hi) = 0
        if (now && !in_run) {
            if (m == 1) {
                // The run reaches the window edge, where a -> 0 = theta level.
                cur.lo = lo;
                cur_lo_theta = true;
            } else {
                auto [root, theta_side] = crossing(alpha - step, alpha);
                cur.lo = root;
                cur_lo_theta = theta_side;
                cur.lo_extended = !theta_side;
            }
            in_run = true;
        } else if (!now && in_run) {
            bool hi_theta;
            if (m == N + 1 && inside(hi - 0.25 * step)) {
                cur.hi = hi;
                hi_theta = true;
            } else {
                auto [root, theta_side] = crossing(alpha, alpha - step);
                cur.hi = root;
                hi_theta = theta_side;
                cur.hi_extended = !theta_side;
            }
            cur.type = cur_lo_theta
                           ? (hi_theta ? IntervalType::InfInf : IntervalType::InfZero)
                           : (hi_theta ? IntervalType::ZeroInf : IntervalType::ZeroZero);
            set.intervals.push_back(cur);
            cur = AdmissibleInterval{};
            in_run = false;
        }
    }
    return set;
}

double p_eval(const AnalyzerContext& ctx, double lambda, double alpha) {
    const Levels lv = levels_for(ctx, lambda);
    const double av = ctx.coef()(alpha);
    const double scale = std::max(lv.theta_level, 1e-300);
    if (av < lv.theta_level - 1e-9 * scale)
        throw std::invalid_argument("p_eval: alpha outside the extended admissible set");
    if (av <= lv.theta_level * (1.0 + 1e-9)) return kInf;  // coercive endpoint
    if (lv.beta_level < kInf) {
        if (av > lv.beta_level * (1.0 + 1e-9))
            throw std::invalid_argument("p_eval: alpha outside the extended admissible set");
        if (av >= lv.beta_level * (1.0 - 1e-9)) return 0.0;
    }
    return ctx.qtable().q_eval(lambda / av);
}

std::pair<double, double> c_of_lambda(const AnalyzerContext& ctx, int window,
                                      double lambda) {
    const AdmissibleSet set = admissible_set(ctx, window, lambda);
    if (set.empty()) return {kInf, std::numeric_limits<double>::quiet_NaN()};
    const Levels lv{set.theta_level, set.beta_level};
    const int N = ctx.opts().interval_grid;

    double best = kInf;
    double arg = std::numeric_limits<double>::quiet_NaN();
    for (const auto& I : set.intervals) {
        if (I.lo_extended && -I.lo < best) best = -I.lo, arg = I.lo;
        if (I.hi_extended && -I.hi < best) best = -I.hi, arg = I.hi;
        const double step = (I.hi - I.lo) / (N + 1);
        double grid_best = kInf, grid_arg = I.lo;
        for (int m = 1; m <= N; ++m) {
            const double alpha = I.lo + m * step;
            const PBound pb = p_bounded(ctx, lambda, alpha, lv);
            if (pb.value == kInf) continue;
            if (pb.bound > 0) continue;  // true T at least q_top - alpha > 0
            const double t = pb.value - alpha;  // exact, or an upper estimate
            if (pb.bound < 0 && t >= 0.0)
                throw NumericError("c_of_lambda: unresolved clamp below the Q-hull");
            if (t < grid_best) grid_best = t, grid_arg = alpha;
        }
        if (grid_best < kInf) {
            // Refine only genuinely interpolated minima.
            const double a0 = std::max(I.lo + 0.5 * step, grid_arg - step);
            const double b0 = std::min(I.hi - 0.5 * step, grid_arg + step);
            auto value = [&](double alpha) {
                const PBound pb = p_bounded(ctx, lambda, alpha, lv);
                if (pb.value == kInf || pb.bound > 0) return kInf;
                return pb.value - alpha;
            };
            auto [x, v] = golden_min(value, a0, b0, 1e-12 * (I.hi - I.lo));
            if (v < grid_best) grid_best = v, grid_arg = x;
            if (grid_best < best) best = grid_best, arg = grid_arg;
        }
    }
    return {best, arg};
}

namespace {

double c_value(const AnalyzerContext& ctx, int window, double lambda) {
    return c_of_lambda(ctx, window, lambda).first;
}

}  // namespace

ThresholdReport thresholds(const AnalyzerContext& ctx, int window) {
    ThresholdReport rep;
    const double A = ctx.coef().window_max(window);
    const double l1 = ctx.lambda1();
    const double theta = ctx.nl().theta();

    double lam_hi;
    if (theta > 0.0) {
        lam_hi = (1.0 - 1e-3) * A * l1 / theta;
    } else {
        // Beyond A * s_top every P evaluation clamps above the hull, where
        // Q already exceeds 1.5 t_k, so c > 0 is guaranteed.
        lam_hi = 1.01 * A * ctx.qtable().s_hull_hi();
        for (int k = 0; k < 60 && !(c_value(ctx, window, lam_hi) > 0.0); ++k)
            lam_hi *= 2.0;
    }
    if (!(c_value(ctx, window, lam_hi) > 0.0)) {
        rep.note = "one-sided: c stays nonpositive up to the scan top";
        return rep;
    }

    double lam_lo = 1e-4 * lam_hi;
    int shrink = 0;
    while (!(c_value(ctx, window, lam_lo) < 0.0) && shrink < 12) {
        lam_lo /= 8.0;
        ++shrink;
    }
    if (!(c_value(ctx, window, lam_lo) < 0.0)) {
        rep.note = "one-sided: c stays nonnegative down to the scan bottom";
        return rep;
    }

    const int n = ctx.opts().lambda_grid;
    const double ratio = std::pow(lam_hi / lam_lo, 1.0 / (n - 1));
    std::vector<double> lam(n), cv(n);
    for (int k = 0; k < n; ++k) {
        lam[k] = lam_lo * std::pow(ratio, k);
        cv[k] = c_value(ctx, window, lam[k]);
    }

    auto bisect_change = [&](int k) {
        double a = lam[k], b = lam[k + 1];
        double fa = cv[k];
        while ((b - a) > ctx.opts().bisect_rel * b) {
            const double mid = std::sqrt(a * b);
            const double fm = c_value(ctx, window, mid);
            if ((fm < 0.0) == (fa < 0.0))
                a = mid, fa = fm;
            else
                b = mid;
        }
        return std::make_pair(0.5 * (a + b), Bracket{a, b});
    };

    for (int k = 0; k + 1 < n; ++k) {
        if (cv[k] < 0.0 && cv[k + 1] >= 0.0) {
            auto [value, br] = bisect_change(k);
            rep.lambda0 = value;
            rep.lambda0_bracket = br;
            rep.found_lambda0 = true;
            break;
        }
    }
    for (int k = n - 2; k >= 0; --k) {
        if (cv[k] <= 0.0 && cv[k + 1] > 0.0) {
            auto [value, br] = bisect_change(k);
            rep.lambda0_tilde = value;
            rep.lambda0_tilde_bracket = br;
            rep.found_lambda0_tilde = true;
            break;
        }
    }

    if (ctx.qtable().monotone()) {
        const auto [lo, hi] = ctx.coef().window(window);
        QTable& tab = ctx.qtable();
        auto H = [&](double alpha) {
            if (alpha < tab.q_hull_lo() || alpha > tab.q_hull_hi()) return -kInf;
            return ctx.coef()(alpha) * tab.q_inverse(alpha);
        };
        auto [argmax, value] =
            scan_max(H, lo, hi, ctx.opts().interval_grid, 1e-12 * (hi - lo));
        (void)argmax;
        rep.lambda0_direct = value;
    }
    return rep;
}

std::vector<FixedPoint> find_fixed_points(const AnalyzerContext& ctx,
                                          double lambda, int window) {
    const AdmissibleSet set = admissible_set(ctx, window, lambda);
    std::vector<FixedPoint> out;
    if (set.empty()) return out;
    const Levels lv{set.theta_level, set.beta_level};
    const int N = ctx.opts().fp_grid;

    for (const auto& I : set.intervals) {
        const double step = (I.hi - I.lo) / (N + 1);
        // Node list: endpoint signs are known analytically (coercive ends are
        // +, beta-level ends carry T = -alpha < 0).
        std::vector<double> node{I.lo};
        std::vector<int> sign{I.lo_extended ? -1 : +1};
        std::vector<double> texact(N + 2, std::numeric_limits<double>::quiet_NaN());
        for (int m = 1; m <= N; ++m) {
            const double alpha = I.lo + m * step;
            const PBound pb = p_bounded(ctx, lambda, alpha, lv);
            node.push_back(alpha);
            sign.push_back(sign_of_T(pb, alpha));
            if (pb.bound == 0 && pb.value < kInf) texact[m] = pb.value - alpha;
        }
        node.push_back(I.hi);
        sign.push_back(I.hi_extended ? -1 : +1);

        auto sign_at = [&](double alpha) {
            return sign_of_T(p_bounded(ctx, lambda, alpha, lv), alpha);
        };
        auto t_at = [&](double alpha) {
            const PBound pb = p_bounded(ctx, lambda, alpha, lv);
            return pb.bound == 0 ? pb.value - alpha : kInf;
        };

        for (size_t m = 0; m + 1 < node.size(); ++m) {
            if (sign[m] == 0) {
                out.push_back({node[m], false, 0.0});
                continue;
            }
            if (sign[m] * sign[m + 1] >= 0) continue;
            double a = node[m], b = node[m + 1];
            int sa = sign[m];
            double root = 0.5 * (a + b);
            while (b - a > 1e-14 * (1.0 + std::abs(b))) {
                root = 0.5 * (a + b);
                const double tv = t_at(root);
                if (tv != kInf && std::abs(tv) <= tol_T(ctx.opts(), root)) break;
                const int sm = tv == kInf ? sign_at(root) : (tv > 0 ? 1 : -1);
                if (sm == 0) break;
                if (sm == sa)
                    a = root;
                else
                    b = root;
            }
            const double tv = t_at(root);
            out.push_back({root, false, tv == kInf ? 0.0 : std::abs(tv)});
        }

        // Tangential fixed points: |T| dips below tolerance without a sign
        // change (the lambda = lambda0 geometry).
        for (int m = 2; m + 1 <= N; ++m) {
            const double t0 = texact[m - 1], t1 = texact[m], t2 = texact[m + 1];
            if (std::isnan(t0) || std::isnan(t1) || std::isnan(t2)) continue;
            if (!(std::abs(t1) <= std::abs(t0) && std::abs(t1) <= std::abs(t2)))
                continue;
            if (t0 * t2 <= 0.0) continue;  // handled by the sign scan
            if (std::abs(t1) > 1e6 * tol_T(ctx.opts(), node[m])) continue;
            auto [x, v] = golden_min(
                [&](double alpha) { return std::abs(t_at(alpha)); },
                node[m] - step, node[m] + step, 1e-13 * (I.hi - I.lo));
            if (v <= tol_T(ctx.opts(), x)) {
                bool dup = false;
                for (const auto& fp : out)
                    if (std::abs(fp.alpha - x) < step) dup = true;
                if (!dup) out.push_back({x, true, v});
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const FixedPoint& u, const FixedPoint& v) { return u.alpha < v.alpha; });
    return out;
}

SolutionEntry reconstruct_solution(const AnalyzerContext& ctx, double lambda,
                                   const FixedPoint& fp, int window) {
    const auto [wlo, whi] = ctx.coef().window(window);
    const SRange range = admissible_s_range(ctx.nl(), ctx.lambda1());
    const double margin = 2.0 * ctx.aux_opts().margin;

    struct Eval {
        double alpha, gval;
        Field w;
        double s;
    };
    auto solve_at = [&](double alpha) {
        const double av = ctx.coef()(alpha);
        const double s = lambda / av;
        if (!range.contains(s, margin))
            throw NumericError("reconstruct_solution: alpha maps outside the solvable range");
        AuxSolution sol =
            solve_auxiliary(ctx.mesh(), ctx.nl(), s, ctx.eig(), ctx.aux_opts());
        double gv;
        if (ctx.g().needs_laplacian()) {
            Field neg_lap(sol.w.size());
            for (int i = 0; i < sol.w.size(); ++i)
                neg_lap[i] = s * ctx.nl().f(sol.w[i]);
            gv = ctx.g().eval(ctx.mesh(), sol.w, &neg_lap);
        } else {
            gv = ctx.g().eval(ctx.mesh(), sol.w);
        }
        return Eval{alpha, gv, std::move(sol.w), s};
    };

    Eval best = solve_at(fp.alpha);
    const double accept = 1e-10 * (1.0 + fp.alpha);
    double t_best = best.gval - best.alpha;
    if (std::abs(t_best) > accept) {
        // Local polish of T(alpha) = g(w_{lambda/a(alpha)}) - alpha on the
        // exact map; the scan root carries the interpolation error of Q.
        double rho = std::max(2e-3 * (whi - wlo), 1e-9 * (1.0 + fp.alpha));
        auto clip = [&](double x) {
            return std::min(std::max(x, wlo + 1e-12), whi - 1e-12);
        };
        Eval lo_ev = solve_at(clip(fp.alpha - rho));
        Eval hi_ev = solve_at(clip(fp.alpha + rho));
        const double t_lo = lo_ev.gval - lo_ev.alpha;
        const double t_hi = hi_ev.gval - hi_ev.alpha;
        auto T = [&](double alpha) {
            best = solve_at(alpha);
            return best.gval - alpha;
        };
        if ((t_lo < 0.0) != (t_best < 0.0)) {
            illinois_root(T, lo_ev.alpha, best.alpha, t_lo, t_best, accept);
        } else if ((t_best < 0.0) != (t_hi < 0.0)) {
            illinois_root(T, best.alpha, hi_ev.alpha, t_best, t_hi, accept);
        } else if ((t_lo < 0.0) != (t_hi < 0.0)) {
            illinois_root(T, lo_ev.alpha, hi_ev.alpha, t_lo, t_hi, accept);
        } else {
            // No sign change in reach: tangential contact (or a perturbed
            // alpha* that is not a fixed point at all).
            auto [x, v] = golden_min(
                [&](double alpha) { return std::abs(T(alpha)); }, lo_ev.alpha,
                hi_ev.alpha, 1e-12 * (whi - wlo), 60);
            (void)v;
            T(x);
        }
        t_best = best.gval - best.alpha;
    }

    SolutionEntry entry;
    entry.alpha = best.alpha;
    entry.s = best.s;
    entry.u = best.w;
    entry.g_resid = std::abs(t_best);
    entry.tangential = fp.tangential;
    if (entry.g_resid > ctx.opts().tol_g * (1.0 + entry.alpha))
        throw NumericError("reconstruct_solution: |g(u) - alpha| = " +
                           std::to_string(entry.g_resid) +
                           " beyond tolerance; alpha* is not a fixed point of the exact map");

    // End-to-end check on the original nonlocal equation.
    const Field lap_u = apply_laplacian(ctx.mesh(), entry.u);
    Field fu(entry.u.size());
    for (int i = 0; i < entry.u.size(); ++i) fu[i] = ctx.nl().f(entry.u[i]);
    const double a_of_g = ctx.coef()(best.gval);
    const double num = (a_of_g * lap_u - lambda * fu).lpNorm<Eigen::Infinity>();
    const double den = lambda * fu.lpNorm<Eigen::Infinity>();
    entry.pde_resid_rel = num / den;
    if (entry.pde_resid_rel > 1e-6)
        throw NumericError("reconstruct_solution: nonlocal residual above 1e-6");
    return entry;
}

OscillationReport oscillation_analysis(const AnalyzerContext& ctx, int window,
                                       const std::vector<double>& probe_lambdas) {
    if (!ctx.qtable().monotone())
        throw std::invalid_argument("oscillation_analysis: needs a monotone-certified Q");
    OscillationReport rep;
    const auto [lo, hi] = ctx.coef().window(window);
    const double width = hi - lo;
    QTable& tab = ctx.qtable();
    const double a0 = std::max(lo + 1e-4 * width, tab.q_hull_lo());
    const double b0 = std::min(hi - 1e-4 * width, tab.q_hull_hi());
    const int N = ctx.opts().h_grid;

    std::vector<double> alpha(N), H(N);
    for (int m = 0; m < N; ++m) {
        alpha[m] = a0 + (b0 - a0) * m / (N - 1);
        H[m] = ctx.coef()(alpha[m]) * tab.q_inverse(alpha[m]);
    }
    double scale = 0.0;
    for (double v : H) scale = std::max(scale, std::abs(v));

    // Strict local extrema with plateaus collapsed to their midpoints.
    int m = 1;
    while (m + 1 < N) {
        const int start = m;
        while (m + 1 < N && std::abs(H[m + 1] - H[m]) <= 1e-12 * scale) ++m;
        if (m + 1 >= N) break;
        const double before = H[start - 1], here = H[start], after = H[m + 1];
        const double mid_alpha = 0.5 * (alpha[start] + alpha[m]);
        if (here > before && here > after) {
            double arg = mid_alpha;
            if (start == m) {
                auto [x, v] = golden_max(
                    [&](double a) { return ctx.coef()(a) * tab.q_inverse(a); },
                    alpha[start - 1], alpha[m + 1], 1e-12 * width);
                arg = x;
                (void)v;
            }
            rep.maximizers.push_back(arg);
        } else if (here < before && here < after) {
            rep.minimizers.push_back(mid_alpha);
        }
        m = std::max(m, start) + 1;
    }

    rep.j = static_cast<int>(rep.maximizers.size());
    rep.M = kInf;
    rep.m = -kInf;
    for (double x : rep.maximizers)
        rep.M = std::min(rep.M, ctx.coef()(x) * tab.q_inverse(x));
    for (double x : rep.minimizers)
        rep.m = std::max(rep.m, ctx.coef()(x) * tab.q_inverse(x));
    if (rep.minimizers.empty()) rep.m = 0.0;
    rep.gap = rep.j > 0 && rep.m < rep.M;

    for (double lambda : probe_lambdas) {
        const auto fps = find_fixed_points(ctx, lambda, window);
        rep.probe_counts.emplace_back(lambda, static_cast<int>(fps.size()));
    }
    return rep;
}

WindowReport analyze_window(const AnalyzerContext& ctx, int window, double lambda,
                            bool reconstruct) {
    WindowReport rep;
    rep.window = window;
    rep.lambda = lambda;
    rep.adm = admissible_set(ctx, window, lambda);
    auto [cv, carg] = c_of_lambda(ctx, window, lambda);
    rep.c_value = cv;
    rep.c_argmin = carg;
    rep.fixed_points = find_fixed_points(ctx, lambda, window);
    if (reconstruct) {
        for (const auto& fp : rep.fixed_points)
            rep.solutions.push_back(reconstruct_solution(ctx, lambda, fp, window));
    }
    rep.thresholds = thresholds(ctx, window);
    return rep;
}

IntervalLawReport check_interval_laws(const AdmissibleSet& set, double window_max,
                                      double lambda, const Nonlinearity& nl,
                                      double lambda1) {
    IntervalLawReport rep;
    const auto& iv = set.intervals;
    for (size_t i = 0; i < iv.size(); ++i) {
        if (iv[i].type == IntervalType::InfZero) {
            bool followed = false;
            for (size_t j = i; j < iv.size(); ++j)
                if (iv[j].type == IntervalType::ZeroInf && iv[j].lo >= iv[i].hi - 1e-12)
                    followed = true;
            if (!followed) rep.inf0_followed = false;
        }
        if (iv[i].type == IntervalType::ZeroZero) {
            bool preceded = false;
            for (size_t j = 0; j <= i && j < iv.size(); ++j)
                if (iv[j].type == IntervalType::InfZero) preceded = true;
            if (!preceded) rep.zero0_preceded = false;
        }
    }
    bool all_infinf = !iv.empty();
    for (const auto& I : iv)
        if (I.type != IntervalType::InfInf) all_infinf = false;
    const double rhs = std::isinf(nl.beta()) ? kInf : lambda * nl.beta() / lambda1;
    const bool strictly_below = window_max < rhs;
    if (!iv.empty() && all_infinf != strictly_below) rep.all_infinf_iff = false;
    return rep;
}

}  // namespace nla
