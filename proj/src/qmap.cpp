#include "nla/qmap.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace nla {

namespace {

// Sample positions for one table build. Finite endpoints are approached with
// geometrically shrinking relative margins; an infinite upper end is covered
// geometrically up to s_max.
std::vector<double> sample_positions(const SRange& r, const SamplingSpec& spec,
                                     double s_min, double s_max) {
    const int n = spec.n;
    std::vector<double> s(n);
    if (r.lo > 0.0 && r.hi < kInf) {
        // Map a symmetric geometric grid of gap fractions onto (lo, hi).
        const double m = spec.endpoint_margin;
        const int half = n / 2;
        const double ratio = std::pow(0.5 / m, 1.0 / (half - 1));
        for (int j = 0; j < half; ++j) {
            const double xi = m * std::pow(ratio, j);
            s[j] = r.lo * (1.0 + xi * (r.hi / r.lo - 1.0));
            s[n - 1 - j] = r.hi * (1.0 - xi * (1.0 - r.lo / r.hi));
        }
        if (n % 2 == 1) s[half] = std::sqrt(r.lo * r.hi);
    } else {
        const double lo = r.lo > 0.0 ? r.lo * (1.0 + spec.endpoint_margin) : s_min;
        const double hi = r.hi < kInf ? r.hi * (1.0 - spec.endpoint_margin) : s_max;
        const double ratio = std::pow(hi / lo, 1.0 / (n - 1));
        for (int j = 0; j < n; ++j) s[j] = lo * std::pow(ratio, j);
    }
    std::sort(s.begin(), s.end());
    return s;
}

// Fritsch-Carlson monotone cubic slopes for strictly increasing data.
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
    const size_t n = x.size();
    std::vector<double> d(n - 1), m(n);
    for (size_t i = 0; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
            const double w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    // Clamp endpoint slopes into the monotone region.
    for (size_t i : {size_t(0), n - 1}) {
        const double di = i == 0 ? d[0] : d[n - 2];
        if (m[i] * di <= 0.0)
            m[i] = 0.0;
        else if (std::abs(m[i]) > 3.0 * std::abs(di))
            m[i] = 3.0 * di;
    }
    return m;
}

double hermite(double x, double x0, double x1, double y0, double y1, double m0,
               double m1) {
    const double h = x1 - x0;
    const double t = (x - x0) / h;
    const double t2 = t * t, t3 = t2 * t;
    return y0 * (2 * t3 - 3 * t2 + 1) + h * m0 * (t3 - 2 * t2 + t) +
           y1 * (-2 * t3 + 3 * t2) + h * m1 * (t3 - t2);
}

}  // namespace

QSample QTable::solve_sample(double s) const {
    AuxSolution sol = solve_auxiliary(*ctx_->mesh, ctx_->nl, s, ctx_->eig, ctx_->aux);
    QSample q;
    q.s = s;
    if (ctx_->g.needs_laplacian()) {
        Field neg_lap(sol.w.size());
        for (int i = 0; i < sol.w.size(); ++i) neg_lap[i] = s * ctx_->nl.f(sol.w[i]);
        q.q = ctx_->g.eval(*ctx_->mesh, sol.w, &neg_lap);
    } else {
        q.q = ctx_->g.eval(*ctx_->mesh, sol.w);
    }
    q.residual = sol.residual_inf;
    q.energy = sol.energy;
    q.iterations = sol.iterations;
    return q;
}

void QTable::insert(std::vector<double> new_s) {
    std::sort(new_s.begin(), new_s.end());
    new_s.erase(std::unique(new_s.begin(), new_s.end()), new_s.end());
    std::vector<QSample> fresh(new_s.size());
    const int threads = std::max(1, spec_.threads);
    if (threads == 1 || new_s.size() < 2) {
        for (size_t j = 0; j < new_s.size(); ++j) fresh[j] = solve_sample(new_s[j]);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        std::vector<std::string> errors(new_s.size());
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (size_t j = next.fetch_add(1); j < new_s.size();
                     j = next.fetch_add(1)) {
                    try {
                        fresh[j] = solve_sample(new_s[j]);
                    } catch (const std::exception& e) {
                        errors[j] = e.what();
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        for (size_t j = 0; j < new_s.size(); ++j)
            if (!errors[j].empty())
                throw NumericError("tabulate_q: sample s=" + std::to_string(new_s[j]) +
                                   " failed: " + errors[j]);
    }
    samples_.insert(samples_.end(), fresh.begin(), fresh.end());
    std::sort(samples_.begin(), samples_.end(),
              [](const QSample& a, const QSample& b) { return a.s < b.s; });
    samples_.erase(std::unique(samples_.begin(), samples_.end(),
                               [](const QSample& a, const QSample& b) {
                                   return a.s == b.s;
                               }),
                   samples_.end());
    rebuild_interpolant();
}

void QTable::rebuild_interpolant() {
    monotone_ = true;
    for (size_t j = 0; j + 1 < samples_.size(); ++j)
        if (!(samples_[j].q < samples_[j + 1].q)) monotone_ = false;
    lx_.resize(samples_.size());
    ly_.resize(samples_.size());
    for (size_t j = 0; j < samples_.size(); ++j) {
        if (!(samples_[j].q > 0.0))
            throw NumericError("QTable: nonpositive Q sample");
        lx_[j] = std::log(samples_[j].s);
        ly_[j] = std::log(samples_[j].q);
    }
    slope_ = monotone_ ? pchip_slopes(lx_, ly_) : std::vector<double>();
}

MonotoneReport QTable::certify_monotone() const {
    MonotoneReport rep;
    for (size_t j = 0; j + 1 < samples_.size(); ++j) {
        if (!(samples_[j].q < samples_[j + 1].q)) {
            rep.monotone = false;
            rep.first_violation = static_cast<int>(j);
            return rep;
        }
    }
    return rep;
}

double QTable::q_eval(double s) const {
    if (!(s >= samples_.front().s && s <= samples_.back().s))
        throw std::invalid_argument("q_eval: s outside the sampled hull");
    const double x = std::log(s);
    const auto it = std::upper_bound(lx_.begin(), lx_.end(), x);
    size_t j = it == lx_.begin() ? 0 : static_cast<size_t>(it - lx_.begin()) - 1;
    if (j + 1 >= lx_.size()) j = lx_.size() - 2;
    if (x == lx_[j]) return samples_[j].q;
    if (x == lx_[j + 1]) return samples_[j + 1].q;
    double y;
    if (monotone_) {
        y = hermite(x, lx_[j], lx_[j + 1], ly_[j], ly_[j + 1], slope_[j],
                    slope_[j + 1]);
    } else {
        const double t = (x - lx_[j]) / (lx_[j + 1] - lx_[j]);
        y = ly_[j] + t * (ly_[j + 1] - ly_[j]);
    }
    return std::exp(y);
}

double QTable::q_inverse(double alpha) {
    if (!monotone_)
        throw std::invalid_argument("q_inverse: table is not monotone-certified");
    if (!(alpha > 0.0)) throw std::invalid_argument("q_inverse: alpha must be positive");
    if (alpha < q_hull_lo() || alpha > q_hull_hi())
        ensure_q_covers(std::min(alpha, q_hull_lo()), std::max(alpha, q_hull_hi()));
    if (alpha == q_hull_lo()) return s_hull_lo();
    if (alpha == q_hull_hi()) return s_hull_hi();
    const double ls = bisect(
        [&](double lxv) {
            return q_eval(std::exp(lxv)) - alpha;
        },
        lx_.front(), lx_.back(), 1e-14 * std::max(1.0, std::abs(lx_.back())),
        1e-9 * alpha, 300);
    const double s = std::exp(ls);
    if (std::abs(q_eval(s) - alpha) > 1e-8 * alpha)
        throw NumericError("q_inverse: bisection did not reach tolerance");
    return s;
}

void QTable::ensure_q_covers(double q_lo, double q_hi) {
    while (q_hull_lo() > q_lo) {
        if (rounds_used_ >= spec_.refine_rounds)
            throw NumericError("QTable: refinement budget exhausted near the lower endpoint");
        ++rounds_used_;
        std::vector<double> add;
        const double s0 = s_hull_lo();
        if (range_.lo > 0.0) {
            // Shrink the relative margin by 8x.
            double margin = s0 / range_.lo - 1.0;
            for (int k = 1; k <= 4; ++k)
                add.push_back(range_.lo * (1.0 + margin * std::pow(8.0, -k / 4.0 * 1.0)));
            add.push_back(range_.lo * (1.0 + margin / 8.0));
        } else {
            for (int k = 1; k <= 4; ++k) add.push_back(s0 * std::pow(8.0, -k * 0.25));
        }
        insert(std::move(add));
    }
    while (q_hull_hi() < q_hi) {
        if (rounds_used_ >= spec_.refine_rounds)
            throw NumericError("QTable: refinement budget exhausted near the upper endpoint");
        ++rounds_used_;
        std::vector<double> add;
        const double s1 = s_hull_hi();
        if (range_.hi < kInf) {
            double margin = 1.0 - s1 / range_.hi;
            for (int k = 1; k <= 4; ++k)
                add.push_back(range_.hi * (1.0 - margin * std::pow(8.0, -k * 0.25)));
        } else {
            for (int k = 1; k <= 4; ++k) add.push_back(s1 * std::pow(8.0, k * 0.25));
        }
        insert(std::move(add));
    }
}

void QTable::ensure_s_covers(double s) {
    if (!range_.contains(s, ctx_->aux.margin)) return;
    while (s < s_hull_lo()) {
        if (rounds_used_ >= spec_.refine_rounds)
            throw NumericError("QTable: refinement budget exhausted extending s downward");
        ++rounds_used_;
        std::vector<double> add;
        for (int k = 1; k <= 4; ++k) {
            const double cand = s_hull_lo() * std::pow(std::max(s / s_hull_lo(), 0.125), k * 0.25);
            add.push_back(std::max(cand, s));
        }
        add.push_back(s);
        insert(std::move(add));
    }
    while (s > s_hull_hi()) {
        if (rounds_used_ >= spec_.refine_rounds)
            throw NumericError("QTable: refinement budget exhausted extending s upward");
        ++rounds_used_;
        std::vector<double> add;
        for (int k = 1; k <= 4; ++k) {
            const double cand = s_hull_hi() * std::pow(std::min(s / s_hull_hi(), 8.0), k * 0.25);
            add.push_back(std::min(cand, s));
        }
        add.push_back(s);
        insert(std::move(add));
    }
}

QTable tabulate_q(const Mesh& mesh, const Nonlinearity& nl,
                  const NonlocalFunctional& g, const EigenPair& eig,
                  const SamplingSpec& spec, const AuxOptions& aux) {
    if (spec.n < 16)
        throw std::invalid_argument("tabulate_q: need at least 16 samples");
    QTable table;
    table.ctx_ = std::make_shared<QTable::Context>(
        QTable::Context{&mesh, nl, g, eig, aux});
    table.range_ = admissible_s_range(nl, eig.lambda1);
    table.spec_ = spec;

    double s_min = spec.s_min;
    if (table.range_.lo == 0.0 && !(s_min > 0.0)) s_min = 1e-2 * eig.lambda1;
    double s_max = spec.s_max;
    if (table.range_.hi == kInf && !(s_max > 0.0)) s_max = 16.0 * eig.lambda1;

    table.insert(sample_positions(table.range_, spec, s_min, s_max));

    // Grow the upper hull until Q clears the requested target (open-ended
    // ranges only; finite tops already sample up to the margin).
    if (spec.q_target > 0.0 && table.range_.hi == kInf) {
        int grow = 0;
        while (table.q_hull_hi() < spec.q_target && grow < 60) {
            table.insert({table.s_hull_hi() * 2.0});
            ++grow;
        }
        if (table.q_hull_hi() < spec.q_target)
            throw NumericError("tabulate_q: could not reach the requested Q target");
    }
    return table;
}

}  // namespace nla
