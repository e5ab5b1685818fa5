#include "bbg/concentration.hpp"

#include <cmath>

#include "bbg/errors.hpp"

namespace bbg {

StatMatrixQ StatMatrixQ::ones(const DegreeParams& params, StatMode mode) {
    StatMatrixQ q;
    q.mode = mode;
    q.rows = params.n;
    q.cols = mode == StatMode::F ? params.m : params.n;
    q.entries.assign(static_cast<std::size_t>(q.rows) * q.cols, Rational(1));
    q.a = 1;
    if (mode == StatMode::G)
        for (int i = 0; i < q.rows; ++i) q.at(i, i) = 0;
    return q;
}

void StatMatrixQ::validate(const DegreeParams& params) const {
    const int want_cols = mode == StatMode::F ? params.m : params.n;
    if (rows != params.n || cols != want_cols ||
        entries.size() != static_cast<std::size_t>(rows) * cols)
        throw DimensionMismatch("Q is " + std::to_string(rows) + "x" + std::to_string(cols));
    // Sign tests on numerators (denominators are always positive); the
    // boost::rational relational operators are avoided deliberately, their
    // continued-fraction loop is miscompiled into an endless loop by some
    // optimizing builds.
    for (const Rational& e : entries)
        if (e.numerator() < 0 || (e - a).numerator() > 0)
            throw DomainError("Q entry outside [0, a]");
    if (mode == StatMode::G)
        for (int i = 0; i < rows; ++i) {
            if (at(i, i).numerator() != 0)
                throw DomainError("G-mode Q needs a zero diagonal");
            for (int j = i + 1; j < cols; ++j)
                if (at(i, j) != at(j, i)) throw DomainError("G-mode Q must be symmetric");
        }
}

double bennett_h(double x) {
    if (x < -1) throw DomainError("bennett_h needs x >= -1");
    if (x == -1) return 1.0;  // limit value
    return (1 + x) * std::log1p(x) - x;
}

Rational eval_statistic(const BiregularGraph& g, const StatMatrixQ& Q) {
    Q.validate(g.params());
    Rational sum = 0;
    if (Q.mode == StatMode::F) {
        for (int u = 0; u < g.params().n; ++u)
            for (int v : g.row_neighbors(u)) sum += Q.at(u, v);
    } else {
        CodegreeMatrix cd = codegree_matrix(g);
        for (int i = 0; i < g.params().n; ++i)
            for (int j = 0; j < g.params().n; ++j)
                if (i != j && cd.at(i, j) != 0) sum += Q.at(i, j) * cd.at(i, j);
    }
    return sum;
}

ConcParams conc_params(const DegreeParams& params, const StatMatrixQ& Q) {
    params.validate();
    Q.validate(params);
    ConcParams cp;
    cp.mode = Q.mode;
    cp.d2 = params.d2;
    Rational sum = 0, sum_sq = 0;
    if (Q.mode == StatMode::F) {
        if (params.m <= params.d1)
            throw DegenerateRegime("F mode needs m > d1");
        for (const Rational& e : Q.entries) {
            sum += e;
            sum_sq += e * e;
        }
        const Rational density(params.d1, params.m);
        cp.mu = density * sum;
        cp.sigma_tilde_sq = density * sum_sq;
        cp.p = Rational(1) - Rational(params.d1, params.m);
        cp.p_prime = Rational(1) - Rational(params.d1, params.m - params.d1);
        cp.c0 = cp.p / 3;
        cp.gamma0 = Rational(params.d1, params.m - params.d1);
    } else {
        if (params.n <= 2 * params.d2)
            throw DegenerateRegime("G mode needs n > 2 d2");
        for (int i = 0; i < Q.rows; ++i)
            for (int j = 0; j < Q.cols; ++j)
                if (i != j) {
                    sum += Q.at(i, j);
                    sum_sq += Q.at(i, j) * Q.at(i, j);
                }
        const Rational density(static_cast<long long>(params.d1) * (params.d2 - 1),
                               params.n - 1);
        cp.mu = density * sum;
        cp.sigma_tilde_sq = density * sum_sq;
        cp.p = Rational(1) - Rational(2 * params.d2, params.n);
        cp.p_prime = Rational(1) - Rational(2 * params.d2, params.n - params.d2);
        cp.c0 = cp.p / 6;
        cp.gamma0 = Rational(2 * params.d2, params.n - 2 * params.d2);
    }
    return cp;
}

const char* to_string(TailKind kind) {
    switch (kind) {
        case TailKind::upper_41: return "upper_41";
        case TailKind::lower_41: return "lower_41";
        case TailKind::oneside_42: return "oneside_42";
        case TailKind::twosided_42: return "twosided_42";
        case TailKind::upper_71: return "upper_71";
        case TailKind::lower_71: return "lower_71";
        case TailKind::oneside_72: return "oneside_72";
        case TailKind::twosided_72: return "twosided_72";
    }
    return "?";
}

namespace {

bool g_mode_kind(TailKind kind) {
    return kind == TailKind::upper_71 || kind == TailKind::lower_71 ||
           kind == TailKind::oneside_72 || kind == TailKind::twosided_72;
}

double clamp01(double x) { return x < 0 ? 0.0 : (x > 1 ? 1.0 : x); }

}  // namespace

double tail_bound(const ConcParams& cp, double a, double t, TailKind kind) {
    if (a <= 0) throw DomainError("tail_bound needs a > 0");
    if (t < 0) throw DomainError("tail_bound needs t >= 0");
    if ((cp.mode == StatMode::G) != g_mode_kind(kind))
        throw DimensionMismatch("tail kind does not match statistic mode");
    const double s2 = to_double(cp.sigma_tilde_sq);
    if (s2 == 0) return t > 0 ? 0.0 : 1.0;
    const double p = to_double(cp.p);
    const double c0 = to_double(cp.c0);
    const double d2 = cp.d2;
    double value = 1.0;
    switch (kind) {
        case TailKind::upper_41:
            value = std::exp(-(s2 / (3 * p * a * a)) * bennett_h(p * a * t / s2));
            break;
        case TailKind::lower_41:
            value = std::exp(-(s2 / (3 * a * a)) * bennett_h(a * t / s2));
            break;
        case TailKind::oneside_42:
            value = std::exp(-c0 * (s2 / (a * a)) * bennett_h(a * t / s2));
            break;
        case TailKind::twosided_42:
            value = 2 * std::exp(-c0 * t * t / (2 * (s2 + a * t / 3)));
            break;
        case TailKind::upper_71:
            value = std::exp(-(s2 / (6 * d2 * p * a * a)) * bennett_h(p * a * t / (2 * s2)));
            break;
        case TailKind::lower_71:
            value = std::exp(-(s2 / (6 * d2 * a * a)) * bennett_h(a * t / (2 * s2)));
            break;
        case TailKind::oneside_72:
            value = std::exp(-c0 * (s2 / (d2 * a * a)) * bennett_h(a * t / (2 * s2)));
            break;
        case TailKind::twosided_72:
            value = 2 * std::exp(-c0 * t * t / (8 * d2 * (s2 + a * t / 6)));
            break;
    }
    return clamp01(value);
}

bool tail_event(const ConcParams& cp, const Rational& value, double t, TailKind kind) {
    if ((cp.mode == StatMode::G) != g_mode_kind(kind))
        throw DimensionMismatch("tail kind does not match statistic mode");
    switch (kind) {
        case TailKind::upper_41:
        case TailKind::upper_71:
            return to_double(value - cp.mu / cp.p) >= t;
        case TailKind::lower_41:
        case TailKind::lower_71:
            return to_double(value - cp.p_prime * cp.mu) <= -t;
        case TailKind::oneside_42:
        case TailKind::oneside_72:
            return to_double(value - cp.mu - cp.gamma0 * cp.mu) >= t;
        case TailKind::twosided_42:
        case TailKind::twosided_72:
            return std::abs(to_double(value - cp.mu)) >= to_double(cp.gamma0 * cp.mu) + t;
    }
    return false;
}

Rational exact_tail_probability(const GraphFamily& family, const StatMatrixQ& Q,
                                const ConcParams& cp, double t, TailKind kind) {
    long long hits = 0;
    for (long long i = 0; i < family.size(); ++i)
        if (tail_event(cp, eval_statistic(family.member(i), Q), t, kind)) ++hits;
    return Rational(hits, family.size());
}

namespace {

void check_unit(const std::vector<double>& x, const char* name) {
    double norm_sq = 0;
    for (double v : x) norm_sq += v * v;
    if (std::abs(std::sqrt(norm_sq) - 1.0) > 1e-12)
        throw NotUnitVector(std::string(name) + " is not unit norm");
}

void check_mean_zero(const std::vector<double>& x, const char* name) {
    double sum = 0;
    for (double v : x) sum += v;
    if (std::abs(sum) > 1e-12) throw NotMeanZero(std::string(name) + " is not mean zero");
}

}  // namespace

CoupleClass classify_couples(const std::vector<double>& x, const std::vector<double>* y,
                             const DegreeParams& params, CoupleMode mode) {
    params.validate();
    if (static_cast<int>(x.size()) != params.n) throw DimensionMismatch("x length != n");
    check_unit(x, "x");
    CoupleClass out;
    const std::vector<double>* second;
    int cols;
    if (mode == CoupleMode::X) {
        if (!y) throw DimensionMismatch("X mode needs y");
        if (static_cast<int>(y->size()) != params.m) throw DimensionMismatch("y length != m");
        check_unit(*y, "y");
        check_mean_zero(*y, "y");
        second = y;
        cols = params.m;
        out.threshold = std::sqrt(static_cast<double>(params.d1)) / params.m;
    } else {
        check_mean_zero(x, "x");
        second = &x;
        cols = params.n;
        out.threshold =
            std::sqrt(static_cast<double>(params.d1) * (params.d2 - 1)) / params.n;
    }
    for (int u = 0; u < params.n; ++u)
        for (int v = 0; v < cols; ++v) {
            const double prod = x[u] * (*second)[v];
            if (std::abs(prod) <= out.threshold) {
                out.light.emplace_back(u, v);
                (prod >= 0 ? out.light_pos : out.light_neg).emplace_back(u, v);
            } else {
                out.heavy.emplace_back(u, v);
            }
        }
    return out;
}

LightMeanResult light_mean_check(const std::vector<double>& x, const std::vector<double>& y,
                                 const DegreeParams& params) {
    CoupleClass cc = classify_couples(x, &y, params, CoupleMode::X);
    double sum = 0;
    for (auto [u, v] : cc.light) sum += x[u] * y[v];
    LightMeanResult r;
    r.value = static_cast<double>(params.d1) / params.m * sum;
    r.bound_ok = std::abs(r.value) <= std::sqrt(static_cast<double>(params.d1));
    return r;
}

namespace {

TailReport make_report(const DegreeParams& params, const StatMatrixQ& Q, TailKind kind,
                       const std::vector<double>& t_grid,
                       const std::function<Rational(double, const ConcParams&)>& empirical,
                       long long trials, bool exact) {
    const ConcParams cp = conc_params(params, Q);
    const double a = to_double(Q.a);
    TailReport report;
    report.kind = kind;
    report.trials = trials;
    report.exact = exact;
    for (double t : t_grid) {
        TailPoint pt;
        pt.t = t;
        pt.empirical = to_double(empirical(t, cp));
        pt.bound = tail_bound(cp, a, t, kind);
        if (!exact && trials > 0)
            pt.slack = 3 * std::sqrt(pt.empirical * (1 - pt.empirical) /
                                     static_cast<double>(trials));
        pt.flag = pt.empirical > pt.bound + pt.slack;
        report.any_flag = report.any_flag || pt.flag;
        report.points.push_back(pt);
    }
    return report;
}

}  // namespace

TailReport monte_carlo_tail(const DegreeParams& params, const StatMatrixQ& Q, TailKind kind,
                            const std::function<BiregularGraph()>& draw, long long trials,
                            const std::vector<double>& t_grid) {
    // Draw once, evaluate the statistic, reuse the values for every t.
    std::vector<Rational> values;
    values.reserve(static_cast<std::size_t>(trials));
    for (long long i = 0; i < trials; ++i) values.push_back(eval_statistic(draw(), Q));
    return make_report(
        params, Q, kind, t_grid,
        [&](double t, const ConcParams& cp) {
            long long hits = 0;
            for (const Rational& v : values)
                if (tail_event(cp, v, t, kind)) ++hits;
            return Rational(hits, trials);
        },
        trials, false);
}

TailReport exact_tail_report(const GraphFamily& family, const StatMatrixQ& Q, TailKind kind,
                             const std::vector<double>& t_grid) {
    return make_report(
        family.params(), Q, kind, t_grid,
        [&](double t, const ConcParams& cp) {
            return exact_tail_probability(family, Q, cp, t, kind);
        },
        family.size(), true);
}

}  // namespace bbg
