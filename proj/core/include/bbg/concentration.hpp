#pragma once

#include <functional>
#include <vector>

#include "bbg/enumerate.hpp"
#include "bbg/graph.hpp"
#include "bbg/rational.hpp"

namespace bbg {

/// F: edge statistic sum Q_uv X_uv over [n]x[m].
/// G: codegree statistic sum_{u1 != u2} Q_{u1u2} codeg(u1,u2) over [n]x[n].
enum class StatMode { F, G };

/// Nonnegative weight matrix with entrywise cap `a`; rational entries so
/// family averages and tails can be computed exactly.
struct StatMatrixQ {
    StatMode mode = StatMode::F;
    int rows = 0;
    int cols = 0;
    std::vector<Rational> entries;  // row-major rows x cols
    Rational a = 1;

    const Rational& at(int i, int j) const {
        return entries[static_cast<std::size_t>(i) * cols + j];
    }
    Rational& at(int i, int j) { return entries[static_cast<std::size_t>(i) * cols + j]; }

    /// All-ones matrix of the right shape (zero diagonal in G mode).
    static StatMatrixQ ones(const DegreeParams& params, StatMode mode);

    /// Checks shape, 0 <= entries <= a, and G-mode symmetry + zero diagonal.
    void validate(const DegreeParams& params) const;
};

struct ConcParams {
    StatMode mode = StatMode::F;
    int d2 = 0;  // enters the G-mode bounds
    Rational mu;
    Rational sigma_tilde_sq;
    Rational p;
    Rational p_prime;
    Rational c0;
    Rational gamma0;
};

/// Bennett rate function h(x) = (1+x)log(1+x) - x, with h(-1) = 1 by
/// continuity. Throws DomainError for x < -1.
double bennett_h(double x);

/// Exact value of f_Q or g_Q on one graph.
Rational eval_statistic(const BiregularGraph& g, const StatMatrixQ& Q);

/// Mean/second-moment/coupling parameters of the statistic under the
/// uniform distribution. Throws DegenerateRegime when m <= d1 (F mode)
/// or n <= 2 d2 (G mode).
ConcParams conc_params(const DegreeParams& params, const StatMatrixQ& Q);

/// The eight tail-bound formulas; 41/42 are F-mode, 71/72 G-mode.
enum class TailKind {
    upper_41,     // P(f - mu/p >= t)
    lower_41,     // P(f - p' mu <= -t)
    oneside_42,   // P(f - mu >= gamma0 mu + t)
    twosided_42,  // P(|f - mu| >= gamma0 mu + t)
    upper_71,
    lower_71,
    oneside_72,
    twosided_72,
};

const char* to_string(TailKind kind);

/// Formula value of the chosen bound at deviation t, clamped into [0, 1].
double tail_bound(const ConcParams& cp, double a, double t, TailKind kind);

/// Whether the deviation event of `kind` holds for a statistic value.
bool tail_event(const ConcParams& cp, const Rational& value, double t, TailKind kind);

/// Exact event probability over a full enumerated family.
Rational exact_tail_probability(const GraphFamily& family, const StatMatrixQ& Q,
                                const ConcParams& cp, double t, TailKind kind);

enum class CoupleMode { X, M };

/// Index pairs split by |x_u y_v| (X mode) or |x_u x_v| (M mode) against
/// the density threshold sqrt(d1)/m resp. sqrt(d1(d2-1))/n.
struct CoupleClass {
    double threshold = 0;
    std::vector<std::pair<int, int>> light;
    std::vector<std::pair<int, int>> heavy;
    std::vector<std::pair<int, int>> light_pos;  // product >= 0
    std::vector<std::pair<int, int>> light_neg;
};

/// X mode takes unit x (length n) and unit mean-zero y (length m);
/// M mode takes unit mean-zero x (length n) and ignores y.
CoupleClass classify_couples(const std::vector<double>& x, const std::vector<double>* y,
                             const DegreeParams& params, CoupleMode mode);

struct LightMeanResult {
    double value = 0;  // (d1/m) sum over light couples of x_u y_v
    bool bound_ok = false;
};

/// |E f_light| against the sqrt(d1) bound.
LightMeanResult light_mean_check(const std::vector<double>& x, const std::vector<double>& y,
                                 const DegreeParams& params);

struct TailPoint {
    double t = 0;
    double empirical = 0;
    double bound = 0;
    double slack = 0;  // 3 binomial standard errors (0 in exact mode)
    bool flag = false;
};

struct TailReport {
    TailKind kind{};
    long long trials = 0;
    bool exact = false;
    std::vector<TailPoint> points;
    bool any_flag = false;
};

/// Empirical tail frequencies under `draw` compared against the formula
/// bound plus 3 binomial standard errors.
TailReport monte_carlo_tail(const DegreeParams& params, const StatMatrixQ& Q, TailKind kind,
                            const std::function<BiregularGraph()>& draw, long long trials,
                            const std::vector<double>& t_grid);

/// Same report shape, but with exact probabilities over a full family.
TailReport exact_tail_report(const GraphFamily& family, const StatMatrixQ& Q, TailKind kind,
                             const std::vector<double>& t_grid);

}  // namespace bbg
