#include "bbg/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>

#include "bbg/errors.hpp"
#include "bbg/rng.hpp"

namespace bbg {

namespace {

constexpr int kDenseLimit = 2000;

Eigen::MatrixXd gram_matrix(const BiregularGraph& g) {
    // X X^T: diagonal d1, off-diagonal codegrees.
    const int n = g.params().n;
    CodegreeMatrix cd = codegree_matrix(g);
    Eigen::MatrixXd B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = i == j ? g.params().d1 : cd.at(i, j);
    return B;
}

// Symmetric Lanczos with full reorthogonalization on an operator of the
// given dimension; returns the extreme Ritz values. Deterministic start
// vector; convergence when the Ritz residual estimate drops below tol or
// the Krylov space is exhausted (exact at dim steps).
struct LanczosResult {
    double theta_max = 0;
    double theta_min = 0;
    IterationStats stats;
};

LanczosResult lanczos_extreme(
    int dim, double tol,
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply) {
    LanczosResult result;
    if (dim <= 0) return result;
    const int cap = std::min<long long>(
        dim, std::max<long long>(
                 8, static_cast<long long>(10.0 * std::sqrt(static_cast<double>(dim)) *
                                           std::log(1.0 / tol))));

    Rng rng = make_rng(0x5bec7a11u, 0);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = unif(rng);

    std::vector<Eigen::VectorXd> basis;
    std::vector<double> alpha, beta;  // beta[j] couples v_j and v_{j+1}
    Eigen::VectorXd w(dim);

    v.normalize();
    basis.push_back(v);

    result.stats.converged = false;
    for (int j = 0; j < cap; ++j) {
        apply(basis[j], w);
        const double a = basis[j].dot(w);
        alpha.push_back(a);
        w -= a * basis[j];
        if (j > 0) w -= beta[j - 1] * basis[j - 1];
        for (const auto& b : basis) w -= b.dot(w) * b;  // full reorthogonalization

        const int k = static_cast<int>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            T(i, i) = alpha[i];
            if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        result.theta_min = es.eigenvalues()(0);
        result.theta_max = es.eigenvalues()(k - 1);
        const double b = w.norm();
        const double res = b * std::max(std::abs(es.eigenvectors()(k - 1, 0)),
                                        std::abs(es.eigenvectors()(k - 1, k - 1)));
        result.stats.iterations = k;
        result.stats.residual = res;
        if (res <= tol || k == dim) {
            result.stats.converged = true;
            return result;
        }
        beta.push_back(b);
        basis.push_back(w / b);
    }
    throw ConvergenceFailure("Lanczos cap reached with residual " +
                             std::to_string(result.stats.residual));
}

}  // namespace

std::vector<double> singular_values(const BiregularGraph& g) {
    const int n = g.params().n;
    if (n > kDenseLimit)
        throw SizeLimitExceeded("full singular value list is dense-only (n <= 2000)");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_matrix(g));
    std::vector<double> sigma(n);
    for (int i = 0; i < n; ++i)
        sigma[i] = std::sqrt(std::max(0.0, es.eigenvalues()(n - 1 - i)));
    return sigma;
}

double sigma2_deflated(const BiregularGraph& g, double tol, IterationStats* stats) {
    if (tol <= 0) throw DomainError("tol must be positive");
    const int n = g.params().n, m = g.params().m;
    // Operator y -> P X^T X P y on R^m, with P the projection off 1_m;
    // the deflation is exact because X^T X 1_m = d1 d2 1_m.
    auto apply = [&](const Eigen::VectorXd& y, Eigen::VectorXd& out) {
        Eigen::VectorXd z = y;
        z.array() -= z.mean();
        Eigen::VectorXd left = Eigen::VectorXd::Zero(n);
        for (int u = 0; u < n; ++u)
            for (int v : g.row_neighbors(u)) left[u] += z[v];
        out.setZero(m);
        for (int v = 0; v < m; ++v)
            for (int u : g.col_neighbors(v)) out[v] += left[u];
        out.array() -= out.mean();
    };
    LanczosResult r = lanczos_extreme(m, tol, apply);
    if (stats) *stats = r.stats;
    return std::sqrt(std::max(0.0, r.theta_max));
}

double lambda_M(const BiregularGraph& g, double tol, IterationStats* stats) {
    if (tol <= 0) throw DomainError("tol must be positive");
    const int n = g.params().n;
    if (stats) *stats = IterationStats{};
    if (n == 1) return 0.0;  // empty mean-zero subspace
    if (n <= kDenseLimit) {
        Eigen::MatrixXd B = gram_matrix(g);
        B.diagonal().array() -= g.params().d1;
        Eigen::MatrixXd P =
            Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P * B * P);
        return std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(n - 1)));
    }
    const double d1 = g.params().d1;
    auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& out) {
        Eigen::VectorXd z = x;
        z.array() -= z.mean();
        Eigen::VectorXd right = Eigen::VectorXd::Zero(g.params().m);
        for (int v = 0; v < g.params().m; ++v)
            for (int u : g.col_neighbors(v)) right[v] += z[u];
        out.setZero(n);
        for (int u = 0; u < n; ++u) {
            for (int v : g.row_neighbors(u)) out[u] += right[v];
            out[u] -= d1 * z[u];
        }
        out.array() -= out.mean();
    };
    LanczosResult r = lanczos_extreme(n, tol, apply);
    if (stats) *stats = r.stats;
    return std::max(std::abs(r.theta_max), std::abs(r.theta_min));
}

DigraphSigma digraph_sigma2(const BiregularGraph& g) {
    const auto& p = g.params();
    if (p.n != p.m || p.d1 != p.d2)
        throw NonSquareParams("digraph view needs n == m and d1 == d2");
    if (p.n > kDenseLimit)
        throw SizeLimitExceeded("digraph eigenvalues are dense-only (n <= 2000)");
    DigraphSigma out;
    out.sigma2 = p.n >= 2 ? singular_values(g)[1] : 0.0;
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(p.n, p.n);
    for (int u = 0; u < p.n; ++u)
        for (int v : g.row_neighbors(u)) X(u, v) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(X);
    std::vector<double> mags(p.n);
    for (int i = 0; i < p.n; ++i) mags[i] = std::abs(es.eigenvalues()(i));
    std::sort(mags.rbegin(), mags.rend());
    out.lambda2_abs = p.n >= 2 ? mags[1] : 0.0;
    return out;
}

SpectralSummary spectral_summary(const BiregularGraph& g, double tol) {
    SpectralSummary s;
    s.sigma = singular_values(g);
    s.lambda_A.reserve(static_cast<std::size_t>(g.params().n) + g.params().m);
    for (double v : s.sigma) s.lambda_A.push_back(v);
    s.lambda_A.insert(s.lambda_A.end(),
                      static_cast<std::size_t>(g.params().m - g.params().n), 0.0);
    for (auto it = s.sigma.rbegin(); it != s.sigma.rend(); ++it) s.lambda_A.push_back(-*it);
    s.lambda_M = lambda_M(g, tol, &s.residuals);
    return s;
}

}  // namespace bbg
