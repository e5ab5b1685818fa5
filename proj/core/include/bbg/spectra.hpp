#pragma once

#include <vector>

#include "bbg/graph.hpp"

namespace bbg {

struct IterationStats {
    int iterations = 0;
    double residual = 0;
    bool converged = true;  // trivially true on the dense path
};

struct SpectralSummary {
    std::vector<double> sigma;     // singular values of X, descending, length n
    std::vector<double> lambda_A;  // eigenvalues of [[0,X],[X^T,0]], descending
    double lambda_M = 0;           // sup |<x, Mx>| over unit mean-zero x
    IterationStats residuals;
};

/// All singular values of the biadjacency matrix, descending (dense
/// eigensolve of X X^T; limited to n <= 2000).
std::vector<double> singular_values(const BiregularGraph& g);

/// Second-largest singular value via Lanczos on X^T X with the known top
/// pair (1_m, d1 d2) deflated exactly; usable at any scale.
double sigma2_deflated(const BiregularGraph& g, double tol, IterationStats* stats = nullptr);

/// Spectral radius of M = X X^T - d1 I compressed to the mean-zero
/// subspace; dense for n <= 2000, Lanczos beyond.
double lambda_M(const BiregularGraph& g, double tol, IterationStats* stats = nullptr);

struct DigraphSigma {
    double sigma2 = 0;
    double lambda2_abs = 0;  // second-largest |eigenvalue| of X itself
};

/// For square d-regular biadjacency matrices viewed as digraph adjacency:
/// sigma2 plus |lambda_2| so the Weyl relation |lambda_2| <= sigma_2 can be
/// checked. Throws NonSquareParams unless n == m and d1 == d2.
DigraphSigma digraph_sigma2(const BiregularGraph& g);

SpectralSummary spectral_summary(const BiregularGraph& g, double tol = 1e-10);

}  // namespace bbg
