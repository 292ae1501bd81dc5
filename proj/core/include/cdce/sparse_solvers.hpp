#pragma once

#include "cdce/types.hpp"

namespace cdce {

struct LassoConfig {
    double lambda = 0.01;
    double tol = 1e-6;
    int max_iter = 1000;

    void validate() const;
};

struct LassoResult {
    CVector h;
    int iterations = 0;
    bool converged = false;
    double step = 0.0;  ///< 1 / ||D||_2^2
};

/// Squared spectral norm by power iteration on D^H D.
double spectral_norm_squared(const CMatrix& D, int iterations = 50, double tol = 1e-10);

/// Elementwise complex soft threshold max(0, 1 - gamma/|x_i|) x_i.
CVector soft_threshold(const CVector& x, double gamma);

/// Momentum recursion beta' = (1 + sqrt(1 + 4 beta^2)) / 2.
double next_momentum(double beta);

/// FISTA for 1/2 ||y - D h||^2 + lambda ||h||_1, started from h = 0.
///
/// Step size is 1/||D||_2^2 and the prox threshold lambda times the step. The
/// loop stops once ||h_i - h_{i-1}|| / ||h_i|| drops below `tol` or after
/// `max_iter` iterations.
LassoResult solve_lasso(const CVector& y, const CMatrix& D, const LassoConfig& cfg);

/// Condition number below which solve_ls is used.
inline constexpr double kMaxLsCondition = 1e6;

/// True when D is tall (or square) with condition number below kMaxLsCondition.
bool ls_applicable(const CMatrix& D);

/// h = (D^H D)^{-1} D^H y. Throws ContractError if !ls_applicable(D).
CVector solve_ls(const CVector& y, const CMatrix& D);

}  // namespace cdce
