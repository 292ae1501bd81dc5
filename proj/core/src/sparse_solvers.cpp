#include "cdce/sparse_solvers.hpp"

#include <cmath>
#include <limits>

namespace cdce {
namespace {

double condition_number(const CMatrix& D) {
    Eigen::JacobiSVD<CMatrix> svd(D);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(s.size() - 1) <= 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / s(s.size() - 1);
}

}  // namespace

void LassoConfig::validate() const {
    if (!(lambda >= 0.0)) throw ParameterError("LassoConfig: lambda must be >= 0");
    if (!(tol >= 0.0)) throw ParameterError("LassoConfig: tol must be >= 0");
    if (max_iter < 1) throw ParameterError("LassoConfig: max_iter must be positive");
}

double spectral_norm_squared(const CMatrix& D, int iterations, double tol) {
    if (D.size() == 0) return 0.0;
    CVector v = CVector::Ones(D.cols()).normalized();
    double estimate = 0.0;
    for (int i = 0; i < iterations; ++i) {
        CVector w = D.adjoint() * (D * v);
        const double next = w.norm();
        if (next == 0.0) {
            // start vector in the null space; fall back to an exact answer
            const double s = Eigen::JacobiSVD<CMatrix>(D).singularValues()(0);
            return s * s;
        }
        v = w / next;
        const bool done = std::abs(next - estimate) <= tol * next;
        estimate = next;
        if (done) break;
    }
    return estimate;
}

CVector soft_threshold(const CVector& x, double gamma) {
    CVector out(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double mag = std::abs(x[i]);
        out[i] = mag > gamma ? (1.0 - gamma / mag) * x[i] : Complex(0.0, 0.0);
    }
    return out;
}

double next_momentum(double beta) { return (1.0 + std::sqrt(1.0 + 4.0 * beta * beta)) / 2.0; }

LassoResult solve_lasso(const CVector& y, const CMatrix& D, const LassoConfig& cfg) {
    cfg.validate();
    if (D.cols() == 0) throw ContractError("solve_lasso: empty dictionary");
    if (D.rows() != y.size()) throw DimensionError("solve_lasso: y and D disagree in length");
    const double norm_sq = spectral_norm_squared(D);
    if (!(norm_sq > 0.0)) throw NumericalError("solve_lasso: degenerate (all-zero) dictionary");

    LassoResult res;
    res.step = 1.0 / norm_sq;
    const double threshold = cfg.lambda * res.step;

    CVector h = CVector::Zero(D.cols());
    CVector z = h;
    double beta = 1.0;
    const CMatrix Dh = D.adjoint();
    for (int i = 1; i <= cfg.max_iter; ++i) {
        const CVector g = Dh * (y - D * z);
        CVector next = soft_threshold(z + res.step * g, threshold);
        const double beta_next = next_momentum(beta);
        z = next + ((beta - 1.0) / beta_next) * (next - h);
        beta = beta_next;

        const double change = (next - h).norm();
        const double scale = next.norm();
        h = std::move(next);
        res.iterations = i;
        if (change == 0.0 || (scale > 0.0 && change / scale < cfg.tol)) {
            res.converged = true;
            break;
        }
    }
    res.h = std::move(h);
    return res;
}

bool ls_applicable(const CMatrix& D) {
    if (D.cols() == 0 || D.rows() < D.cols()) return false;
    return condition_number(D) < kMaxLsCondition;
}

CVector solve_ls(const CVector& y, const CMatrix& D) {
    if (D.rows() != y.size()) throw DimensionError("solve_ls: y and D disagree in length");
    if (D.cols() == 0 || D.rows() < D.cols()) {
        throw ContractError("solve_ls: dictionary is not tall; use solve_lasso");
    }
    Eigen::JacobiSVD<CMatrix> svd(D, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (s(s.size() - 1) <= 0.0 || s(0) / s(s.size() - 1) >= kMaxLsCondition) {
        throw ContractError("solve_ls: dictionary is ill-conditioned; use solve_lasso");
    }
    return svd.solve(y);
}

}  // namespace cdce
