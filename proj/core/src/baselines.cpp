#include "cdce/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cdce/seeding.hpp"
#include "parallel.hpp"

namespace cdce {
namespace {

// Piecewise-linear interpolation of the known entries of `line` at `pos`,
// holding the end values constant outside [pos.front(), pos.back()].
void fill_line(std::vector<Complex>& line, const std::vector<int>& pos) {
    const int n = static_cast<int>(line.size());
    for (int i = 0; i < pos.front(); ++i) line[static_cast<std::size_t>(i)] = line[static_cast<std::size_t>(pos.front())];
    for (int i = pos.back() + 1; i < n; ++i) line[static_cast<std::size_t>(i)] = line[static_cast<std::size_t>(pos.back())];
    for (std::size_t s = 0; s + 1 < pos.size(); ++s) {
        const int a = pos[s];
        const int b = pos[s + 1];
        const Complex va = line[static_cast<std::size_t>(a)];
        const Complex vb = line[static_cast<std::size_t>(b)];
        for (int i = a + 1; i < b; ++i) {
            const double t = static_cast<double>(i - a) / (b - a);
            line[static_cast<std::size_t>(i)] = (1.0 - t) * va + t * vb;
        }
    }
}

}  // namespace

CMatrix interpolate_grid(const CMatrix& known, const BoolMatrix& mask) {
    if (known.rows() != mask.rows() || known.cols() != mask.cols()) {
        throw DimensionError("interpolate_grid: mask shape differs from the grid");
    }
    const int M = static_cast<int>(known.rows());
    const int N = static_cast<int>(known.cols());
    CMatrix out = CMatrix::Zero(M, N);
    std::vector<int> filled_cols;

    std::vector<Complex> line;
    for (int n = 0; n < N; ++n) {
        std::vector<int> rows;
        for (int m = 0; m < M; ++m) {
            if (mask(m, n)) rows.push_back(m);
        }
        if (rows.empty()) continue;
        line.assign(static_cast<std::size_t>(M), Complex{});
        for (int m : rows) line[static_cast<std::size_t>(m)] = known(m, n);
        fill_line(line, rows);
        for (int m = 0; m < M; ++m) out(m, n) = line[static_cast<std::size_t>(m)];
        filled_cols.push_back(n);
    }
    if (filled_cols.empty()) throw ContractError("interpolate_grid: no known entries");

    for (int m = 0; m < M; ++m) {
        line.assign(static_cast<std::size_t>(N), Complex{});
        for (int n : filled_cols) line[static_cast<std::size_t>(n)] = out(m, n);
        fill_line(line, filled_cols);
        for (int n = 0; n < N; ++n) out(m, n) = line[static_cast<std::size_t>(n)];
    }
    return out;
}

CMatrix st_ls(const TFGrid& y_tf, const Frame& frame) {
    const auto& mask = frame.pilot_mask;
    const auto& x = frame.tf.values;
    if (y_tf.values.rows() != x.rows() || y_tf.values.cols() != x.cols()) {
        throw DimensionError("st_ls: received grid does not match the frame");
    }
    CMatrix h = CMatrix::Zero(x.rows(), x.cols());
    for (Eigen::Index n = 0; n < x.cols(); ++n) {
        for (Eigen::Index m = 0; m < x.rows(); ++m) {
            if (!mask(m, n)) continue;
            if (x(m, n) == Complex(0.0, 0.0)) throw NumericalError("st_ls: zero pilot symbol");
            h(m, n) = y_tf.values(m, n) / x(m, n);
        }
    }
    return vec(interpolate_grid(h, mask)).asDiagonal();
}

CMatrix st_lmmse(const TFGrid& y_tf, const Frame& frame, double snr) {
    if (!(snr > 0.0)) throw ParameterError("st_lmmse: SNR must be positive");
    return st_ls(y_tf, frame) * (1.0 / (1.0 + 1.0 / snr));
}

CovarianceModel fit_covariance(const std::function<CVector(int)>& sampler, int samples,
                               const Dims& d, unsigned threads) {
    if (samples < 2) throw ParameterError("fit_covariance: need at least two samples");
    threads = detail::resolve_threads(threads);
    const Eigen::Index dim = static_cast<Eigen::Index>(d.grid_size()) * d.grid_size();

    CMatrix basis(dim, 0);
    std::vector<CVector> coeffs;
    coeffs.reserve(static_cast<std::size_t>(samples));

    const int chunk = static_cast<int>(threads) * 8;
    std::vector<CVector> batch;
    for (int start = 0; start < samples; start += chunk) {
        const int count = std::min(chunk, samples - start);
        batch.assign(static_cast<std::size_t>(count), CVector());
        detail::parallel_for(count, threads, [&](int i) {
            batch[static_cast<std::size_t>(i)] = sampler(start + i);
        });

        // Gram-Schmidt with one re-orthogonalization pass, in sample order
        for (const auto& s : batch) {
            if (s.size() != dim) throw DimensionError("fit_covariance: sample has the wrong length");
            CVector c = basis.adjoint() * s;
            CVector r = s - basis * c;
            const CVector c2 = basis.adjoint() * r;
            r -= basis * c2;
            c += c2;
            const double rn = r.norm();
            if (rn > 1e-10 * std::max(1.0, s.norm())) {
                basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
                basis.col(basis.cols() - 1) = r / rn;
                c.conservativeResize(c.size() + 1);
                c[c.size() - 1] = rn;
            }
            coeffs.push_back(std::move(c));
        }
    }

    const Eigen::Index r = basis.cols();
    CMatrix C = CMatrix::Zero(r, samples);
    for (int i = 0; i < samples; ++i) {
        const auto& c = coeffs[static_cast<std::size_t>(i)];
        C.col(i).head(c.size()) = c;
    }
    const CVector mean_c = C.rowwise().mean();
    C.colwise() -= mean_c;
    C /= std::sqrt(static_cast<double>(samples));

    CovarianceModel cov;
    cov.dims = d;
    cov.samples = samples;
    cov.mean = basis * mean_c;
    if (r == 0) {
        cov.factor = CMatrix::Zero(dim, 0);
        return cov;
    }
    Eigen::JacobiSVD<CMatrix> svd(C, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    Eigen::Index keep = 0;
    while (keep < sv.size() && sv[keep] > 1e-12 * std::max(sv[0], 1e-300)) ++keep;
    if (sv.size() == 0 || sv[0] == 0.0) keep = 0;
    cov.factor = basis * (svd.matrixU().leftCols(keep) * sv.head(keep).asDiagonal());
    return cov;
}

CovarianceModel fit_covariance(const ChannelStats& stats, const Dims& d, const Pulse& pulse,
                               bool fractional, int samples, std::uint64_t seed,
                               unsigned threads) {
    stats.validate(d);
    auto sampler = [&](int i) {
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(i)}));
        const ChannelRealization ch = sample_channel(stats, d, fractional, rng);
        return CVector(vec(effective_tf_channel(ch, pulse)));
    };
    return fit_covariance(sampler, samples, d, threads);
}

CMatrix fs_lmmse(const TFGrid& y_tf, const TFGrid& x_tf, const CovarianceModel& cov,
                 double noise_psd) {
    if (noise_psd < 0.0) throw ParameterError("fs_lmmse: N0 must be non-negative");
    const Eigen::Index mn = cov.dims.grid_size();
    if (y_tf.values.size() != mn || x_tf.values.size() != mn) {
        throw DimensionError("fs_lmmse: grids do not match the covariance model");
    }
    const CVector y = vec(y_tf.values);
    const CVector x = vec(x_tf.values);
    // X v = unvec(v) x for v of length (MN)^2
    auto apply_x = [&](const auto& v) -> CVector {
        return Eigen::Map<const CMatrix>(v.data(), mn, mn) * x;
    };

    const Eigen::Index k = cov.rank();
    CMatrix Z(mn, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const CVector col = cov.factor.col(i);
        Z.col(i) = apply_x(col);
    }
    const CVector resid = y - apply_x(cov.mean);

    CVector h = cov.mean;
    if (k > 0) {
        CMatrix S = Z * Z.adjoint();
        S.diagonal().array() += noise_psd;
        CVector s;
        if (noise_psd > 0.0) {
            s = S.llt().solve(resid);
        } else {
            s = S.completeOrthogonalDecomposition().pseudoInverse() * resid;
        }
        h += cov.factor * (Z.adjoint() * s);
    }
    return Eigen::Map<const CMatrix>(h.data(), mn, mn);
}

Dictionary full_grid_dictionary(const TFGrid& pilot_only_tf, const Pulse& pulse, const Dims& d) {
    std::vector<DelayDoppler> pairs;
    pairs.reserve(static_cast<std::size_t>(d.grid_size()));
    for (int k = 0; k < d.N; ++k) {
        for (int l = 0; l < d.M; ++l) pairs.push_back({l, signed_doppler(k, d.N)});
    }
    return build_dictionary(pilot_only_tf, pairs, pulse, d);
}

CMatrix tf_lasso(const TFGrid& y_tf, const Dictionary& full_dict, const LassoConfig& cfg,
                 const Pulse& pulse, const Dims& d) {
    require_shape(y_tf.values, d, "tf_lasso");
    const LassoResult res = solve_lasso(vec(y_tf.values), full_dict.D, cfg);
    return reconstruct_tf_channel(full_dict.pairs, res.h, pulse, d);
}

}  // namespace cdce
