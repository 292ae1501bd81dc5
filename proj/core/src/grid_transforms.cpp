#include "cdce/grid_transforms.hpp"

#include <cmath>

namespace cdce {

CMatrix dft_matrix(int n) {
    if (n < 1) throw ParameterError("dft_matrix: size must be positive");
    CMatrix f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            // Reduce the product modulo n first so large grids keep full phase precision.
            const auto idx = static_cast<double>((static_cast<long long>(a) * b) % n);
            f(a, b) = std::polar(scale, -2.0 * kPi * idx / n);
        }
    }
    return f;
}

TimeSignal tf_to_time(const TFGrid& x, const Dims& d, bool with_cp) {
    d.validate();
    require_shape(x.values, d, "tf_to_time");
    const CMatrix symbols = dft_matrix(d.M).adjoint() * x.values;
    TimeSignal s{vec(symbols), false};
    return with_cp ? add_cp(s, d) : s;
}

TFGrid time_to_tf(const TimeSignal& r, const Dims& d) {
    d.validate();
    if (r.has_cp) throw ContractError("time_to_tf: cyclic prefix must be removed first");
    if (r.values.size() != d.frame_len(false)) throw DimensionError("time_to_tf: length mismatch");
    const CMatrix blocks = unvec(r.values, d.M, d.N);
    return TFGrid(dft_matrix(d.M) * blocks);
}

TimeSignal add_cp(const TimeSignal& s, const Dims& d) {
    d.validate();
    if (s.has_cp) throw ContractError("add_cp: signal already carries a cyclic prefix");
    if (s.values.size() != d.frame_len(false)) throw DimensionError("add_cp: length mismatch");
    TimeSignal out{CVector(d.frame_len(true)), true};
    for (int sym = 0; sym < d.N; ++sym) {
        const auto block = s.values.segment(static_cast<Eigen::Index>(sym) * d.M, d.M);
        auto dst = out.values.segment(static_cast<Eigen::Index>(sym) * d.block_len(), d.block_len());
        dst.head(d.cp) = block.tail(d.cp);
        dst.tail(d.M) = block;
    }
    return out;
}

TimeSignal remove_cp(const TimeSignal& r, const Dims& d) {
    d.validate();
    if (!r.has_cp) throw ContractError("remove_cp: signal has no cyclic prefix");
    if (r.values.size() != d.frame_len(true)) throw DimensionError("remove_cp: length mismatch");
    TimeSignal out{CVector(d.frame_len(false)), false};
    for (int sym = 0; sym < d.N; ++sym) {
        out.values.segment(static_cast<Eigen::Index>(sym) * d.M, d.M) =
            r.values.segment(static_cast<Eigen::Index>(sym) * d.block_len() + d.cp, d.M);
    }
    return out;
}

// (F_N kron F_M^H) vec(X) = vec(F_M^H X F_N^T), and F_N is symmetric.
DDGrid tf_to_dd(const TFGrid& x, const Dims& d) {
    d.validate();
    require_shape(x.values, d, "tf_to_dd");
    return DDGrid(dft_matrix(d.M).adjoint() * x.values * dft_matrix(d.N));
}

TFGrid dd_to_tf(const DDGrid& x, const Dims& d) {
    d.validate();
    require_shape(x.values, d, "dd_to_tf");
    return TFGrid(dft_matrix(d.M) * x.values * dft_matrix(d.N).adjoint());
}

}  // namespace cdce
