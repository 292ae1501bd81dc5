#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cdce {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using BoolMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kPi = 3.14159265358979323846;

// Error taxonomy. Everything derives from Error so callers can catch broadly.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
    using Error::Error;
};
struct ContractError : Error {
    using Error::Error;
};
struct ConfigurationError : Error {
    using Error::Error;
};
struct ParameterError : Error {
    using Error::Error;
};
struct NumericalError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};

/// Frame geometry in normalized sample units (T_s = 1, critical sampling).
struct Dims {
    int M = 8;   ///< subcarriers / delay bins
    int N = 14;  ///< OFDM symbols / Doppler bins
    int cp = 2;  ///< cyclic-prefix length in samples

    void validate() const {
        if (M < 1 || N < 1) throw ParameterError("Dims: M and N must be >= 1");
        if (cp < 0 || cp >= M) throw ParameterError("Dims: require 0 <= L_cp < M");
    }
    [[nodiscard]] int grid_size() const { return M * N; }
    [[nodiscard]] int block_len() const { return M + cp; }
    [[nodiscard]] int frame_len(bool with_cp) const { return (with_cp ? M + cp : M) * N; }

    friend bool operator==(const Dims&, const Dims&) = default;
};

/// M x N time-frequency grid. Rows are subcarriers, columns OFDM symbols.
struct TFGrid {
    CMatrix values;

    TFGrid() = default;
    explicit TFGrid(CMatrix v) : values(std::move(v)) {}
    static TFGrid zeros(const Dims& d) { return TFGrid(CMatrix::Zero(d.M, d.N)); }
};

/// M x N delay-Doppler grid. Rows are delay bins, columns Doppler bins.
struct DDGrid {
    CMatrix values;

    DDGrid() = default;
    explicit DDGrid(CMatrix v) : values(std::move(v)) {}
    static DDGrid zeros(const Dims& d) { return DDGrid(CMatrix::Zero(d.M, d.N)); }
};

struct TimeSignal {
    CVector values;
    bool has_cp = false;
};

/// Column-major vectorization (row index fastest). Eigen's default storage
/// order already is column-major, so this is a plain copy.
inline CVector vec(const CMatrix& m) {
    return Eigen::Map<const CVector>(m.data(), m.size());
}

inline CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols) throw DimensionError("unvec: size mismatch");
    return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

inline void require_shape(const CMatrix& m, const Dims& d, const char* what) {
    if (m.rows() != d.M || m.cols() != d.N) {
        throw DimensionError(std::string(what) + ": expected " + std::to_string(d.M) + "x" +
                             std::to_string(d.N) + " grid, got " + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()));
    }
}

/// Signed Doppler of a wrapped bin index k in [0, N-1].
inline int signed_doppler(int k, int N) { return k <= N / 2 ? k : k - N; }

/// Wrapped bin index of a signed Doppler value.
inline int wrap_index(int k, int n) { return ((k % n) + n) % n; }

}  // namespace cdce
