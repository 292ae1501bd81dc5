#pragma once

#include "cdce/types.hpp"

namespace cdce {

/// Unitary DFT matrix F_n with entries exp(-j2*pi*a*b/n)/sqrt(n).
CMatrix dft_matrix(int n);

/// Per-symbol inverse DFT, optionally prefixing each M-sample block with its
/// last L_cp samples.
TimeSignal tf_to_time(const TFGrid& x, const Dims& d, bool with_cp);

/// Per-symbol DFT of a CP-free signal; exact inverse of tf_to_time(x, d, false).
TFGrid time_to_tf(const TimeSignal& r, const Dims& d);

/// Prepends the cyclic prefix to every block of a CP-free signal.
TimeSignal add_cp(const TimeSignal& s, const Dims& d);

/// Drops the first L_cp samples of every (M + L_cp)-sample block.
TimeSignal remove_cp(const TimeSignal& r, const Dims& d);

/// SFFT: vec(X_DD) = (F_N kron F_M^H) vec(X_TF).
DDGrid tf_to_dd(const TFGrid& x, const Dims& d);

/// Inverse SFFT: vec(X_TF) = (F_N^H kron F_M) vec(X_DD).
TFGrid dd_to_tf(const DDGrid& x, const Dims& d);

}  // namespace cdce
