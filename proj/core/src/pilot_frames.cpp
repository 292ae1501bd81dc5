#include "cdce/pilot_frames.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "cdce/grid_transforms.hpp"

namespace cdce {
namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

bool is_power_of_two(int n) { return n > 0 && std::has_single_bit(static_cast<unsigned>(n)); }

}  // namespace

int FrameSpec::pilot_count() const {
    if (lattice.freq_spacing < 1 || lattice.time_spacing < 1) return 0;
    if (lattice.freq_offset < 0 || lattice.time_offset < 0) return 0;
    if (lattice.freq_offset >= dims.M || lattice.time_offset >= dims.N) return 0;
    return ceil_div(dims.M - lattice.freq_offset, lattice.freq_spacing) *
           ceil_div(dims.N - lattice.time_offset, lattice.time_spacing);
}

void FrameSpec::validate() const {
    dims.validate();
    if (lattice.freq_spacing < 1 || lattice.time_spacing < 1) {
        throw ParameterError("FrameSpec: lattice spacings must be >= 1");
    }
    const int np = pilot_count();
    if (np < 1) throw ParameterError("FrameSpec: lattice offsets leave no pilot positions");
    if (np > dims.grid_size()) throw ParameterError("FrameSpec: more pilots than grid cells");
    if (!(pilot_power > 0.0)) throw ParameterError("FrameSpec: pilot power must be positive");
    if (sequence == SequenceKind::walsh && !is_power_of_two(np)) {
        throw ParameterError("FrameSpec: Walsh pilots need a power-of-two pilot count, got " +
                             std::to_string(np));
    }
}

std::vector<Complex> make_pilot_sequence(SequenceKind kind, int length, int param) {
    if (length < 1) throw ParameterError("make_pilot_sequence: length must be positive");
    std::vector<Complex> seq(static_cast<std::size_t>(length));
    switch (kind) {
        case SequenceKind::all_ones:
            std::fill(seq.begin(), seq.end(), Complex(1.0, 0.0));
            break;
        case SequenceKind::walsh: {
            if (!is_power_of_two(length)) {
                throw ParameterError("make_pilot_sequence: Walsh length must be a power of two");
            }
            if (param < 0 || param >= length) {
                throw ParameterError("make_pilot_sequence: Walsh row out of range");
            }
            // Sylvester-Hadamard: H[r][n] = (-1)^popcount(r & n)
            for (int n = 0; n < length; ++n) {
                const int parity = std::popcount(static_cast<unsigned>(param & n)) & 1;
                seq[static_cast<std::size_t>(n)] = parity ? -1.0 : 1.0;
            }
            break;
        }
        case SequenceKind::zadoff_chu: {
            if (param < 1 || std::gcd(param, length) != 1) {
                throw ParameterError("make_pilot_sequence: ZC root must be coprime with length");
            }
            for (int n = 0; n < length; ++n) {
                // u n (n + c) reduced mod 2L keeps the phase exact for long sequences
                const long long c = length % 2;
                const long long q = (static_cast<long long>(param) * n % (2LL * length)) *
                                    ((n + c) % (2LL * length)) % (2LL * length);
                seq[static_cast<std::size_t>(n)] =
                    std::polar(1.0, -kPi * static_cast<double>(q) / length);
            }
            break;
        }
    }
    return seq;
}

std::vector<std::pair<int, int>> lattice_positions(const FrameSpec& spec) {
    std::vector<std::pair<int, int>> pos;
    const auto& lat = spec.lattice;
    for (int t = lat.time_offset; t < spec.dims.N; t += lat.time_spacing) {
        for (int f = lat.freq_offset; f < spec.dims.M; f += lat.freq_spacing) {
            pos.emplace_back(f, t);
        }
    }
    return pos;
}

Frame assemble_frame(const FrameSpec& spec, Rng& rng) {
    spec.validate();
    const Dims& d = spec.dims;
    const int np = spec.pilot_count();

    std::vector<std::pair<int, int>> positions;
    if (spec.placement == Placement::lattice) {
        positions = lattice_positions(spec);
    } else {
        std::vector<int> cells(static_cast<std::size_t>(d.grid_size()));
        std::iota(cells.begin(), cells.end(), 0);
        // partial Fisher-Yates; the drawn cells are then sorted into scan order
        for (int i = 0; i < np; ++i) {
            std::uniform_int_distribution<int> pick(i, d.grid_size() - 1);
            std::swap(cells[static_cast<std::size_t>(i)], cells[static_cast<std::size_t>(pick(rng))]);
        }
        std::sort(cells.begin(), cells.begin() + np);
        for (int i = 0; i < np; ++i) {
            const int c = cells[static_cast<std::size_t>(i)];
            positions.emplace_back(c % d.M, c / d.M);
        }
    }

    int param = spec.sequence_param;
    if (param < 0) param = spec.sequence == SequenceKind::walsh ? np / 2 : 1;
    if (spec.sequence == SequenceKind::all_ones) param = 0;
    const auto seq = make_pilot_sequence(spec.sequence, np, param);

    Frame frame{TFGrid::zeros(d), BoolMatrix::Constant(d.M, d.N, false), TFGrid::zeros(d)};
    const double amp = std::sqrt(spec.pilot_power);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const auto [f, t] = positions[i];
        frame.pilot_mask(f, t) = true;
        frame.pilot_only_tf.values(f, t) = amp * seq[i];
    }
    frame.tf = frame.pilot_only_tf;
    if (spec.data == DataMode::qpsk) {
        std::bernoulli_distribution bit(0.5);
        const double a = 1.0 / std::sqrt(2.0);
        for (int t = 0; t < d.N; ++t) {
            for (int f = 0; f < d.M; ++f) {
                if (frame.pilot_mask(f, t)) continue;
                const double re = bit(rng) ? a : -a;
                const double im = bit(rng) ? a : -a;
                frame.tf.values(f, t) = Complex(re, im);
            }
        }
    }
    return frame;
}

DDGrid pilot_dd_image(const Frame& f) {
    const Dims d{static_cast<int>(f.pilot_only_tf.values.rows()),
                 static_cast<int>(f.pilot_only_tf.values.cols()), 0};
    return tf_to_dd(f.pilot_only_tf, d);
}

CMatrix discrete_af(const DDGrid& x) {
    const auto& X = x.values;
    const int M = static_cast<int>(X.rows());
    const int N = static_cast<int>(X.cols());
    const double mn = static_cast<double>(M) * N;
    CMatrix A = CMatrix::Zero(M, N);
    for (int l = 0; l < M; ++l) {
        for (int k = 0; k < N; ++k) {
            const double ks = signed_doppler(k, N);
            Complex acc{0.0, 0.0};
            for (int lp = 0; lp < M; ++lp) {
                for (int kp = 0; kp < N; ++kp) {
                    const Complex src = X(wrap_index(lp - l, M), wrap_index(kp - k, N));
                    if (src == Complex(0.0, 0.0)) continue;
                    Complex phase = std::polar(1.0, 2.0 * kPi * ks * (lp - l) / mn);
                    if (lp - l < 0) phase *= std::polar(1.0, -2.0 * kPi * (kp - k) / N);
                    acc += std::conj(X(lp, kp)) * src * phase;
                }
            }
            A(l, k) = acc;
        }
    }
    return A;
}

double af_peak_to_sidelobe(const CMatrix& af, const Lattice& lattice) {
    const int M = static_cast<int>(af.rows());
    const int N = static_cast<int>(af.cols());
    const int delay_period = std::max(1, M / std::max(1, lattice.freq_spacing));
    const int doppler_period = std::max(1, N / std::max(1, lattice.time_spacing));
    const double peak = std::abs(af(0, 0));
    double side = 0.0;
    for (int l = 0; l < M; ++l) {
        for (int k = 0; k < N; ++k) {
            if (l % delay_period == 0 && k % doppler_period == 0) continue;
            side = std::max(side, std::abs(af(l, k)));
        }
    }
    if (side <= 1e-12 * peak) return std::numeric_limits<double>::infinity();
    return peak / side;
}

double energy_concentration(const DDGrid& x, int bins) {
    std::vector<double> e(static_cast<std::size_t>(x.values.size()));
    for (Eigen::Index i = 0; i < x.values.size(); ++i) {
        e[static_cast<std::size_t>(i)] = std::norm(x.values.data()[i]);
    }
    const double total = std::accumulate(e.begin(), e.end(), 0.0);
    if (total <= 0.0) return 0.0;
    const auto n = static_cast<std::size_t>(std::clamp<int>(bins, 0, static_cast<int>(e.size())));
    std::partial_sort(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n), e.end(),
                      std::greater<>());
    return std::accumulate(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n), 0.0) / total;
}

}  // namespace cdce
