#include <doctest.h>

#include <set>

#include "cdce/channel_model.hpp"
#include "cdce/grid_transforms.hpp"
#include "test_support.hpp"

using namespace cdce;
using cdce::testing::dense_tf_channel;
using cdce::testing::random_matrix;
using cdce::testing::rel_err;

namespace {

const Dims kDims{8, 14, 2};

ChannelRealization single_path(const Dims& d, Complex h, int l, int k, double iota = 0.0,
                               double kappa = 0.0) {
    PathParams p;
    p.gain = h;
    p.delay_int = l;
    p.doppler_int = k;
    p.delay_frac = iota;
    p.doppler_frac = kappa;
    return {{p}, d};
}

// Composite Simpson rule for the AF integral of the unit-energy rectangle on [0, 1).
Complex rect_af_quadrature(double tau, double nu) {
    const double a = std::max(0.0, tau);
    const double b = std::min(1.0, 1.0 + tau);
    if (b <= a) return {0.0, 0.0};
    const int n = 4000;
    const double h = (b - a) / n;
    Complex acc{0.0, 0.0};
    for (int i = 0; i <= n; ++i) {
        const double t = a + i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * std::polar(1.0, -2.0 * kPi * nu * (t - tau));
    }
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("sampled channels respect the index ranges and are distinct") {
    const ChannelStats stats;
    Rng rng(11);
    for (int rep = 0; rep < 500; ++rep) {
        const auto ch = sample_channel(stats, kDims, false, rng);
        REQUIRE(ch.paths.size() == 3);
        std::set<std::pair<int, int>> seen;
        for (const auto& p : ch.paths) {
            CHECK(p.delay_int >= 0);
            CHECK(p.delay_int <= 2);
            CHECK(p.doppler_int >= -3);
            CHECK(p.doppler_int <= 3);
            CHECK(p.delay_frac == 0.0);
            CHECK(p.doppler_frac == 0.0);
            seen.emplace(p.delay_int, p.doppler_int);
        }
        CHECK(seen.size() == 3);
    }
}

TEST_CASE("total path power averages to one") {
    const ChannelStats stats;
    Rng rng(12);
    double acc = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        for (const auto& p : sample_channel(stats, kDims, false, rng).paths) acc += std::norm(p.gain);
    }
    CHECK(std::abs(acc / draws - 1.0) < 0.05);
}

TEST_CASE("sampling is deterministic per seed and fractions stay in range") {
    const ChannelStats stats;
    Rng a(99);
    Rng b(99);
    const auto ca = sample_channel(stats, kDims, true, a);
    const auto cb = sample_channel(stats, kDims, true, b);
    for (std::size_t i = 0; i < ca.paths.size(); ++i) {
        CHECK(ca.paths[i].gain == cb.paths[i].gain);
        CHECK(ca.paths[i].delay_frac == cb.paths[i].delay_frac);
        CHECK(ca.paths[i].doppler_frac == cb.paths[i].doppler_frac);
        CHECK(std::abs(ca.paths[i].delay_frac) <= 0.5);
        CHECK(ca.paths[i].delay() >= 0.0);
        CHECK(std::abs(ca.paths[i].doppler()) <= kDims.N / 2.0);
    }
}

TEST_CASE("impossible distinctness and bad stats are configuration errors") {
    Rng rng(1);
    ChannelStats too_many;
    too_many.paths = 22;
    CHECK_THROWS_AS(sample_channel(too_many, kDims, false, rng), ConfigurationError);
    ChannelStats wide;
    wide.l_max = 3;
    CHECK_THROWS_AS(wide.validate(kDims), ConfigurationError);
    ChannelStats fast;
    fast.k_max = 7;
    CHECK_THROWS_AS(fast.validate(kDims), ConfigurationError);
}

TEST_CASE("pulse ambiguity function") {
    const Pulse ideal{PulseKind::ideal};
    const Pulse rect{PulseKind::rectangular};
    CHECK(pulse_af(0.0, 0.0, ideal, 1.0) == Complex(1.0, 0.0));
    CHECK(std::abs(pulse_af(0.0, 0.0, rect, 1.0) - 1.0) < 1e-15);
    CHECK(pulse_af(0.0, 0.37, ideal, 1.0) == Complex(1.0, 0.0));
    CHECK(pulse_af(1.0, 0.2, ideal, 1.0) == Complex(0.0, 0.0));
    for (double nu : {-0.3, 0.0, 0.01, 0.25}) {
        CHECK(pulse_af(1.0, nu, rect, 1.0) == Complex(0.0, 0.0));
        CHECK(pulse_af(-1.5, nu, rect, 1.0) == Complex(0.0, 0.0));
    }
    for (double tau : {-0.9, -0.4, 0.0, 0.3, 0.75}) {
        const Complex a = pulse_af(tau, 0.0, rect, 1.0);
        CHECK(std::abs(a.imag()) < 1e-15);
        CHECK(std::abs(a.real() - (1.0 - std::abs(tau))) < 1e-12);
    }
}

TEST_CASE("rectangular AF closed form agrees with quadrature of the definition") {
    const Pulse rect{PulseKind::rectangular};
    for (double tau : {-0.8, -0.35, -0.05, 0.0, 0.2, 0.6, 0.95}) {
        for (double nu : {-0.4, -0.02, 0.0, 1.0 / 112.0, 0.13, 0.5}) {
            const Complex closed = pulse_af(tau, nu, rect, 1.0);
            const Complex quad = rect_af_quadrature(tau, nu);
            CHECK(std::abs(closed - quad) < 1e-10);
        }
    }
}

TEST_CASE("time channel matrix examples") {
    const Pulse ideal;
    const int len = kDims.frame_len(true);

    const CMatrix g0 = time_channel_matrix(single_path(kDims, 1.0, 0, 0), ideal);
    CHECK((g0 - CMatrix::Identity(len, len)).norm() == 0.0);

    const CMatrix g1 = time_channel_matrix(single_path(kDims, 1.0, 1, 0), ideal);
    CMatrix shift = CMatrix::Zero(len, len);
    for (int n = 0; n + 1 < len; ++n) shift(n + 1, n) = 1.0;
    CHECK((g1 - shift).norm() == 0.0);

    // Doppler phase follows the CP-aware sample clock
    const CMatrix gk = time_channel_matrix(single_path(kDims, 1.0, 0, 1), ideal);
    CHECK((gk - CMatrix(gk.diagonal().asDiagonal())).norm() == 0.0);
    std::mt19937_64 rng(5);
    const CVector s = cdce::testing::random_vector(len, rng);
    CVector direct(len);
    for (int n = 0; n < len; ++n) {
        const int sym = n / 10;
        const int j = n % 10;
        const double t = sym * 8 + j - 2;
        direct[n] = s[n] * std::polar(1.0, 2.0 * kPi * t / 112.0);
        CHECK(std::abs(gk(n, n) - std::polar(1.0, 2.0 * kPi * t / 112.0)) < 1e-14);
    }
    CHECK((gk * s - direct).norm() < 1e-12);
}

TEST_CASE("CP coverage is enforced") {
    const Pulse ideal;
    CHECK_THROWS_AS(time_channel_matrix(single_path(kDims, 1.0, 3, 0), ideal), ConfigurationError);
    CHECK_NOTHROW(time_channel_matrix(single_path(kDims, 1.0, 3, 0), ideal, false));
    CHECK_THROWS_AS(time_channel_matrix(single_path(kDims, 1.0, 1, 0, 0.3), ideal), ConfigurationError);
    const Pulse rect{PulseKind::rectangular};
    CHECK_NOTHROW(time_channel_matrix(single_path(kDims, 1.0, 1, 0, 0.3), rect));
    CHECK_THROWS_AS(time_channel_matrix(single_path(kDims, 1.0, 2, 0, 0.3), rect), ConfigurationError);
}

TEST_CASE("apply_channel") {
    const Pulse ideal;
    std::mt19937_64 g(6);
    Rng rng(6);
    const TimeSignal s{cdce::testing::random_vector(140, g), true};
    const CMatrix eye = CMatrix::Identity(140, 140);
    CHECK(apply_channel(s, eye, 0.0, rng).values == s.values);

    const CMatrix g1 = time_channel_matrix(single_path(kDims, 1.0, 1, 0), ideal);
    const auto r = apply_channel(s, g1, 0.0, rng).values;
    CHECK(r[0] == Complex(0.0, 0.0));
    CHECK(r.tail(139) == s.values.head(139));

    CHECK_THROWS_AS(apply_channel(s, eye, -1.0, rng), ParameterError);
    CHECK_THROWS_AS(apply_channel(TimeSignal{CVector::Zero(139), true}, eye, 0.0, rng), DimensionError);

    const double n0 = 0.37;
    double acc = 0.0;
    int count = 0;
    const TimeSignal zero{CVector::Zero(140), true};
    for (int rep = 0; rep < 75; ++rep) {
        const auto w = apply_channel(zero, eye, n0, rng).values;
        acc += w.squaredNorm();
        count += 140;
    }
    CHECK(std::abs(acc / count / n0 - 1.0) < 0.03);
}

TEST_CASE("effective TF channel examples") {
    const Pulse ideal;
    const int len = kDims.frame_len(true);
    CHECK((effective_tf_channel(CMatrix::Identity(len, len), kDims) - CMatrix::Identity(112, 112)).norm() < 1e-12);
    const Complex h{0.4, -0.9};
    const CMatrix H = effective_tf_channel(single_path(kDims, h, 0, 0), ideal);
    CHECK((H - h * CMatrix::Identity(112, 112)).norm() < 1e-12);
    CHECK_THROWS_AS(effective_tf_channel(CMatrix::Identity(len - 1, len - 1), kDims), DimensionError);
}

TEST_CASE("blockwise H_TF matches explicit Kronecker factors") {
    const Dims d{4, 3, 2};
    Rng rng(7);
    ChannelStats stats;
    stats.k_max = 1;
    for (int rep = 0; rep < 5; ++rep) {
        const auto ch = sample_channel(stats, d, false, rng);
        const CMatrix g = time_channel_matrix(ch, Pulse{});
        CHECK(rel_err(effective_tf_channel(g, d), dense_tf_channel(g, d)) < 1e-12);
    }
}

TEST_CASE("matrix path and signal path give the same received grid") {
    std::mt19937_64 g(8);
    Rng rng(8);
    const ChannelStats stats;
    for (const bool fractional : {false, true}) {
        const Pulse pulse{fractional ? PulseKind::rectangular : PulseKind::ideal};
        for (int rep = 0; rep < 6; ++rep) {
            ChannelStats s = stats;
            s.paths = rep % 2 ? 3 : 1;
            if (fractional) s.l_max = 1;  // ceil(l + iota) must stay within the CP
            const auto ch = sample_channel(s, kDims, fractional, rng);
            const TFGrid x(random_matrix(8, 14, g));
            const CVector via_matrix = effective_tf_channel(ch, pulse) * vec(x.values);
            const auto rx = apply_channel(tf_to_time(x, kDims, true), time_channel_matrix(ch, pulse), 0.0, rng);
            const CVector via_signal = vec(time_to_tf(remove_cp(rx, kDims), kDims).values);
            CHECK((via_matrix - via_signal).norm() < 1e-10 * via_signal.norm());
            const auto rx2 = propagate(ch.paths, pulse, kDims, tf_to_time(x, kDims, true));
            CHECK((rx2.values - rx.values).norm() < 1e-12 * rx.values.norm());
        }
    }
}

TEST_CASE("per-symbol ICI vanishes exactly when every Doppler is zero") {
    const Pulse ideal;
    Rng rng(9);
    const ChannelStats stats;
    for (int rep = 0; rep < 30; ++rep) {
        auto ch = sample_channel(stats, kDims, false, rng);
        if (rep % 3 == 0) {
            for (auto& p : ch.paths) p.doppler_int = 0;
            ch.paths.resize(1);
        }
        bool static_channel = true;
        for (const auto& p : ch.paths) static_channel = static_channel && p.doppler_int == 0;
        const CMatrix H = effective_tf_channel(ch, ideal);
        double off = 0.0;
        for (int s = 0; s < 14; ++s) {
            CMatrix blk = H.block(s * 8, s * 8, 8, 8);
            blk.diagonal().setZero();
            off += blk.squaredNorm();
        }
        if (static_channel) {
            CHECK(off < 1e-24);
        } else {
            CHECK(off > 1e-6);
        }
    }
}

TEST_CASE("DD response of each on-grid path peaks at its own (l, k)") {
    const Pulse ideal;
    for (int l = 0; l <= 2; ++l) {
        for (int k = -3; k <= 3; ++k) {
            const CMatrix H = effective_tf_channel(single_path(kDims, 1.0, l, k), ideal);
            DDGrid impulse = DDGrid::zeros(kDims);
            impulse.values(0, 0) = 1.0;
            const CVector y = H * vec(dd_to_tf(impulse, kDims).values);
            const CMatrix ydd = tf_to_dd(TFGrid(unvec(y, 8, 14)), kDims).values;
            Eigen::Index r = 0;
            Eigen::Index c = 0;
            ydd.cwiseAbs().maxCoeff(&r, &c);
            CHECK(r == l);
            CHECK(c == wrap_index(k, 14));
        }
    }
}
