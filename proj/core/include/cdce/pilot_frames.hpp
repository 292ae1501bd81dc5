#pragma once

#include <vector>

#include "cdce/channel_model.hpp"
#include "cdce/types.hpp"

namespace cdce {

enum class SequenceKind { all_ones, walsh, zadoff_chu };
enum class DataMode { none, qpsk };
enum class Placement { lattice, uniform_random };

struct Lattice {
    int freq_spacing = 2;
    int time_spacing = 1;
    int freq_offset = 0;
    int time_offset = 0;
};

struct FrameSpec {
    Dims dims;
    Lattice lattice;
    SequenceKind sequence = SequenceKind::all_ones;
    /// Walsh row or Zadoff-Chu root; negative selects the default
    /// (Walsh row N_p/2, ZC root 1).
    int sequence_param = -1;
    double pilot_power = 1.0;
    DataMode data = DataMode::none;
    Placement placement = Placement::lattice;

    [[nodiscard]] int pilot_count() const;
    void validate() const;
};

struct Frame {
    TFGrid tf;
    BoolMatrix pilot_mask;
    TFGrid pilot_only_tf;
};

/// Unit-modulus pilot sequence of the given kind.
std::vector<Complex> make_pilot_sequence(SequenceKind kind, int length, int param);

/// Lattice positions (subcarrier, symbol) in column-major scan order.
std::vector<std::pair<int, int>> lattice_positions(const FrameSpec& spec);

Frame assemble_frame(const FrameSpec& spec, Rng& rng);

/// DD image of the pilot-only frame.
DDGrid pilot_dd_image(const Frame& f);

/// Discrete ambiguity function of a DD grid, evaluated from its definition.
CMatrix discrete_af(const DDGrid& x);

/// Peak-to-maximum-sidelobe ratio of |A_DD|. Lags on the lattice's periodic
/// peak grid (multiples of M/D_f in delay and N/D_t in Doppler) are replicas of
/// the main peak and are excluded from the sidelobe set.
double af_peak_to_sidelobe(const CMatrix& af, const Lattice& lattice);

/// Fraction of total energy captured by the `bins` largest entries.
double energy_concentration(const DDGrid& x, int bins);

}  // namespace cdce
