#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mosaicforge/geometry.hpp"

namespace mosaicforge {

/// Seeded pseudo-random stream with a frozen draw order.
///
/// Generator: xoshiro256++ (Blackman & Vigna), state initialized with
/// four consecutive splitmix64 outputs of the seed — the reference
/// seeding procedure. Both algorithms are pure 64-bit integer
/// arithmetic, so the stream is identical on every platform; committed
/// vectors live in data/rng_reference_vectors.txt.
///
/// Every draw consumes a fixed number of raw generator outputs:
///   next_raw / bounded / unit_double / uniform_int   1
///   draw_gate / draw_scale_jitter                    1
///   draw_center                                      2 (cx then cy)
///   draw_indices                                     4
///   draw_permutation(k)                              k - 1
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    /// Worker stream: the states are derived from seed ^ worker_index
    /// via splitmix64.
    RandomStream(std::uint64_t seed, std::uint32_t worker_index);

    std::uint64_t next_raw();

    /// Uniform in [0,n) via the 128-bit multiply-shift reduction;
    /// exactly one raw output per call.
    std::uint64_t bounded(std::uint64_t n);

    /// Uniform in [0,1) with 53 random bits.
    double unit_double();

    /// Uniform integer in [lo,hi], inclusive.
    int uniform_int(int lo, int hi);

    /// Consumes and discards n raw outputs.
    void skip(std::uint64_t n);

    /// Raw outputs consumed since construction.
    std::uint64_t draws_consumed() const { return draws_; }

private:
    std::array<std::uint64_t, 4> state_{};
    std::uint64_t draws_ = 0;
};

/// splitmix64 step: advances `state` and returns the next output.
/// Exposed for the committed reference-vector test.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// Four distinct uniform indices in [0,dataset_size), in draw order.
/// Throws std::invalid_argument when dataset_size < 4.
std::array<std::size_t, 4> draw_indices(RandomStream& stream,
                                        std::size_t dataset_size);

/// True with probability `select_prob`; the draw is consumed even when
/// the outcome is forced (S of 0 or 1). Throws if S is outside [0,1].
bool draw_gate(RandomStream& stream, double select_prob);

/// Splice center with cx, cy each uniform in
/// [round(a*L), L - round(a*L)], a = border_fraction in [0, 0.5).
SpliceCenter draw_center(RandomStream& stream, int canvas_side,
                         double border_fraction);

/// Uniform permutation of 0..k-1 via Fisher-Yates, draws consumed
/// low-index-first.
std::vector<int> draw_permutation(RandomStream& stream, int k);

/// Uniform in [lo,hi]; lo == hi returns exactly lo. Requires
/// 0 < lo <= hi.
double draw_scale_jitter(RandomStream& stream, double lo, double hi);

}  // namespace mosaicforge
