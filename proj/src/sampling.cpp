#include "mosaicforge/sampling.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>

namespace mosaicforge {

namespace {

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
        word = splitmix64_next(sm);
    }
}

RandomStream::RandomStream(std::uint64_t seed, std::uint32_t worker_index)
    : RandomStream(seed ^ static_cast<std::uint64_t>(worker_index)) {}

std::uint64_t RandomStream::next_raw() {
    auto& s = state_;
    const std::uint64_t result = rotl(s[0] + s[3], 23) + s[0];
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = rotl(s[3], 45);
    ++draws_;
    return result;
}

std::uint64_t RandomStream::bounded(std::uint64_t n) {
    if (n == 0) {
        throw std::invalid_argument("bounded(0)");
    }
    const unsigned __int128 product =
        static_cast<unsigned __int128>(next_raw()) * n;
    return static_cast<std::uint64_t>(product >> 64);
}

double RandomStream::unit_double() {
    return static_cast<double>(next_raw() >> 11) * 0x1.0p-53;
}

int RandomStream::uniform_int(int lo, int hi) {
    if (lo > hi) {
        throw std::invalid_argument("uniform_int: empty range");
    }
    const std::uint64_t span =
        static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
    return lo + static_cast<int>(bounded(span));
}

void RandomStream::skip(std::uint64_t n) {
    for (std::uint64_t i = 0; i < n; ++i) {
        next_raw();
    }
}

std::array<std::size_t, 4> draw_indices(RandomStream& stream,
                                        std::size_t dataset_size) {
    if (dataset_size < 4) {
        throw std::invalid_argument(
            "dataset too small: need at least 4 images, have " +
            std::to_string(dataset_size));
    }
    // Partial Fisher-Yates over a virtual identity array; only touched
    // slots are materialized.
    std::array<std::size_t, 4> out{};
    std::unordered_map<std::size_t, std::size_t> displaced;
    for (std::size_t t = 0; t < 4; ++t) {
        const std::size_t r = t + stream.bounded(dataset_size - t);
        const auto it_r = displaced.find(r);
        const std::size_t value_r = it_r == displaced.end() ? r : it_r->second;
        const auto it_t = displaced.find(t);
        const std::size_t value_t = it_t == displaced.end() ? t : it_t->second;
        out[t] = value_r;
        displaced[r] = value_t;
    }
    return out;
}

bool draw_gate(RandomStream& stream, double select_prob) {
    if (!(select_prob >= 0.0 && select_prob <= 1.0)) {
        throw std::invalid_argument("select probability must be in [0,1], got " +
                                    std::to_string(select_prob));
    }
    return stream.unit_double() < select_prob;
}

SpliceCenter draw_center(RandomStream& stream, int canvas_side,
                         double border_fraction) {
    if (canvas_side <= 0) {
        throw std::invalid_argument("canvas_side must be positive");
    }
    if (!(border_fraction >= 0.0 && border_fraction < 0.5)) {
        throw std::invalid_argument("border_fraction must be in [0,0.5), got " +
                                    std::to_string(border_fraction));
    }
    const int border =
        static_cast<int>(round_half_up(border_fraction * canvas_side));
    const int lo = border;
    const int hi = canvas_side - border;
    SpliceCenter center;
    center.cx = stream.uniform_int(lo, hi);
    center.cy = stream.uniform_int(lo, hi);
    return center;
}

std::vector<int> draw_permutation(RandomStream& stream, int k) {
    if (k < 1) {
        throw std::invalid_argument("permutation size must be at least 1");
    }
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) {
        perm[i] = i;
    }
    for (int i = 0; i + 1 < k; ++i) {
        const int j =
            i + static_cast<int>(stream.bounded(static_cast<std::uint64_t>(k - i)));
        std::swap(perm[i], perm[j]);
    }
    return perm;
}

double draw_scale_jitter(RandomStream& stream, double lo, double hi) {
    if (!(lo > 0.0) || !(lo <= hi)) {
        throw std::invalid_argument("scale jitter range requires 0 < lo <= hi");
    }
    return lo + stream.unit_double() * (hi - lo);
}

}  // namespace mosaicforge
