#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace mosaicforge {

/// FNV-1a 64-bit, used for the golden-seed digests. Pure integer
/// arithmetic, identical on every platform.
class Fnv1a64 {
public:
    void update(std::span<const std::uint8_t> bytes) {
        for (std::uint8_t b : bytes) {
            hash_ ^= b;
            hash_ *= 0x100000001b3ULL;
        }
    }
    void update(std::string_view text) {
        update(std::span<const std::uint8_t>(
            reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    }
    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

std::string to_hex(std::uint64_t value);

}  // namespace mosaicforge
