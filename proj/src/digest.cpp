#include "mosaicforge/digest.hpp"

#include <cstdio>

namespace mosaicforge {

std::string to_hex(std::uint64_t value) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx",
                  static_cast<unsigned long long>(value));
    return buf;
}

}  // namespace mosaicforge
