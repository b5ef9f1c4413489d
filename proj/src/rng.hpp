#pragma once

#include <array>
#include <cstdint>

namespace nsbox {

/// Philox 4x32-10 counter-based generator. Every 64-bit draw is addressed by
/// (seed, trial, stream), so draws are independent of evaluation order and
/// trials can run concurrently with bit-identical results.
namespace philox {

inline std::array<uint32_t, 4> block(std::array<uint32_t, 4> ctr, std::array<uint32_t, 2> key) {
    constexpr uint32_t kMul0 = 0xD2511F53u;
    constexpr uint32_t kMul1 = 0xCD9E8D57u;
    constexpr uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const uint64_t p0 = static_cast<uint64_t>(kMul0) * ctr[0];
        const uint64_t p1 = static_cast<uint64_t>(kMul1) * ctr[2];
        ctr = {static_cast<uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<uint32_t>(p1),
               static_cast<uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<uint32_t>(p0)};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

} // namespace philox

inline uint64_t counter_draw(uint64_t seed, uint64_t trial, uint64_t stream) {
    const std::array<uint32_t, 4> out = philox::block(
        {static_cast<uint32_t>(stream), static_cast<uint32_t>(stream >> 32),
         static_cast<uint32_t>(trial), static_cast<uint32_t>(trial >> 32)},
        {static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)});
    return out[0] | (static_cast<uint64_t>(out[1]) << 32);
}

} // namespace nsbox
