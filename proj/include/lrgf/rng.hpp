#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace lrgf {

// Counter-based generator (Philox 4x32-10). A stream is identified by
// (seed, stream index); the counter advances as values are drawn. Equal
// (seed, stream) always reproduces the same sequence, so replicates can be
// farmed out to threads in any order.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }
    std::uint64_t counter() const { return counter_; }

    // Position the counter explicitly (counts 128-bit blocks).
    void set_counter(std::uint64_t c) {
        counter_ = c;
        have_buffered_ = false;
        have_spare_normal_ = false;
    }

    std::uint64_t next_u64() {
        if (have_buffered_) {
            have_buffered_ = false;
            return buffered_;
        }
        const auto block = philox_block();
        buffered_ = (static_cast<std::uint64_t>(block[3]) << 32) | block[2];
        have_buffered_ = true;
        return (static_cast<std::uint64_t>(block[1]) << 32) | block[0];
    }

    // Uniform on (0,1), never returning an exact endpoint.
    double next_u01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    // Standard normal via Box-Muller on explicit uniform pairs (no rejection,
    // so consumption is deterministic).
    double next_normal() {
        if (have_spare_normal_) {
            have_spare_normal_ = false;
            return spare_normal_;
        }
        const double u1 = next_u01();
        const double u2 = next_u01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586476925286766559 * u2;
        spare_normal_ = radius * std::sin(angle);
        have_spare_normal_ = true;
        return radius * std::cos(angle);
    }

private:
    static void mul_hilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo,
                         std::uint32_t& hi) {
        const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
        lo = static_cast<std::uint32_t>(p);
        hi = static_cast<std::uint32_t>(p >> 32);
    }

    std::array<std::uint32_t, 4> philox_block() {
        constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
        constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
        constexpr std::uint32_t kMul0 = 0xD2511F53u;
        constexpr std::uint32_t kMul1 = 0xCD9E8D57u;

        std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(counter_),
            static_cast<std::uint32_t>(counter_ >> 32),
            static_cast<std::uint32_t>(stream_),
            static_cast<std::uint32_t>(stream_ >> 32)};
        std::uint32_t k0 = static_cast<std::uint32_t>(seed_);
        std::uint32_t k1 = static_cast<std::uint32_t>(seed_ >> 32);
        for (int round = 0; round < 10; ++round) {
            std::uint32_t lo0, hi0, lo1, hi1;
            mul_hilo(kMul0, ctr[0], lo0, hi0);
            mul_hilo(kMul1, ctr[2], lo1, hi1);
            ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
            k0 += kWeyl0;
            k1 += kWeyl1;
        }
        ++counter_;
        return ctr;
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::uint64_t buffered_ = 0;
    bool have_buffered_ = false;
    double spare_normal_ = 0.0;
    bool have_spare_normal_ = false;
};

}  // namespace lrgf
