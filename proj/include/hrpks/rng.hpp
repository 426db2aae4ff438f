#pragma once

#include <openssl/sha.h>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "hrpks/bigint.hpp"

namespace hrpks {

static_assert(sizeof(unsigned long) == 8, "Rng packs 64-bit words into unsigned long");

/// The single source of randomness for key generation, signing and tests.
///
/// Seeded mode runs a Mersenne Twister keyed by SHA-256(seed || 0x00 || context),
/// so the same (seed, context) pair always yields the same stream while different
/// contexts (e.g. two member ids) stay apart. Unseeded mode draws every word from
/// the OS entropy source. Neither mode is constant-time.
class Rng {
 public:
  static Rng from_os() { return Rng(); }

  static Rng seeded(std::string_view seed, std::string_view context = {}) {
    std::string material(seed);
    material.push_back('\0');
    material.append(context);
    std::array<unsigned char, SHA256_DIGEST_LENGTH> digest{};
    SHA256(reinterpret_cast<const unsigned char*>(material.data()), material.size(),
           digest.data());
    std::array<std::uint32_t, 8> words{};
    for (std::size_t i = 0; i < words.size(); ++i) {
      words[i] = (std::uint32_t{digest[4 * i]} << 24) | (std::uint32_t{digest[4 * i + 1]} << 16) |
                 (std::uint32_t{digest[4 * i + 2]} << 8) | std::uint32_t{digest[4 * i + 3]};
    }
    std::seed_seq seq(words.begin(), words.end());
    Rng rng;
    rng.engine_.emplace(seq);
    return rng;
  }

  Rng(const Rng&) = delete;
  Rng& operator=(const Rng&) = delete;
  Rng(Rng&&) = default;
  Rng& operator=(Rng&&) = default;

  bool is_seeded() const { return engine_.has_value(); }

  std::uint64_t next_u64() {
    if (engine_) return (*engine_)();
    if (!os_) os_ = std::make_unique<std::random_device>();
    std::uint64_t hi = (*os_)();
    std::uint64_t lo = (*os_)();
    return (hi << 32) | (lo & 0xffffffffu);
  }

  /// Uniform in [0, 2^bits).
  Integer bits(std::size_t bits) {
    Integer r = 0;
    std::size_t remaining = bits;
    while (remaining >= 64) {
      r <<= 64;
      r += Integer(static_cast<unsigned long>(next_u64()));
      remaining -= 64;
    }
    if (remaining > 0) {
      r <<= remaining;
      r += Integer(static_cast<unsigned long>(next_u64() >> (64 - remaining)));
    }
    return r;
  }

  /// Uniform in [0, bound) by rejection sampling; bound must be positive.
  Integer below(const Integer& bound) {
    if (bound <= 0) throw Error(ErrorCode::kInvariant, "Rng::below needs a positive bound");
    std::size_t n = bit_length(bound - 1);
    if (n == 0) return 0;
    for (;;) {
      Integer candidate = bits(n);
      if (candidate < bound) return candidate;
    }
  }

  /// Uniform in [lo, hi], inclusive.
  Integer range(const Integer& lo, const Integer& hi) { return lo + below(hi - lo + 1); }

 private:
  Rng() = default;

  std::optional<std::mt19937_64> engine_;
  std::unique_ptr<std::random_device> os_;
};

}  // namespace hrpks
