#pragma once

#include <cstdint>

namespace cqwe {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based seed split. Each (master, stream, index) triple names one
/// independent random stream, so results never depend on evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t index = 0) {
  return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

// Stream tags used across the library.
namespace stream {
inline constexpr std::uint64_t kDrift = 0x01;
inline constexpr std::uint64_t kReadout = 0x02;
inline constexpr std::uint64_t kShot = 0x03;
inline constexpr std::uint64_t kSubset = 0x04;
inline constexpr std::uint64_t kTraining = 0x05;
inline constexpr std::uint64_t kRamsey = 0x06;
}  // namespace stream

}  // namespace cqwe
