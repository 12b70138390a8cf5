#pragma once

#include <cstdint>
#include <random>

namespace vararb {

/// Seeded pseudo-random stream with a platform-independent output sequence.
///
/// std::uniform_*_distribution is implementation-defined, so uniform variates
/// and indices are derived directly from the raw mt19937_64 words here.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Independent substream for (seed, stream_id); used to give each
  /// consumer (sampling, assignment, batch k) its own sequence.
  static RandomStream substream(std::uint64_t seed, std::uint64_t stream_id);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform on {0, ..., n - 1}, n >= 1. Unbiased (rejection sampling).
  std::uint64_t index(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace vararb
