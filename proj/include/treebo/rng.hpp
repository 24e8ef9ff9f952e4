#ifndef TREEBO_RNG_HPP
#define TREEBO_RNG_HPP

#include <cstdint>
#include <random>

#include "treebo/types.hpp"

namespace treebo {

/// Reproducible random stream keyed by (master_seed, stream_id).
///
/// The engine is std::mt19937_64, whose output sequence is pinned bit-exactly
/// by the standard. All variate transforms (uniform, normal, index) are
/// implemented here rather than with std::*_distribution, which is
/// implementation-defined; streams therefore reproduce across standard
/// libraries, runs, and thread schedules. Each stream is owned by exactly one
/// consumer.
class SeededRng {
 public:
  SeededRng(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Child stream statistically independent of this one and of any sibling.
  /// Derivation depends only on the keys, not on how much of this stream has
  /// been consumed.
  SeededRng substream(std::uint64_t child_id) const;

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  Scalar next_double();

  /// Uniform on the open interval (lo, hi); requires lo < hi.
  Scalar uniform(Scalar lo, Scalar hi);

  /// Uniform integer in [0, n); unbiased; requires n >= 1.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Standard normal variate (Box-Muller, pairwise).
  Scalar normal();

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  Scalar spare_normal_ = 0.0;
  bool has_spare_ = false;
};

inline SeededRng derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
  return SeededRng(master_seed, stream_id);
}

}  // namespace treebo

#endif
