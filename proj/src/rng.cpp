#include "treebo/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace treebo {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Absorbs both keys through two splitmix rounds so that nearby
// (master, stream) pairs land far apart in seed space.
std::uint64_t mix_keys(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t state = master;
  std::uint64_t h = splitmix64(state);
  state ^= stream * 0x9E3779B97F4A7C15ULL;
  h ^= splitmix64(state);
  return h;
}

}  // namespace

SeededRng::SeededRng(std::uint64_t master_seed, std::uint64_t stream_id)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      engine_(mix_keys(master_seed, stream_id)) {}

SeededRng SeededRng::substream(std::uint64_t child_id) const {
  return SeededRng(mix_keys(master_seed_, stream_id_), child_id);
}

Scalar SeededRng::next_double() {
  return static_cast<Scalar>(engine_() >> 11) * 0x1.0p-53;
}

Scalar SeededRng::uniform(Scalar lo, Scalar hi) {
  if (!(lo < hi)) throw std::invalid_argument("uniform requires lo < hi");
  for (;;) {
    Scalar v = lo + (hi - lo) * next_double();
    if (v > lo && v < hi) return v;  // rounding can land on an endpoint
  }
}

std::uint64_t SeededRng::uniform_index(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_index requires n >= 1");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    std::uint64_t u = engine_();
    if (u < limit) return u % n;
  }
}

Scalar SeededRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  Scalar u1 = 1.0 - next_double();  // (0, 1]
  Scalar u2 = next_double();
  Scalar r = std::sqrt(-2.0 * std::log(u1));
  Scalar theta = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace treebo
