#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <utility>

namespace msim {

/// One deterministic random substream.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }
  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // inclusive
  double normal();  // standard normal

  std::mt19937_64& engine() { return eng_; }

private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

enum class Phenomenon : std::uint32_t {
  Topology = 1,
  Arrivals = 2,
  Fading = 3,
  Harvest = 4,
  Instance = 5,
};

/// Hands out one independent substream per (phenomenon, entity) pair, so a
/// change in one phenomenon's draw count does not perturb the others.
class RandomStreams {
public:
  explicit RandomStreams(std::uint64_t seed) : seed_(seed) {}

  RngStream& stream(Phenomenon p, std::uint32_t entity = 0);

  static std::uint64_t derive_seed(std::uint64_t base, Phenomenon p,
                                   std::uint32_t entity);

private:
  std::uint64_t seed_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, RngStream> streams_;
};

}  // namespace msim
