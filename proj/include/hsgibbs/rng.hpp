#pragma once

#include <array>
#include <cstdint>

namespace hs {

// xoshiro256** seeded through splitmix64. Every transform below is written out
// by hand so a seed gives the same stream on any platform / standard library.
class RngStream {
 public:
  static constexpr const char* algorithm = "xoshiro256**";

  explicit RngStream(std::uint64_t seed = 0);

  std::uint64_t next_u64();
  double uniform();       // open (0,1)
  double normal();        // standard normal, polar method
  double exponential();   // rate 1
  double gamma(double shape);  // scale 1, Marsaglia-Tsang

  // advance by 2^128 draws; used to hand out disjoint substreams
  void jump();
  // returns a copy of this stream and jumps this one past it
  RngStream split();

  std::uint64_t counter() const { return counter_; }
  const std::array<std::uint64_t, 4>& state() const { return s_; }

 private:
  std::array<std::uint64_t, 4> s_{};
  std::uint64_t counter_ = 0;
};

// deterministic per-cell stream: seed, then `index` jumps
RngStream substream(std::uint64_t seed, unsigned index);

}  // namespace hs
