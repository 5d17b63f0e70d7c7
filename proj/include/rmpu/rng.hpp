#pragma once

// Counter-based Philox4x32-10 with independent streams keyed by (seed, index).

#include <array>
#include <complex>
#include <cstdint>
#include <limits>

namespace rmpu {

class Philox4x32 {
 public:
  using result_type = std::uint32_t;
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// One Philox4x32-10 block.
  static Counter block(Counter ctr, Key key);

 private:
  Counter counter_{};
  Key key_{};
  Counter buffer_{};
  int used_ = 4;
};

/// A reproducible stream of uniforms and Gaussians for one sample.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t index) : engine_(seed, index) {}

  /// Uniform on (0, 1), 53 random bits.
  double uniform();
  /// Standard normal (Box-Muller).
  double normal();
  /// Complex Gaussian with E|z|^2 = 1.
  std::complex<double> complex_normal();

  Philox4x32& engine() { return engine_; }

 private:
  Philox4x32 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rmpu
