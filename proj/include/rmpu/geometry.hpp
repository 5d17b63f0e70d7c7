#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rmpu {

/// Staircase of n Haar gates, gate i acting on sites i..i+r (1-based), N = n + r sites of
/// local dimension d. The ensemble unitary is U = U_1 U_2 ... U_n (ascending). The two-floor
/// variant appends V_{n-1} ... V_1 with V_i on the same sites as U_i.
struct RmpuGeometry {
  enum class Variant { staircase, two_floor };

  int d = 2;
  int r = 1;
  int n = 1;
  Variant variant = Variant::staircase;

  std::int64_t chi() const { return ipow(d, r); }
  std::int64_t gate_dim() const { return chi() * d; }
  std::int64_t dim() const { return ipow(d, r + n); }
  int sites() const { return n + r; }

  void validate() const {
    if (d < 2) throw std::invalid_argument("local dimension d must be at least 2");
    if (r < 1) throw std::invalid_argument("overlap r must be at least 1");
    if (n < 1) throw std::invalid_argument("layer count n must be at least 1");
    if (variant == Variant::two_floor && n < 2) throw std::invalid_argument("two-floor geometry needs n >= 2");
  }

 private:
  static std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t v = 1;
    while (e-- > 0) v *= b;
    return v;
  }
};

inline std::string to_string(RmpuGeometry::Variant v) {
  return v == RmpuGeometry::Variant::staircase ? "staircase" : "two_floor";
}

inline RmpuGeometry::Variant parse_variant(const std::string& s) {
  if (s == "staircase") return RmpuGeometry::Variant::staircase;
  if (s == "two_floor") return RmpuGeometry::Variant::two_floor;
  throw std::invalid_argument("unknown geometry variant '" + s + "'");
}

}  // namespace rmpu
