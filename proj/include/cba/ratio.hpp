#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace cba {

/// A count-based fraction kept unreduced, so `2/2` prints as `2/2`.
/// Comparison is exact (cross-multiplication in 128 bits).
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    const auto lhs = static_cast<unsigned __int128>(a.num) * b.den;
    const auto rhs = static_cast<unsigned __int128>(b.num) * a.den;
    return lhs <=> rhs;
  }
  // Value equality: 2/2 == 3/3.
  friend bool operator==(const Ratio& a, const Ratio& b) { return (a <=> b) == 0; }
};

/// Threshold given as a decimal fraction in [0,1], stored exactly as
/// parts-per-billion so that e.g. 0.15 * 10 compares as 1.5 with no
/// binary rounding.
struct Threshold {
  static constexpr std::uint64_t kScale = 1'000'000'000ULL;
  std::uint64_t ppb = 0;

  static Threshold from_double(double fraction);
  double value() const { return static_cast<double>(ppb) / static_cast<double>(kScale); }

  /// count / total >= threshold, exactly.
  bool met_by(std::uint64_t count, std::uint64_t total) const {
    return static_cast<unsigned __int128>(count) * kScale >= static_cast<unsigned __int128>(ppb) * total;
  }
  friend auto operator<=>(const Threshold&, const Threshold&) = default;
};

}  // namespace cba
