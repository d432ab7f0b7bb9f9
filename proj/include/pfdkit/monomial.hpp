#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace pfdkit {

inline constexpr std::size_t kMaxVariables = 16;

/// Dense exponent vector over at most kMaxVariables ring variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t num_vars);

  std::size_t size() const { return size_; }
  int degree() const { return degree_; }
  int operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, int e);

  bool is_one() const { return degree_ == 0; }
  bool divides(const Monomial& other) const;

  /// 64-bit summary used to reject divisibility quickly: bit i set when variable i occurs.
  std::uint64_t support_mask() const;

  Monomial operator*(const Monomial& other) const;
  /// Exact quotient; caller guarantees `other.divides(*this)`.
  Monomial operator/(const Monomial& other) const;

  static Monomial lcm(const Monomial& a, const Monomial& b);
  static bool coprime(const Monomial& a, const Monomial& b);

  /// Monomial with one extra trailing variable carrying exponent `e`.
  Monomial extended(int e) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.size_ == b.size_ && a.exps_ == b.exps_;
  }

  std::size_t hash() const;

 private:
  std::array<std::uint8_t, kMaxVariables> exps_{};
  std::uint8_t size_ = 0;
  std::uint16_t degree_ = 0;
};

/// Graded reverse lexicographic comparison with the declared variable order
/// (x1 > x2 > ... ). Returns >0 when a > b.
int compare_grevlex(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace pfdkit
