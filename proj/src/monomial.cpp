#include "pfdkit/monomial.hpp"

#include <algorithm>
#include <stdexcept>

#include "pfdkit/error.hpp"

namespace pfdkit {

namespace {

std::uint8_t checked_exponent(int e) {
  if (e < 0 || e > 255) throw DomainError("monomial exponent out of range [0, 255]");
  return static_cast<std::uint8_t>(e);
}

}  // namespace

Monomial::Monomial(std::size_t num_vars) {
  if (num_vars > kMaxVariables) throw DomainError("too many ring variables (limit 16)");
  size_ = static_cast<std::uint8_t>(num_vars);
}

void Monomial::set(std::size_t i, int e) {
  degree_ = static_cast<std::uint16_t>(degree_ - exps_[i]);
  exps_[i] = checked_exponent(e);
  degree_ = static_cast<std::uint16_t>(degree_ + exps_[i]);
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < size_; ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

std::uint64_t Monomial::support_mask() const {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < size_; ++i)
    if (exps_[i] != 0) mask |= std::uint64_t{1} << i;
  return mask;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(size_);
  for (std::size_t i = 0; i < size_; ++i) r.exps_[i] = checked_exponent(exps_[i] + other.exps_[i]);
  r.degree_ = static_cast<std::uint16_t>(degree_ + other.degree_);
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(size_);
  for (std::size_t i = 0; i < size_; ++i) r.exps_[i] = static_cast<std::uint8_t>(exps_[i] - other.exps_[i]);
  r.degree_ = static_cast<std::uint16_t>(degree_ - other.degree_);
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.size_);
  int deg = 0;
  for (std::size_t i = 0; i < a.size_; ++i) {
    r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    deg += r.exps_[i];
  }
  r.degree_ = static_cast<std::uint16_t>(deg);
  return r;
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size_; ++i)
    if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
  return true;
}

Monomial Monomial::extended(int e) const {
  Monomial r(size_ + 1u);
  r.exps_ = exps_;
  r.degree_ = degree_;
  r.set(size_, e);
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < size_; ++i) {
    h ^= exps_[i];
    h *= 1099511628211ull;
  }
  return h;
}

int compare_grevlex(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace pfdkit
