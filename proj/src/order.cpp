#include "pfdkit/order.hpp"

#include <algorithm>
#include <numeric>

#include "pfdkit/error.hpp"

namespace pfdkit {

namespace {

void check_permutation(const std::vector<std::size_t>& p) {
  std::vector<std::size_t> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw DomainError("variable precedence is not a permutation");
}

}  // namespace

MonomialOrder MonomialOrder::grevlex(std::vector<std::size_t> precedence) {
  check_permutation(precedence);
  MonomialOrder o;
  o.precedence_ = std::move(precedence);
  return o;
}

MonomialOrder MonomialOrder::lex(std::vector<std::size_t> precedence) {
  check_permutation(precedence);
  MonomialOrder o;
  o.kind_ = Kind::kLex;
  o.precedence_ = std::move(precedence);
  return o;
}

MonomialOrder MonomialOrder::block_elimination(std::size_t k, std::vector<std::size_t> precedence) {
  check_permutation(precedence);
  MonomialOrder o;
  o.kind_ = Kind::kBlockElimination;
  o.block_ = k;
  o.precedence_ = std::move(precedence);
  return o;
}

int MonomialOrder::grevlex_range(const Monomial& a, const Monomial& b, std::size_t begin,
                                 std::size_t end) const {
  int da = 0, db = 0;
  for (std::size_t p = begin; p < end; ++p) {
    da += a[var(p)];
    db += b[var(p)];
  }
  if (da != db) return da > db ? 1 : -1;
  for (std::size_t p = end; p-- > begin;) {
    const int ea = a[var(p)], eb = b[var(p)];
    if (ea != eb) return ea < eb ? 1 : -1;
  }
  return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = a.size();
  switch (kind_) {
    case Kind::kGrevlex:
      if (precedence_.empty()) return compare_grevlex(a, b);
      return grevlex_range(a, b, 0, n);
    case Kind::kLex:
      for (std::size_t p = 0; p < n; ++p) {
        const int ea = a[var(p)], eb = b[var(p)];
        if (ea != eb) return ea > eb ? 1 : -1;
      }
      return 0;
    case Kind::kBlockElimination: {
      const std::size_t k = std::min(block_, n);
      if (int c = grevlex_range(a, b, 0, k); c != 0) return c;
      return grevlex_range(a, b, k, n);
    }
  }
  return 0;
}

}  // namespace pfdkit
