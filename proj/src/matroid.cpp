#include "pfdkit/matroid.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <unordered_set>

#include "pfdkit/error.hpp"

namespace pfdkit {

IndexMask to_mask(const std::vector<std::size_t>& indices) {
  IndexMask m = 0;
  for (auto i : indices) {
    if (i >= kMaxForms) throw DomainError("form index " + std::to_string(i + 1) + " out of range");
    m |= IndexMask{1} << i;
  }
  return m;
}

std::vector<std::size_t> to_indices(IndexMask mask) {
  std::vector<std::size_t> out;
  while (mask != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

int popcount(IndexMask mask) { return std::popcount(mask); }

Arrangement::Arrangement(VarList vars, std::vector<Polynomial> forms, Mode mode, bool allow_zero_forms)
    : vars_(std::move(vars)), forms_(std::move(forms)), mode_(mode) {
  if (forms_.empty()) throw DomainError("arrangement has no forms");
  if (forms_.size() > kMaxForms) throw DomainError("arrangement has more than 64 forms");
  bool any_nonzero = false;
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    const auto& l = forms_[i];
    const std::string label = "form " + std::to_string(i + 1);
    if (!same_ring(l.vars(), vars_)) throw DomainError(label + " lives in a different ring");
    if (l.is_zero()) {
      if (!allow_zero_forms) throw DomainError(label + " is zero");
      continue;
    }
    if (l.total_degree() != 1) throw DomainError(label + " is not of degree 1");
    if (mode_ == Mode::kProjective && !is_zero(l.constant_term()))
      throw DomainError(label + " has a constant term in projective mode");
    any_nonzero = true;
  }
  if (!any_nonzero) throw DomainError("all forms are zero");
  const bool affine = mode_ == Mode::kAffine;
  coefficients_ = RationalMatrix(forms_.size(), vars_->size() + (affine ? 1 : 0));
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    const auto c = linear_coefficients(forms_[i], affine);
    std::copy(c.begin(), c.end(), coefficients_.row(i).begin());
  }
}

IndexMask Arrangement::ground_set() const {
  return forms_.size() == kMaxForms ? ~IndexMask{0} : (IndexMask{1} << forms_.size()) - 1;
}

Arrangement Arrangement::homogenized(const std::string& new_var) const {
  std::vector<std::string> names = *vars_;
  names.push_back(new_var);
  const VarList ext = make_vars(std::move(names));
  std::vector<Polynomial> forms;
  for (const auto& l : forms_) forms.push_back(l.is_zero() ? Polynomial(ext) : homogenize_into(l, ext, 1));
  return Arrangement(ext, std::move(forms), Mode::kProjective, true);
}

void Arrangement::check_mask(IndexMask s) const {
  if ((s & ~ground_set()) != 0)
    throw DomainError("index " + std::to_string(std::countr_zero(s & ~ground_set()) + 1) + " out of range");
}

std::size_t Arrangement::rank_of_subset(IndexMask s) const {
  check_mask(s);
  LinearSpan span(coefficients_.cols());
  for (auto i : to_indices(s)) span.add(coefficients_.row(i));
  return span.rank();
}

std::size_t Arrangement::rank_of_subset(const std::vector<std::size_t>& s) const {
  return rank_of_subset(to_mask(s));
}

IndexMask Arrangement::closure(IndexMask s) const {
  check_mask(s);
  LinearSpan span(coefficients_.cols());
  for (auto i : to_indices(s)) span.add(coefficients_.row(i));
  IndexMask out = s;
  for (std::size_t i = 0; i < forms_.size(); ++i)
    if (span.contains(coefficients_.row(i))) out |= IndexMask{1} << i;
  return out;
}

std::vector<std::size_t> Arrangement::closure(const std::vector<std::size_t>& s) const {
  return to_indices(closure(to_mask(s)));
}

FlatSet make_flat(IndexMask mask) { return FlatSet{mask, to_indices(mask)}; }

namespace {

// Calls fn(mask) for every subset of [n] with at most k elements.
template <class Fn>
void for_each_small_subset(std::size_t n, std::size_t k, IndexMask current, std::size_t start, Fn& fn) {
  fn(current);
  if (k == 0) return;
  for (std::size_t i = start; i < n; ++i) for_each_small_subset(n, k - 1, current | (IndexMask{1} << i), i + 1, fn);
}

}  // namespace

std::vector<FlatSet> flats_min_size(const Arrangement& a, std::size_t t) {
  std::unordered_set<IndexMask> seen;
  const std::size_t n = a.size();
  if (n <= 20) {
    auto visit = [&](IndexMask s) { seen.insert(a.closure(s)); };
    for_each_small_subset(n, a.rank(), 0, 0, visit);
  } else {
    std::deque<IndexMask> queue{a.closure(0)};
    seen.insert(queue.front());
    while (!queue.empty()) {
      const IndexMask f = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < n; ++i) {
        const IndexMask bit = IndexMask{1} << i;
        if (f & bit) continue;
        const IndexMask g = a.closure(f | bit);
        if (seen.insert(g).second) queue.push_back(g);
      }
    }
  }
  std::vector<FlatSet> out;
  for (IndexMask m : seen)
    if (static_cast<std::size_t>(popcount(m)) >= t) out.push_back(make_flat(m));
  std::sort(out.begin(), out.end());
  return out;
}

Arrangement braid_arrangement(int r) {
  if (r < 2) throw DomainError("braid arrangement needs r >= 2");
  if (r > 16) throw DomainError("braid arrangement supports r <= 16");
  std::vector<std::string> names;
  for (int i = 1; i <= r; ++i) names.push_back("x" + std::to_string(i));
  const VarList vars = make_vars(std::move(names));
  std::vector<Polynomial> forms;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      forms.push_back(Polynomial::variable(vars, static_cast<std::size_t>(i)) -
                      Polynomial::variable(vars, static_cast<std::size_t>(j)));
  if (forms.size() > kMaxForms) throw DomainError("braid arrangement has more than 64 forms");
  return Arrangement(vars, std::move(forms), Mode::kProjective);
}

std::size_t braid_index(int r, int i, int j) {
  if (!(0 <= i && i < j && j < r)) throw DomainError("braid_index: need 0 <= i < j < r");
  // Forms (i, *) come after all forms (i', *) with i' < i.
  const int before = i * r - i * (i + 1) / 2;
  return static_cast<std::size_t>(before + (j - i - 1));
}

Partition braid_flat_type(int r, IndexMask flat) {
  std::vector<int> parent(static_cast<std::size_t>(r));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      if (flat & (IndexMask{1} << braid_index(r, i, j))) parent[static_cast<std::size_t>(find(j))] = find(i);
  std::vector<int> sizes(static_cast<std::size_t>(r), 0);
  for (int i = 0; i < r; ++i) ++sizes[static_cast<std::size_t>(find(i))];
  std::vector<int> parts;
  for (int s : sizes)
    if (s > 0) parts.push_back(s);
  std::sort(parts.rbegin(), parts.rend());
  return Partition(std::move(parts));
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError("partition has no parts");
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) throw DomainError("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be weakly decreasing");
  }
}

int Partition::total() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
  return s + ")";
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int r) {
  if (r < 1) throw DomainError("partitions_of: r must be positive");
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_rec(r, r, cur, out);
  return out;
}

int partition_flat_size(const Partition& lambda) {
  int s = 0;
  for (int p : lambda.parts()) s += p * (p - 1) / 2;
  return s;
}

bool dominance_leq(const Partition& mu, const Partition& lambda) {
  if (mu.total() != lambda.total()) throw DomainError("dominance_leq: partitions of different integers");
  int sm = 0, sl = 0;
  const std::size_t len = std::max(mu.parts().size(), lambda.parts().size());
  for (std::size_t i = 0; i < len; ++i) {
    if (i < mu.parts().size()) sm += mu.parts()[i];
    if (i < lambda.parts().size()) sl += lambda.parts()[i];
    if (sl < sm) return false;
  }
  return true;
}

}  // namespace pfdkit
