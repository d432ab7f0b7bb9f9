#include "pfdkit/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pfdkit/error.hpp"

namespace pfdkit {

namespace {

using TermVec = std::vector<Term>;

// id >= 0 names a stored element, id < 0 names input generator -(id + 1).
struct Source {
  long id;
  Polynomial multiplier;
};

struct Element {
  TermVec terms;  // monic, descending under the order
  std::uint64_t mask = 0;
  std::vector<Source> derivation;

  const Monomial& lm() const { return terms.front().monomial; }
};

struct Item {
  Monomial lcm;
  std::size_t seq;
  long i;  // element id, or -(k + 1) for generator k waiting to be inserted
  long j;
};

struct ItemLess {
  const MonomialOrder* order;
  bool operator()(const Item& a, const Item& b) const {
    const int c = order->compare(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    return a.seq < b.seq;
  }
};

TermVec sorted_terms(const Polynomial& f, const MonomialOrder& order) {
  TermVec t = f.terms();
  if (!(order.kind() == MonomialOrder::Kind::kGrevlex && order.precedence().empty()))
    std::sort(t.begin(), t.end(),
              [&](const Term& a, const Term& b) { return order.compare(a.monomial, b.monomial) > 0; });
  return t;
}

// Division workspace. Terms are kept ascending so the leading term is at the back.
class Reduction {
 public:
  Reduction(const MonomialOrder& order, TermVec descending) : order_(order) {
    work_.assign(std::make_move_iterator(descending.rbegin()), std::make_move_iterator(descending.rend()));
  }

  // Fully reduces by `reducers` (element pointers with their ids); records quotients.
  void run(const std::vector<std::pair<long, const Element*>>& reducers) {
    while (!work_.empty()) {
      const Term& lt = work_.back();
      const std::uint64_t mask = lt.monomial.support_mask();
      const std::pair<long, const Element*>* hit = nullptr;
      for (const auto& r : reducers) {
        if ((r.second->mask & ~mask) != 0) continue;
        if (r.second->lm().divides(lt.monomial)) {
          hit = &r;
          break;
        }
      }
      if (hit == nullptr) {
        remainder_.push_back(std::move(work_.back()));
        work_.pop_back();
        continue;
      }
      const Monomial m = lt.monomial / hit->second->lm();
      const Rational c = lt.coeff;
      quotients_[hit->first].push_back({m, c});
      subtract(c, m, hit->second->terms);
    }
  }

  TermVec& remainder() { return remainder_; }
  std::map<long, TermVec>& quotients() { return quotients_; }

 private:
  // work -= c * m * g, where g is descending and its leading term cancels work's.
  void subtract(const Rational& c, const Monomial& m, const TermVec& g) {
    TermVec out;
    out.reserve(work_.size() + g.size());
    std::size_t i = 0;
    std::size_t j = g.size();
    const std::size_t wend = work_.size() - 1;  // leading term cancels
    Rational prod;
    while (i < wend || j > 1) {
      // take_work: the next smallest term comes from work_.
      int take;  // <0 work, >0 g, 0 both
      Monomial gm;
      if (j > 1) gm = g[j - 1].monomial * m;
      if (i == wend) take = 1;
      else if (j <= 1) take = -1;
      else take = order_.compare(work_[i].monomial, gm) < 0 ? -1 : (work_[i].monomial == gm ? 0 : 1);
      if (take < 0) {
        out.push_back(std::move(work_[i++]));
      } else if (take > 0) {
        prod = c * g[j - 1].coeff;
        out.push_back({gm, -prod});
        --j;
      } else {
        prod = c * g[j - 1].coeff;
        work_[i].coeff -= prod;
        if (!is_zero(work_[i].coeff)) out.push_back(std::move(work_[i]));
        ++i;
        --j;
      }
    }
    work_.swap(out);
  }

  const MonomialOrder& order_;
  TermVec work_;
  TermVec remainder_;  // descending
  std::map<long, TermVec> quotients_;
};

Polynomial to_poly(const VarList& vars, TermVec terms) { return Polynomial::from_terms(vars, std::move(terms)); }

Polynomial& slot(std::map<long, Polynomial>& m, long id, const VarList& vars) {
  return m.try_emplace(id, Polynomial(vars)).first->second;
}

}  // namespace

struct GroebnerBasis::Impl {
  VarList vars;
  MonomialOrder order;
  std::size_t num_generators = 0;
  std::optional<int> degree_limit;
  GroebnerStats stats;
  std::vector<Element> store;
  std::vector<std::size_t> basis;  // store ids, sorted by increasing leading monomial
  std::vector<Polynomial> elements;
};

GroebnerBasis::GroebnerBasis() : impl_(std::make_shared<Impl>()) {}

namespace {

class Builder {
 public:
  Builder(GroebnerBasis::Impl& impl, const std::vector<Polynomial>& gens, const GroebnerOptions& options)
      : impl_(impl), gens_(gens), options_(options), queue_(ItemLess{&impl.order}) {}

  void run() {
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      if (gens_[k].is_zero()) continue;
      const TermVec t = sorted_terms(gens_[k], impl_.order);
      if (skip_degree(t.front().monomial)) continue;
      queue_.insert(Item{t.front().monomial, seq_++, -static_cast<long>(k) - 1, 0});
    }
    while (!queue_.empty()) {
      const Item item = *queue_.begin();
      queue_.erase(queue_.begin());
      ++impl_.stats.pairs_considered;
      if (options_.max_pairs != 0 && impl_.stats.pairs_considered > options_.max_pairs)
        throw ResourceLimitError("Groebner basis computation exceeded " + std::to_string(options_.max_pairs) +
                                 " pairs; restrict the generators or lower the degree");
      ++impl_.stats.pairs_reduced;
      std::optional<Element> h = item.i < 0 ? reduce_generator(static_cast<std::size_t>(-item.i - 1))
                                            : reduce_spair(item.i, item.j, item.lcm);
      if (!h) {
        ++impl_.stats.zero_reductions;
        continue;
      }
      const long id = static_cast<long>(impl_.store.size());
      impl_.store.push_back(std::move(*h));
      update(id);
    }
    interreduce();
  }

 private:
  bool skip_degree(const Monomial& m) const {
    return options_.degree_limit && m.degree() > *options_.degree_limit;
  }

  std::vector<std::pair<long, const Element*>> reducers() const {
    std::vector<std::pair<long, const Element*>> r;
    r.reserve(g_.size());
    for (long id : g_) r.emplace_back(id, &impl_.store[static_cast<std::size_t>(id)]);
    return r;
  }

  // Turns a reduction result into a monic element, or nullopt when zero.
  std::optional<Element> finish(Reduction& red, std::map<long, Polynomial> sources) {
    TermVec& rem = red.remainder();
    if (rem.empty()) return std::nullopt;
    const Rational inv = 1 / rem.front().coeff;
    for (auto& [id, q] : red.quotients()) slot(sources, id, impl_.vars) -= to_poly(impl_.vars, std::move(q));
    Element e;
    for (auto& t : rem) t.coeff *= inv;
    e.terms = std::move(rem);
    e.mask = e.lm().support_mask();
    for (auto& [id, mult] : sources)
      if (!mult.is_zero()) e.derivation.push_back({id, mult.scaled(inv)});
    return e;
  }

  std::optional<Element> reduce_generator(std::size_t k) {
    Reduction red(impl_.order, sorted_terms(gens_[k], impl_.order));
    red.run(reducers());
    std::map<long, Polynomial> sources;
    slot(sources, -static_cast<long>(k) - 1, impl_.vars) = Polynomial::constant(impl_.vars, 1);
    return finish(red, std::move(sources));
  }

  std::optional<Element> reduce_spair(long a, long b, const Monomial& lcm) {
    const Element& ea = impl_.store[static_cast<std::size_t>(a)];
    const Element& eb = impl_.store[static_cast<std::size_t>(b)];
    const Monomial ma = lcm / ea.lm();
    const Monomial mb = lcm / eb.lm();
    // Both elements are monic, so the leading terms cancel.
    TermVec s;
    {
      Polynomial pa = to_poly(impl_.vars, ea.terms).times_term(ma, 1);
      Polynomial pb = to_poly(impl_.vars, eb.terms).times_term(mb, 1);
      s = sorted_terms(pa - pb, impl_.order);
    }
    Reduction red(impl_.order, std::move(s));
    red.run(reducers());
    std::map<long, Polynomial> sources;
    slot(sources, a, impl_.vars) += Polynomial::constant(impl_.vars, 1).times_term(ma, 1);
    slot(sources, b, impl_.vars) -= Polynomial::constant(impl_.vars, 1).times_term(mb, 1);
    return finish(red, std::move(sources));
  }

  const Monomial& lm(long id) const { return impl_.store[static_cast<std::size_t>(id)].lm(); }

  // Gebauer-Moeller installation of element h.
  void update(long h) {
    const Monomial& lh = lm(h);
    struct Cand {
      long g;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Cand> c;
    for (long g : g_) c.push_back({g, Monomial::lcm(lh, lm(g)), Monomial::coprime(lh, lm(g))});
    std::vector<Cand> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Cand& p = c[k];
      bool keep = p.coprime;
      if (!keep) {
        keep = true;
        for (std::size_t q = k + 1; q < c.size() && keep; ++q)
          if (c[q].lcm.divides(p.lcm)) keep = false;
        for (const auto& q : d)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) d.push_back(p);
    }
    for (auto it = queue_.begin(); it != queue_.end();) {
      if (it->i >= 0 && lh.divides(it->lcm) && Monomial::lcm(lm(it->i), lh) != it->lcm &&
          Monomial::lcm(lm(it->j), lh) != it->lcm)
        it = queue_.erase(it);
      else
        ++it;
    }
    for (const auto& p : d) {
      if (p.coprime || skip_degree(p.lcm)) continue;
      queue_.insert(Item{p.lcm, seq_++, p.g, h});
    }
    std::vector<long> next;
    for (long g : g_)
      if (!lh.divides(lm(g))) next.push_back(g);
    next.push_back(h);
    g_.swap(next);
  }

  void interreduce() {
    std::sort(g_.begin(), g_.end(), [&](long a, long b) { return impl_.order.compare(lm(a), lm(b)) < 0; });
    std::vector<std::size_t> final_ids;
    for (long g : g_) {
      std::vector<std::pair<long, const Element*>> others;
      for (long o : g_)
        if (o != g) others.emplace_back(o, &impl_.store[static_cast<std::size_t>(o)]);
      const Element& eg = impl_.store[static_cast<std::size_t>(g)];
      TermVec tail(eg.terms.begin() + 1, eg.terms.end());
      Reduction red(impl_.order, std::move(tail));
      red.run(others);
      if (red.quotients().empty()) {
        final_ids.push_back(static_cast<std::size_t>(g));
        continue;
      }
      Element e;
      e.terms.push_back(eg.terms.front());
      for (auto& t : red.remainder()) e.terms.push_back(std::move(t));
      e.mask = eg.mask;
      std::map<long, Polynomial> sources;
      slot(sources, g, impl_.vars) = Polynomial::constant(impl_.vars, 1);
      for (auto& [id, q] : red.quotients()) slot(sources, id, impl_.vars) -= to_poly(impl_.vars, std::move(q));
      for (auto& [id, mult] : sources)
        if (!mult.is_zero()) e.derivation.push_back({id, std::move(mult)});
      final_ids.push_back(impl_.store.size());
      impl_.store.push_back(std::move(e));
    }
    impl_.basis = std::move(final_ids);
    for (auto id : impl_.basis) impl_.elements.push_back(to_poly(impl_.vars, impl_.store[id].terms));
  }

  GroebnerBasis::Impl& impl_;
  const std::vector<Polynomial>& gens_;
  const GroebnerOptions& options_;
  std::set<Item, ItemLess> queue_;
  std::vector<long> g_;
  std::size_t seq_ = 0;
};

}  // namespace

GroebnerBasis GroebnerBasis::compute(const std::vector<Polynomial>& generators, const MonomialOrder& order,
                                     const GroebnerOptions& options) {
  auto impl = std::make_shared<Impl>();
  impl->order = order;
  impl->num_generators = generators.size();
  impl->degree_limit = options.degree_limit;
  impl->vars = generators.empty() ? Polynomial().vars() : generators.front().vars();
  for (const auto& g : generators)
    if (!same_ring(g.vars(), impl->vars)) throw DomainError("Groebner basis: generators from different rings");
  if (options.degree_limit) {
    if (!order.is_graded()) throw DomainError("Groebner basis: degree limit needs a graded order");
    for (const auto& g : generators)
      if (!g.is_homogeneous()) throw DomainError("Groebner basis: degree limit needs homogeneous generators");
  }
  Builder(*impl, generators, options).run();
  GroebnerBasis gb;
  gb.impl_ = std::move(impl);
  return gb;
}

const std::vector<Polynomial>& GroebnerBasis::elements() const { return impl_->elements; }

const Monomial& GroebnerBasis::leading_monomial(std::size_t i) const {
  return impl_->store[impl_->basis.at(i)].lm();
}

const MonomialOrder& GroebnerBasis::order() const { return impl_->order; }
std::size_t GroebnerBasis::num_generators() const { return impl_->num_generators; }
std::optional<int> GroebnerBasis::degree_limit() const { return impl_->degree_limit; }
const GroebnerStats& GroebnerBasis::stats() const { return impl_->stats; }

GroebnerBasis::Division GroebnerBasis::divide(const Polynomial& f) const {
  Division out;
  if (!impl_->elements.empty() && !same_ring(f.vars(), impl_->vars))
    throw DomainError("divide: polynomial from a different ring");
  const VarList& vars = impl_->elements.empty() ? f.vars() : impl_->vars;
  std::vector<std::pair<long, const Element*>> reducers;
  for (std::size_t i = 0; i < impl_->basis.size(); ++i)
    reducers.emplace_back(static_cast<long>(i), &impl_->store[impl_->basis[i]]);
  Reduction red(impl_->order, sorted_terms(f, impl_->order));
  red.run(reducers);
  out.remainder = to_poly(vars, std::move(red.remainder()));
  out.quotients.assign(impl_->basis.size(), Polynomial(vars));
  for (auto& [i, q] : red.quotients()) out.quotients[static_cast<std::size_t>(i)] = to_poly(vars, std::move(q));
  return out;
}

std::vector<Polynomial> GroebnerBasis::lift(const std::vector<Polynomial>& quotients) const {
  if (quotients.size() != impl_->basis.size()) throw DomainError("lift: one quotient per basis element expected");
  const VarList& vars = impl_->vars;
  std::vector<Polynomial> acc(impl_->store.size(), Polynomial(vars));
  for (std::size_t i = 0; i < quotients.size(); ++i) acc[impl_->basis[i]] += quotients[i];
  std::vector<Polynomial> out(impl_->num_generators, Polynomial(vars));
  // Derivations only refer to smaller ids, so one descending sweep suffices.
  for (std::size_t id = impl_->store.size(); id-- > 0;) {
    if (acc[id].is_zero()) continue;
    for (const auto& src : impl_->store[id].derivation) {
      Polynomial contrib = acc[id] * src.multiplier;
      if (src.id < 0) out[static_cast<std::size_t>(-src.id - 1)] += contrib;
      else acc[static_cast<std::size_t>(src.id)] += contrib;
    }
    acc[id] = Polynomial(vars);
  }
  return out;
}

std::vector<Polynomial> GroebnerBasis::cofactors(std::size_t i) const {
  std::vector<Polynomial> q(impl_->basis.size(), Polynomial(impl_->vars));
  q.at(i) = Polynomial::constant(impl_->vars, 1);
  return lift(q);
}

}  // namespace pfdkit
