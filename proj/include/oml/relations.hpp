#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

// Finite binary relations as sets of pairs. Used for the closure tables and
// for extensions of derived relation types.

namespace oml::rel {

template <class A, class B>
using Relation = std::set<std::pair<A, B>>;

/// r ; s  =  {(a, c) | (a, b) in r and (b, c) in s}
template <class A, class B, class C>
Relation<A, C> compose(const Relation<A, B>& r, const Relation<B, C>& s) {
  std::multimap<B, C> bySource;
  for (const auto& [b, c] : s) bySource.emplace(b, c);
  Relation<A, C> out;
  for (const auto& [a, b] : r) {
    auto [lo, hi] = bySource.equal_range(b);
    for (auto it = lo; it != hi; ++it) out.emplace(a, it->second);
  }
  return out;
}

template <class A, class B>
Relation<B, A> transpose(const Relation<A, B>& r) {
  Relation<B, A> out;
  for (const auto& [a, b] : r) out.emplace(b, a);
  return out;
}

template <class A>
Relation<A, A> diagonal(const std::set<A>& xs) {
  Relation<A, A> out;
  for (const auto& x : xs) out.emplace(x, x);
  return out;
}

template <class A, class B>
bool includes(const Relation<A, B>& big, const Relation<A, B>& small) {
  for (const auto& p : small)
    if (!big.count(p)) return false;
  return true;
}

/// Least reflexive (on `nodes`) and transitive relation containing `r`.
template <class A>
Relation<A, A> reflexiveTransitiveClosure(const std::set<A>& nodes,
                                          const Relation<A, A>& r) {
  std::map<A, std::vector<A>> succ;
  for (const auto& [a, b] : r) succ[a].push_back(b);
  std::set<A> all = nodes;
  for (const auto& [a, b] : r) {
    all.insert(a);
    all.insert(b);
  }
  Relation<A, A> out;
  for (const auto& start : all) {
    std::vector<A> stack{start};
    std::set<A> seen{start};
    while (!stack.empty()) {
      A cur = stack.back();
      stack.pop_back();
      out.emplace(start, cur);
      auto it = succ.find(cur);
      if (it == succ.end()) continue;
      for (const auto& next : it->second)
        if (seen.insert(next).second) stack.push_back(next);
    }
  }
  return out;
}

}  // namespace oml::rel
