#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>

#include "boolsketch/errors.hpp"
#include "boolsketch/hypergraph.hpp"

namespace boolsketch {

namespace {

using Mask = std::uint32_t;
using Residual = std::unordered_map<Mask, std::int64_t>;

constexpr std::size_t kMaxSolutions = 4;
constexpr std::uint64_t kNodeBudget = 20'000'000;

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Every sub-mask of `mask` with an even popcount in [lo, hi].
template <typename Fn>
void for_even_submasks(Mask mask, int lo, int hi, Fn&& fn) {
  for (Mask sub = mask;; sub = (sub - 1) & mask) {
    const int bits = std::popcount(sub);
    if (bits % 2 == 0 && bits >= lo && bits <= hi) fn(sub);
    if (sub == 0) break;
  }
}

// Backtracking search over one component. Residuals are in units of 2^-d; an
// edge of size t adds 2^(d+1-t) to each of its even subsets.
class ComponentSearch {
 public:
  ComponentSearch(Residual residual, int k, int d) : start_(std::move(residual)), k_(k), d_(d) {}

  std::vector<std::vector<Mask>> run() {
    int top = d_ % 2 == 0 ? d_ : d_ - 1;
    // Support terms above the top level can never be explained.
    for (const auto& [mask, value] : start_) {
      if (std::popcount(mask) > top && value != 0) return {};
    }
    std::vector<Mask> chosen;
    level(start_, top, chosen);
    return std::move(solutions_);
  }

 private:
  void tick() {
    if (++nodes_ > kNodeBudget) {
      throw ComponentTooLarge("edges_from_polynomial: search budget exhausted");
    }
  }

  bool full() const { return solutions_.size() >= kMaxSolutions; }

  // Level j decides the odd edges of size j + 1 and the even edges of size j.
  void level(const Residual& res, int j, std::vector<Mask>& chosen) {
    tick();
    if (full()) return;
    if (j < 2) {
      for (const auto& kv : res) {
        if (kv.second != 0) return;
      }
      solutions_.push_back(chosen);
      std::sort(solutions_.back().begin(), solutions_.back().end());
      return;
    }
    const std::int64_t unit = std::int64_t{1} << (d_ - j);
    // r(J) = 2 e_J + o_J in units of 2^(d-j).
    std::vector<Mask> sets;
    std::unordered_map<Mask, std::int64_t> r;
    for (const auto& [mask, value] : res) {
      if (std::popcount(mask) != j || value == 0) continue;
      if (value < 0 || value % unit != 0) return;
      r.emplace(mask, value / unit);
      sets.push_back(mask);
    }
    std::sort(sets.begin(), sets.end());

    std::vector<Mask> candidates;
    if (j + 1 <= d_) {
      for (Mask s : sets) {
        const int high = 31 - std::countl_zero(s);
        for (int v = high + 1; v < k_; ++v) {
          const Mask cand = s | (Mask{1} << v);
          bool ok = true;
          for (Mask rest = cand; rest && ok; rest &= rest - 1) {
            ok = r.count(cand & ~(rest & (~rest + 1))) > 0;
          }
          if (ok) candidates.push_back(cand);
        }
      }
    }
    // Index of the last candidate covering each set; -1 when none does.
    std::unordered_map<Mask, int> last;
    for (Mask s : sets) last[s] = -1;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      for (Mask rest = candidates[i]; rest; rest &= rest - 1) {
        last[candidates[i] & ~(rest & (~rest + 1))] = static_cast<int>(i);
      }
    }
    std::vector<std::vector<Mask>> closes(candidates.size() + 1);
    for (Mask s : sets) {
      const int at = last[s];
      closes[static_cast<std::size_t>(at + 1)].push_back(s);
    }
    std::unordered_map<Mask, std::int64_t> used;
    std::vector<Mask> odd;
    for (Mask s : closes[0]) {
      if (r[s] != 0 && r[s] != 2) return;
    }
    pick(res, j, 0, candidates, closes, r, used, odd, chosen);
  }

  void pick(const Residual& res, int j, std::size_t i, const std::vector<Mask>& candidates,
            const std::vector<std::vector<Mask>>& closes,
            const std::unordered_map<Mask, std::int64_t>& r,
            std::unordered_map<Mask, std::int64_t>& used, std::vector<Mask>& odd,
            std::vector<Mask>& chosen) {
    tick();
    if (full()) return;
    if (i == candidates.size()) {
      finish(res, j, r, used, odd, chosen);
      return;
    }
    const Mask cand = candidates[i];
    auto closed_ok = [&] {
      for (Mask s : closes[i + 1]) {
        const std::int64_t left = r.at(s) - used[s];
        if (left != 0 && left != 2) return false;
      }
      return true;
    };
    // Include.
    bool fits = true;
    for (Mask rest = cand; rest; rest &= rest - 1) {
      const Mask face = cand & ~(rest & (~rest + 1));
      if (++used[face] > r.at(face)) fits = false;
    }
    if (fits && closed_ok()) {
      odd.push_back(cand);
      pick(res, j, i + 1, candidates, closes, r, used, odd, chosen);
      odd.pop_back();
    }
    for (Mask rest = cand; rest; rest &= rest - 1) --used[cand & ~(rest & (~rest + 1))];
    // Exclude.
    if (closed_ok()) pick(res, j, i + 1, candidates, closes, r, used, odd, chosen);
  }

  void finish(const Residual& res, int j, const std::unordered_map<Mask, std::int64_t>& r,
              std::unordered_map<Mask, std::int64_t>& used, const std::vector<Mask>& odd,
              std::vector<Mask>& chosen) {
    std::vector<Mask> even;
    for (const auto& [mask, value] : r) {
      const std::int64_t left = value - used[mask];
      if (left == 2) even.push_back(mask);
    }
    Residual next = res;
    for (const auto& kv : r) next.erase(kv.first);
    auto subtract = [&](Mask edge, int below) {
      const std::int64_t amount = std::int64_t{1} << (d_ + 1 - std::popcount(edge));
      bool ok = true;
      for_even_submasks(edge, 2, below, [&](Mask sub) {
        auto it = next.find(sub);
        if (it == next.end() || it->second < amount) {
          ok = false;
        } else {
          it->second -= amount;
        }
      });
      return ok;
    };
    const std::size_t mark = chosen.size();
    bool ok = true;
    for (Mask e : odd) {
      ok = ok && subtract(e, j - 2);
      chosen.push_back(e);
    }
    for (Mask e : even) {
      ok = ok && subtract(e, j - 2);
      chosen.push_back(e);
    }
    if (ok) {
      std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
      level(next, j - 2, chosen);
    }
    chosen.resize(mark);
  }

  Residual start_;
  int k_;
  int d_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<Mask>> solutions_;
};

double constant_of(const std::vector<Mask>& edges) {
  double total = 0.0;
  for (Mask e : edges) total += std::ldexp(1.0, 1 - std::popcount(e));
  return total;
}

}  // namespace

Hypergraph edges_from_polynomial(const SparsePolynomial& p, std::size_t d, std::size_t k_cap) {
  const std::size_t n = p.dimension();
  if (d < 2 || d > 30) throw InvalidArgument("edges_from_polynomial: d must be in [2, 30]");
  k_cap = std::min<std::size_t>(k_cap, 31);
  const double scale = std::ldexp(1.0, static_cast<int>(d));

  double constant = 0.0;
  std::vector<std::pair<std::vector<std::size_t>, std::int64_t>> terms;
  for (const auto& [set, coeff] : p.terms()) {
    if (set.is_empty()) {
      constant = coeff;
      continue;
    }
    const std::size_t deg = set.degree();
    if (deg % 2 != 0) {
      throw NoConsistentHypergraph("edges_from_polynomial: odd-degree term in the polynomial");
    }
    const double units = coeff * scale;
    const double rounded = std::round(units);
    if (std::abs(units - rounded) > 1e-6 || rounded <= 0.0) {
      throw NoConsistentHypergraph(
          "edges_from_polynomial: coefficient is not a positive multiple of 2^-d");
    }
    terms.emplace_back(set.indices(), static_cast<std::int64_t>(rounded));
  }

  UnionFind uf(n);
  for (const auto& t : terms) {
    for (std::size_t i = 1; i < t.first.size(); ++i) uf.unite(t.first[0], t.first[i]);
  }
  std::unordered_map<std::size_t, std::vector<std::size_t>> members;
  for (const auto& t : terms) {
    for (std::size_t v : t.first) members[uf.find(v)];
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto it = members.find(uf.find(v));
    if (it != members.end()) it->second.push_back(v);
  }
  std::vector<std::vector<std::size_t>> components;
  for (auto& kv : members) {
    auto& vs = kv.second;
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    if (vs.size() > k_cap) {
      throw ComponentTooLarge("edges_from_polynomial: component of " + std::to_string(vs.size()) +
                              " vertices exceeds the cap of " + std::to_string(k_cap));
    }
    components.push_back(vs);
  }
  std::sort(components.begin(), components.end());

  std::vector<std::size_t> owner(n, 0);
  std::vector<Mask> local(n, 0);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (std::size_t i = 0; i < components[c].size(); ++i) {
      owner[components[c][i]] = c;
      local[components[c][i]] = Mask{1} << i;
    }
  }
  std::vector<Residual> residuals(components.size());
  for (const auto& t : terms) {
    Mask m = 0;
    for (std::size_t v : t.first) m |= local[v];
    residuals[owner[t.first.front()]][m] = t.second;
  }

  std::vector<std::vector<std::vector<Mask>>> found(components.size());
  double fixed = 0.0;
  std::size_t open = components.size();
  for (std::size_t c = 0; c < components.size(); ++c) {
    ComponentSearch search(std::move(residuals[c]), static_cast<int>(components[c].size()),
                           static_cast<int>(d));
    found[c] = search.run();
    if (found[c].empty()) {
      throw NoConsistentHypergraph("edges_from_polynomial: no hypergraph matches a component");
    }
    if (found[c].size() == 1) {
      fixed += constant_of(found[c].front());
    } else if (open != components.size()) {
      throw AmbiguousHypergraph("edges_from_polynomial: several hypergraphs match");
    } else {
      open = c;
    }
  }
  // The constant term can still single out one solution of an ambiguous component.
  if (open != components.size()) {
    std::vector<std::vector<Mask>> keep;
    for (auto& sol : found[open]) {
      if (std::abs(fixed + constant_of(sol) - constant) <= 1e-6) keep.push_back(std::move(sol));
    }
    if (keep.empty()) {
      throw NoConsistentHypergraph("edges_from_polynomial: constant term does not match");
    }
    if (keep.size() > 1) {
      throw AmbiguousHypergraph("edges_from_polynomial: several hypergraphs match");
    }
    fixed += constant_of(keep.front());
    found[open] = std::move(keep);
  }
  if (std::abs(fixed - constant) > 1e-6) {
    throw NoConsistentHypergraph("edges_from_polynomial: constant term does not match");
  }

  Hypergraph g(n);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (Mask e : found[c].front()) {
      Edge edge;
      for (Mask rest = e; rest; rest &= rest - 1) {
        edge.push_back(static_cast<Vertex>(components[c][std::countr_zero(rest)]));
      }
      g.add_edge(std::move(edge));
    }
  }
  return g;
}

}  // namespace boolsketch
