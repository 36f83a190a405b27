#include <optional>

#include "pseudoadder/stats_engine.hpp"

namespace pseudoadder {

ChainCompatDag::ChainCompatDag(const ChainErrorTable& ec) : ec_(ec), vertices_(all_chains(ec.width())) {}

void ChainCompatDag::for_each_path(
    const std::function<void(const std::vector<CarryChain>&)>& visit) const {
  const int n = width();
  std::vector<CarryChain> path;
  std::function<void(int)> extend = [&](int min_start) {
    for (int i = min_start; i <= n; ++i) {
      for (int j = i; j <= n; ++j) {
        path.push_back({i, j});
        visit(path);
        extend(j + 1);
        path.pop_back();
      }
    }
  };
  extend(1);
}

namespace {

struct Best {
  BigInt value;
  CarryChain vertex;
};

// Best path weight starting at each vertex, in the direction given by
// `better` (greater-than for maxima, less-than for minima). Suffix bests
// over start positions make the whole pass O(n^2).
struct PathOptimum {
  std::optional<Best> overall;
  std::vector<std::optional<CarryChain>> next;  // by table index
};

template <typename Better>
PathOptimum optimize_paths(const ChainErrorTable& ec, Better better) {
  const int n = ec.width();
  PathOptimum out;
  out.next.assign(chain_count(n), std::nullopt);
  // suffix[s]: best over vertices with start >= s, ties to the smaller chain.
  std::vector<std::optional<Best>> suffix(static_cast<std::size_t>(n) + 2);

  for (int s = n; s >= 1; --s) {
    std::optional<Best> here = suffix[static_cast<std::size_t>(s) + 1];
    std::optional<Best> row;
    for (int j = s; j <= n; ++j) {
      const CarryChain v{s, j};
      const auto idx = ec.index(v);
      BigInt value = ec.at(v);
      const auto& tail = suffix[static_cast<std::size_t>(j) + 1];
      // Continue only on a strict gain: a path is lexicographically smaller
      // than any of its extensions.
      if (tail && better(tail->value, BigInt(0))) {
        value += tail->value;
        out.next[idx] = tail->vertex;
      }
      if (!row || better(value, row->value)) row = Best{value, v};
    }
    if (!here || !better(here->value, row->value)) here = row;
    suffix[static_cast<std::size_t>(s)] = here;
  }
  out.overall = suffix[1];
  return out;
}

ChainSet follow(const ChainErrorTable& ec, const PathOptimum& opt) {
  ChainSet set{ec.width(), {}};
  std::optional<CarryChain> v = opt.overall->vertex;
  while (v) {
    set.chains.push_back(*v);
    v = opt.next[ec.index(*v)];
  }
  return set;
}

}  // namespace

MaxAbsResult max_abs_error(const ChainErrorTable& ec) {
  const auto maxima = optimize_paths(ec, [](const BigInt& x, const BigInt& y) { return x > y; });
  const auto minima = optimize_paths(ec, [](const BigInt& x, const BigInt& y) { return x < y; });
  const BigInt& w_max = maxima.overall->value;
  const BigInt& w_min = minima.overall->value;

  MaxAbsResult r;
  r.witness.n = ec.width();
  if (w_max >= -w_min) {
    r.max_abs = w_max;
    if (r.max_abs != 0) {
      r.witness = follow(ec, maxima);
      r.witness_weight = w_max;
    }
  } else {
    r.max_abs = -w_min;
    r.witness = follow(ec, minima);
    r.witness_weight = w_min;
  }
  return r;
}

}  // namespace pseudoadder
