#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "pseudoadder/core_model.hpp"

namespace pseudoadder {

/// Carry chains generated by one input pair, ascending by start position.
/// Intervals are pairwise disjoint: for consecutive chains j1 < i2.
struct ChainSet {
  int n = 0;
  std::vector<CarryChain> chains;

  bool empty() const { return chains.empty(); }
  friend bool operator==(const ChainSet&, const ChainSet&) = default;
};

ChainSet detect_chains(const InputPair& p);

/// True iff (i, j) is one of the chains generated by p.
bool chain_predicate(const InputPair& p, int i, int j);

/// Keeps the generate position and propagate bits of `c` from `witness` and
/// zeroes every other position. The result generates exactly {c}.
/// Throws PreconditionError when the witness does not generate c.
InputPair isolate_chain(const CarryChain& c, const InputPair& witness, int n);

/// The canonical generating pair for c: both operands carry the generate bit
/// at i-1, the propagate bits i..j-1 all sit on the first operand.
InputPair canonical_chain_pair(const CarryChain& c, int n);

/// An input pair generating exactly the given disjoint chains.
/// Throws std::invalid_argument when two chains overlap or are unsorted.
InputPair realize_chain_set(int n, const std::vector<CarryChain>& chains);

struct ErrorDecomposition {
  std::int64_t total = 0;
  std::vector<std::pair<CarryChain, BigInt>> terms;
};

/// Per-chain error terms EC(C) for the chains of p, and their sum.
ErrorDecomposition decompose_error(const InputPair& p, const ChainErrorTable& ec);

/// The highest-starting chain of p with a nonzero error, if any.
std::optional<CarryChain> dominating_chain(const InputPair& p, const ChainErrorTable& ec);

/// Sum of 2^k (s_k - s'_k) over the chain's positions i..j.
std::int64_t chain_local_error(const CarryChain& c, std::uint64_t s, std::uint64_t s_prime);

/// A table every entry of which some conservative adder could produce: for
/// each chain, s' on the canonical probe keeps the true bits outside i..j and
/// takes random bits inside, so EC(C) = 2^j - sum_{k=i..j} 2^k s'_k.
/// With probability `zero_fraction` the entry is forced to 0.
ChainErrorTable random_realizable_table(int n, std::mt19937_64& rng, double zero_fraction = 0.2);

}  // namespace pseudoadder
