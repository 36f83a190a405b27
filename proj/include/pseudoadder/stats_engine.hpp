#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pseudoadder/chain_analysis.hpp"
#include "pseudoadder/core_model.hpp"
#include "pseudoadder/netlist.hpp"

namespace pseudoadder {

/// Pair counts split by the sign class of the dominating chain.
struct SignCounts {
  BigInt plus = 0;
  BigInt minus = 0;
  BigInt none = 0;

  BigInt total() const { return plus + minus + none; }
  friend bool operator==(const SignCounts&, const SignCounts&) = default;
};

/// Suffix counts over positions t..n-1, classified by the sign of the
/// highest error-contributing chain whose generate position is >= t.
///
/// free_boundary[t] ("F") leaves position t unconstrained; equal_boundary[t]
/// ("G") restricts position t to the equal digits 00 or 11, which is the
/// situation right after a chain ending at t. Both have n+1 entries and the
/// t = n entry is the empty suffix, class none.
///
/// below_boundary[m] ("H") covers positions 0..m-1 with position m holding an
/// equal digit, classified by the highest error-contributing chain below m.
/// A chain with zero error can be dominated from below, and H supplies that
/// part of its signed counts.
struct SuffixClassCounts {
  int n = 0;
  std::vector<SignCounts> free_boundary;
  std::vector<SignCounts> equal_boundary;
  std::vector<SignCounts> below_boundary;
};

SuffixClassCounts suffix_counts(const ChainErrorTable& ec);

/// nu(C): number of pairs of width n generating c.
BigInt nu_single(int n, const CarryChain& c);

/// nu(C1, C2): pairs generating both chains (either order); 0 if they overlap.
BigInt nu_pair(int n, const CarryChain& c1, const CarryChain& c2);

/// Pairs generating ij and pq where pq is the topmost chain: no generate
/// digit at positions q..n-1. Requires q >= p > j >= i >= 1.
BigInt count_dominated_pairs(int n, const CarryChain& ij, const CarryChain& pq);

struct SignedCount {
  BigInt plus = 0;
  BigInt minus = 0;
};

/// nu^+(C) and nu^-(C): pairs generating c whose dominating chain has a
/// positive (negative) error.
SignedCount nu_signed(const ChainErrorTable& ec, const SuffixClassCounts& counts,
                      const CarryChain& c);

struct MaxAbsResult {
  BigInt max_abs = 0;
  /// Chains whose co-occurrence realizes the maximum; empty when it is 0.
  ChainSet witness;
  BigInt witness_weight = 0;
};

struct StatsReport {
  int n = 0;
  /// Sum over all 4^n pairs of |s - s'|.
  BigInt sae = 0;
  ExactRational er_avg;
  std::optional<ExactRational> mse;
  std::optional<MaxAbsResult> max_abs;
  std::map<CarryChain, BigInt> nu_plus;
  std::map<CarryChain, BigInt> nu_minus;
  std::map<CarryChain, double> p_plus;
  std::map<CarryChain, double> p_minus;
};

/// SAE = sum_C EC(C) (nu^+(C) - nu^-(C)) and Er_avg = SAE / 4^n, with the
/// per-chain signed counts and their probabilities. Theta(n^2) count work.
StatsReport er_avg_fast(const ChainErrorTable& ec);

/// SAE = sum_C EC(C) nu(C); valid only when no entry is negative.
/// Throws PreconditionError naming the first negative chain.
ExactRational er_avg_rca(const ChainErrorTable& ec);

/// Mean squared error, sum_C nu(C) EC(C)^2 + sum_{C1 != C2} nu(C1,C2) EC(C1) EC(C2)
/// over 4^n, with the cross sum over ordered pairs. Evaluated in O(n^2) by
/// factoring nu(C1, C2) into per-chain left and right parts.
ExactRational mse_fast(const ChainErrorTable& ec);

/// The same quantity summed chain pair by chain pair, Theta(n^4).
ExactRational mse_pairwise(const ChainErrorTable& ec);

/// Vertex-weighted DAG of all chains with an edge (i1,j1) -> (i2,j2) iff
/// j1 < i2. Paths are exactly the realizable non-empty chain sets.
class ChainCompatDag {
 public:
  explicit ChainCompatDag(const ChainErrorTable& ec);

  int width() const { return ec_.width(); }
  const std::vector<CarryChain>& vertices() const { return vertices_; }
  const BigInt& weight(const CarryChain& v) const { return ec_.at(v); }
  static bool has_edge(const CarryChain& from, const CarryChain& to) { return from.j < to.i; }

  /// Calls visit for every non-empty path in lexicographic order. Intended
  /// for small widths; the number of paths grows exponentially.
  void for_each_path(const std::function<void(const std::vector<CarryChain>&)>& visit) const;

 private:
  const ChainErrorTable& ec_;
  std::vector<CarryChain> vertices_;
};

/// max |s - s'| = max(-w_min, w_max) over non-empty paths of the chain DAG.
/// Ties prefer the positive path, then the lexicographically smallest chain
/// list.
MaxAbsResult max_abs_error(const ChainErrorTable& ec);

/// All fast measures for one table.
StatsReport analyze(const ChainErrorTable& ec);

class OracleLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleOptions {
  int limit = 10;
  bool force = false;
  /// Worker threads; 0 = hardware concurrency.
  unsigned jobs = 0;
};

/// Oracle width gate: PSEUDOADDER_ORACLE_LIMIT if set and valid, otherwise
/// `fallback`.
int oracle_limit_from_env(int fallback = 10);

/// Exhaustive ground truth: simulates all 4^n pairs and accumulates |s - s'|,
/// (s - s')^2 and max |s - s'|. Independent of the chain model.
StatsReport sae_oracle_simulate(const Netlist& net, double T, const OracleOptions& opts = {});

/// Exhaustive evaluation of sum |sum_{C in chains(a,b)} EC(C)| with the
/// nu^+/nu^- tallies by dominating-chain sign.
StatsReport sae_oracle_chains(const ChainErrorTable& ec, const OracleOptions& opts = {});

}  // namespace pseudoadder
