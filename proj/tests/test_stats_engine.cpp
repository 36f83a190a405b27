#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <optional>
#include <random>
#include <set>

#include "pseudoadder/simulator.hpp"
#include "pseudoadder/stats_engine.hpp"
#include "support/oracles.hpp"

using namespace pseudoadder;

namespace {

bool generates(int n, std::uint64_t a, std::uint64_t b, const CarryChain& c) {
  for (const auto& [i, j] : oracle::chains_by_definition(n, a, b)) {
    if (i == c.i && j == c.j) return true;
  }
  return false;
}

// No generate digit (11) at positions from..n-1.
bool quiet_above(std::uint64_t a, std::uint64_t b, int from, int n) {
  for (int k = from; k < n; ++k) {
    if (oracle::bit_of(a, k) == 1 && oracle::bit_of(b, k) == 1) return false;
  }
  return true;
}

ExactRational over_pairs(std::int64_t total, int n) { return ExactRational(BigInt(total), pair_space(n)); }

void check_against_oracle(const ChainErrorTable& ec) {
  const int n = ec.width();
  const auto truth = oracle::exhaustive_totals(n, oracle::table_from(ec));
  const auto fast = analyze(ec);
  REQUIRE(fast.sae == truth.sae);
  REQUIRE(fast.er_avg == over_pairs(truth.sae, n));
  REQUIRE(*fast.mse == over_pairs(truth.sum_sq, n));
  REQUIRE(mse_pairwise(ec) == *fast.mse);
  REQUIRE(fast.max_abs->max_abs == truth.max_abs);
  for (const auto& c : all_chains(n)) {
    const oracle::Chain key{c.i, c.j};
    const auto plus = truth.nu_plus.count(key) ? truth.nu_plus.at(key) : 0;
    const auto minus = truth.nu_minus.count(key) ? truth.nu_minus.at(key) : 0;
    REQUIRE(fast.nu_plus.at(c) == plus);
    REQUIRE(fast.nu_minus.at(c) == minus);
    REQUIRE(fast.p_plus.at(c) == doctest::Approx(std::ldexp(double(plus), -2 * n)));
    REQUIRE(fast.p_minus.at(c) == doctest::Approx(std::ldexp(double(minus), -2 * n)));
  }
}

}  // namespace

TEST_CASE("nu_single examples") {
  CHECK(nu_single(8, {2, 4}) == 2048);
  CHECK(nu_single(1, {1, 1}) == 1);
  CHECK(nu_single(4, {1, 4}) == 8);
  CHECK_THROWS_AS(nu_single(4, {2, 5}), std::invalid_argument);
}

TEST_CASE("nu_single equals enumeration (n <= 8)") {
  for (int n = 1; n <= 8; ++n) {
    for (const auto& c : all_chains(n)) {
      const auto count = oracle::count_pairs(n, [&](std::uint64_t a, std::uint64_t b) { return generates(n, a, b, c); });
      REQUIRE(nu_single(n, c) == count);
    }
  }
}

TEST_CASE("nu_pair examples") {
  const auto adjacent = oracle::count_pairs(4, [](std::uint64_t a, std::uint64_t b) {
    return generates(4, a, b, {1, 1}) && generates(4, a, b, {2, 2});
  });
  CHECK(nu_pair(4, {1, 1}, {2, 2}) == adjacent);
  CHECK(nu_pair(4, {2, 2}, {1, 1}) == adjacent);

  const auto worked = oracle::count_pairs(8, [](std::uint64_t a, std::uint64_t b) {
    return generates(8, a, b, {2, 4}) && generates(8, a, b, {5, 7});
  });
  CHECK(nu_pair(8, {2, 4}, {5, 7}) == worked);
  CHECK(generates(8, 86, 59, {2, 4}));
  CHECK(generates(8, 86, 59, {5, 7}));

  CHECK(nu_pair(4, {1, 3}, {2, 4}) == 0);
  CHECK(nu_pair(4, {1, 3}, {3, 4}) == 0);
}

TEST_CASE("nu_pair equals enumeration for every chain pair (n <= 6)") {
  for (int n = 2; n <= 6; ++n) {
    const auto chains = all_chains(n);
    for (const auto& c1 : chains) {
      for (const auto& c2 : chains) {
        if (!(c1 < c2)) continue;
        const auto count = oracle::count_pairs(n, [&](std::uint64_t a, std::uint64_t b) {
          return generates(n, a, b, c1) && generates(n, a, b, c2);
        });
        REQUIRE(nu_pair(n, c1, c2) == count);
      }
    }
  }
}

TEST_CASE("count_dominated_pairs equals enumeration of the per-position conditions (n <= 6)") {
  for (int n = 2; n <= 6; ++n) {
    for (const auto& ij : all_chains(n)) {
      for (const auto& pq : all_chains(n)) {
        if (pq.i <= ij.j) continue;
        const auto count = oracle::count_pairs(n, [&](std::uint64_t a, std::uint64_t b) {
          return generates(n, a, b, ij) && generates(n, a, b, pq) && quiet_above(a, b, pq.j, n);
        });
        REQUIRE(count_dominated_pairs(n, ij, pq) == count);
      }
    }
  }
}

TEST_CASE("count_dominated_pairs edge cases") {
  // p = j + 2 leaves no free position between the chains; only digit j
  // (00 here, since 11 would start a chain at j+1) is constrained.
  const auto gapless = oracle::count_pairs(6, [](std::uint64_t a, std::uint64_t b) {
    return generates(6, a, b, {1, 2}) && generates(6, a, b, {4, 5}) && quiet_above(a, b, 5, 6);
  });
  CHECK(count_dominated_pairs(6, {1, 2}, {4, 5}) == gapless);
  CHECK(count_dominated_pairs(6, {1, 2}, {4, 5}) == 8);
  CHECK_THROWS_AS(count_dominated_pairs(6, {2, 4}, {4, 5}), std::invalid_argument);
  CHECK_THROWS_AS(count_dominated_pairs(6, {2, 4}, {1, 1}), std::invalid_argument);
}

TEST_CASE("suffix counts") {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 10; ++n) {
    const auto ec = random_realizable_table(n, rng, 0.3);
    const auto counts = suffix_counts(ec);
    REQUIRE(counts.free_boundary.size() == static_cast<std::size_t>(n) + 1);
    CHECK(counts.free_boundary[static_cast<std::size_t>(n)] == SignCounts{0, 0, 1});
    CHECK(counts.equal_boundary[static_cast<std::size_t>(n)] == SignCounts{0, 0, 1});
    for (int t = 0; t <= n; ++t) {
      const auto ut = static_cast<std::size_t>(t);
      CHECK(counts.free_boundary[ut].total() == pow4(n - t));
      CHECK(counts.equal_boundary[ut].total() == (t < n ? 2 * pow4(n - t - 1) : BigInt(1)));
      CHECK(counts.below_boundary[ut].total() == pow4(t));
    }
  }
  const auto zero = suffix_counts(ChainErrorTable(7));
  for (int t = 0; t <= 7; ++t) {
    CHECK(zero.free_boundary[static_cast<std::size_t>(t)] == SignCounts{0, 0, pow4(7 - t)});
  }
}

TEST_CASE("nu_signed on a single erring chain") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& c : all_chains(n)) {
      ChainErrorTable ec(n);
      ec.set(c, 1);
      const auto nu = nu_signed(ec, suffix_counts(ec), c);
      CHECK(nu.plus == nu_single(n, c));
      CHECK(nu.minus == 0);
    }
  }
}

TEST_CASE("signed counts bound the chain count, with equality when no entry is zero") {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 9; ++n) {
    const auto sparse = random_realizable_table(n, rng, 0.5);
    const auto r = er_avg_fast(sparse);
    for (const auto& c : all_chains(n)) CHECK(r.nu_plus.at(c) + r.nu_minus.at(c) <= nu_single(n, c));

    ChainErrorTable dense(n);
    for (const auto& c : all_chains(n)) dense.set(c, (c.i + c.j) % 3 == 0 ? -pow2(c.i) : pow2(c.i));
    const auto d = er_avg_fast(dense);
    for (const auto& c : all_chains(n)) CHECK(d.nu_plus.at(c) + d.nu_minus.at(c) == nu_single(n, c));
  }
}

TEST_CASE("a chain of error -6 under dominators of signs +, -, + contributes (-6)(2-1)") {
  ChainErrorTable ec(4);
  ec.set({1, 1}, -6);
  ec.set({3, 3}, 8);
  ec.set({3, 4}, -8);
  ec.set({4, 4}, 16);
  const std::vector<InputPair> meetings{InputPair(4, 5, 5), InputPair(4, 13, 5), InputPair(4, 9, 9)};
  const std::vector<CarryChain> dominators{{3, 3}, {3, 4}, {4, 4}};
  BigInt contribution = 0;
  for (std::size_t k = 0; k < meetings.size(); ++k) {
    const auto& p = meetings[k];
    REQUIRE(detect_chains(p).chains == std::vector<CarryChain>{{1, 1}, dominators[k]});
    REQUIRE(dominating_chain(p, ec) == dominators[k]);
    const auto total = decompose_error(p, ec).total;
    REQUIRE(sign_of(BigInt(total)) == sign_of(ec.at(dominators[k])));
    contribution += sign_of(BigInt(total)) * ec.at(1, 1);
  }
  CHECK(contribution == BigInt(-6) * (2 - 1));

  // Over every pair generating (1,1), the same assembly gives ec * (nu+ - nu-).
  const auto nu = nu_signed(ec, suffix_counts(ec), {1, 1});
  BigInt brute = 0;
  oracle::for_each_pair(4, [&](std::uint64_t a, std::uint64_t b) {
    const InputPair p(4, a, b);
    if (!chain_predicate(p, 1, 1)) return;
    brute += sign_of(BigInt(decompose_error(p, ec).total)) * ec.at(1, 1);
  });
  CHECK(brute == ec.at(1, 1) * (nu.plus - nu.minus));
}

TEST_CASE("zero tables") {
  for (int n : {1, 5, 16}) {
    const auto r = analyze(ChainErrorTable(n));
    CHECK(r.sae == 0);
    CHECK(r.er_avg == ExactRational());
    CHECK(*r.mse == ExactRational());
    CHECK(r.max_abs->max_abs == 0);
    CHECK(r.max_abs->witness.empty());
    CHECK(er_avg_rca(ChainErrorTable(n)) == ExactRational());
  }
}

TEST_CASE("fast statistics equal exhaustive enumeration on random realizable tables") {
  std::mt19937_64 rng(12);
  for (int n = 1; n <= 7; ++n) {
    for (int t = 0; t < 8; ++t) check_against_oracle(random_realizable_table(n, rng, t % 3 == 0 ? 0.6 : 0.1));
  }
}

TEST_CASE("the chain oracle agrees with enumeration and is partition independent") {
  std::mt19937_64 rng(13);
  for (int n : {3, 5, 6}) {
    const auto ec = random_realizable_table(n, rng);
    const auto truth = oracle::exhaustive_totals(n, oracle::table_from(ec));
    const auto one = sae_oracle_chains(ec, {10, false, 1});
    const auto three = sae_oracle_chains(ec, {10, false, 3});
    CHECK(one.sae == truth.sae);
    CHECK(*one.mse == over_pairs(truth.sum_sq, n));
    CHECK(one.max_abs->max_abs == truth.max_abs);
    CHECK(one.sae == three.sae);
    CHECK(*one.mse == *three.mse);
    CHECK(one.nu_plus == three.nu_plus);
    CHECK(one.nu_minus == three.nu_minus);
    CHECK(one.nu_plus == er_avg_fast(ec).nu_plus);
  }
  CHECK(sae_oracle_chains(ChainErrorTable(4)).sae == 0);
}

TEST_CASE("the worked pair contributes 80") {
  ChainErrorTable ec(8);
  ec.set({2, 4}, 16);
  ec.set({5, 7}, -96);
  CHECK(std::abs(decompose_error(InputPair(8, 86, 59), ec).total) == 80);
  const auto full = sae_oracle_chains(ec);
  // Dropping the pair's chains from the table removes its 80 from the total.
  BigInt without = 0;
  oracle::for_each_pair(8, [&](std::uint64_t a, std::uint64_t b) {
    if (a == 86 && b == 59) return;
    without += std::abs(decompose_error(InputPair(8, a, b), ec).total);
  });
  CHECK(full.sae - without == 80);
  CHECK(full.sae == er_avg_fast(ec).sae);
}

TEST_CASE("er_avg_rca") {
  std::mt19937_64 rng(4);
  for (int n = 1; n <= 8; ++n) {
    ChainErrorTable ec = random_realizable_table(n, rng);
    for (const auto& c : all_chains(n)) {
      if (ec.at(c) < 0) ec.set(c, -ec.at(c));
    }
    CHECK(er_avg_rca(ec) == er_avg_fast(ec).er_avg);
    if (n <= 6) CHECK(er_avg_rca(ec) == over_pairs(oracle::exhaustive_totals(n, oracle::table_from(ec)).sae, n));
  }
  ChainErrorTable bad(4);
  bad.set({2, 3}, -1);
  CHECK_THROWS_WITH_AS(er_avg_rca(bad), doctest::Contains("(2,3)"), PreconditionError);
}

TEST_CASE("ripple tables have no negative signed counts") {
  for (int n = 2; n <= 6; ++n) {
    const Netlist net = generate_rca(n, std::vector<double>(static_cast<std::size_t>(n), 1),
                                     std::vector<double>(static_cast<std::size_t>(n) + 1, 1));
    for (double T = 0; T <= net.settle_time(); T += 1) {
      const auto ec = extract_ec_table(net, T);
      const auto r = er_avg_fast(ec);
      for (const auto& [c, v] : r.nu_minus) REQUIRE(v == 0);
      REQUIRE(er_avg_rca(ec) == r.er_avg);
    }
  }
}

TEST_CASE("mse examples") {
  for (int e : {-3, 1, 2}) {
    ChainErrorTable ec(1);
    ec.set({1, 1}, e);
    CHECK(mse_fast(ec) == ExactRational(BigInt(e * e), BigInt(4)));
    CHECK(mse_pairwise(ec) == mse_fast(ec));
  }
  CHECK(mse_fast(ChainErrorTable(6)) == ExactRational());
}

TEST_CASE("max_abs_error on the two-bit example") {
  ChainErrorTable ec(2);
  ec.set({1, 1}, 2);
  ec.set({1, 2}, -3);
  ec.set({2, 2}, 1);
  const auto r = max_abs_error(ec);
  CHECK(r.max_abs == 3);
  CHECK(r.witness.chains == std::vector<CarryChain>{{1, 1}, {2, 2}});
  CHECK(r.witness_weight == 3);

  std::int64_t brute = 0;
  oracle::for_each_pair(2, [&](std::uint64_t a, std::uint64_t b) {
    std::int64_t e = 0;
    for (const auto& c : oracle::chains_by_definition(2, a, b)) e += oracle::lookup(oracle::table_from(ec), c);
    brute = std::max(brute, std::abs(e));
  });
  CHECK(brute == 3);
}

TEST_CASE("max_abs_error tie-breaking") {
  // Equal magnitudes of opposite sign: the positive path wins, and a
  // zero-weight chain in front of it gives a smaller chain list.
  ChainErrorTable ec(3);
  ec.set({1, 1}, -4);
  ec.set({3, 3}, 4);
  auto r = max_abs_error(ec);
  CHECK(r.max_abs == 4);
  CHECK(r.witness_weight == 4);
  CHECK(r.witness.chains == std::vector<CarryChain>{{1, 2}, {3, 3}});

  // Tie-heavy tables against a brute-force selection over all paths.
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> small(-2, 2);
  for (int n = 1; n <= 5; ++n) {
    for (int t = 0; t < 40; ++t) {
      ChainErrorTable tied(n);
      for (const auto& c : all_chains(n)) tied.set(c, small(rng));
      std::optional<std::pair<BigInt, std::vector<CarryChain>>> pick;
      ChainCompatDag(tied).for_each_path([&](const std::vector<CarryChain>& path) {
        BigInt w = 0;
        for (const auto& c : path) w += tied.at(c);
        if (w == 0) return;
        if (!pick || abs(w) > abs(pick->first) ||
            (abs(w) == abs(pick->first) &&
             (w > pick->first || (w == pick->first && path < pick->second)))) {
          pick = std::make_pair(w, path);
        }
      });
      r = max_abs_error(tied);
      if (!pick) {
        REQUIRE(r.max_abs == 0);
        REQUIRE(r.witness.empty());
        continue;
      }
      REQUIRE(r.witness_weight == pick->first);
      REQUIRE(r.witness.chains == pick->second);
    }
  }
}

TEST_CASE("chain DAG structure") {
  CHECK(ChainCompatDag::has_edge({4, 8}, {9, 10}));
  CHECK_FALSE(ChainCompatDag::has_edge({4, 8}, {7, 10}));
  CHECK_FALSE(ChainCompatDag::has_edge({4, 8}, {8, 10}));
  CHECK(ChainCompatDag::has_edge({9, 10}, {12, 14}));

  ChainErrorTable ec(16);
  const ChainCompatDag dag(ec);
  CHECK(dag.vertices().size() == chain_count(16));
  ChainErrorTable small(5);
  const ChainCompatDag dag5(small);
  bool found = false;
  std::size_t paths = 0;
  dag5.for_each_path([&](const std::vector<CarryChain>& path) {
    ++paths;
    for (std::size_t k = 1; k < path.size(); ++k) REQUIRE(ChainCompatDag::has_edge(path[k - 1], path[k]));
    if (path == std::vector<CarryChain>{{1, 2}, {3, 3}, {4, 5}}) found = true;
  });
  CHECK(found);
  std::size_t sets = 0;
  oracle::for_each_disjoint_set(5, [&](const std::vector<oracle::Chain>&) { ++sets; });
  CHECK(paths == sets);
}

TEST_CASE("paths of the chain DAG are exactly the realized chain sets (n <= 5)") {
  for (int n = 1; n <= 5; ++n) {
    std::set<std::vector<oracle::Chain>> realized;
    oracle::for_each_pair(n, [&](std::uint64_t a, std::uint64_t b) {
      const auto cs = oracle::chains_by_definition(n, a, b);
      if (!cs.empty()) realized.insert(cs);
    });
    std::set<std::vector<oracle::Chain>> paths;
    ChainErrorTable ec(n);
    ChainCompatDag(ec).for_each_path([&](const std::vector<CarryChain>& path) {
      std::vector<oracle::Chain> p;
      for (const auto& c : path) p.emplace_back(c.i, c.j);
      paths.insert(p);
      REQUIRE(detect_chains(realize_chain_set(n, path)).chains == path);
    });
    CHECK(paths == realized);
  }
}

TEST_CASE("max_abs_error equals the best path and the best pair (n <= 5)") {
  std::mt19937_64 rng(6);
  for (int n = 1; n <= 5; ++n) {
    for (int t = 0; t < 20; ++t) {
      const auto ec = random_realizable_table(n, rng, 0.3);
      BigInt best = 0;
      ChainCompatDag(ec).for_each_path([&](const std::vector<CarryChain>& path) {
        BigInt w = 0;
        for (const auto& c : path) w += ec.at(c);
        if (abs(w) > best) best = abs(w);
      });
      const auto r = max_abs_error(ec);
      REQUIRE(r.max_abs == best);
      REQUIRE(r.max_abs == oracle::exhaustive_totals(n, oracle::table_from(ec)).max_abs);
      BigInt w = 0;
      for (const auto& c : r.witness.chains) w += ec.at(c);
      REQUIRE(w == r.witness_weight);
      REQUIRE(abs(w) == r.max_abs);
      if (!r.witness.empty()) {
        REQUIRE(decompose_error(realize_chain_set(n, r.witness.chains), ec).total == w);
      }
    }
  }
}

TEST_CASE("the simulation oracle") {
  const Netlist correct = generate_rca(4, {1, 1, 1, 1}, {1, 1, 1, 1, 1});
  const auto zero = sae_oracle_simulate(correct, correct.settle_time());
  CHECK(zero.sae == 0);
  CHECK(*zero.mse == ExactRational());
  CHECK(zero.max_abs->max_abs == 0);

  // One bit, read while the carry of (1,1) is still on its way: ec(1,1) = 2.
  const Netlist one = generate_rca(1, {1}, {1, 1});
  const auto ec = extract_ec_table(one, 1.5);
  CHECK(ec.at(1, 1) == 2);
  const auto r = sae_oracle_simulate(one, 1.5);
  CHECK(r.sae == 2);
  CHECK(r.er_avg == ExactRational(BigInt(2), BigInt(4)));

  for (const Netlist& net : {generate_rca(6, {1, 2, 1, 1, 3, 1}, {0, 0, 1, 1, 1, 2, 2}),
                             generate_ksa(8, KsaDelays::layered(8, 0, 1, 0)),
                             generate_ksa(4, KsaDelays::layered(4, 1, 2, 1))}) {
    for (double T = 0; T <= net.settle_time(); T += 1) {
      if (!check_conservative(net, T, PairSelection::all()).pass) continue;
      const auto table = extract_ec_table(net, T);
      const auto sim = sae_oracle_simulate(net, T, {10, false, 2});
      const auto chains = sae_oracle_chains(table);
      CHECK(sim.sae == chains.sae);
      CHECK(*sim.mse == *chains.mse);
      CHECK(sim.max_abs->max_abs == chains.max_abs->max_abs);
    }
  }
}

TEST_CASE("oracle width gate") {
  const ChainErrorTable ec(11);
  CHECK_THROWS_AS(sae_oracle_chains(ec), OracleLimitError);
  CHECK_THROWS_AS(sae_oracle_chains(ChainErrorTable(4), {3, false, 1}), OracleLimitError);
  CHECK_NOTHROW(sae_oracle_chains(ChainErrorTable(4), {3, true, 1}));
  CHECK_THROWS_AS(sae_oracle_chains(ChainErrorTable(30), {10, true, 1}), OracleLimitError);

  ::setenv("PSEUDOADDER_ORACLE_LIMIT", "12", 1);
  CHECK(oracle_limit_from_env() == 12);
  ::setenv("PSEUDOADDER_ORACLE_LIMIT", "twelve", 1);
  CHECK(oracle_limit_from_env(7) == 7);
  ::unsetenv("PSEUDOADDER_ORACLE_LIMIT");
  CHECK(oracle_limit_from_env() == 10);
}
