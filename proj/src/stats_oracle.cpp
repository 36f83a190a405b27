#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

#include "pseudoadder/simulator.hpp"
#include "pseudoadder/stats_engine.hpp"

namespace pseudoadder {

namespace {

// 4^24 pairs is already far beyond what finishes; the cap keeps the 128-bit
// accumulators exact.
constexpr int kOracleHardCap = 24;

using Wide = __int128;

BigInt to_big(Wide v) {
  const bool negative = v < 0;
  unsigned __int128 u = negative ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  BigInt r = static_cast<std::uint64_t>(u >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(u);
  return negative ? BigInt(-r) : r;
}

struct Partial {
  Wide sae = 0;
  Wide sq = 0;
  std::uint64_t max_abs = 0;
  std::vector<std::uint64_t> nu_plus;
  std::vector<std::uint64_t> nu_minus;

  void add(std::int64_t error) {
    const auto magnitude = static_cast<std::uint64_t>(error < 0 ? -error : error);
    sae += magnitude;
    sq += static_cast<Wide>(error) * error;
    max_abs = std::max(max_abs, magnitude);
  }

  void merge(const Partial& o) {
    sae += o.sae;
    sq += o.sq;
    max_abs = std::max(max_abs, o.max_abs);
    for (std::size_t k = 0; k < nu_plus.size(); ++k) {
      nu_plus[k] += o.nu_plus[k];
      nu_minus[k] += o.nu_minus[k];
    }
  }
};

void check_limit(int n, const OracleOptions& opts) {
  if (n > kOracleHardCap) {
    throw OracleLimitError("exhaustive oracle is capped at n = " + std::to_string(kOracleHardCap));
  }
  if (n > opts.limit && !opts.force) {
    throw OracleLimitError("exhaustive oracle refused for n = " + std::to_string(n) +
                           " above the limit " + std::to_string(opts.limit) +
                           " (override with force)");
  }
}

unsigned worker_count(const OracleOptions& opts, std::uint64_t rows) {
  unsigned jobs = opts.jobs != 0 ? opts.jobs : std::max(1U, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(jobs, rows));
}

// Runs body(a_begin, a_end, partial) over disjoint ranges of the first operand
// and folds the partials in range order.
template <typename Body>
Partial run_partitioned(int n, std::size_t tally_size, const OracleOptions& opts, Body body) {
  const std::uint64_t rows = std::uint64_t{1} << n;
  const unsigned jobs = worker_count(opts, rows);
  std::vector<Partial> parts(jobs);
  for (auto& p : parts) {
    p.nu_plus.assign(tally_size, 0);
    p.nu_minus.assign(tally_size, 0);
  }
  auto range = [&](unsigned w) {
    const std::uint64_t begin = rows * w / jobs;
    const std::uint64_t end = rows * (w + 1) / jobs;
    body(begin, end, parts[w]);
  };
  if (jobs == 1) {
    range(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(range, w);
    for (auto& t : threads) t.join();
  }
  for (unsigned w = 1; w < jobs; ++w) parts[0].merge(parts[w]);
  return std::move(parts[0]);
}

StatsReport to_report(int n, const Partial& total) {
  StatsReport r;
  r.n = n;
  r.sae = to_big(total.sae);
  r.er_avg = ExactRational(r.sae, pair_space(n));
  r.mse = ExactRational(to_big(total.sq), pair_space(n));
  MaxAbsResult m;
  m.max_abs = total.max_abs;
  m.witness.n = n;
  r.max_abs = m;
  return r;
}

}  // namespace

int oracle_limit_from_env(int fallback) {
  const char* raw = std::getenv("PSEUDOADDER_ORACLE_LIMIT");
  if (raw == nullptr) return fallback;
  try {
    std::size_t used = 0;
    const int v = std::stoi(raw, &used);
    if (used == std::string(raw).size() && v >= 1) return v;
  } catch (const std::exception&) {
  }
  return fallback;
}

StatsReport sae_oracle_simulate(const Netlist& net, double T, const OracleOptions& opts) {
  const int n = net.width();
  check_limit(n, opts);
  const std::uint64_t limit = std::uint64_t{1} << n;
  const Partial total = run_partitioned(n, 0, opts, [&](std::uint64_t a0, std::uint64_t a1, Partial& part) {
    Simulator sim(net);
    for (std::uint64_t a = a0; a < a1; ++a) {
      for (std::uint64_t b = 0; b < limit; ++b) {
        const InputPair p(n, a, b);
        const auto s = static_cast<std::int64_t>(a + b);
        const auto s_prime = static_cast<std::int64_t>(read_sum(sim.run(p), net, T));
        part.add(s - s_prime);
      }
    }
  });
  return to_report(n, total);
}

StatsReport sae_oracle_chains(const ChainErrorTable& ec, const OracleOptions& opts) {
  const int n = ec.width();
  check_limit(n, opts);
  const auto values = ec.to_int64();
  const std::uint64_t limit = std::uint64_t{1} << n;
  const std::size_t chains = chain_count(n);

  const Partial total = run_partitioned(n, chains, opts, [&](std::uint64_t a0, std::uint64_t a1, Partial& part) {
    std::vector<std::size_t> generated;
    for (std::uint64_t a = a0; a < a1; ++a) {
      for (std::uint64_t b = 0; b < limit; ++b) {
        generated.clear();
        std::int64_t error = 0;
        int dominating_sign = 0;
        for (const auto& c : detect_chains(InputPair(n, a, b)).chains) {
          const std::size_t idx = ec.index(c);
          generated.push_back(idx);
          const std::int64_t e = values[idx];
          error += e;
          // Chains arrive in ascending order; the last nonzero one dominates.
          if (e != 0) dominating_sign = e > 0 ? 1 : -1;
        }
        part.add(error);
        if (dominating_sign == 0) continue;
        auto& tally = dominating_sign > 0 ? part.nu_plus : part.nu_minus;
        for (std::size_t idx : generated) ++tally[idx];
      }
    }
  });

  StatsReport r = to_report(n, total);
  for (const auto& c : all_chains(n)) {
    const std::size_t idx = ec.index(c);
    r.nu_plus[c] = total.nu_plus[idx];
    r.nu_minus[c] = total.nu_minus[idx];
    r.p_plus[c] = std::ldexp(static_cast<double>(total.nu_plus[idx]), -2 * n);
    r.p_minus[c] = std::ldexp(static_cast<double>(total.nu_minus[idx]), -2 * n);
  }
  return r;
}

}  // namespace pseudoadder
