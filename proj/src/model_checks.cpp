#include <map>
#include <random>

#include "pseudoadder/simulator.hpp"

namespace pseudoadder {

namespace {

constexpr int kMaxExhaustiveWidth = 16;

std::int64_t signed_error(std::uint64_t s, std::uint64_t s_prime) {
  return static_cast<std::int64_t>(s) - static_cast<std::int64_t>(s_prime);
}

}  // namespace

std::vector<InputPair> select_pairs(int n, const PairSelection& sel) {
  std::vector<InputPair> out;
  if (sel.exhaustive) {
    if (n > kMaxExhaustiveWidth) {
      throw std::invalid_argument("exhaustive enumeration is limited to n <= " +
                                  std::to_string(kMaxExhaustiveWidth));
    }
    const std::uint64_t limit = std::uint64_t{1} << n;
    out.reserve(static_cast<std::size_t>(limit * limit));
    for (std::uint64_t a = 0; a < limit; ++a) {
      for (std::uint64_t b = 0; b < limit; ++b) out.emplace_back(n, a, b);
    }
    return out;
  }
  std::mt19937_64 rng(sel.seed);
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  out.reserve(static_cast<std::size_t>(sel.samples));
  for (std::uint64_t k = 0; k < sel.samples; ++k) {
    const std::uint64_t a = rng() & mask;
    const std::uint64_t b = rng() & mask;
    out.emplace_back(n, a, b);
  }
  return out;
}

std::optional<int> conservative_violation(const InputPair& p, std::uint64_t s_prime) {
  const auto ref = reference_add(p);
  if (((ref.sum ^ s_prime) & 1U) != 0) return 0;
  const auto c_prime = carries_from_sum(p, s_prime);
  for (int k = 1; k <= p.width(); ++k) {
    const auto uk = static_cast<std::size_t>(k);
    if (c_prime[uk] > ref.carries[uk]) return k;
  }
  return std::nullopt;
}

ConservativeReport check_conservative(const Netlist& net, double T, const PairSelection& sel,
                                      std::size_t max_counterexamples) {
  ConservativeReport report;
  Simulator sim(net);
  for (const auto& p : select_pairs(net.width(), sel)) {
    const auto s_prime = read_sum(sim.run(p), net, T);
    ++report.checked;
    if (auto pos = conservative_violation(p, s_prime)) {
      report.pass = false;
      ++report.violations;
      if (report.counterexamples.size() < max_counterexamples) {
        report.counterexamples.push_back({p, reference_add(p).sum, s_prime, *pos});
      }
    }
  }
  return report;
}

std::vector<ChainErrorTable> extract_ec_tables(const Netlist& net, const std::vector<double>& times) {
  const int n = net.width();
  std::vector<ChainErrorTable> tables(times.size(), ChainErrorTable(n));
  Simulator sim(net);
  for (const auto& c : all_chains(n)) {
    const InputPair probe = canonical_chain_pair(c, n);
    const auto s = reference_add(probe).sum;
    const auto& trace = sim.run(probe);
    for (std::size_t t = 0; t < times.size(); ++t) {
      if (!(times[t] >= 0.0)) throw std::invalid_argument("read time must be non-negative");
      const auto s_prime = read_sum(trace, net, times[t]);
      if (auto pos = conservative_violation(probe, s_prime)) {
        throw ConservativenessError(
            c, "probe pair (" + std::to_string(probe.a()) + "," + std::to_string(probe.b()) +
                   ") of chain " + to_string(c) + " reads a spurious carry at position " +
                   std::to_string(*pos) + " at T=" + std::to_string(times[t]));
      }
      tables[t].set(c, BigInt(signed_error(s, s_prime)));
    }
  }
  return tables;
}

ChainErrorTable extract_ec_table(const Netlist& net, double T) {
  return std::move(extract_ec_tables(net, {T}).front());
}

AssumptionReport verify_assumptions(const Netlist& net, double T, std::uint64_t samples,
                                    std::uint64_t seed, std::size_t max_counterexamples) {
  const int n = net.width();
  const bool exhaustive = n <= 16 && (std::uint64_t{1} << (2 * n)) <= samples;
  const auto pairs = select_pairs(n, exhaustive ? PairSelection::all()
                                                : PairSelection::sampled(samples, seed));
  AssumptionReport report;
  Simulator sim(net);
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::int64_t> isolated_error;

  auto note = [&](AssumptionViolation v) {
    if (report.counterexamples.size() < max_counterexamples) {
      report.counterexamples.push_back(std::move(v));
    }
  };

  for (const auto& p : pairs) {
    ++report.pairs_checked;
    const auto s = reference_add(p).sum;
    const auto s_prime = read_sum(sim.run(p), net, T);
    const auto s_swapped = read_sum(sim.run(p.swapped()), net, T);
    if (s_prime != s_swapped) {
      report.commutative = false;
      note({"commutativity", p, std::nullopt, signed_error(s, s_prime), signed_error(s, s_swapped)});
    }
    for (const auto& c : detect_chains(p).chains) {
      ++report.chains_checked;
      const InputPair iso = isolate_chain(c, p, n);
      auto key = std::make_pair(iso.a(), iso.b());
      auto it = isolated_error.find(key);
      if (it == isolated_error.end()) {
        const auto iso_s = reference_add(iso).sum;
        const auto iso_s_prime = read_sum(sim.run(iso), net, T);
        it = isolated_error.emplace(key, signed_error(iso_s, iso_s_prime)).first;
      }
      const std::int64_t observed = chain_local_error(c, s, s_prime);
      if (observed != it->second) {
        report.independent = false;
        note({"independence", p, c, it->second, observed});
      }
    }
  }
  return report;
}

}  // namespace pseudoadder
