#include "pseudoadder/chain_analysis.hpp"

namespace pseudoadder {

ChainSet detect_chains(const InputPair& p) {
  const int n = p.width();
  ChainSet out{n, {}};
  int k = 0;
  while (k < n) {
    if (p.a_bit(k) == 1 && p.b_bit(k) == 1) {
      const int i = k + 1;
      int j = i;
      while (p.a_bit(j) != p.b_bit(j)) ++j;  // position n is always 00
      out.chains.push_back({i, j});
      // Position j may itself generate the next chain.
      k = j;
    } else {
      ++k;
    }
  }
  return out;
}

bool chain_predicate(const InputPair& p, int i, int j) {
  const int n = p.width();
  validate_chain({i, j}, n);
  if (p.a_bit(i - 1) != 1 || p.b_bit(i - 1) != 1) return false;
  for (int k = i; k < j; ++k) {
    if (p.a_bit(k) == p.b_bit(k)) return false;
  }
  return p.a_bit(j) == p.b_bit(j);
}

InputPair isolate_chain(const CarryChain& c, const InputPair& witness, int n) {
  if (witness.width() != n) throw std::invalid_argument("witness width mismatch");
  if (!chain_predicate(witness, c.i, c.j)) {
    throw PreconditionError("witness does not generate chain " + to_string(c));
  }
  // Keep positions i-1..j-1; position i-1 is (1,1) in any generating witness.
  const std::uint64_t width = static_cast<std::uint64_t>(c.j - c.i + 1);
  const std::uint64_t mask = ((std::uint64_t{1} << width) - 1) << (c.i - 1);
  return InputPair(n, witness.a() & mask, witness.b() & mask);
}

InputPair canonical_chain_pair(const CarryChain& c, int n) {
  validate_chain(c, n);
  const std::uint64_t gen = std::uint64_t{1} << (c.i - 1);
  std::uint64_t prop = 0;
  for (int k = c.i; k < c.j; ++k) prop |= std::uint64_t{1} << k;
  return InputPair(n, gen | prop, gen);
}

InputPair realize_chain_set(int n, const std::vector<CarryChain>& chains) {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  for (std::size_t k = 0; k < chains.size(); ++k) {
    if (k > 0 && chains[k - 1].j >= chains[k].i) {
      throw std::invalid_argument("chains overlap or are unsorted: " + to_string(chains[k - 1]) +
                                  ", " + to_string(chains[k]));
    }
    const InputPair piece = canonical_chain_pair(chains[k], n);
    a |= piece.a();
    b |= piece.b();
  }
  return InputPair(n, a, b);
}

ErrorDecomposition decompose_error(const InputPair& p, const ChainErrorTable& ec) {
  if (ec.width() != p.width()) {
    throw std::invalid_argument("error table width " + std::to_string(ec.width()) +
                                " does not match pair width " + std::to_string(p.width()));
  }
  ErrorDecomposition d;
  BigInt total = 0;
  for (const auto& c : detect_chains(p).chains) {
    const BigInt& e = ec.at(c);
    total += e;
    d.terms.emplace_back(c, e);
  }
  d.total = total.convert_to<std::int64_t>();
  return d;
}

std::optional<CarryChain> dominating_chain(const InputPair& p, const ChainErrorTable& ec) {
  if (ec.width() != p.width()) throw std::invalid_argument("error table width mismatch");
  const auto set = detect_chains(p);
  for (auto it = set.chains.rbegin(); it != set.chains.rend(); ++it) {
    if (ec.at(*it) != 0) return *it;
  }
  return std::nullopt;
}

std::int64_t chain_local_error(const CarryChain& c, std::uint64_t s, std::uint64_t s_prime) {
  const std::uint64_t width = static_cast<std::uint64_t>(c.j - c.i + 1);
  const std::uint64_t mask = ((std::uint64_t{1} << width) - 1) << c.i;
  return static_cast<std::int64_t>(s & mask) - static_cast<std::int64_t>(s_prime & mask);
}

ChainErrorTable random_realizable_table(int n, std::mt19937_64& rng, double zero_fraction) {
  ChainErrorTable ec(n);
  std::bernoulli_distribution zero(zero_fraction);
  std::bernoulli_distribution coin(0.5);
  for (const auto& c : all_chains(n)) {
    if (zero(rng)) continue;
    BigInt value = pow2(c.j);
    for (int k = c.i; k <= c.j; ++k) {
      if (coin(rng)) value -= pow2(k);
    }
    ec.set(c, std::move(value));
  }
  return ec;
}

}  // namespace pseudoadder
