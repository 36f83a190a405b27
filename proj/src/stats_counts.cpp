#include <cmath>

#include "pseudoadder/stats_engine.hpp"

namespace pseudoadder {

namespace {

BigInt pow3(int exponent) {
  BigInt r = 1;
  for (int k = 0; k < exponent; ++k) r *= 3;
  return r;
}

// Ways to fill the digits of chain (i, j) and everything above it:
// 2^(j-i) propagate digits, the end digit (00 or 11 below n, forced 00 at n),
// and 4 ways for each position j+1..n-1.
BigInt right_factor(int n, const CarryChain& c) {
  if (c.j == n) return pow2(c.j - c.i);
  return pow2(c.j - c.i + 1 + 2 * (n - 1 - c.j));
}

// Ways to fill positions 0..i-1 of a chain starting at i, generate digit fixed.
BigInt left_factor(const CarryChain& c) { return pow4(c.i - 1); }

// Ways to fill the positions strictly between chain end j1 and the generate
// digit i2-1 of the next chain, counting the end digit j1 itself.
BigInt gap_factor(int j1, int i2) {
  if (i2 == j1 + 1) return 1;  // end digit j1 doubles as the generate digit
  return pow2(1 + 2 * (i2 - j1 - 2));
}

// Adds `suffix` shifted by 2^shift for a chain lying below everything it
// counts: the suffix keeps its class unless it has none, which the chain's
// own sign then fills.
void reclassify_into(SignCounts& acc, const SignCounts& suffix, int ec_sign, int shift) {
  acc.plus += suffix.plus << shift;
  acc.minus += suffix.minus << shift;
  const BigInt none = suffix.none << shift;
  if (ec_sign > 0) {
    acc.plus += none;
  } else if (ec_sign < 0) {
    acc.minus += none;
  } else {
    acc.none += none;
  }
}

// The mirror case, a chain lying above everything counted in `prefix`: an
// erring chain takes over the whole prefix.
void dominate_into(SignCounts& acc, const SignCounts& prefix, int ec_sign, int shift) {
  if (ec_sign == 0) {
    acc.plus += prefix.plus << shift;
    acc.minus += prefix.minus << shift;
    acc.none += prefix.none << shift;
    return;
  }
  (ec_sign > 0 ? acc.plus : acc.minus) += prefix.total() << shift;
}

void check_width(const ChainErrorTable& ec) {
  if (ec.width() < 1) throw std::invalid_argument("empty error table");
}

double probability(const BigInt& count, int n) {
  return std::ldexp(count.convert_to<double>(), -2 * n);
}

}  // namespace

BigInt nu_single(int n, const CarryChain& c) {
  validate_chain(c, n);
  return left_factor(c) * right_factor(n, c);
}

BigInt nu_pair(int n, const CarryChain& c1, const CarryChain& c2) {
  validate_chain(c1, n);
  validate_chain(c2, n);
  const CarryChain& lo = c1.i <= c2.i ? c1 : c2;
  const CarryChain& hi = c1.i <= c2.i ? c2 : c1;
  if (lo.j >= hi.i) return 0;
  return left_factor(lo) * pow2(lo.j - lo.i) * gap_factor(lo.j, hi.i) * right_factor(n, hi);
}

BigInt count_dominated_pairs(int n, const CarryChain& ij, const CarryChain& pq) {
  validate_chain(ij, n);
  validate_chain(pq, n);
  if (!(pq.i > ij.j)) {
    throw std::invalid_argument("dominating chain " + to_string(pq) + " must start above " +
                                to_string(ij));
  }
  // Positions 0..i-2 free, i-1 is 11, i..j-1 propagate, j..p-1 as in a gap,
  // p..q-1 propagate, q is 00 and q+1..n-1 avoid 11.
  BigInt count = pow4(ij.i - 1) * pow2(ij.j - ij.i) * gap_factor(ij.j, pq.i) * pow2(pq.j - pq.i);
  if (pq.j < n) count *= pow3(n - 1 - pq.j);
  return count;
}

SuffixClassCounts suffix_counts(const ChainErrorTable& ec) {
  check_width(ec);
  const int n = ec.width();
  SuffixClassCounts out;
  out.n = n;
  out.free_boundary.assign(static_cast<std::size_t>(n) + 1, SignCounts{});
  out.equal_boundary.assign(static_cast<std::size_t>(n) + 1, SignCounts{});
  out.free_boundary[static_cast<std::size_t>(n)] = {0, 0, 1};
  out.equal_boundary[static_cast<std::size_t>(n)] = {0, 0, 1};

  for (int t = n - 1; t >= 0; --t) {
    // Digit 11 at t starts the chain (t+1, q) for exactly one q: positions
    // t+1..q-1 propagate (2 ways each) and q restarts as an equal boundary.
    SignCounts spawn;
    for (int q = t + 1; q <= n; ++q) {
      const int ec_sign = sign_of(ec.at(t + 1, q));
      reclassify_into(spawn, out.equal_boundary[static_cast<std::size_t>(q)], ec_sign, q - t - 1);
    }
    const SignCounts& above = out.free_boundary[static_cast<std::size_t>(t) + 1];
    auto& f = out.free_boundary[static_cast<std::size_t>(t)];
    auto& g = out.equal_boundary[static_cast<std::size_t>(t)];
    // Digits 00, 01, 10 start nothing at t.
    f.plus = 3 * above.plus + spawn.plus;
    f.minus = 3 * above.minus + spawn.minus;
    f.none = 3 * above.none + spawn.none;
    g.plus = above.plus + spawn.plus;
    g.minus = above.minus + spawn.minus;
    g.none = above.none + spawn.none;
  }

  // Prefix side, by the highest generate digit g-1 < m: the chain (g, e) it
  // starts, positions above e up to m-1 free of 11 (the end digit e < m is
  // then 00). acc[m] sums the terms with e < m, each carrying 3^(m-1-e).
  out.below_boundary.assign(static_cast<std::size_t>(n) + 1, SignCounts{});
  SignCounts acc;
  BigInt no_generate = 1;
  for (int m = 0; m <= n; ++m) {
    SignCounts ends_here;
    for (int g = 1; g <= m; ++g) {
      dominate_into(ends_here, out.below_boundary[static_cast<std::size_t>(g) - 1],
                      sign_of(ec.at(g, m)), m - g);
    }
    auto& h = out.below_boundary[static_cast<std::size_t>(m)];
    h.plus = acc.plus + ends_here.plus;
    h.minus = acc.minus + ends_here.minus;
    h.none = no_generate + acc.none + ends_here.none;
    acc.plus = 3 * acc.plus + ends_here.plus;
    acc.minus = 3 * acc.minus + ends_here.minus;
    acc.none = 3 * acc.none + ends_here.none;
    no_generate *= 3;
  }
  return out;
}

SignedCount nu_signed(const ChainErrorTable& ec, const SuffixClassCounts& counts,
                      const CarryChain& c) {
  validate_chain(c, ec.width());
  if (counts.n != ec.width()) throw std::invalid_argument("suffix counts width mismatch");
  const SignCounts& above = counts.equal_boundary[static_cast<std::size_t>(c.j)];
  const int own = sign_of(ec.at(c));
  SignedCount r;
  r.plus = above.plus << 2 * (c.i - 1);
  r.minus = above.minus << 2 * (c.i - 1);
  if (own > 0) r.plus += above.none << 2 * (c.i - 1);
  if (own < 0) r.minus += above.none << 2 * (c.i - 1);
  if (own == 0) {
    // Nothing above claims the pair and the chain itself has no error, so
    // the highest erring chain below it decides.
    const SignCounts& below = counts.below_boundary[static_cast<std::size_t>(c.i) - 1];
    r.plus += above.none * below.plus;
    r.minus += above.none * below.minus;
  }
  r.plus <<= c.j - c.i;
  r.minus <<= c.j - c.i;
  return r;
}

StatsReport er_avg_fast(const ChainErrorTable& ec) {
  const int n = ec.width();
  const auto counts = suffix_counts(ec);
  StatsReport report;
  report.n = n;
  for (const auto& c : all_chains(n)) {
    SignedCount nu = nu_signed(ec, counts, c);
    const BigInt& e = ec.at(c);
    if (e != 0) report.sae += e * (nu.plus - nu.minus);
    report.p_plus[c] = probability(nu.plus, n);
    report.p_minus[c] = probability(nu.minus, n);
    report.nu_plus[c] = std::move(nu.plus);
    report.nu_minus[c] = std::move(nu.minus);
  }
  report.er_avg = ExactRational(report.sae, pair_space(n));
  return report;
}

ExactRational er_avg_rca(const ChainErrorTable& ec) {
  const int n = ec.width();
  BigInt sae = 0;
  for (const auto& c : all_chains(n)) {
    const BigInt& e = ec.at(c);
    if (e < 0) {
      throw PreconditionError("chain " + to_string(c) + " has negative error " + e.str() +
                              "; the nonnegative-error formula does not apply");
    }
    if (e != 0) sae += e * nu_single(n, c);
  }
  return ExactRational(sae, pair_space(n));
}

ExactRational mse_fast(const ChainErrorTable& ec) {
  const int n = ec.width();
  const auto un = static_cast<std::size_t>(n);
  // right_sum[i] = sum over chains (i, j) of right_factor * EC.
  std::vector<BigInt> right_sum(un + 2, BigInt(0));
  for (const auto& c : all_chains(n)) {
    const BigInt& e = ec.at(c);
    if (e != 0) right_sum[static_cast<std::size_t>(c.i)] += right_factor(n, c) * e;
  }
  // above[j] = sum over start i2 > j of gap_factor(j, i2) * right_sum[i2].
  std::vector<BigInt> above(un + 1, BigInt(0));
  for (int j = 1; j <= n; ++j) {
    for (int i2 = j + 1; i2 <= n; ++i2) {
      const auto& rs = right_sum[static_cast<std::size_t>(i2)];
      if (rs != 0) above[static_cast<std::size_t>(j)] += gap_factor(j, i2) * rs;
    }
  }
  BigInt total = 0;
  for (const auto& c : all_chains(n)) {
    const BigInt& e = ec.at(c);
    if (e == 0) continue;
    total += nu_single(n, c) * e * e;
    // Ordered pairs: each unordered disjoint pair appears twice.
    total += 2 * left_factor(c) * pow2(c.j - c.i) * e * above[static_cast<std::size_t>(c.j)];
  }
  return ExactRational(total, pair_space(n));
}

ExactRational mse_pairwise(const ChainErrorTable& ec) {
  const int n = ec.width();
  const auto chains = all_chains(n);
  BigInt total = 0;
  for (const auto& c1 : chains) {
    const BigInt& e1 = ec.at(c1);
    if (e1 == 0) continue;
    total += nu_single(n, c1) * e1 * e1;
    for (const auto& c2 : chains) {
      if (c1 == c2) continue;
      const BigInt& e2 = ec.at(c2);
      if (e2 == 0) continue;
      total += nu_pair(n, c1, c2) * e1 * e2;
    }
  }
  return ExactRational(total, pair_space(n));
}

StatsReport analyze(const ChainErrorTable& ec) {
  StatsReport report = er_avg_fast(ec);
  report.mse = mse_fast(ec);
  report.max_abs = max_abs_error(ec);
  return report;
}

}  // namespace pseudoadder
