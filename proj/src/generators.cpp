#include <stdexcept>
#include <string>

#include "pseudoadder/core_model.hpp"
#include "pseudoadder/netlist.hpp"

namespace pseudoadder {

namespace {

void check_delays(const std::vector<double>& values, const char* what) {
  for (double d : values) {
    if (!(d >= 0.0)) throw std::invalid_argument(std::string(what) + " delays must be non-negative");
  }
}

int log2_exact(int n) {
  int levels = 0;
  while ((1 << levels) < n) ++levels;
  return levels;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

class Builder {
 public:
  explicit Builder(int n) : n_(n) {
    for (int k = 0; k < n; ++k) add("a" + std::to_string(k), GateKind::Input, {}, 0.0);
    for (int k = 0; k < n; ++k) add("b" + std::to_string(k), GateKind::Input, {}, 0.0);
    add("zero", GateKind::Const0, {}, 0.0);
  }

  const std::string& add(std::string id, GateKind kind, std::vector<std::string> inputs,
                         double delay) {
    gates_.push_back(Gate{std::move(id), kind, std::move(inputs), delay});
    return gates_.back().id;
  }

  Netlist finish(std::vector<std::string> outputs) {
    return Netlist(n_, std::move(gates_), std::move(outputs));
  }

 private:
  int n_;
  std::vector<Gate> gates_;
};

}  // namespace

Netlist generate_rca(int n, const std::vector<double>& carry_delays,
                     const std::vector<double>& sum_delays) {
  if (n < 1 || n > kMaxPairWidth) throw std::invalid_argument("RCA width out of range");
  if (carry_delays.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("RCA needs " + std::to_string(n) + " carry delays, got " +
                                std::to_string(carry_delays.size()));
  }
  if (sum_delays.size() != static_cast<std::size_t>(n) + 1) {
    throw std::invalid_argument("RCA needs " + std::to_string(n + 1) + " sum delays, got " +
                                std::to_string(sum_delays.size()));
  }
  check_delays(carry_delays, "carry");
  check_delays(sum_delays, "sum");

  Builder b(n);
  std::vector<std::string> outputs;
  std::string carry = "zero";
  for (int k = 0; k < n; ++k) {
    const auto ks = std::to_string(k);
    const auto idx = static_cast<std::size_t>(k);
    if (k == 0) {
      // c_0 = 0, so the first sum bit needs no half-sum stage.
      outputs.push_back(b.add("s0", GateKind::Xor2, {"a0", "b0"}, sum_delays[0]));
    } else {
      b.add("p" + ks, GateKind::Xor2, {"a" + ks, "b" + ks}, 0.0);
      outputs.push_back(b.add("s" + ks, GateKind::Xor2, {"p" + ks, carry}, sum_delays[idx]));
    }
    carry = b.add("c" + std::to_string(k + 1), GateKind::Maj3, {"a" + ks, "b" + ks, carry},
                  carry_delays[idx]);
  }
  outputs.push_back(b.add("s" + std::to_string(n), GateKind::Xor2, {carry, "zero"},
                          sum_delays[static_cast<std::size_t>(n)]));
  return b.finish(std::move(outputs));
}

KsaDelays KsaDelays::uniform(int n, double d) { return layered(n, d, d, d); }

KsaDelays KsaDelays::layered(int n, double pg, double prefix, double sum) {
  KsaDelays out;
  out.pg.assign(static_cast<std::size_t>(n), pg);
  out.prefix.assign(static_cast<std::size_t>(log2_exact(n)),
                    std::vector<double>(static_cast<std::size_t>(n), prefix));
  out.sum.assign(static_cast<std::size_t>(n) + 1, sum);
  return out;
}

std::size_t KsaDelays::flat_size(int n) {
  std::size_t count = 2 * static_cast<std::size_t>(n) + 1;
  for (int level = 0; level < log2_exact(n); ++level) count += static_cast<std::size_t>(n - (1 << level));
  return count;
}

std::vector<double> KsaDelays::flatten(int n) const {
  std::vector<double> out(pg.begin(), pg.end());
  for (int level = 0; level < static_cast<int>(prefix.size()); ++level) {
    for (int k = 1 << level; k < n; ++k) out.push_back(prefix[static_cast<std::size_t>(level)][static_cast<std::size_t>(k)]);
  }
  out.insert(out.end(), sum.begin(), sum.end());
  return out;
}

KsaDelays KsaDelays::from_flat(int n, const std::vector<double>& values) {
  if (!is_power_of_two(n) || n < 2) throw std::invalid_argument("KSA width must be a power of two >= 2");
  if (values.size() != flat_size(n)) {
    throw std::invalid_argument("KSA delay list for n=" + std::to_string(n) + " needs " +
                                std::to_string(flat_size(n)) + " values, got " +
                                std::to_string(values.size()));
  }
  KsaDelays out = layered(n, 0, 0, 0);
  std::size_t at = 0;
  for (auto& d : out.pg) d = values[at++];
  for (int level = 0; level < static_cast<int>(out.prefix.size()); ++level) {
    for (int k = 1 << level; k < n; ++k) out.prefix[static_cast<std::size_t>(level)][static_cast<std::size_t>(k)] = values[at++];
  }
  for (auto& d : out.sum) d = values[at++];
  return out;
}

nlohmann::json ksa_delays_to_json(const KsaDelays& d, int n) {
  nlohmann::json prefix = nlohmann::json::array();
  for (int level = 0; level < static_cast<int>(d.prefix.size()); ++level) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 1 << level; k < n; ++k) row.push_back(d.prefix[static_cast<std::size_t>(level)][static_cast<std::size_t>(k)]);
    prefix.push_back(std::move(row));
  }
  return {{"n", n}, {"pg", d.pg}, {"prefix", std::move(prefix)}, {"sum", d.sum}};
}

KsaDelays ksa_delays_from_json(const nlohmann::json& j, int n) {
  try {
    std::vector<double> flat = j.at("pg").get<std::vector<double>>();
    for (const auto& row : j.at("prefix")) {
      for (const auto& v : row) flat.push_back(v.get<double>());
    }
    for (const auto& v : j.at("sum")) flat.push_back(v.get<double>());
    return KsaDelays::from_flat(n, flat);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed KSA delay JSON: ") + e.what());
  }
}

Netlist generate_ksa(int n, const KsaDelays& delays) {
  if (!is_power_of_two(n) || n < 2) {
    throw std::invalid_argument("Kogge-Stone width must be a power of two >= 2, got " +
                                std::to_string(n));
  }
  if (n > kMaxPairWidth) throw std::invalid_argument("KSA width out of range");
  const int levels = log2_exact(n);
  const auto un = static_cast<std::size_t>(n);
  if (delays.pg.size() != un || delays.sum.size() != un + 1 ||
      delays.prefix.size() != static_cast<std::size_t>(levels)) {
    throw std::invalid_argument("KSA delay assignment does not match width " + std::to_string(n));
  }
  for (const auto& row : delays.prefix) {
    if (row.size() != un) throw std::invalid_argument("KSA prefix delay row has wrong length");
    check_delays(row, "prefix");
  }
  check_delays(delays.pg, "pg");
  check_delays(delays.sum, "sum");

  Builder b(n);
  std::vector<std::string> gen(un);
  std::vector<std::string> prop(un);
  for (int k = 0; k < n; ++k) {
    const auto ks = std::to_string(k);
    const double d = delays.pg[static_cast<std::size_t>(k)];
    prop[static_cast<std::size_t>(k)] = b.add("p" + ks, GateKind::Xor2, {"a" + ks, "b" + ks}, d);
    gen[static_cast<std::size_t>(k)] = b.add("g" + ks, GateKind::And2, {"a" + ks, "b" + ks}, d);
  }
  const std::vector<std::string> half_sum = prop;

  for (int level = 1; level <= levels; ++level) {
    const int dist = 1 << (level - 1);
    std::vector<std::string> next_gen = gen;
    std::vector<std::string> next_prop = prop;
    for (int k = dist; k < n; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      const auto lo = static_cast<std::size_t>(k - dist);
      const double d = delays.prefix[static_cast<std::size_t>(level - 1)][uk];
      const std::string tag = std::to_string(level) + "_" + std::to_string(k);
      const std::string t = b.add("T" + tag, GateKind::And2, {prop[uk], gen[lo]}, 0.0);
      next_gen[uk] = b.add("G" + tag, GateKind::Or2, {gen[uk], t}, d);
      // P is only consumed by a cell at the next level, which exists iff k >= 2^level.
      if (level < levels && k >= (1 << level)) {
        next_prop[uk] = b.add("P" + tag, GateKind::And2, {prop[uk], prop[lo]}, d);
      }
    }
    gen = std::move(next_gen);
    prop = std::move(next_prop);
  }

  // gen[k] is now G_{k:0}, the carry into position k+1.
  std::vector<std::string> outputs;
  outputs.push_back(b.add("s0", GateKind::Xor2, {half_sum[0], "zero"}, delays.sum[0]));
  for (int k = 1; k < n; ++k) {
    outputs.push_back(b.add("s" + std::to_string(k), GateKind::Xor2,
                            {half_sum[static_cast<std::size_t>(k)], gen[static_cast<std::size_t>(k - 1)]},
                            delays.sum[static_cast<std::size_t>(k)]));
  }
  outputs.push_back(b.add("s" + std::to_string(n), GateKind::Xor2, {gen[un - 1], "zero"},
                          delays.sum[un]));
  return b.finish(std::move(outputs));
}

}  // namespace pseudoadder
