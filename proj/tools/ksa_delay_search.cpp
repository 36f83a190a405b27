// Searches small integer Kogge-Stone delay assignments whose trace for one
// input pair matches a target list of s' values at t = 0, 1, 2, ...
//
//   ksa_delay_search --n 8 --a 86 --b 59 \
//       --target 0,109,109,109,105,97,97,225,241,241,145 --out delays.json

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "pseudoadder/simulator.hpp"

using namespace pseudoadder;

namespace {

struct Ranges {
  int pg_max = 2;
  int prefix_max = 4;
  int sum_max = 2;
};

int mismatches(const Netlist& net, const InputPair& p, const std::vector<std::uint64_t>& target) {
  const SignalTrace trace = simulate(net, p);
  int bad = 0;
  for (std::size_t t = 0; t < target.size(); ++t) {
    if (read_sum(trace, net, static_cast<double>(t)) != target[t]) ++bad;
  }
  return bad;
}

// Flat layout: pg[n], prefix cells level-major, sum[n+1].
int upper_bound_for(std::size_t index, int n, const Ranges& r) {
  const auto un = static_cast<std::size_t>(n);
  if (index < un) return r.pg_max;
  if (index >= KsaDelays::flat_size(n) - (un + 1)) return r.sum_max;
  return r.prefix_max;
}

int lower_bound_for(std::size_t index, int n) {
  const auto un = static_cast<std::size_t>(n);
  const bool prefix = index >= un && index < KsaDelays::flat_size(n) - (un + 1);
  return prefix ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kogge-Stone delay search against a target s' trace"};
  int n = 8;
  std::uint64_t a = 86;
  std::uint64_t b = 59;
  std::string target_text = "0,109,109,109,105,97,97,225,241,241,145";
  std::uint64_t seed = 1;
  int restarts = 200;
  int steps = 4000;
  std::string out_path;
  Ranges ranges;
  app.add_option("--n", n);
  app.add_option("--a", a);
  app.add_option("--b", b);
  app.add_option("--target", target_text, "s' at t = 0, 1, 2, ...");
  app.add_option("--seed", seed);
  app.add_option("--restarts", restarts);
  app.add_option("--steps", steps, "hill-climbing steps per restart");
  app.add_option("--pg-max", ranges.pg_max);
  app.add_option("--prefix-max", ranges.prefix_max);
  app.add_option("--sum-max", ranges.sum_max);
  app.add_option("--out", out_path, "write the best delays as JSON");
  CLI11_PARSE(app, argc, argv);

  std::vector<std::uint64_t> target;
  {
    std::stringstream ss(target_text);
    std::string item;
    while (std::getline(ss, item, ',')) target.push_back(std::stoull(item));
  }

  const InputPair pair(n, a, b);
  const std::size_t size = KsaDelays::flat_size(n);
  std::mt19937_64 rng(seed);

  auto random_value = [&](std::size_t k) {
    std::uniform_int_distribution<int> pick(lower_bound_for(k, n), upper_bound_for(k, n, ranges));
    return static_cast<double>(pick(rng));
  };
  auto score = [&](const std::vector<double>& flat) {
    return mismatches(generate_ksa(n, KsaDelays::from_flat(n, flat)), pair, target);
  };

  std::vector<double> best;
  int best_score = static_cast<int>(target.size()) + 1;
  for (int r = 0; r < restarts && best_score > 0; ++r) {
    std::vector<double> cur(size);
    for (std::size_t k = 0; k < size; ++k) cur[k] = random_value(k);
    int cur_score = score(cur);
    std::uniform_int_distribution<std::size_t> which(0, size - 1);
    for (int s = 0; s < steps && cur_score > 0; ++s) {
      auto next = cur;
      const int edits = 1 + static_cast<int>(rng() % 2);
      for (int e = 0; e < edits; ++e) {
        const std::size_t k = which(rng);
        next[k] = random_value(k);
      }
      const int next_score = score(next);
      if (next_score <= cur_score) {
        cur = std::move(next);
        cur_score = next_score;
      }
    }
    if (cur_score < best_score) {
      best_score = cur_score;
      best = cur;
      std::cerr << "restart " << r << ": " << best_score << " mismatching times\n";
    }
  }

  const auto delays = KsaDelays::from_flat(n, best);
  std::cout << "mismatching times: " << best_score << " of " << target.size() << '\n';
  const Netlist net = generate_ksa(n, delays);
  const SignalTrace trace = simulate(net, pair);
  for (std::size_t t = 0; t < target.size(); ++t) {
    std::cout << "t=" << t << " s'=" << read_sum(trace, net, static_cast<double>(t)) << " target "
              << target[t] << '\n';
  }
  const std::string text = ksa_delays_to_json(delays, n).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream(out_path) << text;
  }
  return best_score == 0 ? 0 : 1;
}
