#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pseudoadder/chain_analysis.hpp"
#include "pseudoadder/core_model.hpp"
#include "pseudoadder/netlist.hpp"

namespace pseudoadder {

struct Transition {
  double time = 0.0;
  std::uint8_t value = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Per-gate transitions of one simulation run. Every signal is 0 before its
/// first transition; per gate, times strictly increase and values alternate.
struct SignalTrace {
  InputPair pair{1, 0, 0};
  std::vector<std::vector<Transition>> transitions;

  /// Value of gate g at time t: the last transition at or before t.
  std::uint8_t value_at(std::size_t g, double t) const;

  /// Time of the last transition of any gate (0 if nothing switched).
  double last_transition_time() const;

  friend bool operator==(const SignalTrace&, const SignalTrace&) = default;
};

/// Discrete-event simulation with transport delays.
///
/// All gate outputs are 0 at t = 0; INPUT gates take the operand bits at
/// t = 0. A gate whose inputs change at time t is evaluated once with all its
/// inputs' time-t values and, if the result differs from its projected value,
/// switches at t + delay. The instance reuses its buffers across runs and is
/// not thread-safe; use one per worker.
class Simulator {
 public:
  explicit Simulator(const Netlist& net);

  const SignalTrace& run(const InputPair& p);
  const Netlist& netlist() const { return net_; }

 private:
  struct Event {
    double time;
    std::size_t rank;
    int kind;  // 0 = evaluate, 1 = apply value
    std::uint8_t value;
  };
  struct Later {
    bool operator()(const Event& x, const Event& y) const;
  };

  std::uint8_t evaluate(std::size_t g) const;
  void push(Event e);
  void pop();

  const Netlist& net_;
  SignalTrace trace_;
  std::vector<std::uint8_t> current_;
  std::vector<std::uint8_t> projected_;
  std::vector<double> eval_marked_at_;
  std::vector<Event> heap_;
};

SignalTrace simulate(const Netlist& net, const InputPair& p);

struct OutputReading {
  std::uint64_t s_prime = 0;
  /// c'_k recovered as s'_k xor a_k xor b_k for k = 1..n; c'_0 = 0.
  std::vector<std::uint8_t> c_prime;
};

OutputReading read_output(const SignalTrace& trace, const Netlist& net, double T);

/// Sum read at time T only (no carry reconstruction).
std::uint64_t read_sum(const SignalTrace& trace, const Netlist& net, double T);

/// Which input pairs a check visits.
struct PairSelection {
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0x5eed;

  static PairSelection all() { return {}; }
  static PairSelection sampled(std::uint64_t count, std::uint64_t seed = 0x5eed) {
    return {false, count, seed};
  }
};

/// Visits the selected pairs of width n in a deterministic order.
std::vector<InputPair> select_pairs(int n, const PairSelection& sel);

struct ConservativeViolation {
  InputPair pair{1, 0, 0};
  std::uint64_t s = 0;
  std::uint64_t s_prime = 0;
  /// Position k where c'_k = 1 but c_k = 0, or 0 when s'_0 != s_0.
  int position = 0;
};

struct ConservativeReport {
  bool pass = true;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::vector<ConservativeViolation> counterexamples;  // first few only
};

/// Returns the first violated position of the conservativeness condition, if
/// any. Besides c'_k <= c_k for k = 1..n this requires s'_0 = s_0, since c_0 and
/// c'_0 are both fixed at 0.
std::optional<int> conservative_violation(const InputPair& p, std::uint64_t s_prime);

ConservativeReport check_conservative(const Netlist& net, double T, const PairSelection& sel,
                                      std::size_t max_counterexamples = 8);

/// Raised by extract_ec_table when a chain's probe pair reads back a
/// spurious carry.
class ConservativenessError : public std::runtime_error {
 public:
  ConservativenessError(CarryChain chain, const std::string& what)
      : std::runtime_error(what), chain_(chain) {}
  CarryChain chain() const { return chain_; }

 private:
  CarryChain chain_;
};

/// EC(i, j) = s - s' of the canonical probe pair of every chain, read at T.
ChainErrorTable extract_ec_table(const Netlist& net, double T);

/// Same as extract_ec_table for several read times with one simulation per
/// probe.
std::vector<ChainErrorTable> extract_ec_tables(const Netlist& net, const std::vector<double>& times);

struct AssumptionViolation {
  std::string kind;  // "commutativity" or "independence"
  InputPair pair{1, 0, 0};
  std::optional<CarryChain> chain;
  std::int64_t expected = 0;
  std::int64_t observed = 0;
};

struct AssumptionReport {
  bool commutative = true;
  bool independent = true;
  std::uint64_t pairs_checked = 0;
  std::uint64_t chains_checked = 0;
  std::vector<AssumptionViolation> counterexamples;

  bool pass() const { return commutative && independent; }
};

/// Checks s'(a,b) = s'(b,a) and that each chain's error inside a generating
/// pair equals the error of the chain's isolated pair. Exhaustive when
/// 4^n <= samples, otherwise a seeded sample of `samples` pairs.
AssumptionReport verify_assumptions(const Netlist& net, double T, std::uint64_t samples,
                                    std::uint64_t seed = 0x5eed,
                                    std::size_t max_counterexamples = 8);

}  // namespace pseudoadder
