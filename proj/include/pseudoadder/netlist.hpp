#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace pseudoadder {

enum class GateKind { Input, Const0, Const1, Buf, Not, And2, Or2, Xor2, Maj3 };

std::string_view to_string(GateKind kind);
/// Accepts the upper-case names used in netlist JSON ("AND2", "MAJ3", ...).
GateKind gate_kind_from_string(std::string_view name);
int arity(GateKind kind);

struct Gate {
  std::string id;
  GateKind kind = GateKind::Const0;
  std::vector<std::string> inputs;
  double delay = 0.0;
};

/// A delay-annotated gate DAG computing an n-bit pseudo-sum.
///
/// Operand bits enter through exactly 2n INPUT gates whose ids are "a<k>" and
/// "b<k>" for k = 0..n-1. The incoming carry c_0 is not an input: adders tie it
/// to a CONST0 gate. outputs()[k] names the gate driving sum position k, for
/// k = 0..n. Construction validates the structure and rejects cycles.
class Netlist {
 public:
  Netlist(int n, std::vector<Gate> gates, std::vector<std::string> outputs);

  int width() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::vector<std::string>& outputs() const { return outputs_; }

  std::size_t gate_index(std::string_view id) const;

  // Compiled view, indices into gates().
  const std::vector<std::size_t>& topo_order() const { return topo_; }
  const std::vector<std::size_t>& rank() const { return rank_; }
  const std::vector<std::vector<std::size_t>>& fanin() const { return fanin_; }
  const std::vector<std::vector<std::size_t>>& fanout() const { return fanout_; }
  const std::vector<std::size_t>& output_gates() const { return output_gates_; }

  /// For INPUT gates: operand (0 = a, 1 = b) and bit position; -1 otherwise.
  int input_operand(std::size_t g) const { return input_operand_[g]; }
  int input_bit(std::size_t g) const { return input_bit_[g]; }

  /// Longest delay path from the sources. Every transition of every gate
  /// happens at or before this time.
  double settle_time() const { return settle_time_; }

  /// Number of gates that are neither INPUT nor constant.
  std::size_t logic_gate_count() const;

 private:
  int n_;
  std::vector<Gate> gates_;
  std::vector<std::string> outputs_;

  std::vector<std::size_t> topo_;
  std::vector<std::size_t> rank_;
  std::vector<std::vector<std::size_t>> fanin_;
  std::vector<std::vector<std::size_t>> fanout_;
  std::vector<std::size_t> output_gates_;
  std::vector<int> input_operand_;
  std::vector<int> input_bit_;
  double settle_time_ = 0.0;
};

/// Netlist JSON:
///   { "n": int,
///     "gates": [{"id": str, "kind": str, "inputs": [str], "delay": number}],
///     "outputs": {"0": id, ..., "n": id} }
nlohmann::json netlist_to_json(const Netlist& net);
Netlist netlist_from_json(const nlohmann::json& j);

/// Ripple-carry adder. Stage k has a majority carry gate with delay
/// carry_delays[k]; sum position k is an XOR2 with delay sum_delays[k].
/// The half-sum XOR feeding each sum gate has zero delay.
Netlist generate_rca(int n, const std::vector<double>& carry_delays,
                     const std::vector<double>& sum_delays);

/// Per-cell delays of a Kogge-Stone adder.
///   pg[k]        - PG cell of bit k (p = a xor b, g = a and b), k = 0..n-1
///   prefix[l][k] - prefix cell at level l+1 for bit k; only k >= 2^l is used
///   sum[k]       - sum XOR of position k, k = 0..n
struct KsaDelays {
  std::vector<double> pg;
  std::vector<std::vector<double>> prefix;
  std::vector<double> sum;

  static KsaDelays uniform(int n, double d);
  static KsaDelays layered(int n, double pg, double prefix, double sum);

  /// Values in the order pg, prefix cells (level-major, bits ascending,
  /// existing cells only), sum.
  std::vector<double> flatten(int n) const;
  static KsaDelays from_flat(int n, const std::vector<double>& values);
  static std::size_t flat_size(int n);
};

nlohmann::json ksa_delays_to_json(const KsaDelays& d, int n);
KsaDelays ksa_delays_from_json(const nlohmann::json& j, int n);

/// Kogge-Stone parallel-prefix adder; n must be a power of two, n >= 2.
/// Each prefix cell computes G = G_hi | (P_hi & G_lo) and, where a later level
/// needs it, P = P_hi & P_lo. The cell delay sits on the cell's output gates.
Netlist generate_ksa(int n, const KsaDelays& delays);

}  // namespace pseudoadder
