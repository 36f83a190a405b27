#include "pseudoadder/netlist.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "pseudoadder/core_model.hpp"

namespace pseudoadder {

namespace {

constexpr std::array<std::pair<GateKind, std::string_view>, 9> kKindNames{{
    {GateKind::Input, "INPUT"},
    {GateKind::Const0, "CONST0"},
    {GateKind::Const1, "CONST1"},
    {GateKind::Buf, "BUF"},
    {GateKind::Not, "NOT"},
    {GateKind::And2, "AND2"},
    {GateKind::Or2, "OR2"},
    {GateKind::Xor2, "XOR2"},
    {GateKind::Maj3, "MAJ3"},
}};

// Parses "a12" / "b3" into (operand, bit); returns false for other ids.
bool parse_input_id(std::string_view id, int& operand, int& bit_pos) {
  if (id.size() < 2 || (id[0] != 'a' && id[0] != 'b')) return false;
  const char* first = id.data() + 1;
  const char* last = id.data() + id.size();
  auto [ptr, ec] = std::from_chars(first, last, bit_pos);
  if (ec != std::errc() || ptr != last) return false;
  operand = id[0] == 'a' ? 0 : 1;
  return true;
}

}  // namespace

std::string_view to_string(GateKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

int arity(GateKind kind) {
  switch (kind) {
    case GateKind::Input:
    case GateKind::Const0:
    case GateKind::Const1:
      return 0;
    case GateKind::Buf:
    case GateKind::Not:
      return 1;
    case GateKind::And2:
    case GateKind::Or2:
    case GateKind::Xor2:
      return 2;
    case GateKind::Maj3:
      return 3;
  }
  return 0;
}

Netlist::Netlist(int n, std::vector<Gate> gates, std::vector<std::string> outputs)
    : n_(n), gates_(std::move(gates)), outputs_(std::move(outputs)) {
  if (n < 1 || n > kMaxPairWidth) {
    throw std::invalid_argument("netlist width must be in [1, " + std::to_string(kMaxPairWidth) +
                                "]");
  }
  const std::size_t count = gates_.size();
  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t g = 0; g < count; ++g) {
    if (!by_id.emplace(gates_[g].id, g).second) {
      throw std::invalid_argument("duplicate gate id '" + gates_[g].id + "'");
    }
  }

  fanin_.assign(count, {});
  fanout_.assign(count, {});
  input_operand_.assign(count, -1);
  input_bit_.assign(count, -1);
  std::vector<int> seen_inputs(2 * static_cast<std::size_t>(n), 0);

  for (std::size_t g = 0; g < count; ++g) {
    const Gate& gate = gates_[g];
    if (!(gate.delay >= 0.0)) {
      throw std::invalid_argument("gate '" + gate.id + "' has a negative delay");
    }
    if (static_cast<int>(gate.inputs.size()) != arity(gate.kind)) {
      throw std::invalid_argument("gate '" + gate.id + "' of kind " +
                                  std::string(to_string(gate.kind)) + " expects " +
                                  std::to_string(arity(gate.kind)) + " inputs");
    }
    if (gate.kind == GateKind::Input) {
      int operand = -1;
      int pos = -1;
      if (!parse_input_id(gate.id, operand, pos) || pos < 0 || pos >= n) {
        throw std::invalid_argument("INPUT gate id '" + gate.id +
                                    "' must be a<k> or b<k> with 0 <= k < n");
      }
      if (gate.delay != 0.0) {
        throw std::invalid_argument("INPUT gate '" + gate.id + "' must have zero delay");
      }
      ++seen_inputs[static_cast<std::size_t>(operand * n + pos)];
      input_operand_[g] = operand;
      input_bit_[g] = pos;
    }
    for (const auto& in : gate.inputs) {
      auto it = by_id.find(in);
      if (it == by_id.end()) {
        throw std::invalid_argument("gate '" + gate.id + "' reads unknown signal '" + in + "'");
      }
      fanin_[g].push_back(it->second);
      fanout_[it->second].push_back(g);
    }
  }
  for (std::size_t k = 0; k < seen_inputs.size(); ++k) {
    if (seen_inputs[k] != 1) {
      const char op = k < static_cast<std::size_t>(n) ? 'a' : 'b';
      throw std::invalid_argument("netlist must have exactly one INPUT gate " + std::string(1, op) +
                                  std::to_string(k % static_cast<std::size_t>(n)));
    }
  }
  // A gate reading the same signal twice appears twice in a fanout list.
  for (auto& fo : fanout_) {
    std::sort(fo.begin(), fo.end());
    fo.erase(std::unique(fo.begin(), fo.end()), fo.end());
  }

  if (outputs_.size() != static_cast<std::size_t>(n) + 1) {
    throw std::invalid_argument("netlist must map every sum position 0..n");
  }
  for (std::size_t k = 0; k < outputs_.size(); ++k) {
    auto it = by_id.find(outputs_[k]);
    if (it == by_id.end()) {
      throw std::invalid_argument("output " + std::to_string(k) + " names unknown gate '" +
                                  outputs_[k] + "'");
    }
    output_gates_.push_back(it->second);
  }

  // Kahn's algorithm; ties broken by declaration order for reproducible ranks.
  std::vector<std::size_t> pending(count);
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t g = 0; g < count; ++g) {
    pending[g] = fanin_[g].size();
    if (pending[g] == 0) ready.push(g);
  }
  rank_.assign(count, 0);
  while (!ready.empty()) {
    const std::size_t g = ready.top();
    ready.pop();
    rank_[g] = topo_.size();
    topo_.push_back(g);
    for (std::size_t f : fanout_[g]) {
      // Count every edge, including repeated reads of the same signal.
      const auto uses = static_cast<std::size_t>(std::count(fanin_[f].begin(), fanin_[f].end(), g));
      pending[f] -= uses;
      if (pending[f] == 0) ready.push(f);
    }
  }
  if (topo_.size() != count) throw std::invalid_argument("netlist contains a cycle");

  std::vector<double> arrival(count, 0.0);
  for (std::size_t g : topo_) {
    double latest = 0.0;
    for (std::size_t in : fanin_[g]) latest = std::max(latest, arrival[in]);
    arrival[g] = latest + gates_[g].delay;
    settle_time_ = std::max(settle_time_, arrival[g]);
  }
}

std::size_t Netlist::gate_index(std::string_view id) const {
  for (std::size_t g = 0; g < gates_.size(); ++g) {
    if (gates_[g].id == id) return g;
  }
  throw std::invalid_argument("no gate '" + std::string(id) + "'");
}

std::size_t Netlist::logic_gate_count() const {
  return static_cast<std::size_t>(std::count_if(gates_.begin(), gates_.end(), [](const Gate& g) {
    return g.kind != GateKind::Input && g.kind != GateKind::Const0 && g.kind != GateKind::Const1;
  }));
}

nlohmann::json netlist_to_json(const Netlist& net) {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : net.gates()) {
    gates.push_back({{"id", g.id},
                     {"kind", std::string(to_string(g.kind))},
                     {"inputs", g.inputs},
                     {"delay", g.delay}});
  }
  nlohmann::json outputs = nlohmann::json::object();
  for (std::size_t k = 0; k < net.outputs().size(); ++k) {
    outputs[std::to_string(k)] = net.outputs()[k];
  }
  return {{"n", net.width()}, {"gates", std::move(gates)}, {"outputs", std::move(outputs)}};
}

Netlist netlist_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    if (n < 1 || n > kMaxPairWidth) throw std::invalid_argument("netlist width out of range");
    std::vector<Gate> gates;
    for (const auto& jg : j.at("gates")) {
      Gate g;
      g.id = jg.at("id").get<std::string>();
      g.kind = gate_kind_from_string(jg.at("kind").get<std::string>());
      if (jg.contains("inputs")) g.inputs = jg.at("inputs").get<std::vector<std::string>>();
      if (jg.contains("delay")) g.delay = jg.at("delay").get<double>();
      gates.push_back(std::move(g));
    }
    std::vector<std::string> outputs(static_cast<std::size_t>(n) + 1);
    const auto& jo = j.at("outputs");
    if (jo.size() != outputs.size()) {
      throw std::invalid_argument("netlist must map every sum position 0..n");
    }
    for (int k = 0; k <= n; ++k) {
      outputs[static_cast<std::size_t>(k)] = jo.at(std::to_string(k)).get<std::string>();
    }
    return Netlist(n, std::move(gates), std::move(outputs));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed netlist JSON: ") + e.what());
  }
}

}  // namespace pseudoadder
