#include "pseudoadder/simulator.hpp"

#include <algorithm>
#include <limits>

namespace pseudoadder {

std::uint8_t SignalTrace::value_at(std::size_t g, double t) const {
  const auto& tr = transitions[g];
  auto it = std::upper_bound(tr.begin(), tr.end(), t,
                             [](double time, const Transition& x) { return time < x.time; });
  if (it == tr.begin()) return 0;
  return std::prev(it)->value;
}

double SignalTrace::last_transition_time() const {
  double last = 0.0;
  for (const auto& tr : transitions) {
    if (!tr.empty()) last = std::max(last, tr.back().time);
  }
  return last;
}

bool Simulator::Later::operator()(const Event& x, const Event& y) const {
  if (x.time != y.time) return x.time > y.time;
  if (x.rank != y.rank) return x.rank > y.rank;
  return x.kind > y.kind;
}

Simulator::Simulator(const Netlist& net) : net_(net) {
  const std::size_t count = net.gates().size();
  trace_.transitions.assign(count, {});
  current_.assign(count, 0);
  projected_.assign(count, 0);
  eval_marked_at_.assign(count, -1.0);
  heap_.reserve(4 * count);
}

std::uint8_t Simulator::evaluate(std::size_t g) const {
  const auto& in = net_.fanin()[g];
  switch (net_.gates()[g].kind) {
    case GateKind::Input: {
      const auto& p = trace_.pair;
      const int k = net_.input_bit(g);
      return static_cast<std::uint8_t>(net_.input_operand(g) == 0 ? p.a_bit(k) : p.b_bit(k));
    }
    case GateKind::Const0:
      return 0;
    case GateKind::Const1:
      return 1;
    case GateKind::Buf:
      return current_[in[0]];
    case GateKind::Not:
      return static_cast<std::uint8_t>(current_[in[0]] ^ 1U);
    case GateKind::And2:
      return static_cast<std::uint8_t>(current_[in[0]] & current_[in[1]]);
    case GateKind::Or2:
      return static_cast<std::uint8_t>(current_[in[0]] | current_[in[1]]);
    case GateKind::Xor2:
      return static_cast<std::uint8_t>(current_[in[0]] ^ current_[in[1]]);
    case GateKind::Maj3: {
      const int ones = current_[in[0]] + current_[in[1]] + current_[in[2]];
      return static_cast<std::uint8_t>(ones >= 2 ? 1 : 0);
    }
  }
  return 0;
}

void Simulator::push(Event e) {
  heap_.push_back(e);
  std::push_heap(heap_.begin(), heap_.end(), Later{});
}

void Simulator::pop() {
  std::pop_heap(heap_.begin(), heap_.end(), Later{});
  heap_.pop_back();
}

const SignalTrace& Simulator::run(const InputPair& p) {
  if (p.width() != net_.width()) {
    throw std::invalid_argument("pair width " + std::to_string(p.width()) +
                                " does not match netlist width " + std::to_string(net_.width()));
  }
  trace_.pair = p;
  for (auto& tr : trace_.transitions) tr.clear();
  std::fill(current_.begin(), current_.end(), 0);
  std::fill(projected_.begin(), projected_.end(), 0);
  std::fill(eval_marked_at_.begin(), eval_marked_at_.end(), -1.0);
  heap_.clear();

  const auto& topo = net_.topo_order();
  // Every gate is evaluated at t = 0 against the all-zero initial state.
  for (std::size_t r = 0; r < topo.size(); ++r) {
    eval_marked_at_[topo[r]] = 0.0;
    push({0.0, r, 0, 0});
  }

  while (!heap_.empty()) {
    const Event e = heap_.front();
    pop();
    const std::size_t g = topo[e.rank];
    if (e.kind == 0) {
      eval_marked_at_[g] = -1.0;
      const std::uint8_t v = evaluate(g);
      if (v != projected_[g]) {
        projected_[g] = v;
        push({e.time + net_.gates()[g].delay, e.rank, 1, v});
      }
      continue;
    }
    if (e.value == current_[g]) continue;
    current_[g] = e.value;
    trace_.transitions[g].push_back({e.time, e.value});
    for (std::size_t f : net_.fanout()[g]) {
      if (eval_marked_at_[f] == e.time) continue;
      eval_marked_at_[f] = e.time;
      push({e.time, net_.rank()[f], 0, 0});
    }
  }
  return trace_;
}

SignalTrace simulate(const Netlist& net, const InputPair& p) {
  Simulator sim(net);
  return sim.run(p);
}

std::uint64_t read_sum(const SignalTrace& trace, const Netlist& net, double T) {
  std::uint64_t s = 0;
  const auto& outs = net.output_gates();
  for (std::size_t k = 0; k < outs.size(); ++k) {
    s |= static_cast<std::uint64_t>(trace.value_at(outs[k], T)) << k;
  }
  return s;
}

OutputReading read_output(const SignalTrace& trace, const Netlist& net, double T) {
  if (!(T >= 0.0)) throw std::invalid_argument("read time must be non-negative");
  OutputReading r;
  r.s_prime = read_sum(trace, net, T);
  r.c_prime = carries_from_sum(trace.pair, r.s_prime);
  return r;
}

}  // namespace pseudoadder
