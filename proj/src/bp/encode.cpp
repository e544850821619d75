#include "cogh/bp/encode.hpp"

#include <stdexcept>

namespace cogh::bp {

namespace {

Vector product(const std::vector<Vector>& parts, size_t skip = static_cast<size_t>(-1)) {
  Vector acc(parts.front().size(), 1.0);
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i != skip) hadamard(acc, parts[i]);
  }
  return acc;
}

DiagnosticTuple single_slot(size_t slots, size_t dim, size_t which, Vector value) {
  DiagnosticTuple t{std::vector<Vector>(slots, Vector(dim, 0.0))};
  t.slots[which] = std::move(value);
  return t;
}

CognitiveNodeSpec processor_node(const Processor& p) {
  const size_t slots = p.children.size() + 1;
  const size_t dim = p.dim;

  CognitiveNodeSpec spec;
  spec.id = NodeId(p.id);
  spec.spaces = {tags::support, tags::none, tags::none, tags::diagnostics, tags::causal};
  spec.policies["idle"] = [](const Value&) { return ValueSet{}; };
  spec.select_policy = [](const ValueSet&) { return PolicyId("idle"); };

  spec.observe = [slots, dim](const ValueSet& observations, const Value& belief) {
    if (observations.empty()) return belief;
    SupportState next = belief.as<SupportState>();
    next.diagnostics.assign(slots, Vector(dim, 0.0));
    for (const auto& o : observations) {
      const auto& tuple = o.as<DiagnosticTuple>();
      if (tuple.slots.size() != slots) throw std::invalid_argument("observation has the wrong number of slots");
      for (size_t s = 0; s < slots; ++s) {
        if (tuple.slots[s].size() != dim) throw std::invalid_argument("observation slot has the wrong dimension");
        for (size_t x = 0; x < dim; ++x) next.diagnostics[s][x] += tuple.slots[s][x];
      }
    }
    return Value::make(tags::support, std::move(next));
  };

  spec.predict = [dim](const ValueSet& context, const ValueSet&, const Value& belief) {
    if (context.empty()) return belief;
    if (context.size() != 1) throw std::invalid_argument("a tree node has exactly one parent context");
    const auto& c = context.front().as<Vector>();
    if (c.size() != dim) throw std::invalid_argument("context has the wrong dimension");
    SupportState next = belief.as<SupportState>();
    next.causal = c;
    return Value::make(tags::support, std::move(next));
  };

  const Vector d = normalize(p.diagnostic).p;
  spec.initial_belief = Value::make(tags::support, SupportState{std::vector<Vector>(slots, d), normalize(p.causal).p});
  spec.initial_policy = "idle";
  return spec;
}

}  // namespace

std::shared_ptr<const Hierarchy> encode(const CausalTree& tree) {
  if (auto problems = tree.problems(); !problems.empty()) {
    throw std::invalid_argument("invalid causal tree: " + problems.front());
  }

  auto h = std::make_shared<Hierarchy>(WorldNodeSpec{
      kWorldId, tags::evidence, tags::none, [](const ValueSet&, const Value& state) { return state; }});

  for (const auto& id : tree.pre_order()) {
    const Processor& p = tree.at(id);
    h->add_node(processor_node(p));

    const size_t slots = p.children.size() + 1;
    const size_t dim = p.dim;
    EdgeTriple from_world;
    from_world.lower = kWorldId;
    from_world.upper = NodeId(id);
    from_world.sense = [id, slots, dim](const Value& world) {
      const Vector& input = world.as<Evidence>().inputs.at(id);
      if (input.size() != dim) throw std::invalid_argument("external input has the wrong dimension");
      return ValueSet{Value::make(tags::diagnostics, single_slot(slots, dim, 0, normalize(input).p))};
    };
    h->add_edge(std::move(from_world));

    for (size_t k = 0; k < p.children.size(); ++k) {
      const Processor& child = tree.at(p.children[k]);
      const Matrix m = child.cond;
      const size_t slot = k + 1;

      EdgeTriple e;
      e.lower = NodeId(child.id);
      e.upper = NodeId(id);
      e.sense = [m, slots, dim, slot](const Value& belief) {
        const auto& s = belief.as<SupportState>();
        Vector d = normalize(multiply(m, product(s.diagnostics))).p;
        return ValueSet{Value::make(tags::diagnostics, single_slot(slots, dim, slot, std::move(d)))};
      };
      e.context = [m, slot](const Value& belief) {
        const auto& s = belief.as<SupportState>();
        Vector support = product(s.diagnostics, slot);
        hadamard(support, s.causal);
        return ValueSet{Value::make(tags::causal, normalize(multiply(support, m)).p)};
      };
      h->add_edge(std::move(e));
    }
  }
  return h;
}

Value evidence_state(const CausalTree& tree) {
  Evidence ev;
  for (const auto& [id, p] : tree.processors()) ev.inputs[id] = p.external_input;
  return Value::make(tags::evidence, std::move(ev));
}

ActiveHierarchy init_encoded(const CausalTree& tree) { return init_active(encode(tree), evidence_state(tree)); }

NodeBelief node_belief(const SupportState& state) {
  if (state.diagnostics.empty()) throw std::invalid_argument("support state has no diagnostic components");
  Vector bel = product(state.diagnostics);
  hadamard(bel, state.causal);
  Normalized n = normalize(std::move(bel));
  return {std::move(n.p), n.degenerate};
}

NodeBelief node_belief(const Value& belief) { return node_belief(belief.as<SupportState>()); }

BeliefTable hierarchy_beliefs(const ActiveHierarchy& ah) {
  BeliefTable table;
  for (const auto& [id, node] : ah.nodes) table[id.str()] = node_belief(node.belief);
  return table;
}

}  // namespace cogh::bp
