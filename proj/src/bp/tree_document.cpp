#include "cogh/bp/tree_document.hpp"

#include <set>

#include "cogh/kernel/document.hpp"

namespace cogh::bp {

using nlohmann::json;

namespace {

Vector vector_field(const json& v, const std::string& at, size_t expected) {
  if (!v.is_array()) throw DocumentError(at, "expected an array of numbers");
  Vector out;
  for (const auto& x : v) {
    if (!x.is_number()) throw DocumentError(at, "expected an array of numbers");
    out.push_back(x.get<double>());
  }
  if (out.size() != expected) {
    throw DocumentError(at, "expected " + std::to_string(expected) + " entries, got " + std::to_string(out.size()));
  }
  return out;
}

}  // namespace

bool looks_like_tree(const json& doc) { return doc.is_object() && doc.contains("processors"); }

CausalTree tree_from_json(const json& doc) {
  if (!looks_like_tree(doc)) throw DocumentError("", "causal tree document needs a 'processors' array");
  const json& procs = doc.at("processors");
  if (!procs.is_array()) throw DocumentError("/processors", "expected an array");

  struct Entry {
    Processor proc;
    std::string at;
  };
  std::vector<Entry> entries;
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < procs.size(); ++i) {
    const std::string at = "/processors/" + std::to_string(i);
    const json& p = procs[i];
    if (!p.is_object()) throw DocumentError(at, "expected an object");
    if (!p.contains("id") || !p["id"].is_string()) throw DocumentError(at + "/id", "expected a string");
    if (!p.contains("n") || !p["n"].is_number_unsigned()) throw DocumentError(at + "/n", "expected a positive integer");

    Processor proc;
    proc.id = p["id"].get<std::string>();
    proc.dim = p["n"].get<size_t>();
    if (proc.dim < 2) throw DocumentError(at + "/n", "feature dimension must be at least 2");
    if (p.contains("parent") && !p["parent"].is_null()) {
      if (!p["parent"].is_string()) throw DocumentError(at + "/parent", "expected a string or null");
      proc.parent = p["parent"].get<std::string>();
    }
    proc.diagnostic = uniform(proc.dim);
    proc.causal = uniform(proc.dim);
    proc.external_input = p.contains("external_input") ? vector_field(p["external_input"], at + "/external_input", proc.dim)
                                                       : Vector(proc.dim, 1.0);
    if (!proc.parent) {
      if (p.contains("prior")) proc.causal = vector_field(p["prior"], at + "/prior", proc.dim);
    } else if (p.contains("prior")) {
      throw DocumentError(at + "/prior", "only the root carries a prior");
    }
    if (index.count(proc.id)) throw DocumentError(at + "/id", "duplicate processor id '" + proc.id + "'");
    index[proc.id] = entries.size();
    entries.push_back({std::move(proc), at});
  }

  // matrices need the parent's dimension
  for (size_t i = 0; i < procs.size(); ++i) {
    Entry& e = entries[i];
    if (!e.proc.parent) {
      if (procs[i].contains("matrix")) throw DocumentError(e.at + "/matrix", "the root has no conditional matrix");
      continue;
    }
    auto parent = index.find(*e.proc.parent);
    if (parent == index.end()) throw DocumentError(e.at + "/parent", "unknown parent '" + *e.proc.parent + "'");
    if (!procs[i].contains("matrix")) throw DocumentError(e.at, "missing field 'matrix'");
    const size_t rows = entries[parent->second].proc.dim;
    Vector flat = vector_field(procs[i]["matrix"], e.at + "/matrix", rows * e.proc.dim);
    e.proc.cond = Matrix(rows, e.proc.dim);
    e.proc.cond.data = std::move(flat);
  }

  // insert parents before children, keeping document order among siblings
  CausalTree tree;
  std::set<std::string> placed;
  size_t roots = 0;
  for (const auto& e : entries) roots += e.proc.parent ? 0 : 1;
  if (roots != 1) throw DocumentError("/processors", "expected exactly one root, found " + std::to_string(roots));
  bool progress = true;
  while (placed.size() < entries.size() && progress) {
    progress = false;
    for (const auto& e : entries) {
      if (placed.count(e.proc.id)) continue;
      if (e.proc.parent && !placed.count(*e.proc.parent)) continue;
      tree.add(e.proc);
      placed.insert(e.proc.id);
      progress = true;
    }
  }
  if (placed.size() < entries.size()) throw DocumentError("/processors", "parent links contain a cycle");
  if (auto problems = tree.problems(); !problems.empty()) throw DocumentError("/processors", problems.front());
  return tree;
}

json tree_to_json(const CausalTree& tree) {
  json procs = json::array();
  for (const auto& id : tree.pre_order()) {
    const Processor& p = tree.at(id);
    json j{{"id", p.id}, {"n", p.dim}, {"external_input", p.external_input}};
    if (p.parent) {
      j["parent"] = *p.parent;
      j["matrix"] = p.cond.data;
    } else {
      j["parent"] = nullptr;
      j["prior"] = p.causal;
    }
    procs.push_back(std::move(j));
  }
  return json{{"processors", std::move(procs)}};
}

json beliefs_to_json(const BeliefTable& table) {
  json out = json::object();
  for (const auto& [id, b] : table) out[id] = b.degenerate ? json(nullptr) : json(b.p);
  return out;
}

}  // namespace cogh::bp
