#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cogh/kernel/hierarchy.hpp"

namespace cogh {

/// Malformed or unresolvable document. `where()` is a JSON pointer (or
/// "line:column" for syntax errors).
class DocumentError : public std::runtime_error {
 public:
  DocumentError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Operator bundles and edge functions registered under string keys, so a
/// topology document can bind code to structure.
class Registry {
 public:
  /// Node bundles are stored without an id; the loader assigns it.
  void add_node(std::string key, CognitiveNodeSpec bundle);
  void add_world(std::string key, WorldNodeSpec bundle);
  void add_sensing(std::string key, SensingFn fn);
  void add_task_params(std::string key, TaskParamFn fn);
  void add_context(std::string key, ContextFn fn);

  const CognitiveNodeSpec* node(const std::string& key) const;
  const WorldNodeSpec* world(const std::string& key) const;
  const SensingFn* sensing(const std::string& key) const;
  const TaskParamFn* task_params(const std::string& key) const;
  const ContextFn* context(const std::string& key) const;

 private:
  std::map<std::string, CognitiveNodeSpec> nodes_;
  std::map<std::string, WorldNodeSpec> worlds_;
  std::map<std::string, SensingFn> sensing_;
  std::map<std::string, TaskParamFn> task_params_;
  std::map<std::string, ContextFn> context_;
};

/// Registers generic bundles useful for topology-only documents:
/// node "passthrough" (identity operators, single policy "idle"),
/// world "static" (ignores task parameters), and the edge function "empty".
void register_generic(Registry& registry);

/// Builds a hierarchy from a topology document:
///
///   { "world_node": {"id": "N0", "bundle": "static"},
///     "nodes": [ {"id": "N1", "bundle": "passthrough"} ],
///     "edges": [ {"lower": "N0", "upper": "N1",
///                 "sensing": "empty", "task_params": "empty", "context": "empty"} ] }
///
/// Edge function keys are optional; a missing key is the empty-set function.
/// Does not validate the graph.
Hierarchy load_hierarchy(const nlohmann::json& doc, const Registry& registry);

/// Reads and parses a JSON file; syntax errors become DocumentError.
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace cogh
