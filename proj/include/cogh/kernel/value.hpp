#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <typeinfo>
#include <utility>
#include <vector>

namespace cogh {

/// Identifier of a node in a cognitive hierarchy.
class NodeId {
 public:
  NodeId() = default;
  explicit NodeId(std::string name) : name_(std::move(name)) {}

  const std::string& str() const { return name_; }

  auto operator<=>(const NodeId&) const = default;

 private:
  std::string name_;
};

inline std::ostream& operator<<(std::ostream& os, const NodeId& id) { return os << id.str(); }

/// Node-local name of a value kind (belief, action, observation, ...).
using Tag = std::string;

/// Thrown when a payload is read as the wrong C++ type.
class PayloadTypeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Immutable, tagged, type-erased payload.
///
/// The kernel only ever looks at the tag; operators recover the payload with
/// `as<T>()`. Copies share the payload, so values can be handed across threads.
/// Equality compares tag, dynamic type and payload (`T` must be equality
/// comparable).
class Value {
 public:
  Value() = default;

  template <class T>
  static Value make(Tag tag, T payload) {
    Value v;
    v.tag_ = std::move(tag);
    v.payload_ = std::make_shared<const Model<T>>(std::move(payload));
    return v;
  }

  const Tag& tag() const { return tag_; }
  bool empty() const { return payload_ == nullptr; }

  template <class T>
  bool holds() const {
    return payload_ && payload_->type() == typeid(T);
  }

  template <class T>
  const T& as() const {
    if (!holds<T>()) {
      throw PayloadTypeError("value tagged '" + tag_ + "' does not hold the requested payload type");
    }
    return static_cast<const Model<T>&>(*payload_).value;
  }

  friend bool operator==(const Value& a, const Value& b);

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual const std::type_info& type() const = 0;
    virtual bool equals(const Concept& other) const = 0;
  };

  template <class T>
  struct Model final : Concept {
    explicit Model(T v) : value(std::move(v)) {}
    const std::type_info& type() const override { return typeid(T); }
    bool equals(const Concept& other) const override {
      return other.type() == typeid(T) && static_cast<const Model&>(other).value == value;
    }
    T value;
  };

  Tag tag_;
  std::shared_ptr<const Concept> payload_;
};

/// A finite multiset of values; union is concatenation.
using ValueSet = std::vector<Value>;

inline void append(ValueSet& into, const ValueSet& from) { into.insert(into.end(), from.begin(), from.end()); }

}  // namespace cogh

template <>
struct std::hash<cogh::NodeId> {
  size_t operator()(const cogh::NodeId& id) const noexcept { return std::hash<std::string>{}(id.str()); }
};
