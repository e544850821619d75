#include "cogh/kernel/value.hpp"

namespace cogh {

bool operator==(const Value& a, const Value& b) {
  if (a.tag_ != b.tag_) return false;
  if (a.payload_ == b.payload_) return true;
  if (!a.payload_ || !b.payload_) return false;
  return a.payload_->equals(*b.payload_);
}

}  // namespace cogh
