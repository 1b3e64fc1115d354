#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace addcomb {

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Incremental digest over length-prefixed parts, so ("ab","c") != ("a","bc").
class Digest {
 public:
  Digest& add(std::string_view part) {
    h_ = fnv1a64(std::to_string(part.size()) + ":", h_);
    h_ = fnv1a64(part, h_);
    return *this;
  }
  std::string hex() const { return "fnv1a64:" + hex64(h_); }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace addcomb
