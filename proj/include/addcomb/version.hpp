#pragma once

namespace addcomb {

inline constexpr const char* kVersion = "0.1.0";
/// Name of the generator behind CounterRng, recorded next to every seed.
inline constexpr const char* kRngName = "splitmix64-counter";

}  // namespace addcomb
