#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace vamci {

using Rng = std::mt19937_64;

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Derives an independent stream seed from a master seed and a path of keys, so that
// per-trial / per-tree / per-session streams do not depend on scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys);

// FNV-1a, stable across platforms (std::hash is not).
std::uint64_t stable_hash(std::string_view text);

}  // namespace vamci
