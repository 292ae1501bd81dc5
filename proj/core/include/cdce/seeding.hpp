#pragma once

#include <cstdint>
#include <initializer_list>

namespace cdce {

/// splitmix64 finalizer; a bijective 64-bit mix.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based stream seed: folds each index into the base through splitmix64.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> idx) {
    std::uint64_t s = splitmix64(base);
    for (const auto i : idx) s = splitmix64(s ^ splitmix64(i + 0x632be59bd9b4e019ULL));
    return s;
}

}  // namespace cdce
