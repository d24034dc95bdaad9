#pragma once

#include <bit>
#include <cstdint>

namespace ballspace {

// Subset of a ground set of at most 64 elements, one bit per element index.
// May be empty: intersections of balls are allowed to come out empty, only
// membership in a ball family forbids emptiness.
struct Subset {
    std::uint64_t bits = 0;

    constexpr Subset() = default;
    constexpr explicit Subset(std::uint64_t b) : bits(b) {}

    static constexpr Subset singleton(int i) { return Subset(std::uint64_t{1} << i); }

    constexpr bool empty() const { return bits == 0; }
    int count() const { return std::popcount(bits); }
    constexpr bool contains(int i) const { return (bits >> i) & 1u; }
    constexpr bool subset_of(Subset o) const { return (bits & ~o.bits) == 0; }
    constexpr bool proper_subset_of(Subset o) const { return subset_of(o) && bits != o.bits; }
    constexpr bool comparable_with(Subset o) const { return subset_of(o) || o.subset_of(*this); }
    constexpr bool intersects(Subset o) const { return (bits & o.bits) != 0; }

    // Least element index; only meaningful on nonempty subsets.
    int min_element() const { return std::countr_zero(bits); }

    friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits & b.bits); }
    friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits | b.bits); }
    friend constexpr bool operator==(Subset a, Subset b) { return a.bits == b.bits; }
};

// Families are kept sorted by (popcount, numeric mask). Every deterministic
// ordering promise in the toolkit reduces to this one comparator.
inline bool canonical_less(Subset a, Subset b) {
    int ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.bits < b.bits;
}

template <class F>
void for_each_element(Subset s, F&& f) {
    std::uint64_t b = s.bits;
    while (b) {
        f(std::countr_zero(b));
        b &= b - 1;
    }
}

} // namespace ballspace
