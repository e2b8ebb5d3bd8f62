#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sumset/group.hpp"
#include "sumset/rational.hpp"

namespace sumset {

/// Subset of a fixed finite abelian group, stored as a bitset over flat
/// element indices with a cached cardinality. Bits past size() stay zero.
class GSet {
public:
    GSet() = default;
    explicit GSet(GroupPtr g)
        : group_(std::move(g)), words_((group_->size() + 63) / 64, 0) {}

    static GSet all(const GroupPtr& g);
    static GSet from_elements(const GroupPtr& g, std::span<const Elem> elems);
    static GSet from_elements(const GroupPtr& g, std::initializer_list<Elem> elems);
    /// Lowest-64-bit mask constructor; requires |G| <= 64.
    static GSet from_mask(const GroupPtr& g, std::uint64_t mask);

    const GroupPtr& group() const { return group_; }
    std::int64_t universe() const { return group_->size(); }
    std::int64_t size() const { return card_; }
    bool empty() const { return card_ == 0; }
    bool full() const { return card_ == universe(); }
    Rat measure() const { return Rat(card_, universe()); }

    bool contains(Elem x) const {
        return (words_[static_cast<std::size_t>(x >> 6)] >> (x & 63)) & 1;
    }

    void insert(Elem x) {
        std::uint64_t& w = words_[static_cast<std::size_t>(x >> 6)];
        std::uint64_t bit = std::uint64_t{1} << (x & 63);
        card_ += !(w & bit);
        w |= bit;
    }

    void erase(Elem x) {
        std::uint64_t& w = words_[static_cast<std::size_t>(x >> 6)];
        std::uint64_t bit = std::uint64_t{1} << (x & 63);
        card_ -= !!(w & bit);
        w &= ~bit;
    }

    void clear();

    GSet& operator|=(const GSet& o);
    GSet& operator&=(const GSet& o);
    GSet& operator^=(const GSet& o);
    /// Set difference.
    GSet& subtract(const GSet& o);

    friend GSet operator|(GSet a, const GSet& b) { return a |= b; }
    friend GSet operator&(GSet a, const GSet& b) { return a &= b; }
    friend GSet operator^(GSet a, const GSet& b) { return a ^= b; }
    friend GSet difference(GSet a, const GSet& b) { return a.subtract(b); }

    bool operator==(const GSet& o) const;
    bool is_subset_of(const GSet& o) const;
    bool intersects(const GSet& o) const;

    /// {x + t : x in this}.
    GSet translated(Elem t) const;
    void translate_into(GSet& out, Elem t) const;
    /// {-x : x in this}.
    GSet reflected() const;

    /// Smallest element; throws PreconditionError when empty.
    Elem min_element() const;

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                int b = std::countr_zero(w);
                f(static_cast<Elem>(wi * 64 + static_cast<std::size_t>(b)));
                w &= w - 1;
            }
        }
    }

    std::vector<Elem> elements() const;

    /// Total order: cardinality-free comparison of the bit arrays viewed as
    /// little-endian big integers. Used wherever deterministic order matters.
    int compare_bits(const GSet& o) const;

    std::size_t hash() const;
    std::uint64_t mask64() const;

    /// Direct word access for hash maps and kernels.
    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    void recount();

    GroupPtr group_;
    std::vector<std::uint64_t> words_;
    std::int64_t card_ = 0;
};

/// Throws GroupMismatchError unless both sets live in the same group.
void require_same_group(const GSet& a, const GSet& b);

struct GSetHash {
    std::size_t operator()(const GSet& s) const { return s.hash(); }
};

} // namespace sumset
