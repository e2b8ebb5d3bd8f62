#include "sumset/gset.hpp"

#include <algorithm>

namespace sumset {

void require_same_group(const GSet& a, const GSet& b) {
    if (a.group() == b.group()) return;
    if (!a.group() || !b.group() || !a.group()->same_as(*b.group()))
        throw GroupMismatchError("operands belong to different groups");
}

GSet GSet::all(const GroupPtr& g) {
    GSet s(g);
    std::int64_t n = g->size();
    for (std::size_t wi = 0; wi < s.words_.size(); ++wi) s.words_[wi] = ~std::uint64_t{0};
    if (n & 63) s.words_.back() = (std::uint64_t{1} << (n & 63)) - 1;
    s.card_ = n;
    return s;
}

GSet GSet::from_elements(const GroupPtr& g, std::span<const Elem> elems) {
    GSet s(g);
    for (Elem e : elems) {
        if (e < 0 || e >= g->size())
            throw PreconditionError("element index out of range: " + std::to_string(e));
        s.insert(e);
    }
    return s;
}

GSet GSet::from_elements(const GroupPtr& g, std::initializer_list<Elem> elems) {
    return from_elements(g, std::span<const Elem>(elems.begin(), elems.size()));
}

GSet GSet::from_mask(const GroupPtr& g, std::uint64_t mask) {
    if (g->size() > 64) throw PreconditionError("from_mask requires |G| <= 64");
    if (g->size() < 64 && (mask >> g->size()) != 0)
        throw PreconditionError("mask has bits outside the group");
    GSet s(g);
    s.words_[0] = mask;
    s.card_ = std::popcount(mask);
    return s;
}

void GSet::clear() {
    std::fill(words_.begin(), words_.end(), 0);
    card_ = 0;
}

void GSet::recount() {
    std::int64_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    card_ = c;
}

GSet& GSet::operator|=(const GSet& o) {
    require_same_group(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    recount();
    return *this;
}

GSet& GSet::operator&=(const GSet& o) {
    require_same_group(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    recount();
    return *this;
}

GSet& GSet::operator^=(const GSet& o) {
    require_same_group(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    recount();
    return *this;
}

GSet& GSet::subtract(const GSet& o) {
    require_same_group(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    recount();
    return *this;
}

bool GSet::operator==(const GSet& o) const {
    require_same_group(*this, o);
    return words_ == o.words_;
}

bool GSet::is_subset_of(const GSet& o) const {
    require_same_group(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

bool GSet::intersects(const GSet& o) const {
    require_same_group(*this, o);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & o.words_[i]) return true;
    return false;
}

void GSet::translate_into(GSet& out, Elem t) const {
    require_same_group(*this, out);
    out.clear();
    const Group& g = *group_;
    for_each([&](Elem x) { out.insert(g.add(x, t)); });
}

GSet GSet::translated(Elem t) const {
    GSet out(group_);
    translate_into(out, t);
    return out;
}

GSet GSet::reflected() const {
    GSet out(group_);
    const Group& g = *group_;
    for_each([&](Elem x) { out.insert(g.neg(x)); });
    return out;
}

Elem GSet::min_element() const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi)
        if (words_[wi]) return static_cast<Elem>(wi * 64) + std::countr_zero(words_[wi]);
    throw PreconditionError("min_element of an empty set");
}

std::vector<Elem> GSet::elements() const {
    std::vector<Elem> v;
    v.reserve(static_cast<std::size_t>(card_));
    for_each([&](Elem x) { v.push_back(x); });
    return v;
}

int GSet::compare_bits(const GSet& o) const {
    require_same_group(*this, o);
    for (std::size_t i = words_.size(); i-- > 0;) {
        if (words_[i] != o.words_[i]) return words_[i] < o.words_[i] ? -1 : 1;
    }
    return 0;
}

std::size_t GSet::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ull ^ static_cast<std::uint64_t>(universe());
    for (std::uint64_t w : words_) {
        h ^= w;
        h *= 0x100000001b3ull;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

std::uint64_t GSet::mask64() const {
    if (universe() > 64) throw PreconditionError("mask64 requires |G| <= 64");
    return words_[0];
}

} // namespace sumset
