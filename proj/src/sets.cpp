#include "sumset/sets.hpp"

#include <cassert>

namespace sumset {

void sumset_into(GSet& out, const GSet& a, const GSet& b) {
    require_same_group(a, b);
    require_same_group(out, a);
    assert(&out != &a && &out != &b);
    out.clear();
    const Group& g = *a.group();
    // Iterate the smaller set on the outside; the work is |A||B| either way
    // but this keeps the inner loop over the denser bitset.
    const GSet& outer = a.size() <= b.size() ? a : b;
    const GSet& inner = a.size() <= b.size() ? b : a;
    outer.for_each([&](Elem x) { inner.for_each([&](Elem y) { out.insert(g.add(x, y)); }); });
}

GSet sumset(const GSet& a, const GSet& b) {
    GSet out(a.group());
    sumset_into(out, a, b);
    return out;
}

GSet difference_set(const GSet& a, const GSet& b) { return sumset(a, b.reflected()); }

Subgroup stabilizer(const GSet& s) {
    const GroupPtr& g = s.group();
    if (s.empty()) return Subgroup::whole(g);
    // h stabilizes S only if min(S) + h lands in S, so candidates are S - s0.
    GSet candidates = s.translated(g->neg(s.min_element()));
    GSet members(g);
    GSet shifted(g);
    candidates.for_each([&](Elem h) {
        s.translate_into(shifted, h);
        if (shifted == s) members.insert(h);
    });
    return Subgroup::from_members_unchecked(std::move(members));
}

GSet translates_into(const GSet& target, const GSet& b) {
    require_same_group(target, b);
    const GroupPtr& g = target.group();
    if (b.empty()) return GSet::all(g);
    // g + B inside the target forces g + min(B) into it, so candidates are
    // target - b0.
    GSet candidates = target.translated(g->neg(b.min_element()));
    GSet movers(g);
    GSet shifted(g);
    candidates.for_each([&](Elem t) {
        b.translate_into(shifted, t);
        if (shifted.is_subset_of(target)) movers.insert(t);
    });
    return movers;
}

GSet mover_set(const GSet& a, const GSet& b) { return translates_into(sumset(a, b), b); }

GSet periodization(const GSet& s, const Subgroup& k) { return sumset(s, k.members); }

GSet inner_periodization(const GSet& s, const Subgroup& k) {
    // x + K inside S  <=>  x avoids (complement of S) + K, since K = -K.
    const GroupPtr& g = s.group();
    GSet complement = difference(GSet::all(g), s);
    return difference(GSet::all(g), sumset(complement, k.members));
}

Rat epsilon_periodicity(const GSet& s, const Subgroup& k) {
    return Rat(periodization(s, k).size() - s.size(), k.order());
}

bool is_periodic(const GSet& s, const Subgroup& k) {
    return periodization(s, k).size() == s.size();
}

std::vector<QPDecomposition> quasiperiodic_decompositions(const GSet& a, const Subgroup& k,
                                                          const Rat& epsilon) {
    if (a.empty()) throw PreconditionError("quasiperiodic_decompositions: set is empty");
    require_same_group(a, k.members);
    std::vector<QPDecomposition> out;
    // Any admissible residual A0 inside c + K must be exactly A n (c + K):
    // a residual element of A1 would put (A1 + K) on top of A0's coset, and
    // an A0 smaller than A n (c + K) would leave coset-mates inside A1 with
    // the same effect. Hence one candidate per coset meeting A.
    for (Elem rep : k.coset_reps) {
        GSet coset = k.members.translated(rep);
        GSet residual = a & coset;
        if (residual.empty()) continue;
        GSet periodic = difference(a, residual);
        GSet grown = periodization(periodic, k);
        if (grown.intersects(residual)) continue;
        Rat defect(grown.size() - periodic.size(), k.order());
        if (defect > epsilon) continue;
        out.push_back(QPDecomposition{k, std::move(periodic), std::move(residual), rep, defect});
    }
    return out;
}

bool is_unique_expression(const GSet& a, const GSet& b, const Subgroup& k, Elem ea, Elem eb) {
    require_same_group(a, b);
    require_same_group(a, k.members);
    if (!a.contains(ea)) throw PreconditionError("is_unique_expression: a not in A");
    if (!b.contains(eb)) throw PreconditionError("is_unique_expression: b not in B");
    const Group& g = *a.group();
    GSet target_coset = k.members.translated(g.add(ea, eb));
    GSet a_coset = k.members.translated(ea);
    // If a' lies in a + K, any partner b' with a' + b' in a + b + K is
    // automatically in b + K; so only a' outside a + K can violate
    // uniqueness, and they do exactly when some b' reaches the target coset.
    GSet partners(a.group());
    bool unique = true;
    a.for_each([&](Elem x) {
        if (!unique || a_coset.contains(x)) return;
        target_coset.translate_into(partners, g.neg(x));
        if (partners.intersects(b)) unique = false;
    });
    return unique;
}

} // namespace sumset
