#include "sumset/subgroup.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <unordered_set>

namespace sumset {

namespace {

// Union of translates dst |= src + t for subgroup joins; local to avoid a
// dependency on the set-algebra module.
void union_translated(GSet& dst, const GSet& src, Elem t) {
    const Group& g = *src.group();
    src.for_each([&](Elem x) { dst.insert(g.add(x, t)); });
}

std::vector<Elem> compute_coset_reps(const GSet& members) {
    const GroupPtr& g = members.group();
    std::vector<Elem> reps;
    GSet covered(g);
    for (Elem x = 0; x < g->size(); ++x) {
        if (covered.contains(x)) continue;
        reps.push_back(x);
        union_translated(covered, members, x);
    }
    return reps;
}

bool is_closed_subgroup(const GSet& members) {
    if (members.empty()) return false;
    if (!members.contains(0)) return false;
    const Group& g = *members.group();
    bool ok = true;
    members.for_each([&](Elem x) {
        if (!ok) return;
        members.for_each([&](Elem y) {
            if (ok && !members.contains(g.add(x, y))) ok = false;
        });
    });
    return ok;
}

} // namespace

Subgroup Subgroup::from_members(const GSet& members) {
    if (!is_closed_subgroup(members))
        throw PreconditionError("member set is not a subgroup");
    return from_members_unchecked(members);
}

Subgroup Subgroup::from_members_unchecked(GSet members) {
    assert(is_closed_subgroup(members));
    Subgroup k;
    k.index = members.universe() / members.size();
    k.coset_reps = compute_coset_reps(members);
    k.members = std::move(members);
    return k;
}

Subgroup Subgroup::trivial(const GroupPtr& g) {
    return from_members_unchecked(GSet::from_elements(g, {0}));
}

Subgroup Subgroup::whole(const GroupPtr& g) { return from_members_unchecked(GSet::all(g)); }

std::vector<Subgroup> enumerate_subgroups(const GroupPtr& g, std::int64_t max_index,
                                          std::int64_t enumeration_cap) {
    if (max_index < 1) throw PreconditionError("max_index must be >= 1");

    // Distinct cyclic subgroups.
    std::unordered_set<GSet, GSetHash> cyclic;
    for (Elem x = 0; x < g->size(); ++x) {
        GSet c(g);
        Elem y = 0;
        do {
            c.insert(y);
            y = g->add(y, x);
        } while (y != 0);
        cyclic.insert(std::move(c));
    }
    std::vector<GSet> gens(cyclic.begin(), cyclic.end());

    // Every subgroup is a join of cyclic subgroups; close under joins.
    std::unordered_set<GSet, GSetHash> seen(cyclic.begin(), cyclic.end());
    std::vector<GSet> queue(seen.begin(), seen.end());
    while (!queue.empty()) {
        GSet k = std::move(queue.back());
        queue.pop_back();
        for (const GSet& c : gens) {
            if (c.is_subset_of(k)) continue;
            GSet join = k;
            c.for_each([&](Elem t) { union_translated(join, k, t); });
            if (seen.insert(join).second) {
                if (static_cast<std::int64_t>(seen.size()) > enumeration_cap)
                    throw SizeLimitError("subgroup enumeration exceeds cap");
                queue.push_back(std::move(join));
            }
        }
    }

    std::vector<GSet> kept;
    for (const GSet& k : seen)
        if (g->size() / k.size() <= max_index) kept.push_back(k);
    std::sort(kept.begin(), kept.end(), [](const GSet& a, const GSet& b) {
        if (a.size() != b.size()) return a.size() > b.size(); // index ascending
        return a.compare_bits(b) < 0;
    });

    std::vector<Subgroup> result;
    result.reserve(kept.size());
    for (GSet& k : kept) result.push_back(Subgroup::from_members_unchecked(std::move(k)));
    return result;
}

std::int64_t CyclicHom::apply(Elem x) const {
    const auto& factors = group->factors();
    std::int64_t v = 0;
    for (std::size_t i = factors.size(); i-- > 0;) {
        v = (v + multipliers[i] * (x % factors[i])) % modulus;
        x /= factors[i];
    }
    return v;
}

std::vector<CyclicHom> surjective_homs_to_cyclic(const GroupPtr& g, std::int64_t n) {
    if (n < 1) throw PreconditionError("cyclic target modulus must be >= 1");
    const auto& factors = g->factors();
    const std::size_t k = factors.size();

    // Valid multipliers per factor: multiples of n / gcd(n_i, n).
    std::vector<std::int64_t> step(k), count(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::int64_t gi = std::gcd(factors[i], n);
        step[i] = n / gi;
        count[i] = gi;
    }

    std::vector<CyclicHom> homs;
    std::vector<std::int64_t> choice(k, 0);
    while (true) {
        std::vector<std::int64_t> mult(k);
        std::int64_t common = n;
        for (std::size_t i = 0; i < k; ++i) {
            mult[i] = choice[i] * step[i];
            common = std::gcd(common, mult[i]);
        }
        if (common == 1) {
            CyclicHom h;
            h.group = g;
            h.modulus = n;
            h.multipliers = std::move(mult);
            h.surjective = true;
            GSet ker(g);
            for (Elem x = 0; x < g->size(); ++x)
                if (h.apply(x) == 0) ker.insert(x);
            assert(ker.size() * n == g->size());
            h.kernel_subgroup = Subgroup::from_members_unchecked(std::move(ker));
            homs.push_back(std::move(h));
        }
        // next multiplier tuple, ascending lexicographic
        std::size_t i = k;
        while (i-- > 0) {
            if (++choice[i] < count[i]) break;
            choice[i] = 0;
            if (i == 0) return homs;
        }
        if (k == 0) return homs;
    }
}

} // namespace sumset
