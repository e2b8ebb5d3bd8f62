#pragma once

#include <cstdint>
#include <vector>

#include "sumset/gset.hpp"
#include "sumset/group.hpp"

namespace sumset {

/// A verified subgroup: members closed under + and -, containing 0.
struct Subgroup {
    GSet members;
    std::int64_t index = 0;
    std::vector<Elem> coset_reps; // minimal representative per coset, ascending

    std::int64_t order() const { return members.size(); }
    bool contains(Elem x) const { return members.contains(x); }
    const GroupPtr& group() const { return members.group(); }

    /// Verifies closure; throws PreconditionError otherwise.
    static Subgroup from_members(const GSet& members);
    static Subgroup trivial(const GroupPtr& g);
    static Subgroup whole(const GroupPtr& g);

    /// Fast path for sets already known to be closed (asserted in debug).
    static Subgroup from_members_unchecked(GSet members);

    bool operator==(const Subgroup& o) const { return members == o.members; }
};

/// All subgroups of index <= max_index, each verified, sorted by
/// (index ascending, members as little-endian bit integer ascending).
/// Generated as joins of cyclic subgroups (breadth-first, deduplicated by
/// bitset); throws SizeLimitError when the full subgroup lattice being
/// traversed exceeds enumeration_cap entries.
std::vector<Subgroup> enumerate_subgroups(const GroupPtr& g, std::int64_t max_index,
                                          std::int64_t enumeration_cap = 2'000'000);

/// Surjective homomorphism G -> Z/N in coordinate form:
/// tau(x) = sum_i multipliers[i] * x_i mod N, with multipliers[i]*n_i = 0 mod N.
struct CyclicHom {
    GroupPtr group;
    std::int64_t modulus = 1;
    std::vector<std::int64_t> multipliers;
    bool surjective = false;
    Subgroup kernel_subgroup;

    std::int64_t apply(Elem x) const;
};

/// All surjective homs G -> Z/N, multipliers in ascending lexicographic order.
/// Empty when Z/N is not a quotient of G.
std::vector<CyclicHom> surjective_homs_to_cyclic(const GroupPtr& g, std::int64_t n);

inline const Subgroup& kernel(const CyclicHom& h) { return h.kernel_subgroup; }

} // namespace sumset
