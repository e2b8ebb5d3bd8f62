#pragma once

#include "sumset/subgroup.hpp"

namespace sumset {

// A + B = {a + b : a in A, b in B}. Empty operands give the empty set.
GSet sumset(const GSet& a, const GSet& b);
// Writes A + B into out (out must not alias a or b).
void sumset_into(GSet& out, const GSet& a, const GSet& b);
// A - B = {a - b : a in A, b in B}.
GSet difference_set(const GSet& a, const GSet& b);

// Stabilizer H(S) = {h : S + h = S}; the stabilizer of the empty set is the
// whole group.
Subgroup stabilizer(const GSet& s);

// {g : g + B is contained in target}; for empty B this is the whole group.
GSet translates_into(const GSet& target, const GSet& b);

// Mover set of (A, B): {g : g + B is contained in A + B}. For empty B the
// condition is vacuous and the whole group is returned.
GSet mover_set(const GSet& a, const GSet& b);

// S + K: the smallest K-periodic superset of S.
GSet periodization(const GSet& s, const Subgroup& k);
// {x : x + K is contained in S}: the largest K-periodic subset of S.
GSet inner_periodization(const GSet& s, const Subgroup& k);

// The least epsilon for which S is epsilon-periodic with respect to K:
// (|S + K| - |S|) / |K|, an exact rational. Zero exactly when S + K = S
// (in particular for empty S).
Rat epsilon_periodicity(const GSet& s, const Subgroup& k);
// True when S + K = S.
bool is_periodic(const GSet& s, const Subgroup& k);

// Split of A as A1 (periodic part) union A0 (residual part): A0 is nonempty
// and contained in the single K-coset of residual_coset, (A1 + K) and A0 are
// disjoint, and A1 has periodicity defect epsilon_defect (= 0 when A1 is a
// union of K-cosets). A1 may be empty.
struct QPDecomposition {
    Subgroup subgroup;
    GSet periodic_part;
    GSet residual_part;
    Elem residual_coset = 0;
    Rat epsilon_defect{0};
};

// All splits of A with residual inside one K-coset, periodic-part defect at
// most epsilon, and (A1 + K) disjoint from A0, ordered by ascending residual
// coset representative. The disjointness condition forces A0 = A n (c + K)
// exactly, so trying each coset of K meeting A is exhaustive. Throws on
// empty A.
std::vector<QPDecomposition> quasiperiodic_decompositions(const GSet& a, const Subgroup& k,
                                                          const Rat& epsilon);

// True when the coset a + b + K is reachable from no K-coset pair of A x B
// other than (a + K, b + K): every a' in A, b' in B with a' + b' in a + b + K
// satisfy a' in a + K and b' in b + K. Requires a in A and b in B.
bool is_unique_expression(const GSet& a, const GSet& b, const Subgroup& k, Elem ea, Elem eb);

} // namespace sumset
