#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sumset/gset.hpp"
#include "sumset/rational.hpp"
#include "sumset/structure.hpp"
#include "sumset/subgroup.hpp"

namespace sumset {

/// One pair's outcome inside a delta scan.
struct ScanRow {
    std::string group;             ///< group descriptor, e.g. "5" or "2x3"
    std::int64_t size_a = 0;       ///< |A|
    std::int64_t size_b = 0;       ///< |B|
    std::int64_t size_sum = 0;     ///< |A+B|
    std::int64_t size_popular = 0; ///< |A+_t B| at threshold t = max(gap, 0)
    ClassTag tag = ClassTag::Unclassified;
    std::int64_t k_index = 0;      ///< index of the witness subgroup, 0 if unclassified
    Rat gap{0};                    ///< (|A+B| - |A| - |B|) / |G|, exact (may be negative)
};

struct DeltaScanResult {
    std::vector<ScanRow> rows; ///< canonical order: A bitmask asc, then B bitmask asc
    std::int64_t pair_count = 0;
    /// Largest gap value g such that every scanned pair with gap <= g
    /// classifies; empty when pairs at the smallest gap already fail.
    std::optional<Rat> delta_star;
    std::vector<std::string> unclassified; ///< reproducers for failing pairs
};

/// Near-pair witness: S, T close to A, B with a subcritical sumset.
struct SemicontinuityWitness {
    GSet s;
    GSet t;
    Rat move_cost{0};         ///< m(A xor S) + m(B xor T), exact
    bool subcritical = false; ///< |S+T| <= |S|+|T| (always true on return)
};

/// Visits every ordered pair of nonempty sets with
/// |A+B| <= |A| + |B| + delta*|G|, A bitmask ascending then B bitmask
/// ascending. With up_to_symmetry, only pairs where both sets are the
/// bitwise-minimal translate of their translation orbit are visited
/// (the orbit of (A,B) -> (A+s, B+t) acts independently per side).
/// Caps: |G| <= 12 for the full scan, |G| <= 16 with up_to_symmetry.
void enumerate_small_doubling_pairs(const GroupPtr& g, const Rat& delta, bool up_to_symmetry,
                                    const std::function<void(const GSet&, const GSet&)>& visit);

std::int64_t count_small_doubling_pairs(const GroupPtr& g, const Rat& delta,
                                        bool up_to_symmetry);

/// Searches for (S, T) with m(A xor S) + m(B xor T) < epsilon and
/// |S+T| <= |S|+|T|. Candidate ladder, first verified witness wins:
/// (1) (A, B) itself; (2) periodized / trimmed variants per subgroup;
/// (3) parallel progression covers; (4) rebuilt quasi-periodic pairs;
/// (5) best-first single-element toggles, at most `budget` expansions.
/// Preconditions: m(A) > epsilon, m(B) > epsilon, and
/// m(A+_delta B) <= m(A) + m(B) + delta. Budget exhaustion returns empty.
std::optional<SemicontinuityWitness> semicontinuity_oracle(const GSet& a, const GSet& b,
                                                           const Rat& epsilon, const Rat& delta,
                                                           std::int64_t budget = 100000);

/// Classifies every ordered pair with m(A), m(B) > epsilon, using
/// delta = that pair's own gap. Deterministic for any thread count.
DeltaScanResult delta_scan(const GroupPtr& g, const Rat& epsilon, std::int64_t d,
                           int threads = 0);

/// Fixed column order: group;|A|;|B|;sumset;popular;gap_num;gap_den;tag;k_index
std::string scan_csv(const DeltaScanResult& result);

/// From K-periodic C, D with |C+D| = |C|+|D|-|K|, a unique-expression coset
/// pair (C0, D0) inside them, and nonempty A0 <= C0, B0 <= D0 with
/// |A0+B0| <= |A0|+|B0|, builds A = (C \ C0) u A0 and B = (D \ D0) u B0.
/// The guarantee |A+B| <= |A|+|B| is checked on every call.
std::pair<GSet, GSet> build_qp_pair(const GSet& c, const GSet& d, const Subgroup& k,
                                    Elem c0_coset, Elem d0_coset, const GSet& a0,
                                    const GSet& b0);

/// High-weight slice of (Z/2)^N together with the hyperplane audit of its
/// difference set.
struct NiveauReport {
    GSet set;                         ///< {x : weight(x) >= N/2 + shift*sqrt(N)}
    std::int64_t min_weight = 0;      ///< smallest admitted weight (N+1 when empty)
    std::int64_t difference_size = 0; ///< |A - A|
    std::int64_t hyperplanes_checked = 0; ///< 2^N - 1
    std::int64_t hyperplanes_good = 0; ///< both cosets meet complement(A-A)
    GSet good_directions;             ///< nonzero c whose hyperplane passes
    std::vector<Elem> exceptional;    ///< failing directions, capped at 32
};

/// 2 <= n <= 24. The weight threshold is evaluated with exact integer
/// arithmetic; |threshold_shift| components are capped at 10^6.
NiveauReport niveau_set(std::int64_t n, const Rat& threshold_shift);

} // namespace sumset
