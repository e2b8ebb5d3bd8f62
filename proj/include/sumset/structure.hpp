#pragma once

#include "sumset/sets.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sumset {

// ---------------------------------------------------------------------------
// Kneser certificates
// ---------------------------------------------------------------------------

// Witness for the Kneser equality on a critical pair: with H the stabilizer
// of A+B, |A+B| = |A+H| + |B+H| - |H| must hold exactly. An invalid
// certificate would falsify the theorem and is treated as an anomaly by the
// verification suites.
struct KneserCertificate {
    GSet a;
    GSet b;
    Subgroup stab;
    std::int64_t lhs = 0; // |A+B|
    std::int64_t rhs = 0; // |A+H| + |B+H| - |H|
    bool valid = false;   // lhs == rhs
};

// Returns a certificate when (A,B) is critical (|A+B| < |A| + |B|), nothing
// otherwise. Throws on empty input.
std::optional<KneserCertificate> kneser_certificate(const GSet& a, const GSet& b);

// ---------------------------------------------------------------------------
// Closed intervals on the circle and the N-point lattice
// ---------------------------------------------------------------------------

// The closed interval [left, left + length] on the circle R/Z.
struct RationalInterval {
    Rat left{0};   // in [0, 1)
    Rat length{1}; // in (0, 1]
};

// |C_N n I| where C_N = {0, 1/N, ..., (N-1)/N}: the number of j in [0, N)
// with j/N inside the interval mod 1, counted with exact rational
// comparisons. Always within 1 of N * length.
std::int64_t lattice_interval_count(std::int64_t n, const RationalInterval& interval);

// ---------------------------------------------------------------------------
// Surjective homomorphisms from a subgroup onto Z/N
// ---------------------------------------------------------------------------

// A surjective homomorphism tau : K -> Z/N, stored as a value table over the
// ambient group (-1 outside K). When K is the whole group the multiplier
// form is also recorded: tau(x) = sum_i multipliers[i] * x_i mod N.
struct SubgroupHom {
    Subgroup domain;
    std::int64_t modulus = 1;
    std::vector<std::int32_t> values;
    std::vector<std::int64_t> multipliers; // nonempty iff domain is the whole group
    Subgroup kernel_subgroup;
    bool surjective = false;

    std::int64_t apply(Elem x) const { return values[static_cast<std::size_t>(x)]; }
    bool defined_at(Elem x) const { return values[static_cast<std::size_t>(x)] >= 0; }
};

// lcm of the element orders of K: the largest cyclic quotient of K.
std::int64_t subgroup_exponent(const Subgroup& k);

// All surjective homomorphisms K -> Z/N in a fixed deterministic order;
// empty when none exist (i.e. when N does not divide the exponent of K).
// For K = G the order follows the lexicographic multiplier enumeration; for
// proper K it follows a greedy generator decomposition with image tuples in
// ascending lexicographic order.
std::vector<SubgroupHom> subgroup_homs_to_cyclic(const Subgroup& k, std::int64_t n);

// ---------------------------------------------------------------------------
// Cyclic progressions and parallel progression covers
// ---------------------------------------------------------------------------

// The progression {start, start+1, ..., start+length-1} mod N of common
// difference 1; length 0 encodes the empty progression.
struct CyclicProgression {
    std::int64_t start = 0;
    std::int64_t length = 0;
};

// Shortest difference-1 progression in Z/N containing every marked point
// (ties broken by smallest start); length 0 when nothing is marked.
CyclicProgression shortest_progression_containing(const std::vector<char>& present,
                                                  std::int64_t n);

// shift + tau^{-1}({start, ..., start+length-1}); cardinality is
// length * |ker tau|. Requires a surjective hom and 1 <= length <= N.
GSet progression_preimage(const SubgroupHom& h, std::int64_t start, std::int64_t length,
                          Elem shift);

// Parallel cover of (A, B): a single surjective tau : K -> Z/N plus one
// progression per side with A inside shift_a + tau^{-1}(prog_a) and B inside
// shift_b + tau^{-1}(prog_b). The shifts are the canonical representatives
// (minimal elements) of the K-cosets containing A and B.
struct ProgressionCover {
    SubgroupHom hom;
    CyclicProgression prog_a;
    CyclicProgression prog_b;
    Elem shift_a = 0;
    Elem shift_b = 0;

    std::int64_t cover_size_a() const { return prog_a.length * hom.kernel_subgroup.order(); }
    std::int64_t cover_size_b() const { return prog_b.length * hom.kernel_subgroup.order(); }
};

// Throws unless the cover's containment and cardinality laws hold for (A,B).
void verify_progression_cover(const ProgressionCover& cover, const GSet& a, const GSet& b);

// First cover (search order: N descending over divisors of exponent(K) with
// N > n_min, then hom order, then smallest progression start) whose covering
// sets satisfy m(A') < m(A) + epsilon and m(B') < m(B) + epsilon. A and B
// must be nonempty; if either meets more than one coset of K the result is
// empty.
std::optional<ProgressionCover> cover_by_parallel_progressions(const GSet& a, const GSet& b,
                                                               const Subgroup& k,
                                                               const Rat& epsilon,
                                                               std::int64_t n_min);

// Variant demanding zero slack: |A'| = |A| and |B'| = |B| (both sides are
// exactly unions of progression fibers).
std::optional<ProgressionCover> exact_cover_by_parallel_progressions(const GSet& a,
                                                                     const GSet& b,
                                                                     const Subgroup& k,
                                                                     std::int64_t n_min);

// Every cover meeting the epsilon-slack conditions, in search order.
std::vector<ProgressionCover> all_parallel_covers(const GSet& a, const GSet& b,
                                                  const Subgroup& k, const Rat& epsilon,
                                                  std::int64_t n_min);

// ---------------------------------------------------------------------------
// Classification of small-doubling pairs
// ---------------------------------------------------------------------------

enum class ClassTag { TypeI, TypeII, TypeIII_2, Unclassified };

const char* class_tag_name(ClassTag tag);

// Witness data for a TypeI classification: A+B is epsilon-periodic with
// respect to K and m(A+B+K) <= m(A+K) + m(B+K).
struct PeriodicityWitness {
    Rat defect;       // (m(A+B+K) - m(A+B)) / m(K)
    Rat m_sum_plus_k; // m(A+B+K)
    Rat m_a_plus_k;   // m(A+K)
    Rat m_b_plus_k;   // m(B+K)
};

// Witness data for a TypeII classification: quasi-periodic decompositions of
// A and B with residuals A0, B0 satisfying the small-sum bound.
struct QPPairWitness {
    QPDecomposition dec_a;
    QPDecomposition dec_b;
    Rat m_residual_sum; // m(A0 + B0)
    Rat bound;          // m(A0) + m(B0) + epsilon * m(K)
};

// Witness data for a TypeIII_2 classification: a parallel progression cover
// inside K with m(A+B) < (1 - epsilon) * m(K).
struct CoverWitness {
    ProgressionCover cover;
    Rat m_sum;   // m(A+B)
    Rat m_k_cap; // (1 - epsilon) * m(K)
};

struct ClassificationResult {
    ClassTag tag = ClassTag::Unclassified;
    Subgroup subgroup; // the witnessing K (whole group placeholder when unclassified)
    Rat epsilon{0};
    Rat delta_used{0};
    std::int64_t d = 0;
    std::optional<PeriodicityWitness> periodicity;
    std::optional<QPPairWitness> qp_pair;
    std::optional<CoverWitness> cover;
    // One line per candidate subgroup explaining each clause failure;
    // populated only when unclassified.
    std::vector<std::string> diagnostics;
    // A cover by a genuine circle interval (a Bohr interval) can never be
    // emitted: no finite group maps onto the circle. Recorded so consumers
    // see the route was considered and is structurally vacuous, not skipped.
    bool bohr_interval_route_vacuous = true;
};

// Trichotomy engine. Preconditions (each failure named individually):
// m(A) > epsilon, m(B) > epsilon, m(A+B) <= m(A) + m(B) + delta. Scans
// conclusions in clause-major order - (I) over all K of index <= d in
// ascending index, then (II), then (III) - and returns the first verified
// witness, else Unclassified with per-subgroup diagnostics.
ClassificationResult classify_pair(const GSet& a, const GSet& b, const Rat& epsilon,
                                   std::int64_t d, const Rat& delta);

// Every verified witness in clause-major order: for each clause and each
// subgroup K of index <= d (ascending), at most one witness - the first that
// validates for that (clause, K). classify_pair returns the front of this
// list; when no witness exists the single Unclassified result (with
// diagnostics) is returned instead.
std::vector<ClassificationResult> classify_pair_all(const GSet& a, const GSet& b,
                                                    const Rat& epsilon, std::int64_t d,
                                                    const Rat& delta);

// Re-derives every claim in the result from scratch; throws on any mismatch.
// classify_pair runs this on its own output before returning.
void verify_classification(const ClassificationResult& result, const GSet& a, const GSet& b);

// ---------------------------------------------------------------------------
// Tame-pair analysis (exact, zero-slack regime)
// ---------------------------------------------------------------------------

enum class PairRegime { Critical, Subcritical, Supercritical };

// Exact structural report. Critical pairs (|A+B| < |A|+|B|) carry a Kneser
// certificate; tame means the certificate validates. Subcritical pairs
// (|A+B| = |A|+|B|) are matched against the zero-slack analogues of the
// classification clauses:
//   I:   A+B = A+B+K for some nontrivial K;
//   II:  A+B != A+B+K, exact quasi-periodic decompositions with at least one
//        nonempty periodic part, and |A0+B0| = |A0|+|B0|;
//   III: A+B != A+B+K and an exact parallel progression cover with N >= 2.
// When none applies the pair falls into the finite-group cases outside this
// trichotomy and is reported unclassified_exact.
struct TamePairReport {
    PairRegime regime = PairRegime::Supercritical;
    std::optional<KneserCertificate> certificate;
    bool tame = false;
    std::optional<Subgroup> exact_type_i;
    std::optional<std::pair<QPDecomposition, QPDecomposition>> exact_type_ii;
    std::optional<ProgressionCover> exact_type_iii;
    bool unclassified_exact = false;
};

TamePairReport tame_pair_check(const GSet& a, const GSet& b);

} // namespace sumset
