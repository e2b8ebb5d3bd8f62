#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sumset/gset.hpp"
#include "sumset/group.hpp"
#include "sumset/rational.hpp"

namespace sumset {

/// One failed check found by a verification suite. `reproducer` is a
/// command-line-ready description of the instance ("group=2x4 A=0,1 B=0,2
/// ..."); `detail` explains which check failed and with which numbers.
struct Anomaly {
    std::string suite;
    std::string reproducer;
    std::string detail;
};

/// Outcome of one verification suite run. `candidates_scanned` counts the
/// raw objects enumerated (pairs, triples, random draws); `instances_checked`
/// counts those that met the suite's hypotheses and had their conclusion
/// tested. At most `kMaxStoredAnomalies` anomalies are stored; the count is
/// always exact.
struct VerifyReport {
    std::string suite;
    std::int64_t candidates_scanned = 0;
    std::int64_t instances_checked = 0;
    std::int64_t anomaly_count = 0;
    std::vector<Anomaly> anomalies;
    std::vector<std::string> notes;

    bool passed() const { return anomaly_count == 0; }
};

inline constexpr std::int64_t kMaxStoredAnomalies = 50;

/// Renders a report as stable, byte-deterministic text: a summary line, then
/// one line per note and per stored anomaly.
std::string render_report(const VerifyReport& report);

// ---------------------------------------------------------------------------
// Exhaustive suites over all abelian groups of order <= max_order.
// `threads` <= 0 picks a default (see thread_count). All suites produce
// byte-identical reports for any thread count.
// ---------------------------------------------------------------------------

/// Kneser bound: for every ordered pair of nonempty sets, with H the
/// stabilizer of A+B, checks |A+B| >= |A+H| + |B+H| - |H|, that A+B is
/// H-periodic, and that H recomputed by brute force matches. For critical
/// pairs also checks the certificate returned by kneser_certificate.
VerifyReport verify_kneser_exhaustive(std::int64_t max_order, int threads = 0);

/// Coset saturation: (1) if |A| + |B| > |G| then A+B = G; (2) for every
/// subgroup K and cosets a+K, b+K with |A cap (a+K)| + |B cap (b+K)| > |K|,
/// the full coset a+b+K lies inside A+B.
VerifyReport verify_sum_saturation(std::int64_t max_order, int threads = 0);

/// Structure of critical pairs with Kneser equality (H = H(A+B),
/// |A+B| = |A+H| + |B+H| - |H|): (i) |A cap (a+H)| + |A+B| >= |A| + |B| for
/// every a in A, and the same on the B side; (ii) the set of g with
/// g+B inside A+B equals A+H, and symmetrically; (iii) if A+g is not inside
/// A+B then |(A+g) cup (A+B)| >= |A| + |B|.
VerifyReport verify_tame_pair_structure(std::int64_t max_order, int threads = 0);

/// Coset overflow: for every subgroup H with |A+H| + |B+H| - |H| < |A| + |B|,
/// every pair of occupied cosets satisfies
/// |A cap (a+H)| + |B cap (b+H)| > |H|.
VerifyReport verify_coset_overflow(std::int64_t max_order, int threads = 0);

/// Subpair transfer at equal sumset size: for critical (A,B) inside a
/// critical pair (A',B') with Kneser equality and |A+B| = |A'+B'|, every
/// occupied coset pair of H = H(A'+B') overflows, the periodizations agree,
/// and (A,B) inherits Kneser equality with the same stabilizer. Enumerated
/// over subsets A of A', B of B'.
VerifyReport verify_subpair_inheritance(std::int64_t max_order, int threads = 0);

/// Equal-size subpair replacement: scans pairs with |A+B| = |A| + |B| and
/// subsets B' of B with |B'| = |B| such that (A,B') is critical with Kneser
/// equality. Under counting measure no such instance can exist (B' = B forces
/// |A+B'| = |A| + |B|, never critical); the suite enumerates literally,
/// reports zero qualifying instances, and checks the conclusions - one-coset
/// difference of sumsets, B'-periodization, and the quasi-periodic split of A
/// - on any instance found.
VerifyReport verify_equal_mass_subpair(std::int64_t max_order, int threads = 0);

/// Mover transfer: for K-periodic sumsets (A+B = A+B+K), membership of a
/// translate g+B in A+B is equivalent to membership of g+B+K.
VerifyReport verify_mover_transfer(std::int64_t max_order, int threads = 0);

/// Quasi-periodic pair builder: runs build_qp_pair on every valid input
/// (K-periodic C, D with |C+D| = |C| + |D| - |K|, unique-expression corner
/// cosets, all nonempty A0, B0 with |A0+B0| <= |A0| + |B0|) and checks the
/// produced pair satisfies |A+B| <= |A| + |B|. Precondition rejections are
/// counted, not failures.
VerifyReport verify_qp_builder_exhaustive(std::int64_t max_order, int threads = 0);

/// Classification coverage: for every pair with m(A), m(B) > epsilon and
/// m(A+B) <= m(A) + m(B) + 1/|G|, classify_pair must return a tag other than
/// Unclassified and the witness must re-verify. Also cross-checks the
/// delta_scan rows (which classify at delta = observed gap) against direct
/// classification, and appends the per-group delta_star threshold table to
/// the notes.
VerifyReport verify_classification_coverage(std::int64_t max_order, const Rat& epsilon,
                                            std::int64_t d, int threads = 0);

/// Arithmetic-progression cover bounds in Z/p for the listed primes: every
/// pair with |A|, |B| >= epsilon*p, |A| + |B| < (1 - epsilon)*p and
/// |A+B| <= |A| + |B| must admit parallel progressions I, J (common
/// difference) with A inside I, B inside J, |I| <= (1+epsilon)|A| and
/// |J| <= (1+epsilon)|B|. Cover search runs through two routes (library
/// cover enumeration and a direct multiplier scan) and flags any mismatch.
VerifyReport verify_ap_cover_bounds(const std::vector<std::int64_t>& primes, const Rat& epsilon,
                                    int threads = 0);

/// Structure-transfer oracle coverage in Z/p for the listed primes: for every
/// pair with m(A), m(B) > epsilon, the oracle must return a verified witness
/// (nearby pair (S,T) with |S+T| <= |S| + |T| and move cost < epsilon) at
/// delta = 1/p. Failures are reported as findings.
VerifyReport verify_oracle_coverage(const std::vector<std::int64_t>& primes, const Rat& epsilon,
                                    int threads = 0);

/// Random-pair convolution equivalence: `pair_count` random pairs across
/// group orders {64, 243, 256, 1024, 4096} with mixed factor shapes; the
/// exact counting convolution and the rounded DFT convolution must agree
/// entrywise, and each table must sum to |A| * |B|.
VerifyReport verify_convolution_equivalence(std::int64_t pair_count, std::uint64_t seed,
                                            int threads = 0);

/// Random lattice-progression counts: for random N <= max_modulus and random
/// rational densities, the number of progression terms landing in a sublattice
/// window stays within 1 of N times the window density.
VerifyReport verify_lattice_bounds(std::int64_t instance_count, std::uint64_t seed,
                                   int threads = 0);

/// Determinism: runs a fixed scan and a fixed verification suite at each of
/// the given thread counts and checks the rendered outputs are byte-identical.
VerifyReport verify_determinism(const std::vector<int>& thread_counts);

} // namespace sumset
