#include "sumset/verify.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sumset/conv.hpp"
#include "sumset/errors.hpp"
#include "sumset/parallel.hpp"
#include "sumset/search.hpp"
#include "sumset/sets.hpp"
#include "sumset/structure.hpp"
#include "sumset/subgroup.hpp"

namespace sumset {

std::string render_report(const VerifyReport& report) {
    std::ostringstream out;
    out << "suite=" << report.suite << " scanned=" << report.candidates_scanned
        << " instances=" << report.instances_checked << " anomalies=" << report.anomaly_count
        << " status=" << (report.passed() ? "PASS" : "FAIL") << "\n";
    for (const std::string& note : report.notes) out << "  note: " << note << "\n";
    for (const Anomaly& an : report.anomalies)
        out << "  anomaly: " << an.reproducer << " :: " << an.detail << "\n";
    return out.str();
}

namespace {

// Per-block tallies. Blocks cover contiguous index ranges, are filled
// sequentially, and are merged in index order, so reports do not depend on
// the worker count. extra0/extra1 carry suite-specific counters.
struct Accum {
    std::int64_t scanned = 0;
    std::int64_t instances = 0;
    std::int64_t anomaly_count = 0;
    std::int64_t extra0 = 0;
    std::int64_t extra1 = 0;
    std::vector<Anomaly> anomalies;
};

void flag(Accum& acc, const std::string& suite, std::string repro, std::string detail) {
    ++acc.anomaly_count;
    if (static_cast<std::int64_t>(acc.anomalies.size()) < kMaxStoredAnomalies)
        acc.anomalies.push_back(Anomaly{suite, std::move(repro), std::move(detail)});
}

void flag(VerifyReport& report, std::string repro, std::string detail) {
    ++report.anomaly_count;
    if (static_cast<std::int64_t>(report.anomalies.size()) < kMaxStoredAnomalies)
        report.anomalies.push_back(Anomaly{report.suite, std::move(repro), std::move(detail)});
}

// Returns {sum of extra0, sum of extra1}.
std::pair<std::int64_t, std::int64_t> merge_blocks(VerifyReport& report,
                                                   std::vector<Accum>&& blocks) {
    std::pair<std::int64_t, std::int64_t> extras{0, 0};
    for (Accum& blk : blocks) {
        report.candidates_scanned += blk.scanned;
        report.instances_checked += blk.instances;
        report.anomaly_count += blk.anomaly_count;
        extras.first += blk.extra0;
        extras.second += blk.extra1;
        for (Anomaly& an : blk.anomalies) {
            if (static_cast<std::int64_t>(report.anomalies.size()) >= kMaxStoredAnomalies) break;
            report.anomalies.push_back(std::move(an));
        }
    }
    return extras;
}

// Splits [0, total) into contiguous blocks and runs fn(acc, begin, end) on
// each. Anomalies are generated in ascending index order within each block,
// so the merged stream is index-ordered for any partition.
template <typename Fn>
std::vector<Accum> run_blocked(std::int64_t total, int threads, Fn&& fn) {
    if (total <= 0) return {};
    const int workers = thread_count(threads);
    std::int64_t nblocks = static_cast<std::int64_t>(workers) * 16;
    if (nblocks > total) nblocks = total;
    return parallel_map<Accum>(nblocks, workers, [&](std::int64_t blk) {
        const std::int64_t begin = total * blk / nblocks;
        const std::int64_t end = total * (blk + 1) / nblocks;
        Accum acc;
        fn(acc, begin, end);
        return acc;
    });
}

std::string csv_elements(const GSet& s) {
    std::string out;
    s.for_each([&](Elem e) {
        if (!out.empty()) out += ',';
        out += std::to_string(e);
    });
    return out;
}

std::string brace_elements(const GSet& s) { return "{" + csv_elements(s) + "}"; }

std::string pair_repro(const GSet& a, const GSet& b) {
    return "group=" + a.group()->to_string() + " A=" + csv_elements(a) +
           " B=" + csv_elements(b);
}

std::vector<GroupPtr> groups_upto(std::int64_t max_order) {
    std::vector<GroupPtr> out;
    for (const auto& factors : abelian_group_orders_upto(max_order))
        out.push_back(make_group(factors));
    return out;
}

// Element -> coset position tables for one subgroup, plus single-word masks
// (all suites using them keep |G| <= 64).
struct CosetTables {
    std::vector<std::int32_t> coset_of;
    std::vector<GSet> coset_sets;
    std::vector<std::uint64_t> coset_masks;
    std::vector<std::int32_t> rep_sum; // [i*q+j] -> coset position of rep_i + rep_j
};

CosetTables make_coset_tables(const GroupPtr& gp, const Subgroup& k) {
    CosetTables t;
    const std::int64_t n = gp->size();
    const std::vector<Elem>& reps = k.coset_reps;
    const std::int64_t q = static_cast<std::int64_t>(reps.size());
    t.coset_of.assign(static_cast<std::size_t>(n), -1);
    t.coset_sets.reserve(static_cast<std::size_t>(q));
    t.coset_masks.reserve(static_cast<std::size_t>(q));
    for (std::int64_t i = 0; i < q; ++i) {
        GSet coset = k.members.translated(reps[static_cast<std::size_t>(i)]);
        coset.for_each([&](Elem e) {
            t.coset_of[static_cast<std::size_t>(e)] = static_cast<std::int32_t>(i);
        });
        t.coset_masks.push_back(coset.mask64());
        t.coset_sets.push_back(std::move(coset));
    }
    t.rep_sum.assign(static_cast<std::size_t>(q * q), 0);
    for (std::int64_t i = 0; i < q; ++i)
        for (std::int64_t j = 0; j < q; ++j)
            t.rep_sum[static_cast<std::size_t>(i * q + j)] =
                t.coset_of[static_cast<std::size_t>(gp->add(reps[static_cast<std::size_t>(i)],
                                                            reps[static_cast<std::size_t>(j)]))];
    return t;
}

// Per-bitmask tables for one subgroup: coset occupancy counts, periodized
// size and mask, and the minimum count over occupied cosets. Sized for
// |G| <= 16.
struct MaskTables {
    std::int64_t q = 0;
    std::int64_t korder = 0;
    std::vector<std::int8_t> counts;      // [mask * q + coset]
    std::vector<std::int16_t> periodized; // [mask] -> |set + K|
    std::vector<std::int8_t> min_count;   // [mask] -> min over occupied cosets
    std::vector<std::uint64_t> pmask;     // [mask] -> bitmask of set + K
};

MaskTables make_mask_tables(const GroupPtr& gp, const Subgroup& k, const CosetTables& ct) {
    MaskTables t;
    const std::int64_t n = gp->size();
    const std::int64_t msize = std::int64_t{1} << n;
    t.q = static_cast<std::int64_t>(ct.coset_sets.size());
    t.korder = k.order();
    t.counts.assign(static_cast<std::size_t>(msize * t.q), 0);
    t.periodized.assign(static_cast<std::size_t>(msize), 0);
    t.min_count.assign(static_cast<std::size_t>(msize), 0);
    t.pmask.assign(static_cast<std::size_t>(msize), 0);
    for (std::int64_t mask = 1; mask < msize; ++mask) {
        const std::int64_t prev = mask & (mask - 1);
        const int bit = std::countr_zero(static_cast<std::uint64_t>(mask));
        std::int8_t* row = &t.counts[static_cast<std::size_t>(mask * t.q)];
        const std::int8_t* prow = &t.counts[static_cast<std::size_t>(prev * t.q)];
        std::memcpy(row, prow, static_cast<std::size_t>(t.q));
        const std::int32_t c = ct.coset_of[static_cast<std::size_t>(bit)];
        ++row[c];
        t.pmask[static_cast<std::size_t>(mask)] =
            t.pmask[static_cast<std::size_t>(prev)] |
            ct.coset_masks[static_cast<std::size_t>(c)];
        std::int64_t occupied = 0;
        std::int8_t mn = std::numeric_limits<std::int8_t>::max();
        for (std::int64_t i = 0; i < t.q; ++i) {
            if (row[i] > 0) {
                ++occupied;
                mn = std::min(mn, row[i]);
            }
        }
        t.periodized[static_cast<std::size_t>(mask)] =
            static_cast<std::int16_t>(occupied * t.korder);
        t.min_count[static_cast<std::size_t>(mask)] = mn;
    }
    return t;
}

std::vector<std::uint64_t> eligible_masks(std::int64_t n, const Rat& epsilon) {
    std::vector<std::uint64_t> out;
    const std::int64_t msize = std::int64_t{1} << n;
    for (std::int64_t mask = 1; mask < msize; ++mask)
        if (Rat(std::popcount(static_cast<std::uint64_t>(mask)), n) > epsilon)
            out.push_back(static_cast<std::uint64_t>(mask));
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Kneser bound, stabilizers, certificates
// ---------------------------------------------------------------------------

VerifyReport verify_kneser_exhaustive(std::int64_t max_order, int threads) {
    VerifyReport report;
    report.suite = "kneser-exhaustive";
    for (const GroupPtr& gp : groups_upto(max_order)) {
        const std::int64_t n = gp->size();
        const std::int64_t msize = std::int64_t{1} << n;
        auto blocks = run_blocked(
            msize - 1, threads, [&](Accum& acc, std::int64_t lo, std::int64_t hi) {
                for (std::int64_t ai = lo; ai < hi; ++ai) {
                    GSet a = GSet::from_mask(gp, static_cast<std::uint64_t>(ai + 1));
                    for (std::int64_t bm = 1; bm < msize; ++bm) {
                        GSet b = GSet::from_mask(gp, static_cast<std::uint64_t>(bm));
                        ++acc.scanned;
                        GSet s = sumset(a, b);
                        Subgroup h = stabilizer(s);
                        GSet brute(gp);
                        for (Elem g = 0; g < n; ++g)
                            if (s.translated(g) == s) brute.insert(g);
                        if (!(brute == h.members)) {
                            flag(acc, report.suite, pair_repro(a, b),
                                 "stabilizer mismatch: library=" + brace_elements(h.members) +
                                     " brute=" + brace_elements(brute));
                            continue;
                        }
                        if (!(periodization(s, h) == s)) {
                            flag(acc, report.suite, pair_repro(a, b),
                                 "A+B is not periodic under its own stabilizer");
                            continue;
                        }
                        const std::int64_t rhs = periodization(a, h).size() +
                                                 periodization(b, h).size() - h.order();
                        ++acc.instances;
                        if (s.size() < rhs)
                            flag(acc, report.suite, pair_repro(a, b),
                                 "bound fails: |A+B|=" + std::to_string(s.size()) +
                                     " < |A+H|+|B+H|-|H|=" + std::to_string(rhs));
                        auto cert = kneser_certificate(a, b);
                        if (s.size() < a.size() + b.size()) {
                            ++acc.extra0;
                            if (s.size() != rhs)
                                flag(acc, report.suite, pair_repro(a, b),
                                     "critical pair misses the equality: |A+B|=" +
                                         std::to_string(s.size()) +
                                         " vs |A+H|+|B+H|-|H|=" + std::to_string(rhs));
                            if (!cert)
                                flag(acc, report.suite, pair_repro(a, b),
                                     "no certificate produced for a critical pair");
                            else if (!cert->valid || cert->lhs != s.size() ||
                                     cert->rhs != rhs || !(cert->stab.members == h.members))
                                flag(acc, report.suite, pair_repro(a, b),
                                     "certificate does not match recomputation");
                        } else if (cert) {
                            flag(acc, report.suite, pair_repro(a, b),
                                 "certificate produced for a non-critical pair");
                        }
                    }
                }
            });
        auto extras = merge_blocks(report, std::move(blocks));
        report.notes.push_back("group=" + gp->to_string() + " pairs=" +
                               std::to_string((msize - 1) * (msize - 1)) +
                               " critical=" + std::to_string(extras.first));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Coset saturation (mass overflow forces full cosets)
// ---------------------------------------------------------------------------

VerifyReport verify_sum_saturation(std::int64_t max_order, int threads) {
    VerifyReport report;
    report.suite = "sum-saturation";
    for (const GroupPtr& gp : groups_upto(max_order)) {
        const std::int64_t n = gp->size();
        const std::int64_t msize = std::int64_t{1} << n;
        const std::vector<Subgroup> subs = enumerate_subgroups(gp, n);
        std::vector<CosetTables> ct;
        std::vector<MaskTables> mt;
        ct.reserve(subs.size());
        mt.reserve(subs.size());
        for (const Subgroup& k : subs) {
            ct.push_back(make_coset_tables(gp, k));
            mt.push_back(make_mask_tables(gp, k, ct.back()));
        }
        auto blocks = run_blocked(
            msize - 1, threads, [&](Accum& acc, std::int64_t lo, std::int64_t hi) {
                for (std::int64_t ai = lo; ai < hi; ++ai) {
                    const std::uint64_t amask = static_cast<std::uint64_t>(ai + 1);
                    GSet a = GSet::from_mask(gp, amask);
                    for (std::int64_t bm = 1; bm < msize; ++bm) {
                        const std::uint64_t bmask = static_cast<std::uint64_t>(bm);
                        GSet b = GSet::from_mask(gp, bmask);
                        ++acc.scanned;
                        GSet s = sumset(a, b);
                        const std::uint64_t smask = s.mask64();
                        if (a.size() + b.size() > n) {
                            ++acc.instances;
                            ++acc.extra0;
                            if (!s.full())
                                flag(acc, report.suite, pair_repro(a, b),
                                     "|A|+|B| > |G| but A+B != G");
                        }
                        for (std::size_t si = 0; si < subs.size(); ++si) {
                            const MaskTables& t = mt[si];
                            const std::int8_t* ra =
                                &t.counts[static_cast<std::size_t>(
                                    static_cast<std::int64_t>(amask) * t.q)];
                            const std::int8_t* rb =
                                &t.counts[static_cast<std::size_t>(
                                    static_cast<std::int64_t>(bmask) * t.q)];
                            for (std::int64_t i = 0; i < t.q; ++i) {
                                if (!ra[i]) continue;
                                for (std::int64_t j = 0; j < t.q; ++j) {
                                    if (!rb[j]) continue;
                                    if (ra[i] + rb[j] <= t.korder) continue;
                                    ++acc.instances;
                                    ++acc.extra1;
                                    const std::uint64_t target =
                                        ct[si].coset_masks[static_cast<std::size_t>(
                                            ct[si].rep_sum[static_cast<std::size_t>(i * t.q +
                                                                                    j)])];
                                    if ((target & ~smask) != 0)
                                        flag(acc, report.suite, pair_repro(a, b),
                                             "coset saturation fails: K=" +
                                                 brace_elements(subs[si].members) + " a-rep=" +
                                                 std::to_string(
                                                     subs[si].coset_reps[static_cast<std::size_t>(
                                                         i)]) +
                                                 " b-rep=" +
                                                 std::to_string(
                                                     subs[si].coset_reps[static_cast<std::size_t>(
                                                         j)]));
                                }
                            }
                        }
                    }
                }
            });
        auto extras = merge_blocks(report, std::move(blocks));
        report.notes.push_back("group=" + gp->to_string() + " pairs=" +
                               std::to_string((msize - 1) * (msize - 1)) +
                               " full-sum=" + std::to_string(extras.first) +
                               " coset-instances=" + std::to_string(extras.second));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Structure of critical pairs at the Kneser equality
// ---------------------------------------------------------------------------

VerifyReport verify_tame_pair_structure(std::int64_t max_order, int threads) {
    VerifyReport report;
    report.suite = "tame-pair-structure";
    for (const GroupPtr& gp : groups_upto(max_order)) {
        const std::int64_t n = gp->size();
        const std::int64_t msize = std::int64_t{1} << n;
        auto blocks = run_blocked(
            msize - 1, threads, [&](Accum& acc, std::int64_t lo, std::int64_t hi) {
                for (std::int64_t ai = lo; ai < hi; ++ai) {
                    GSet a = GSet::from_mask(gp, static_cast<std::uint64_t>(ai + 1));
                    for (std::int64_t bm = 1; bm < msize; ++bm) {
                        GSet b = GSet::from_mask(gp, static_cast<std::uint64_t>(bm));
                        ++acc.scanned;
                        GSet s = sumset(a, b);
                        if (s.size() >= a.size() + b.size()) continue;
                        auto cert = kneser_certificate(a, b);
                        if (!cert) {
                            flag(acc, report.suite, pair_repro(a, b),
                                 "critical pair without a certificate");
                            continue;
                        }
                        if (!cert->valid) {
                            flag(acc, report.suite, pair_repro(a, b),
                                 "critical pair misses the Kneser equality");
                            continue;
                        }
                        const Subgroup& h = cert->stab;
                        ++acc.instances;
                        // (i) per-coset mass lower bound on both sides.
                        a.for_each([&](Elem x) {
                            GSet coset = h.members.translated(x);
                            if ((a & coset).size() + s.size() < a.size() + b.size())
                                flag(acc, report.suite, pair_repro(a, b),
                                     "(i) fails on the A side at a=" + std::to_string(x));
                        });
                        b.for_each([&](Elem x) {
                            GSet coset = h.members.translated(x);
                            if ((b & coset).size() + s.size() < a.size() + b.size())
                                flag(acc, report.suite, pair_repro(a, b),
                                     "(i) fails on the B side at b=" + std::to_string(x));
                        });
                        // (ii) mover sets are the periodized originals.
                        if (!(mover_set(a, b) == periodization(a, h)))
                            flag(acc, report.suite, pair_repro(a, b),
                                 "(ii) movers of B-translates differ from A+H");
                        if (!(mover_set(b, a) == periodization(b, h)))
                            flag(acc, report.suite, pair_repro(a, b),
                                 "(ii) movers of A-translates differ from B+H");
                        // (iii) escaping translates cost at least the deficit.
                        for (Elem g = 0; g < n; ++g) {
                            GSet ag = a.translated(g);
                            if (ag.is_subset_of(s)) continue;
                            if ((ag | s).size() < a.size() + b.size())
                                flag(acc, report.suite, pair_repro(a, b),
                                     "(iii) union bound fails at g=" + std::to_string(g));
                        }
                    }
                }
            });
        auto extras = merge_blocks(report, std::move(blocks));
        (void)extras;
        report.notes.push_back("group=" + gp->to_string() + " pairs=" +
                               std::to_string((msize - 1) * (msize - 1)));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Coset overflow from a failed periodized bound
// ---------------------------------------------------------------------------

VerifyReport verify_coset_overflow(std::int64_t max_order, int threads) {
    VerifyReport report;
    report.suite = "coset-overflow";
    for (const GroupPtr& gp : groups_upto(max_order)) {
        const std::int64_t n = gp->size();
        const std::int64_t msize = std::int64_t{1} << n;
        const std::vector<Subgroup> subs = enumerate_subgroups(gp, n);
        std::vector<MaskTables> mt;
        mt.reserve(subs.size());
        for (const Subgroup& k : subs) mt.push_back(make_mask_tables(gp, k, make_coset_tables(gp, k)));
        auto blocks = run_blocked(
            msize - 1, threads, [&](Accum& acc, std::int64_t lo, std::int64_t hi) {
                for (std::int64_t ai = lo; ai < hi; ++ai) {
                    const std::int64_t amask = ai + 1;
                    const int popa = std::popcount(static_cast<std::uint64_t>(amask));
                    for (std::int64_t bmask = 1; bmask < msize; ++bmask) {
                        const int popb = std::popcount(static_cast<std::uint64_t>(bmask));
                        ++acc.scanned;
                        for (std::size_t si = 0; si < subs.size(); ++si) {
                            const MaskTables& t = mt[si];
                            const std::int64_t pa = t.periodized[static_cast<std::size_t>(amask)];
                            const std::int64_t pb = t.periodized[static_cast<std::size_t>(bmask)];
                            if (pa + pb - t.korder >= popa + popb) continue;
                            ++acc.instances;
                            if (t.min_count[static_cast<std::size_t>(amask)] +
                                    t.min_count[static_cast<std::size_t>(bmask)] <=
                                t.korder) {
                                GSet a = GSet::from_mask(gp, static_cast<std::uint64_t>(amask));
                                GSet b = GSet::from_mask(gp, static_cast<std::uint64_t>(bmask));
                                flag(acc, report.suite, pair_repro(a, b),
                                     "an occupied coset pair of H=" +
                                         brace_elements(subs[si].members) +
                                         " does not overflow despite |A+H|+|B+H|-|H| < |A|+|B|");
                            }
                        }
                    }
                }
            });
        auto extras = merge_blocks(report, std::move(blocks));
        (void)extras;
        report.notes.push_back("group=" + gp->to_string() + " pairs=" +
                               std::to_string((msize - 1) * (msize - 1)) +
                               " subgroups=" + std::to_string(subs.size()));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Subpair transfer at equal sumset size
// ---------------------------------------------------------------------------

VerifyReport verify_subpair_inheritance(std::int64_t max_order, int threads) {
    VerifyReport report;
    report.suite = "subpair-inheritance";
    for (const GroupPtr& gp : groups_upto(max_order)) {
        const std::int64_t msize = std::int64_t{1} << gp->size();
        auto blocks = run_blocked(
            msize - 1, threads, [&](Accum& acc, std::int64_t lo, std::int64_t hi) {
                for (std::int64_t ai = lo; ai < hi; ++ai) {
                    const std::uint64_t apmask = static_cast<std::uint64_t>(ai + 1);
                    GSet ap = GSet::from_mask(gp, apmask);
                    for (std::int64_t bm = 1; bm < msize; ++bm) {
                        const std::uint64_t bpmask = static_cast<std::uint64_t>(bm);
                        GSet bp = GSet::from_mask(gp, bpmask);
                        ++acc.scanned;
                        GSet sp = sumset(ap, bp);
                        if (sp.size() >= ap.size() + bp.size()) continue;
                        auto cert = kneser_certificate(ap, bp);
                        if (!cert || !cert->valid) continue;
                        const Subgroup& h = cert->stab;
                        // Occupied-coset snapshots of the outer pair.
                        std::vector<GSet> acosets;
                        std::vector<GSet> bcosets;
                        for (Elem rep : h.coset_reps) {
                            GSet coset = h.members.translated(rep);
                            if (coset.intersects(ap)) acosets.push_back(coset);
                            if (coset.intersects(bp)) bcosets.push_back(std::move(coset));
                        }
                        GSet apk = periodization(ap, h);
                        GSet bpk = periodization(bp, h);
                        std::uint64_t am = apmask;
                        do {
                            if (am != 0) {
                                std::uint64_t bmsk = bpmask;
                                do {
                                    if (bmsk != 0) {
                                        ++acc.extra0;
                                        GSet a = GSet::from_mask(gp, am);
                                        GSet b = GSet::from_mask(gp, bmsk);
                                        GSet s = sumset(a, b);
                                        if (s.size() < a.size() + b.size() &&
                                            s.size() == sp.size()) {
                                            ++acc.instances;
                                            const std::string repro =
                                                pair_repro(a, b) + " Asup=" + csv_elements(ap) +
                                                " Bsup=" + csv_elements(bp);
                                            for (const GSet& ca : acosets)
                                                for (const GSet& cb : bcosets)
                                                    if ((a & ca).size() + (b & cb).size() <=
                                                        h.order())
                                                        flag(acc, report.suite, repro,
                                                             "occupied coset pair of the outer "
                                                             "stabilizer does not overflow");
                                            if (!(periodization(a, h) == apk))
                                                flag(acc, report.suite, repro,
                                                     "A+H differs from A'+H");
                                            if (!(periodization(b, h) == bpk))
                                                flag(acc, report.suite, repro,
                                                     "B+H differs from B'+H");
                                            if (!(s == sp))
                                                flag(acc, report.suite, repro,
                                                     "A+B differs from A'+B' despite equal size");
                                            auto sub = kneser_certificate(a, b);
                                            if (!sub || !sub->valid ||
                                                !(sub->stab.members == h.members))
                                                flag(acc, report.suite, repro,
                                                     "subpair does not inherit the equality "
                                                     "with the same stabilizer");
                                        }
                                    }
                                    bmsk = (bmsk - 1) & bpmask;
                                } while (bmsk != bpmask);
                            }
                            am = (am - 1) & apmask;
                        } while (am != apmask);
                    }
                }
            });
        auto extras = merge_blocks(report, std::move(blocks));
        report.notes.push_back("group=" + gp->to_string() +
                               " subset-quadruples=" + std::to_string(extras.first));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Equal-size subpair replacement (vacuous under counting measure)
// ---------------------------------------------------------------------------

VerifyReport verify_equal_mass_subpair(std::int64_t max_order, int threads) {
    VerifyReport report;
    report.suite = "equal-mass-subpair";
    for (const GroupPtr& gp : groups_upto(max_order)) {
        const std::int64_t msize = std::int64_t{1} << gp->size();
        auto blocks = run_blocked(
            msize - 1, threads, [&](Accum& acc, std::int64_t lo, std::int64_t hi) {
                for (std::int64_t ai = lo; ai < hi; ++ai) {
                    GSet a = GSet::from_mask(gp, static_cast<std::uint64_t>(ai + 1));
                    for (std::int64_t bm = 1; bm < msize; ++bm) {
                        const std::uint64_t bmask = static_cast<std::uint64_t>(bm);
                        GSet b = GSet::from_mask(gp, bmask);
                        GSet s = sumset(a, b);
                        if (s.size() != a.size() + b.size()) continue;
                        ++acc.extra0;
                        const int popb = std::popcount(bmask);
                        std::uint64_t sub = bmask;
                        do {
                            if (sub != 0) {
                                ++acc.scanned;
                                if (std::popcount(sub) == popb) {
                                    GSet bprime = GSet::from_mask(gp, sub);
                                    GSet sprime = sumset(a, bprime);
                                    if (sprime.size() < a.size() + bprime.size()) {
                                        auto cert = kneser_certificate(a, bprime);
                                        if (cert && cert->valid) {
                                            ++acc.instances;
                                            const Subgroup& h = cert->stab;
                                            const std::string repro =
                                                pair_repro(a, b) +
                                                " Bp=" + csv_elements(bprime);
                                            GSet diff = s;
                                            diff.subtract(sprime);
                                            if (!sprime.is_subset_of(s))
                                                flag(acc, report.suite, repro,
                                                     "(i) A+B' not inside A+B");
                                            else if (!diff.empty() &&
                                                     !diff.is_subset_of(h.members.translated(
                                                         diff.min_element())))
                                                flag(acc, report.suite, repro,
                                                     "(i) sumset difference spans more than "
                                                     "one H-coset");
                                            if (!is_periodic(bprime, h))
                                                flag(acc, report.suite, repro,
                                                     "(ii) B' is not H-periodic");
                                            GSet a1 = inner_periodization(a, h);
                                            GSet a0 = a;
                                            a0.subtract(a1);
                                            if (a0.size() != diff.size())
                                                flag(acc, report.suite, repro,
                                                     "(iii) |A0| != |(A+B) minus (A+B')|");
                                            if (!a0.empty() &&
                                                !a0.is_subset_of(h.members.translated(
                                                    a0.min_element())))
                                                flag(acc, report.suite, repro,
                                                     "(iii) A0 spans more than one H-coset");
                                            if (a0.empty()) {
                                                if (!(s == sprime))
                                                    flag(acc, report.suite, repro,
                                                         "(iv) empty residual but the sumsets "
                                                         "differ");
                                            } else if (!diff.is_subset_of(sumset(a0, bprime))) {
                                                flag(acc, report.suite, repro,
                                                     "(iv) sumset difference not reached by "
                                                     "A0 + B'");
                                            }
                                        }
                                    }
                                }
                            }
                            sub = (sub - 1) & bmask;
                        } while (sub != bmask);
                    }
                }
            });
        auto extras = merge_blocks(report, std::move(blocks));
        report.notes.push_back("group=" + gp->to_string() +
                               " equal-size-pairs=" + std::to_string(extras.first));
    }
    report.notes.push_back(
        "qualifying instances are impossible under counting measure: |B'| = |B| with B' "
        "inside B forces B' = B, and then |A+B'| = |A|+|B| is not critical; the conclusion "
        "checks remain live for any instance found");
    return report;
}

// ---------------------------------------------------------------------------
// Mover transfer under a periodic sumset
// ---------------------------------------------------------------------------

VerifyReport verify_mover_transfer(std::int64_t max_order, int threads) {
    VerifyReport report;
    report.suite = "mover-transfer";
    for (const GroupPtr& gp : groups_upto(max_order)) {
        const std::int64_t n = gp->size();
        const std::int64_t msize = std::int64_t{1} << n;
        const std::vector<Subgroup> subs = enumerate_subgroups(gp, n);
        std::vector<MaskTables> mt;
        mt.reserve(subs.size());
        for (const Subgroup& k : subs) mt.push_back(make_mask_tables(gp, k, make_coset_tables(gp, k)));
        auto blocks = run_blocked(
            msize - 1, threads, [&](Accum& acc, std::int64_t lo, std::int64_t hi) {
                for (std::int64_t ai = lo; ai < hi; ++ai) {
                    GSet a = GSet::from_mask(gp, static_cast<std::uint64_t>(ai + 1));
                    for (std::int64_t bm = 1; bm < msize; ++bm) {
                        GSet b = GSet::from_mask(gp, static_cast<std::uint64_t>(bm));
                        ++acc.scanned;
                        GSet s = sumset(a, b);
                        const std::uint64_t smask = s.mask64();
                        for (std::size_t si = 0; si < subs.size(); ++si) {
                            const MaskTables& t = mt[si];
                            if (t.pmask[static_cast<std::size_t>(smask)] != smask) continue;
                            ++acc.instances;
                            GSet bk = GSet::from_mask(
                                gp, t.pmask[static_cast<std::size_t>(
                                        static_cast<std::uint64_t>(bm))]);
                            for (Elem g = 0; g < n; ++g) {
                                const bool plain = b.translated(g).is_subset_of(s);
                                const bool grown = bk.translated(g).is_subset_of(s);
                                if (plain != grown)
                                    flag(acc, report.suite, pair_repro(a, b),
                                         "translate membership differs from its K-grown form "
                                         "at g=" + std::to_string(g) +
                                             " K=" + brace_elements(subs[si].members));
                            }
                        }
                    }
                }
            });
        auto extras = merge_blocks(report, std::move(blocks));
        (void)extras;
        report.notes.push_back("group=" + gp->to_string() + " pairs=" +
                               std::to_string((msize - 1) * (msize - 1)));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Quasi-periodic pair builder, exhaustive over valid inputs
// ---------------------------------------------------------------------------

VerifyReport verify_qp_builder_exhaustive(std::int64_t max_order, int threads) {
    VerifyReport report;
    report.suite = "qp-builder";
    for (const GroupPtr& gp : groups_upto(max_order)) {
        const std::int64_t n = gp->size();
        for (const Subgroup& k : enumerate_subgroups(gp, n)) {
            const CosetTables ct = make_coset_tables(gp, k);
            const std::int64_t q = static_cast<std::int64_t>(ct.coset_sets.size());
            const std::int64_t korder = k.order();
            // All nonempty subsets of each coset, indexed by submask.
            std::vector<std::vector<GSet>> coset_subsets(static_cast<std::size_t>(q));
            for (std::int64_t i = 0; i < q; ++i) {
                const std::vector<Elem> elems = ct.coset_sets[static_cast<std::size_t>(i)].elements();
                auto& list = coset_subsets[static_cast<std::size_t>(i)];
                list.reserve(std::size_t{1} << korder);
                for (std::int64_t sm = 0; sm < (std::int64_t{1} << korder); ++sm) {
                    GSet x(gp);
                    for (std::int64_t bit = 0; bit < korder; ++bit)
                        if (sm >> bit & 1) x.insert(elems[static_cast<std::size_t>(bit)]);
                    list.push_back(std::move(x));
                }
            }
            const std::int64_t cmax = (std::int64_t{1} << q) - 1;
            auto blocks = run_blocked(
                cmax, threads, [&](Accum& acc, std::int64_t lo, std::int64_t hi) {
                    for (std::int64_t ci = lo; ci < hi; ++ci) {
                        const std::int64_t cmask = ci + 1;
                        GSet c(gp);
                        for (std::int64_t i = 0; i < q; ++i)
                            if (cmask >> i & 1) c |= ct.coset_sets[static_cast<std::size_t>(i)];
                        for (std::int64_t dmask = 1; dmask <= cmax; ++dmask) {
                            GSet dset(gp);
                            for (std::int64_t j = 0; j < q; ++j)
                                if (dmask >> j & 1)
                                    dset |= ct.coset_sets[static_cast<std::size_t>(j)];
                            ++acc.scanned;
                            if (sumset(c, dset).size() != c.size() + dset.size() - korder)
                                continue;
                            for (std::int64_t i = 0; i < q; ++i) {
                                if (!(cmask >> i & 1)) continue;
                                const Elem c0 = k.coset_reps[static_cast<std::size_t>(i)];
                                for (std::int64_t j = 0; j < q; ++j) {
                                    if (!(dmask >> j & 1)) continue;
                                    const Elem d0 = k.coset_reps[static_cast<std::size_t>(j)];
                                    const std::string corner_repro =
                                        "group=" + gp->to_string() + " C=" + csv_elements(c) +
                                        " D=" + csv_elements(dset) +
                                        " K=" + brace_elements(k.members) +
                                        " c0=" + std::to_string(c0) +
                                        " d0=" + std::to_string(d0);
                                    if (!is_unique_expression(c, dset, k, c0, d0)) {
                                        try {
                                            build_qp_pair(c, dset, k, c0, d0,
                                                          ct.coset_sets[static_cast<std::size_t>(
                                                              i)],
                                                          ct.coset_sets[static_cast<std::size_t>(
                                                              j)]);
                                            flag(acc, report.suite, corner_repro,
                                                 "builder accepted a corner that is not a "
                                                 "unique expression coset");
                                        } catch (const PreconditionError&) {
                                        }
                                        continue;
                                    }
                                    const auto& lista =
                                        coset_subsets[static_cast<std::size_t>(i)];
                                    const auto& listb =
                                        coset_subsets[static_cast<std::size_t>(j)];
                                    for (std::size_t am = 1; am < lista.size(); ++am) {
                                        const GSet& a0 = lista[am];
                                        for (std::size_t bmsk = 1; bmsk < listb.size(); ++bmsk) {
                                            const GSet& b0 = listb[bmsk];
                                            const bool small =
                                                sumset(a0, b0).size() <= a0.size() + b0.size();
                                            if (!small) {
                                                try {
                                                    build_qp_pair(c, dset, k, c0, d0, a0, b0);
                                                    flag(acc, report.suite, corner_repro,
                                                         "builder accepted residues with "
                                                         "|A0+B0| > |A0|+|B0|");
                                                } catch (const PreconditionError&) {
                                                }
                                                continue;
                                            }
                                            ++acc.instances;
                                            try {
                                                auto built =
                                                    build_qp_pair(c, dset, k, c0, d0, a0, b0);
                                                GSet expect_a = c;
                                                expect_a.subtract(
                                                    ct.coset_sets[static_cast<std::size_t>(i)]);
                                                expect_a |= a0;
                                                GSet expect_b = dset;
                                                expect_b.subtract(
                                                    ct.coset_sets[static_cast<std::size_t>(j)]);
                                                expect_b |= b0;
                                                if (!(built.first == expect_a) ||
                                                    !(built.second == expect_b))
                                                    flag(acc, report.suite, corner_repro,
                                                         "built pair differs from the direct "
                                                         "construction");
                                                if (sumset(built.first, built.second).size() >
                                                    built.first.size() + built.second.size())
                                                    flag(acc, report.suite, corner_repro,
                                                         "conclusion |A+B| <= |A|+|B| fails "
                                                         "for A0=" + brace_elements(a0) +
                                                             " B0=" + brace_elements(b0));
                                            } catch (const Error& e) {
                                                flag(acc, report.suite, corner_repro,
                                                     std::string(
                                                         "builder rejected a valid input: ") +
                                                         e.what());
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                });
            merge_blocks(report, std::move(blocks));
        }
        report.notes.push_back("group=" + gp->to_string() + " done");
    }
    return report;
}

// ---------------------------------------------------------------------------
// Classification coverage at the 1/|G| gap threshold
// ---------------------------------------------------------------------------

VerifyReport verify_classification_coverage(std::int64_t max_order, const Rat& epsilon,
                                            std::int64_t d, int threads) {
    VerifyReport report;
    report.suite = "classification-coverage";
    for (const GroupPtr& gp : groups_upto(max_order)) {
        const std::int64_t n = gp->size();
        const DeltaScanResult scan = delta_scan(gp, epsilon, d, threads);
        const std::vector<std::uint64_t> masks = eligible_masks(n, epsilon);
        const std::int64_t m = static_cast<std::int64_t>(masks.size());
        if (scan.pair_count != m * m ||
            static_cast<std::int64_t>(scan.rows.size()) != m * m) {
            flag(report, "group=" + gp->to_string(),
                 "delta_scan enumerated " + std::to_string(scan.pair_count) +
                     " pairs, expected " + std::to_string(m * m));
            continue;
        }
        std::int64_t unclassified_rows = 0;
        for (const ScanRow& row : scan.rows)
            if (row.tag == ClassTag::Unclassified) ++unclassified_rows;
        if (static_cast<std::int64_t>(scan.unclassified.size()) != unclassified_rows)
            flag(report, "group=" + gp->to_string(),
                 "unclassified reproducer list does not match the row tags");
        const Rat low_gap(1, n);
        const std::int64_t before = report.instances_checked;
        auto blocks = run_blocked(
            m * m, threads, [&](Accum& acc, std::int64_t lo, std::int64_t hi) {
                for (std::int64_t r = lo; r < hi; ++r) {
                    ++acc.scanned;
                    const ScanRow& row = scan.rows[static_cast<std::size_t>(r)];
                    if (row.gap > low_gap) continue;
                    ++acc.instances;
                    GSet a = GSet::from_mask(gp, masks[static_cast<std::size_t>(r / m)]);
                    GSet b = GSet::from_mask(gp, masks[static_cast<std::size_t>(r % m)]);
                    if (row.size_a != a.size() || row.size_b != b.size()) {
                        flag(acc, report.suite, pair_repro(a, b),
                             "scan row misaligned with the canonical pair order");
                        continue;
                    }
                    try {
                        ClassificationResult res = classify_pair(a, b, epsilon, d, low_gap);
                        verify_classification(res, a, b);
                        if (res.tag == ClassTag::Unclassified) {
                            ++acc.extra0;
                            std::string detail =
                                "no clause applies at delta=1/" + std::to_string(n);
                            if (!res.diagnostics.empty())
                                detail += "; " + res.diagnostics.front();
                            flag(acc, report.suite, pair_repro(a, b), std::move(detail));
                        }
                        if (res.tag != row.tag)
                            flag(acc, report.suite, pair_repro(a, b),
                                 std::string("scan/direct tag mismatch: scan=") +
                                     class_tag_name(row.tag) +
                                     " direct=" + class_tag_name(res.tag));
                        else if (res.tag != ClassTag::Unclassified &&
                                 row.k_index != res.subgroup.index)
                            flag(acc, report.suite, pair_repro(a, b),
                                 "scan/direct witness subgroup index mismatch");
                    } catch (const Error& e) {
                        flag(acc, report.suite, pair_repro(a, b),
                             std::string("classification raised: ") + e.what());
                    }
                }
            });
        merge_blocks(report, std::move(blocks));
        const std::int64_t low_gap_pairs = report.instances_checked - before;
        report.notes.push_back(
            "group=" + gp->to_string() + " pairs=" + std::to_string(m * m) +
            " low-gap=" + std::to_string(low_gap_pairs) + " delta_star=" +
            (scan.delta_star ? format_rational(*scan.delta_star) : std::string("none")) +
            " unclassified-rows=" + std::to_string(unclassified_rows));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Parallel progression covers with multiplicative slack in Z/p
// ---------------------------------------------------------------------------

VerifyReport verify_ap_cover_bounds(const std::vector<std::int64_t>& primes, const Rat& epsilon,
                                    int threads) {
    if (!(epsilon > Rat(0)))
        throw PreconditionError("verify_ap_cover_bounds: epsilon must be positive");
    VerifyReport report;
    report.suite = "ap-cover-bounds";
    for (std::int64_t p : primes) {
        const GroupPtr gp = make_group({p});
        const Subgroup whole = Subgroup::whole(gp);
        const std::int64_t msize = std::int64_t{1} << p;
        const Rat one_plus = Rat(1) + epsilon;
        auto blocks = run_blocked(
            msize - 1, threads, [&](Accum& acc, std::int64_t lo, std::int64_t hi) {
                std::vector<char> present(static_cast<std::size_t>(p));
                for (std::int64_t ai = lo; ai < hi; ++ai) {
                    const std::uint64_t amask = static_cast<std::uint64_t>(ai + 1);
                    const std::int64_t popa = std::popcount(amask);
                    if (Rat(popa) < epsilon * Rat(p)) continue;
                    GSet a = GSet::from_mask(gp, amask);
                    for (std::int64_t bm = 1; bm < msize; ++bm) {
                        const std::uint64_t bmask = static_cast<std::uint64_t>(bm);
                        const std::int64_t popb = std::popcount(bmask);
                        if (Rat(popb) < epsilon * Rat(p)) continue;
                        if (Rat(popa + popb) >= (Rat(1) - epsilon) * Rat(p)) continue;
                        ++acc.scanned;
                        GSet b = GSet::from_mask(gp, bmask);
                        if (sumset(a, b).size() > popa + popb) continue;
                        ++acc.instances;
                        // Route 1: the library's cover enumeration. Any cover
                        // within the multiplicative bounds also meets the
                        // additive slack (|A| < p), so none is filtered away.
                        std::vector<std::int64_t> lib;
                        for (const ProgressionCover& cover :
                             all_parallel_covers(a, b, whole, epsilon, 1)) {
                            if (Rat(cover.cover_size_a()) > one_plus * Rat(popa)) continue;
                            if (Rat(cover.cover_size_b()) > one_plus * Rat(popb)) continue;
                            lib.push_back(cover.hom.multipliers.at(0));
                        }
                        // Route 2: direct multiplier scan.
                        std::vector<std::int64_t> direct;
                        for (std::int64_t mult = 1; mult < p; ++mult) {
                            std::fill(present.begin(), present.end(), 0);
                            a.for_each([&](Elem x) {
                                present[static_cast<std::size_t>(mult * x % p)] = 1;
                            });
                            const std::int64_t len_a =
                                shortest_progression_containing(present, p).length;
                            if (Rat(len_a) > one_plus * Rat(popa)) continue;
                            std::fill(present.begin(), present.end(), 0);
                            b.for_each([&](Elem x) {
                                present[static_cast<std::size_t>(mult * x % p)] = 1;
                            });
                            const std::int64_t len_b =
                                shortest_progression_containing(present, p).length;
                            if (Rat(len_b) > one_plus * Rat(popb)) continue;
                            direct.push_back(mult);
                        }
                        std::sort(lib.begin(), lib.end());
                        if (lib != direct) {
                            std::string ls, ds;
                            for (std::int64_t v : lib) ls += std::to_string(v) + ",";
                            for (std::int64_t v : direct) ds += std::to_string(v) + ",";
                            flag(acc, report.suite, pair_repro(a, b),
                                 "cover routes disagree: library=[" + ls + "] direct=[" + ds +
                                     "]");
                        }
                        if (direct.empty()) {
                            ++acc.extra0;
                            flag(acc, report.suite, pair_repro(a, b),
                                 "no parallel progression cover keeps |I| <= (1+eps)|A| and "
                                 "|J| <= (1+eps)|B|");
                        }
                    }
                }
            });
        auto extras = merge_blocks(report, std::move(blocks));
        report.notes.push_back("p=" + std::to_string(p) +
                               " uncovered=" + std::to_string(extras.first));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Structure-transfer oracle coverage in Z/p
// ---------------------------------------------------------------------------

VerifyReport verify_oracle_coverage(const std::vector<std::int64_t>& primes, const Rat& epsilon,
                                    int threads) {
    VerifyReport report;
    report.suite = "oracle-coverage";
    for (std::int64_t p : primes) {
        const GroupPtr gp = make_group({p});
        const Rat delta(1, p);
        const std::vector<std::uint64_t> masks = eligible_masks(p, epsilon);
        const std::int64_t m = static_cast<std::int64_t>(masks.size());
        const std::int64_t before = report.instances_checked;
        auto blocks = run_blocked(
            m, threads, [&](Accum& acc, std::int64_t lo, std::int64_t hi) {
                for (std::int64_t i = lo; i < hi; ++i) {
                    GSet a = GSet::from_mask(gp, masks[static_cast<std::size_t>(i)]);
                    for (std::int64_t j = 0; j < m; ++j) {
                        GSet b = GSet::from_mask(gp, masks[static_cast<std::size_t>(j)]);
                        ++acc.scanned;
                        GSet popular = popular_sumset(a, b, delta);
                        if (Rat(popular.size(), p) > Rat(a.size() + b.size(), p) + delta)
                            continue;
                        ++acc.instances;
                        std::optional<SemicontinuityWitness> w;
                        try {
                            w = semicontinuity_oracle(a, b, epsilon, delta);
                        } catch (const PreconditionError& e) {
                            flag(acc, report.suite, pair_repro(a, b),
                                 std::string("oracle rejected an eligible pair: ") + e.what());
                            continue;
                        }
                        if (!w) {
                            flag(acc, report.suite, pair_repro(a, b),
                                 "oracle found no witness within budget");
                            continue;
                        }
                        if (w->s.empty() || w->t.empty()) {
                            flag(acc, report.suite, pair_repro(a, b),
                                 "witness has an empty side");
                            continue;
                        }
                        if (sumset(w->s, w->t).size() > w->s.size() + w->t.size())
                            flag(acc, report.suite, pair_repro(a, b),
                                 "witness pair is not subcritical: S=" + brace_elements(w->s) +
                                     " T=" + brace_elements(w->t));
                        const Rat cost =
                            Rat((a ^ w->s).size(), p) + Rat((b ^ w->t).size(), p);
                        if (cost != w->move_cost)
                            flag(acc, report.suite, pair_repro(a, b),
                                 "witness cost mismatch: recomputed " + format_rational(cost) +
                                     " reported " + format_rational(w->move_cost));
                        if (!(cost < epsilon))
                            flag(acc, report.suite, pair_repro(a, b),
                                 "witness cost " + format_rational(cost) +
                                     " is not below epsilon");
                    }
                }
            });
        merge_blocks(report, std::move(blocks));
        report.notes.push_back("p=" + std::to_string(p) + " eligible=" +
                               std::to_string(report.instances_checked - before));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Convolution equivalence on random pairs
// ---------------------------------------------------------------------------

namespace {

const std::vector<std::vector<std::int64_t>>& conv_shapes(std::int64_t order) {
    static const std::map<std::int64_t, std::vector<std::vector<std::int64_t>>> table = {
        {64, {{64}, {2, 32}, {4, 16}, {8, 8}, {4, 4, 4}, {2, 2, 2, 2, 2, 2}}},
        {243, {{243}, {3, 81}, {9, 27}, {3, 3, 27}, {3, 9, 9}, {3, 3, 3, 3, 3}}},
        {256, {{256}, {2, 128}, {16, 16}, {4, 8, 8}, {4, 4, 4, 4}, {2, 2, 2, 2, 2, 2, 2, 2}}},
        {1024,
         {{1024}, {2, 512}, {32, 32}, {4, 16, 16}, {4, 4, 4, 4, 4}, {2, 2, 2, 2, 2, 2, 2, 2, 2, 2}}},
        {4096,
         {{4096},
          {2, 2048},
          {64, 64},
          {16, 16, 16},
          {8, 8, 8, 8},
          {2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2}}},
    };
    return table.at(order);
}

} // namespace

VerifyReport verify_convolution_equivalence(std::int64_t pair_count, std::uint64_t seed,
                                            int threads) {
    VerifyReport report;
    report.suite = "convolution-equivalence";
    struct ConvCase {
        GroupPtr gp;
        std::vector<Elem> a;
        std::vector<Elem> b;
    };
    const std::vector<std::int64_t> orders = {64, 243, 256, 1024, 4096};
    std::vector<ConvCase> cases;
    cases.reserve(static_cast<std::size_t>(pair_count));
    std::mt19937_64 rng(seed);
    for (std::int64_t i = 0; i < pair_count; ++i) {
        const std::int64_t order = orders[static_cast<std::size_t>(i) % orders.size()];
        const auto& shapes = conv_shapes(order);
        const auto& shape =
            shapes[(static_cast<std::size_t>(i) / orders.size()) % shapes.size()];
        GroupPtr gp = make_group(shape);
        ConvCase cc;
        cc.gp = gp;
        const std::uint64_t uorder = static_cast<std::uint64_t>(order);
        const std::int64_t size_a = 1 + static_cast<std::int64_t>(rng() % uorder);
        const std::int64_t size_b = 1 + static_cast<std::int64_t>(rng() % uorder);
        GSet a(gp);
        while (a.size() < size_a) a.insert(static_cast<Elem>(rng() % uorder));
        GSet b(gp);
        while (b.size() < size_b) b.insert(static_cast<Elem>(rng() % uorder));
        cc.a = a.elements();
        cc.b = b.elements();
        cases.push_back(std::move(cc));
    }
    auto blocks = run_blocked(
        pair_count, threads, [&](Accum& acc, std::int64_t lo, std::int64_t hi) {
            for (std::int64_t i = lo; i < hi; ++i) {
                const ConvCase& cc = cases[static_cast<std::size_t>(i)];
                GSet a = GSet::from_elements(cc.gp, cc.a);
                GSet b = GSet::from_elements(cc.gp, cc.b);
                ++acc.scanned;
                ++acc.instances;
                const std::string repro = "case=" + std::to_string(i) +
                                          " group=" + cc.gp->to_string() +
                                          " |A|=" + std::to_string(a.size()) +
                                          " |B|=" + std::to_string(b.size()) +
                                          " seed=" + std::to_string(seed);
                ConvolutionTable naive = convolution_counts(a, b, ConvBackend::Naive);
                ConvolutionTable dft = convolution_counts(a, b, ConvBackend::DFT);
                if (naive.backend_used != ConvBackend::Naive)
                    flag(acc, report.suite, repro, "naive backend request was not honored");
                if (dft.backend_used != ConvBackend::DFT)
                    flag(acc, report.suite, repro, "dft backend request was not honored");
                if (naive.counts != dft.counts) {
                    std::int64_t where = -1;
                    for (std::size_t c = 0; c < naive.counts.size(); ++c)
                        if (naive.counts[c] != dft.counts[c]) {
                            where = static_cast<std::int64_t>(c);
                            break;
                        }
                    flag(acc, report.suite, repro,
                         "count tables differ first at c=" + std::to_string(where) +
                             ": naive=" +
                             std::to_string(naive.counts[static_cast<std::size_t>(where)]) +
                             " dft=" +
                             std::to_string(dft.counts[static_cast<std::size_t>(where)]));
                }
                std::int64_t total_naive = 0, total_dft = 0;
                for (std::int64_t v : naive.counts) total_naive += v;
                for (std::int64_t v : dft.counts) total_dft += v;
                if (total_naive != a.size() * b.size())
                    flag(acc, report.suite, repro,
                         "naive counts sum to " + std::to_string(total_naive) +
                             ", expected |A||B|=" + std::to_string(a.size() * b.size()));
                if (total_dft != a.size() * b.size())
                    flag(acc, report.suite, repro,
                         "dft counts sum to " + std::to_string(total_dft) +
                             ", expected |A||B|=" + std::to_string(a.size() * b.size()));
                if (!(support(naive) == sumset(a, b)))
                    flag(acc, report.suite, repro,
                         "convolution support differs from the sumset");
            }
        });
    merge_blocks(report, std::move(blocks));
    report.notes.push_back("orders=64,243,256,1024,4096 seed=" + std::to_string(seed));
    return report;
}

// ---------------------------------------------------------------------------
// Lattice-interval counting bounds on random instances
// ---------------------------------------------------------------------------

VerifyReport verify_lattice_bounds(std::int64_t instance_count, std::uint64_t seed,
                                   int threads) {
    VerifyReport report;
    report.suite = "lattice-bounds";
    struct LatticeCase {
        std::int64_t n = 1;
        Rat left{0};
        Rat length{1};
    };
    std::vector<LatticeCase> cases;
    cases.reserve(static_cast<std::size_t>(instance_count));
    std::mt19937_64 rng(seed);
    for (std::int64_t i = 0; i < instance_count; ++i) {
        LatticeCase lc;
        lc.n = 1 + static_cast<std::int64_t>(rng() % 10000);
        const std::int64_t dl = 1 + static_cast<std::int64_t>(rng() % 1000);
        lc.left = Rat(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(dl)), dl);
        const std::int64_t dd = 1 + static_cast<std::int64_t>(rng() % 1000);
        lc.length =
            Rat(1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(dd)), dd);
        cases.push_back(lc);
    }
    auto blocks = run_blocked(
        instance_count, threads, [&](Accum& acc, std::int64_t lo, std::int64_t hi) {
            for (std::int64_t i = lo; i < hi; ++i) {
                const LatticeCase& lc = cases[static_cast<std::size_t>(i)];
                ++acc.scanned;
                ++acc.instances;
                const std::int64_t cnt =
                    lattice_interval_count(lc.n, RationalInterval{lc.left, lc.length});
                const Rat target = Rat(lc.n) * lc.length;
                if (Rat(cnt) < target - Rat(1) || Rat(cnt) > target + Rat(1))
                    flag(acc, report.suite,
                         "N=" + std::to_string(lc.n) + " left=" + format_rational(lc.left) +
                             " length=" + format_rational(lc.length),
                         "count " + std::to_string(cnt) + " leaves [N*length - 1, N*length + 1]");
            }
        });
    merge_blocks(report, std::move(blocks));
    report.notes.push_back("max_modulus=10000 seed=" + std::to_string(seed));
    return report;
}

// ---------------------------------------------------------------------------
// Determinism across worker counts
// ---------------------------------------------------------------------------

namespace {

// Temporarily clears SUMSET_THREADS so explicit worker counts take effect.
struct ThreadEnvGuard {
    bool had = false;
    std::string saved;
    ThreadEnvGuard() {
        if (const char* v = std::getenv("SUMSET_THREADS")) {
            had = true;
            saved = v;
            ::unsetenv("SUMSET_THREADS");
        }
    }
    ~ThreadEnvGuard() {
        if (had) ::setenv("SUMSET_THREADS", saved.c_str(), 1);
    }
};

} // namespace

VerifyReport verify_determinism(const std::vector<int>& thread_counts) {
    VerifyReport report;
    report.suite = "determinism";
    if (thread_counts.empty()) {
        report.notes.push_back("no thread counts given; nothing to compare");
        return report;
    }
    ThreadEnvGuard guard;
    if (guard.had)
        report.notes.push_back("SUMSET_THREADS was set; cleared for the duration of this suite");
    auto workload = [](int t) {
        std::string out;
        out += scan_csv(delta_scan(make_group({8}), Rat(1, 4), 6, t));
        out += scan_csv(delta_scan(make_group({2, 2, 2}), Rat(1, 4), 6, t));
        out += render_report(verify_kneser_exhaustive(8, t));
        return out;
    };
    const std::string base = workload(thread_counts.front());
    ++report.candidates_scanned;
    for (std::size_t i = 1; i < thread_counts.size(); ++i) {
        const std::string other = workload(thread_counts[i]);
        ++report.candidates_scanned;
        ++report.instances_checked;
        if (other != base) {
            std::size_t at = 0;
            while (at < base.size() && at < other.size() && base[at] == other[at]) ++at;
            flag(report,
                 "threads=" + std::to_string(thread_counts.front()) + " vs " +
                     std::to_string(thread_counts[i]),
                 "outputs differ at byte " + std::to_string(at) + " of " +
                     std::to_string(base.size()) + "/" + std::to_string(other.size()));
        }
    }
    report.notes.push_back("workload bytes=" + std::to_string(base.size()));
    return report;
}

} // namespace sumset
