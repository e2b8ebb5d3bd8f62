#include "sumset/search.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "sumset/conv.hpp"
#include "sumset/parallel.hpp"
#include "sumset/sets.hpp"

namespace sumset {

namespace {

GSet set_from_mask(const GroupPtr& g, std::uint64_t mask) {
    GSet s(g);
    while (mask) {
        int bit = std::countr_zero(mask);
        s.insert(static_cast<Elem>(bit));
        mask &= mask - 1;
    }
    return s;
}

bool is_min_translate(const GSet& s) {
    const Group& g = *s.group();
    GSet moved(s.group());
    for (Elem t = 1; t < g.size(); ++t) {
        s.translate_into(moved, t);
        if (moved.compare_bits(s) < 0) return false;
    }
    return true;
}

std::string elements_to_string(const GSet& s) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    s.for_each([&](Elem x) {
        if (!first) out << ',';
        out << x;
        first = false;
    });
    out << '}';
    return out.str();
}

} // namespace

// ---------------------------------------------------------------------------
// Pair enumeration
// ---------------------------------------------------------------------------

void enumerate_small_doubling_pairs(const GroupPtr& g, const Rat& delta, bool up_to_symmetry,
                                    const std::function<void(const GSet&, const GSet&)>& visit) {
    const std::int64_t n = g->size();
    const std::int64_t cap = up_to_symmetry ? 16 : 12;
    if (n > cap)
        throw SizeLimitError("enumerate_small_doubling_pairs: |G| exceeds the exhaustive cap of " +
                             std::to_string(cap));
    std::vector<GSet> reps;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        GSet s = set_from_mask(g, mask);
        if (up_to_symmetry && !is_min_translate(s)) continue;
        reps.push_back(std::move(s));
    }
    GSet sum(g);
    for (const GSet& a : reps) {
        for (const GSet& b : reps) {
            sumset_into(sum, a, b);
            if (Rat(sum.size() - a.size() - b.size(), n) <= delta) visit(a, b);
        }
    }
}

std::int64_t count_small_doubling_pairs(const GroupPtr& g, const Rat& delta,
                                        bool up_to_symmetry) {
    std::int64_t count = 0;
    enumerate_small_doubling_pairs(g, delta, up_to_symmetry,
                                   [&](const GSet&, const GSet&) { ++count; });
    return count;
}

// ---------------------------------------------------------------------------
// Semicontinuity oracle
// ---------------------------------------------------------------------------

namespace {

std::optional<SemicontinuityWitness> check_witness(const GSet& a, const GSet& b, const GSet& s,
                                                   const GSet& t, const Rat& epsilon) {
    if (s.empty() || t.empty()) return std::nullopt;
    const std::int64_t n = a.group()->size();
    Rat cost((a ^ s).size() + (b ^ t).size(), n);
    if (!(cost < epsilon)) return std::nullopt;
    GSet st = sumset(s, t);
    if (st.size() > s.size() + t.size()) return std::nullopt;
    return SemicontinuityWitness{s, t, cost, true};
}

} // namespace

std::optional<SemicontinuityWitness> semicontinuity_oracle(const GSet& a, const GSet& b,
                                                           const Rat& epsilon, const Rat& delta,
                                                           std::int64_t budget) {
    require_same_group(a, b);
    const GroupPtr& gp = a.group();
    const std::int64_t n = gp->size();
    if (!(Rat(a.size(), n) > epsilon))
        throw PreconditionError("semicontinuity_oracle: m(A) <= epsilon");
    if (!(Rat(b.size(), n) > epsilon))
        throw PreconditionError("semicontinuity_oracle: m(B) <= epsilon");
    GSet popular = popular_sumset(a, b, delta);
    if (Rat(popular.size(), n) > Rat(a.size() + b.size(), n) + delta)
        throw PreconditionError("semicontinuity_oracle: m(A popular-sumset B) exceeds "
                                "m(A) + m(B) + delta");

    // (1) The pair itself.
    if (auto w = check_witness(a, b, a, b, epsilon)) return w;

    const std::vector<Subgroup> subs = enumerate_subgroups(gp, n);

    // (2) Periodized and trimmed variants per subgroup.
    for (const Subgroup& k : subs) {
        const GSet grown_a = periodization(a, k);
        const GSet grown_b = periodization(b, k);
        const GSet trim_a = inner_periodization(a, k);
        const GSet trim_b = inner_periodization(b, k);
        const GSet* cands_a[2] = {&grown_a, &trim_a};
        const GSet* cands_b[2] = {&grown_b, &trim_b};
        for (const GSet* s : cands_a)
            for (const GSet* t : cands_b)
                if (auto w = check_witness(a, b, *s, *t, epsilon)) return w;
    }

    // (3) Parallel progression covers.
    for (const Subgroup& k : subs) {
        auto cover = cover_by_parallel_progressions(a, b, k, epsilon, 1);
        if (!cover) continue;
        GSet s = progression_preimage(cover->hom, cover->prog_a.start, cover->prog_a.length,
                                      cover->shift_a);
        GSet t = progression_preimage(cover->hom, cover->prog_b.start, cover->prog_b.length,
                                      cover->shift_b);
        if (auto w = check_witness(a, b, s, t, epsilon)) return w;
    }

    // (4) Quasi-periodic rebuilds.
    for (const Subgroup& k : subs) {
        auto decs_a = quasiperiodic_decompositions(a, k, epsilon);
        auto decs_b = quasiperiodic_decompositions(b, k, epsilon);
        for (const QPDecomposition& da : decs_a) {
            for (const QPDecomposition& db : decs_b) {
                GSet c = periodization(a, k);
                GSet d = periodization(b, k);
                try {
                    auto [ra, rb] = build_qp_pair(c, d, k, da.residual_coset, db.residual_coset,
                                                  da.residual_part, db.residual_part);
                    if (auto w = check_witness(a, b, ra, rb, epsilon)) return w;
                } catch (const PreconditionError&) {
                    // This decomposition pair does not fit the builder; skip.
                }
            }
        }
    }

    // (5) Best-first local search over single-element toggles, pruned to
    // states whose move cost can still beat epsilon.
    struct StateLess {
        bool operator()(const std::pair<GSet, GSet>& x, const std::pair<GSet, GSet>& y) const {
            int c = x.first.compare_bits(y.first);
            if (c != 0) return c < 0;
            return x.second.compare_bits(y.second) < 0;
        }
    };
    struct FrontierLess {
        bool operator()(const std::pair<Rat, std::pair<GSet, GSet>>& x,
                        const std::pair<Rat, std::pair<GSet, GSet>>& y) const {
            if (x.first != y.first) return x.first < y.first;
            return StateLess{}(x.second, y.second);
        }
    };
    std::set<std::pair<Rat, std::pair<GSet, GSet>>, FrontierLess> frontier;
    std::set<std::pair<GSet, GSet>, StateLess> seen;
    frontier.insert({Rat(0), {a, b}});
    seen.insert({a, b});
    std::int64_t expanded = 0;
    while (!frontier.empty() && expanded < budget) {
        auto [cost, state] = *frontier.begin();
        frontier.erase(frontier.begin());
        ++expanded;
        if (auto w = check_witness(a, b, state.first, state.second, epsilon)) return w;
        for (int side = 0; side < 2; ++side) {
            for (Elem e = 0; e < n; ++e) {
                std::pair<GSet, GSet> next = state;
                GSet& edited = side == 0 ? next.first : next.second;
                if (edited.contains(e))
                    edited.erase(e);
                else
                    edited.insert(e);
                Rat next_cost((a ^ next.first).size() + (b ^ next.second).size(), n);
                if (!(next_cost < epsilon)) continue;
                if (seen.insert(next).second) frontier.insert({next_cost, std::move(next)});
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Delta scan
// ---------------------------------------------------------------------------

DeltaScanResult delta_scan(const GroupPtr& g, const Rat& epsilon, std::int64_t d, int threads) {
    const std::int64_t n = g->size();
    if (n > 12) throw SizeLimitError("delta_scan: |G| exceeds the exhaustive cap of 12");
    if (epsilon < Rat(0)) throw PreconditionError("delta_scan: epsilon must be nonnegative");
    if (d < 1) throw PreconditionError("delta_scan: subgroup index bound must be >= 1");

    std::vector<std::uint64_t> masks;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask)
        if (Rat(std::popcount(mask), n) > epsilon) masks.push_back(mask);

    const std::string group_name = g->to_string();
    struct Block {
        std::vector<ScanRow> rows;
        std::vector<std::string> failures;
    };
    auto blocks = parallel_map<Block>(
        static_cast<std::int64_t>(masks.size()), thread_count(threads), [&](std::int64_t i) {
            Block block;
            GSet a = set_from_mask(g, masks[static_cast<std::size_t>(i)]);
            GSet sum(g);
            for (std::uint64_t bm : masks) {
                GSet b = set_from_mask(g, bm);
                sumset_into(sum, a, b);
                Rat gap(sum.size() - a.size() - b.size(), n);
                ClassificationResult res = classify_pair(a, b, epsilon, d, gap);
                Rat pop_threshold = gap > Rat(0) ? gap : Rat(0);
                GSet popular = popular_sumset(a, b, pop_threshold);
                ScanRow row;
                row.group = group_name;
                row.size_a = a.size();
                row.size_b = b.size();
                row.size_sum = sum.size();
                row.size_popular = popular.size();
                row.tag = res.tag;
                row.k_index = res.tag == ClassTag::Unclassified ? 0 : res.subgroup.index;
                row.gap = gap;
                block.rows.push_back(std::move(row));
                if (res.tag == ClassTag::Unclassified) {
                    std::ostringstream line;
                    line << "group=" << group_name << " A=" << elements_to_string(a)
                         << " B=" << elements_to_string(b) << " gap=" << format_rational(gap);
                    block.failures.push_back(line.str());
                }
            }
            return block;
        });

    DeltaScanResult result;
    for (Block& block : blocks) {
        for (ScanRow& row : block.rows) result.rows.push_back(std::move(row));
        for (std::string& f : block.failures) result.unclassified.push_back(std::move(f));
    }
    result.pair_count = static_cast<std::int64_t>(result.rows.size());

    // delta* = largest gap whose prefix (all pairs with gap <= it) classifies.
    std::map<Rat, bool> all_ok_at_gap;
    for (const ScanRow& row : result.rows) {
        auto [it, inserted] = all_ok_at_gap.try_emplace(row.gap, true);
        if (row.tag == ClassTag::Unclassified) it->second = false;
        (void)inserted;
    }
    for (const auto& [gap, ok] : all_ok_at_gap) {
        if (!ok) break;
        result.delta_star = gap;
    }
    return result;
}

std::string scan_csv(const DeltaScanResult& result) {
    std::ostringstream out;
    out << "group;|A|;|B|;sumset;popular;gap_num;gap_den;tag;k_index\n";
    for (const ScanRow& row : result.rows)
        out << row.group << ';' << row.size_a << ';' << row.size_b << ';' << row.size_sum << ';'
            << row.size_popular << ';' << row.gap.numerator() << ';' << row.gap.denominator()
            << ';' << class_tag_name(row.tag) << ';' << row.k_index << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Quasi-periodic pair builder
// ---------------------------------------------------------------------------

std::pair<GSet, GSet> build_qp_pair(const GSet& c, const GSet& d, const Subgroup& k,
                                    Elem c0_coset, Elem d0_coset, const GSet& a0,
                                    const GSet& b0) {
    require_same_group(c, d);
    require_same_group(c, k.members);
    require_same_group(c, a0);
    require_same_group(c, b0);
    if (c.empty() || d.empty()) throw PreconditionError("build_qp_pair: C or D is empty");
    if (periodization(c, k) != c) throw PreconditionError("build_qp_pair: C is not K-periodic");
    if (periodization(d, k) != d) throw PreconditionError("build_qp_pair: D is not K-periodic");
    GSet cd = sumset(c, d);
    if (cd.size() != c.size() + d.size() - k.order())
        throw PreconditionError("build_qp_pair: |C+D| != |C| + |D| - |K|");
    GSet coset_c0 = k.members.translated(c0_coset);
    GSet coset_d0 = k.members.translated(d0_coset);
    if (!coset_c0.is_subset_of(c))
        throw PreconditionError("build_qp_pair: C0 coset not contained in C");
    if (!coset_d0.is_subset_of(d))
        throw PreconditionError("build_qp_pair: D0 coset not contained in D");
    if (!is_unique_expression(c, d, k, c0_coset, d0_coset))
        throw PreconditionError("build_qp_pair: C0 + D0 is not a unique expression coset");
    if (a0.empty() || !a0.is_subset_of(coset_c0))
        throw PreconditionError("build_qp_pair: A0 empty or not contained in C0");
    if (b0.empty() || !b0.is_subset_of(coset_d0))
        throw PreconditionError("build_qp_pair: B0 empty or not contained in D0");
    GSet a0b0 = sumset(a0, b0);
    if (a0b0.size() > a0.size() + b0.size())
        throw PreconditionError("build_qp_pair: |A0+B0| > |A0| + |B0|");

    GSet a = difference(c, coset_c0);
    a |= a0;
    GSet b = difference(d, coset_d0);
    b |= b0;
    GSet ab = sumset(a, b);
    if (ab.size() > a.size() + b.size())
        throw Error("build_qp_pair: conclusion |A+B| <= |A| + |B| failed");
    return {std::move(a), std::move(b)};
}

// ---------------------------------------------------------------------------
// Niveau sets in (Z/2)^N
// ---------------------------------------------------------------------------

namespace {

// In-place unnormalized Walsh-Hadamard transform. For the uses below every
// intermediate is a signed sum of distinct inputs, so the magnitudes stay
// below 2^N * max|input| and int64 arithmetic is exact.
void walsh_inplace(std::vector<std::int64_t>& v) {
    const std::size_t n = v.size();
    for (std::size_t h = 1; h < n; h <<= 1) {
        for (std::size_t i = 0; i < n; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                std::int64_t x = v[j];
                std::int64_t y = v[j + h];
                v[j] = x + y;
                v[j + h] = x - y;
            }
        }
    }
}

} // namespace

NiveauReport niveau_set(std::int64_t n, const Rat& threshold_shift) {
    if (n < 2 || n > 24) throw PreconditionError("niveau_set: N must be in [2, 24]");
    const std::int64_t p = threshold_shift.numerator();
    const std::int64_t q = threshold_shift.denominator();
    if (p > 1'000'000 || p < -1'000'000 || q > 1'000'000)
        throw PreconditionError("niveau_set: threshold_shift components exceed 10^6");

    auto gp = make_group(std::vector<std::int64_t>(static_cast<std::size_t>(n), 2));
    const std::int64_t size = gp->size();

    // weight w admitted iff q*(2w - n) >= 2p*sqrt(n), compared by squaring
    // with signs handled exactly.
    auto admits = [&](std::int64_t w) {
        const std::int64_t lhs = q * (2 * w - n);
        const std::int64_t rhs = 2 * p;
        if (rhs <= 0) return lhs >= 0 || lhs * lhs <= rhs * rhs * n;
        return lhs >= 0 && lhs * lhs >= rhs * rhs * n;
    };
    std::int64_t min_weight = n + 1;
    for (std::int64_t w = 0; w <= n; ++w) {
        if (admits(w)) {
            min_weight = w;
            break;
        }
    }

    NiveauReport report{GSet(gp), min_weight, 0, size - 1, 0, GSet(gp), {}};
    for (Elem x = 0; x < size; ++x)
        if (std::popcount(static_cast<std::uint64_t>(x)) >= min_weight) report.set.insert(x);

    // A - A = A + A in exponent 2; support of the self-convolution via the
    // Walsh transform, computed exactly in integers.
    std::vector<std::int64_t> buf(static_cast<std::size_t>(size), 0);
    report.set.for_each([&](Elem x) { buf[static_cast<std::size_t>(x)] = 1; });
    walsh_inplace(buf);
    for (std::int64_t& v : buf) v *= v;
    walsh_inplace(buf);
    GSet diff(gp);
    for (Elem x = 0; x < size; ++x) {
        assert(buf[static_cast<std::size_t>(x)] % size == 0);
        if (buf[static_cast<std::size_t>(x)] != 0) diff.insert(x);
    }
    report.difference_size = diff.size();

    // Hyperplane audit: direction c passes iff both cosets of its kernel
    // meet D = complement(A-A), i.e. |walsh(1_D)(c)| != |D|.
    std::fill(buf.begin(), buf.end(), 0);
    for (Elem x = 0; x < size; ++x)
        if (!diff.contains(x)) buf[static_cast<std::size_t>(x)] = 1;
    walsh_inplace(buf);
    const std::int64_t d_total = buf[0];
    for (Elem c = 1; c < size; ++c) {
        std::int64_t w = buf[static_cast<std::size_t>(c)];
        if (w < 0) w = -w;
        if (w != d_total) {
            report.good_directions.insert(c);
            ++report.hyperplanes_good;
        } else if (report.exceptional.size() < 32) {
            report.exceptional.push_back(c);
        }
    }
    return report;
}

} // namespace sumset
