#include "sumset/structure.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace sumset {

namespace {

// Minimal element of the K-coset of x (the canonical representative).
Elem coset_rep_of(const Subgroup& k, Elem x) {
    const Group& g = *k.members.group();
    Elem best = -1;
    k.members.for_each([&](Elem m) {
        Elem y = g.add(x, m);
        if (best < 0 || y < best) best = y;
    });
    return best;
}

std::string set_to_string(const GSet& s) {
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
// Kneser certificates
// ---------------------------------------------------------------------------

std::optional<KneserCertificate> kneser_certificate(const GSet& a, const GSet& b) {
    require_same_group(a, b);
    if (a.empty() || b.empty()) throw PreconditionError("kneser_certificate: empty input set");
    GSet s = sumset(a, b);
    if (s.size() >= a.size() + b.size()) return std::nullopt;
    Subgroup h = stabilizer(s);
    std::int64_t lhs = s.size();
    std::int64_t rhs = periodization(a, h).size() + periodization(b, h).size() - h.order();
    bool valid = lhs == rhs;
    return KneserCertificate{a, b, std::move(h), lhs, rhs, valid};
}

// ---------------------------------------------------------------------------
// Intervals
// ---------------------------------------------------------------------------

std::int64_t lattice_interval_count(std::int64_t n, const RationalInterval& interval) {
    if (n < 1) throw PreconditionError("lattice_interval_count: N must be >= 1");
    if (interval.left < Rat(0) || interval.left >= Rat(1))
        throw PreconditionError("lattice_interval_count: left endpoint not in [0,1)");
    if (interval.length <= Rat(0) || interval.length > Rat(1))
        throw PreconditionError("lattice_interval_count: length not in (0,1]");
    const Rat lo = interval.left;
    const Rat hi = interval.left + interval.length;
    std::int64_t count = 0;
    for (std::int64_t j = 0; j < n; ++j) {
        Rat x(j, n);
        // x in [lo, hi] directly, or after wrapping once around the circle
        // (x + 1 >= lo holds automatically since lo < 1 <= x + 1).
        if ((x >= lo && x <= hi) || x + Rat(1) <= hi) ++count;
    }
    return count;
}

// ---------------------------------------------------------------------------
// Homomorphisms from a subgroup onto Z/N
// ---------------------------------------------------------------------------

std::int64_t subgroup_exponent(const Subgroup& k) {
    const Group& g = *k.members.group();
    std::int64_t e = 1;
    k.members.for_each([&](Elem x) { e = std::lcm(e, g.order_of(x)); });
    return e;
}

std::vector<SubgroupHom> subgroup_homs_to_cyclic(const Subgroup& k, std::int64_t n) {
    if (n < 1) throw PreconditionError("subgroup_homs_to_cyclic: modulus must be >= 1");
    const GroupPtr& gp = k.members.group();
    const Group& g = *gp;
    std::vector<SubgroupHom> out;
    if (subgroup_exponent(k) % n != 0) return out;
    const std::int64_t universe = g.size();

    if (k.index == 1) {
        // Whole group: multiplier form, ascending lexicographic multipliers.
        for (const CyclicHom& hom : surjective_homs_to_cyclic(gp, n)) {
            SubgroupHom sh;
            sh.domain = k;
            sh.modulus = n;
            sh.values.assign(static_cast<std::size_t>(universe), -1);
            for (Elem x = 0; x < universe; ++x)
                sh.values[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(hom.apply(x));
            sh.multipliers = hom.multipliers;
            sh.kernel_subgroup = hom.kernel_subgroup;
            sh.surjective = true;
            out.push_back(std::move(sh));
        }
        return out;
    }

    // Proper subgroup: pick greedy generators (smallest element outside the
    // span so far), then try every image tuple in ascending lexicographic
    // order. Each generator of order d can only map to multiples of
    // N/gcd(d,N); a breadth-first fill of the value table that checks every
    // edge rejects tuples that fail the remaining relations.
    std::vector<Elem> gens;
    {
        GSet span(gp);
        span.insert(0);
        while (span.size() < k.order()) {
            Elem next = -1;
            k.members.for_each([&](Elem x) {
                if (next < 0 && !span.contains(x)) next = x;
            });
            GSet cyc(gp);
            Elem t = 0;
            do {
                cyc.insert(t);
                t = g.add(t, next);
            } while (t != 0);
            span = sumset(span, cyc);
            gens.push_back(next);
        }
    }
    std::vector<std::int64_t> steps(gens.size()), counts(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::int64_t gc = std::gcd(g.order_of(gens[i]), n);
        steps[i] = n / gc;
        counts[i] = gc;
    }
    std::vector<std::int64_t> choice(gens.size(), 0);
    std::vector<std::int32_t> values;
    std::vector<Elem> queue;
    queue.reserve(static_cast<std::size_t>(k.order()));
    for (;;) {
        values.assign(static_cast<std::size_t>(universe), -1);
        values[0] = 0;
        queue.clear();
        queue.push_back(0);
        bool consistent = true;
        for (std::size_t head = 0; head < queue.size() && consistent; ++head) {
            Elem x = queue[head];
            for (std::size_t i = 0; i < gens.size() && consistent; ++i) {
                Elem y = g.add(x, gens[i]);
                auto v = static_cast<std::int32_t>(
                    (values[static_cast<std::size_t>(x)] + choice[i] * steps[i]) % n);
                std::int32_t& slot = values[static_cast<std::size_t>(y)];
                if (slot < 0) {
                    slot = v;
                    queue.push_back(y);
                } else if (slot != v) {
                    consistent = false;
                }
            }
        }
        if (consistent) {
            std::int64_t acc = n;
            for (std::size_t i = 0; i < gens.size(); ++i)
                acc = std::gcd(acc, choice[i] * steps[i]);
            if (acc == 1) {
                SubgroupHom sh;
                sh.domain = k;
                sh.modulus = n;
                sh.values = values;
                sh.surjective = true;
                GSet ker(gp);
                for (Elem x = 0; x < universe; ++x)
                    if (values[static_cast<std::size_t>(x)] == 0) ker.insert(x);
                sh.kernel_subgroup = Subgroup::from_members_unchecked(std::move(ker));
                assert(sh.kernel_subgroup.order() * n == k.order());
                out.push_back(std::move(sh));
            }
        }
        std::size_t pos = gens.size();
        for (;;) {
            if (pos == 0) return out;
            --pos;
            if (++choice[pos] < counts[pos]) break;
            choice[pos] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// Progressions and covers
// ---------------------------------------------------------------------------

CyclicProgression shortest_progression_containing(const std::vector<char>& present,
                                                  std::int64_t n) {
    if (n < 1 || static_cast<std::int64_t>(present.size()) != n)
        throw PreconditionError("shortest_progression_containing: bad modulus");
    std::vector<std::int64_t> points;
    for (std::int64_t j = 0; j < n; ++j)
        if (present[static_cast<std::size_t>(j)]) points.push_back(j);
    if (points.empty()) return {0, 0};
    const std::size_t m = points.size();
    // The shortest covering progression is the complement of the largest
    // cyclic run of absent points; it starts at the marked point just after
    // that run. Ties go to the smallest start.
    std::int64_t best_gap = -1;
    std::int64_t best_start = 0;
    for (std::size_t i = 0; i < m; ++i) {
        bool last = (i + 1 == m);
        std::int64_t nxt = last ? points[0] : points[i + 1];
        std::int64_t gap = last ? points[0] + n - points[m - 1] : nxt - points[i];
        if (gap > best_gap || (gap == best_gap && nxt < best_start)) {
            best_gap = gap;
            best_start = nxt;
        }
    }
    return {best_start, n - best_gap + 1};
}

GSet progression_preimage(const SubgroupHom& h, std::int64_t start, std::int64_t length,
                          Elem shift) {
    if (!h.surjective) throw PreconditionError("progression_preimage: hom is not surjective");
    if (length < 1 || length > h.modulus)
        throw PreconditionError("progression_preimage: length out of range");
    const GroupPtr& gp = h.domain.members.group();
    const Group& g = *gp;
    const std::int64_t n = h.modulus;
    const std::int64_t s = ((start % n) + n) % n;
    GSet out(gp);
    h.domain.members.for_each([&](Elem x) {
        std::int64_t offset = (h.values[static_cast<std::size_t>(x)] - s + n) % n;
        if (offset < length) out.insert(g.add(x, shift));
    });
    assert(out.size() == length * h.kernel_subgroup.order());
    return out;
}

void verify_progression_cover(const ProgressionCover& cover, const GSet& a, const GSet& b) {
    GSet cover_a =
        progression_preimage(cover.hom, cover.prog_a.start, cover.prog_a.length, cover.shift_a);
    GSet cover_b =
        progression_preimage(cover.hom, cover.prog_b.start, cover.prog_b.length, cover.shift_b);
    if (!a.is_subset_of(cover_a)) throw Error("progression cover: A not contained in its cover");
    if (!b.is_subset_of(cover_b)) throw Error("progression cover: B not contained in its cover");
    if (cover_a.size() != cover.cover_size_a() || cover_b.size() != cover.cover_size_b())
        throw Error("progression cover: fiber cardinality law violated");
}

namespace {

// Visits candidate covers in the pinned order (N descending over divisors of
// exponent(K) above n_min, hom enumeration order, smallest start), already
// filtered by the slack rule and re-verified. Stops when the visitor returns
// true.
template <typename Visitor>
void visit_parallel_covers(const GSet& a, const GSet& b, const Subgroup& k, const Rat& epsilon,
                           std::int64_t n_min, bool exact, Visitor&& visit) {
    require_same_group(a, b);
    require_same_group(a, k.members);
    if (a.empty() || b.empty())
        throw PreconditionError("cover_by_parallel_progressions: empty input set");
    const Group& g = *a.group();
    const std::int64_t gsize = g.size();
    const Elem shift_a = coset_rep_of(k, a.min_element());
    const Elem shift_b = coset_rep_of(k, b.min_element());
    GSet a0 = a.translated(g.neg(shift_a));
    GSet b0 = b.translated(g.neg(shift_b));
    // A set meeting more than one K-coset admits no cover inside K.
    if (!a0.is_subset_of(k.members) || !b0.is_subset_of(k.members)) return;
    const std::int64_t exponent = subgroup_exponent(k);
    for (std::int64_t n = exponent; n > n_min; --n) {
        if (exponent % n != 0) continue;
        for (SubgroupHom& hom : subgroup_homs_to_cyclic(k, n)) {
            std::vector<char> image_a(static_cast<std::size_t>(n), 0);
            std::vector<char> image_b(static_cast<std::size_t>(n), 0);
            a0.for_each([&](Elem x) {
                image_a[static_cast<std::size_t>(hom.values[static_cast<std::size_t>(x)])] = 1;
            });
            b0.for_each([&](Elem x) {
                image_b[static_cast<std::size_t>(hom.values[static_cast<std::size_t>(x)])] = 1;
            });
            CyclicProgression pa = shortest_progression_containing(image_a, n);
            CyclicProgression pb = shortest_progression_containing(image_b, n);
            const std::int64_t ker = hom.kernel_subgroup.order();
            bool ok;
            if (exact) {
                ok = pa.length * ker == a.size() && pb.length * ker == b.size();
            } else {
                ok = Rat(pa.length * ker, gsize) < Rat(a.size(), gsize) + epsilon &&
                     Rat(pb.length * ker, gsize) < Rat(b.size(), gsize) + epsilon;
            }
            if (!ok) continue;
            ProgressionCover cover{std::move(hom), pa, pb, shift_a, shift_b};
            verify_progression_cover(cover, a, b);
            if (visit(std::move(cover))) return;
        }
    }
}

} // namespace

std::optional<ProgressionCover> cover_by_parallel_progressions(const GSet& a, const GSet& b,
                                                               const Subgroup& k,
                                                               const Rat& epsilon,
                                                               std::int64_t n_min) {
    std::optional<ProgressionCover> first;
    visit_parallel_covers(a, b, k, epsilon, n_min, /*exact=*/false, [&](ProgressionCover cover) {
        first = std::move(cover);
        return true;
    });
    return first;
}

std::optional<ProgressionCover> exact_cover_by_parallel_progressions(const GSet& a,
                                                                     const GSet& b,
                                                                     const Subgroup& k,
                                                                     std::int64_t n_min) {
    std::optional<ProgressionCover> first;
    visit_parallel_covers(a, b, k, Rat(0), n_min, /*exact=*/true, [&](ProgressionCover cover) {
        first = std::move(cover);
        return true;
    });
    return first;
}

std::vector<ProgressionCover> all_parallel_covers(const GSet& a, const GSet& b,
                                                  const Subgroup& k, const Rat& epsilon,
                                                  std::int64_t n_min) {
    std::vector<ProgressionCover> covers;
    visit_parallel_covers(a, b, k, epsilon, n_min, /*exact=*/false, [&](ProgressionCover cover) {
        covers.push_back(std::move(cover));
        return false;
    });
    return covers;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

const char* class_tag_name(ClassTag tag) {
    switch (tag) {
        case ClassTag::TypeI: return "TypeI";
        case ClassTag::TypeII: return "TypeII";
        case ClassTag::TypeIII_2: return "TypeIII_2";
        case ClassTag::Unclassified: return "Unclassified";
    }
    return "?";
}

namespace {

// Checks one quasi-periodic decomposition against its set from scratch.
void verify_qp_decomposition(const QPDecomposition& dec, const GSet& a, const Rat& epsilon) {
    const Subgroup& k = dec.subgroup;
    if ((dec.periodic_part | dec.residual_part) != a)
        throw Error("qp decomposition: parts do not reassemble the set");
    if (dec.periodic_part.intersects(dec.residual_part))
        throw Error("qp decomposition: parts overlap");
    if (dec.residual_part.empty()) throw Error("qp decomposition: residual empty");
    GSet coset = k.members.translated(dec.residual_coset);
    if (!dec.residual_part.is_subset_of(coset))
        throw Error("qp decomposition: residual not inside one coset");
    GSet grown = periodization(dec.periodic_part, k);
    if (grown.intersects(dec.residual_part))
        throw Error("qp decomposition: periodic part spills into the residual coset");
    Rat defect(grown.size() - dec.periodic_part.size(), k.order());
    if (defect != dec.epsilon_defect) throw Error("qp decomposition: defect mismatch");
    if (defect > epsilon) throw Error("qp decomposition: defect exceeds epsilon");
}

// Shared scan behind classify_pair / classify_pair_all. Checks the
// preconditions, then walks the clauses in order and the subgroups of index
// <= d (ascending) inside each clause. Keeps at most one verified witness
// per (clause, subgroup); stops at the first witness unless `all` is set.
std::vector<ClassificationResult> classify_scan(const GSet& a, const GSet& b, const Rat& epsilon,
                                                std::int64_t d, const Rat& delta, bool all) {
    require_same_group(a, b);
    if (epsilon < Rat(0)) throw PreconditionError("classify_pair: epsilon must be nonnegative");
    const GroupPtr& gp = a.group();
    const std::int64_t gsize = gp->size();
    const Rat ma(a.size(), gsize);
    const Rat mb(b.size(), gsize);
    if (!(ma > epsilon)) throw PreconditionError("classify_pair: m(A) <= epsilon");
    if (!(mb > epsilon)) throw PreconditionError("classify_pair: m(B) <= epsilon");
    GSet s = sumset(a, b);
    const Rat ms(s.size(), gsize);
    if (!(ms <= ma + mb + delta))
        throw PreconditionError("classify_pair: m(A+B) > m(A) + m(B) + delta");

    std::vector<ClassificationResult> found;
    auto blank = [&]() {
        ClassificationResult result;
        result.epsilon = epsilon;
        result.delta_used = delta;
        result.d = d;
        result.subgroup = Subgroup::whole(gp);
        return result;
    };

    const std::vector<Subgroup> subs = enumerate_subgroups(gp, d);

    // Clause (I): A+B epsilon-periodic w.r.t. K, m(A+B+K) <= m(A+K)+m(B+K).
    for (const Subgroup& k : subs) {
        GSet sk = periodization(s, k);
        Rat defect(sk.size() - s.size(), k.order());
        if (defect > epsilon) continue;
        std::int64_t ak = periodization(a, k).size();
        std::int64_t bk = periodization(b, k).size();
        if (sk.size() > ak + bk) continue;
        ClassificationResult result = blank();
        result.tag = ClassTag::TypeI;
        result.subgroup = k;
        result.periodicity = PeriodicityWitness{defect, Rat(sk.size(), gsize), Rat(ak, gsize),
                                                Rat(bk, gsize)};
        verify_classification(result, a, b);
        found.push_back(std::move(result));
        if (!all) return found;
    }

    // Clause (II): A+B not epsilon-periodic w.r.t. K, both sets have
    // epsilon-quasi-periodic decompositions with at least one nonempty
    // periodic part, and m(A0+B0) <= m(A0) + m(B0) + epsilon*m(K).
    for (const Subgroup& k : subs) {
        Rat defect(periodization(s, k).size() - s.size(), k.order());
        if (!(defect > epsilon)) continue;
        auto decs_a = quasiperiodic_decompositions(a, k, epsilon);
        if (decs_a.empty()) continue;
        auto decs_b = quasiperiodic_decompositions(b, k, epsilon);
        bool hit = false;
        for (const QPDecomposition& da : decs_a) {
            for (const QPDecomposition& db : decs_b) {
                if (da.periodic_part.empty() && db.periodic_part.empty()) continue;
                GSet residual_sum = sumset(da.residual_part, db.residual_part);
                Rat lhs(residual_sum.size(), gsize);
                Rat bound = Rat(da.residual_part.size(), gsize) +
                            Rat(db.residual_part.size(), gsize) +
                            epsilon * Rat(k.order(), gsize);
                if (lhs > bound) continue;
                ClassificationResult result = blank();
                result.tag = ClassTag::TypeII;
                result.subgroup = k;
                result.qp_pair = QPPairWitness{da, db, lhs, bound};
                verify_classification(result, a, b);
                found.push_back(std::move(result));
                if (!all) return found;
                hit = true;
                break;
            }
            if (hit) break;
        }
    }

    // Clause (III): m(A+B) < (1-epsilon)*m(K) and a parallel progression
    // cover inside K with N > d. (The circle-interval route can never fire
    // in a finite group; see ClassificationResult.)
    for (const Subgroup& k : subs) {
        Rat cap = (Rat(1) - epsilon) * Rat(k.order(), gsize);
        if (!(ms < cap)) continue;
        auto cover = cover_by_parallel_progressions(a, b, k, epsilon, d);
        if (!cover) continue;
        ClassificationResult result = blank();
        result.tag = ClassTag::TypeIII_2;
        result.subgroup = k;
        result.cover = CoverWitness{std::move(*cover), ms, cap};
        verify_classification(result, a, b);
        found.push_back(std::move(result));
        if (!all) return found;
    }

    return found;
}

// Unclassified result with one diagnostic line per candidate subgroup.
ClassificationResult unclassified_diagnostics(const GSet& a, const GSet& b, const Rat& epsilon,
                                              std::int64_t d, const Rat& delta) {
    const GroupPtr& gp = a.group();
    const std::int64_t gsize = gp->size();
    GSet s = sumset(a, b);
    const Rat ms(s.size(), gsize);
    ClassificationResult result;
    result.epsilon = epsilon;
    result.delta_used = delta;
    result.d = d;
    result.subgroup = Subgroup::whole(gp);
    result.tag = ClassTag::Unclassified;
    const std::vector<Subgroup> subs = enumerate_subgroups(gp, d);
    for (const Subgroup& k : subs) {
        std::ostringstream line;
        line << "K=" << set_to_string(k.members) << " index " << k.index << ": ";
        GSet sk = periodization(s, k);
        Rat defect(sk.size() - s.size(), k.order());
        std::int64_t ak = periodization(a, k).size();
        std::int64_t bk = periodization(b, k).size();
        if (defect > epsilon)
            line << "I fails (defect " << format_rational(defect) << " > eps)";
        else
            line << "I fails (m(A+B+K) > m(A+K)+m(B+K): " << sk.size() << " > " << ak << "+"
                 << bk << ")";
        line << "; ";
        if (!(defect > epsilon)) {
            line << "II fails (A+B already eps-periodic)";
        } else {
            auto decs_a = quasiperiodic_decompositions(a, k, epsilon);
            auto decs_b = quasiperiodic_decompositions(b, k, epsilon);
            if (decs_a.empty() || decs_b.empty()) {
                line << "II fails (no eps-quasi-periodic decomposition on "
                     << (decs_a.empty() ? "A" : "B") << ")";
            } else {
                line << "II fails (no decomposition pair with a nonempty periodic part "
                        "satisfies the residual bound)";
            }
        }
        line << "; ";
        Rat cap = (Rat(1) - epsilon) * Rat(k.order(), gsize);
        if (!(ms < cap)) {
            line << "III fails (m(A+B) = " << format_rational(ms) << " >= "
                 << format_rational(cap) << ")";
        } else if (!cover_by_parallel_progressions(a, b, k, epsilon, d)) {
            line << "III fails (no parallel progression cover with N > " << d << ")";
        } else {
            line << "III unexpectedly holds";
        }
        result.diagnostics.push_back(line.str());
    }
    return result;
}

} // namespace

ClassificationResult classify_pair(const GSet& a, const GSet& b, const Rat& epsilon,
                                   std::int64_t d, const Rat& delta) {
    std::vector<ClassificationResult> found = classify_scan(a, b, epsilon, d, delta, false);
    if (!found.empty()) return std::move(found.front());
    return unclassified_diagnostics(a, b, epsilon, d, delta);
}

std::vector<ClassificationResult> classify_pair_all(const GSet& a, const GSet& b,
                                                    const Rat& epsilon, std::int64_t d,
                                                    const Rat& delta) {
    std::vector<ClassificationResult> found = classify_scan(a, b, epsilon, d, delta, true);
    if (found.empty()) found.push_back(unclassified_diagnostics(a, b, epsilon, d, delta));
    return found;
}

void verify_classification(const ClassificationResult& result, const GSet& a, const GSet& b) {
    require_same_group(a, b);
    const std::int64_t gsize = a.group()->size();
    GSet s = sumset(a, b);
    const Rat eps = result.epsilon;
    switch (result.tag) {
        case ClassTag::TypeI: {
            if (!result.periodicity) throw Error("TypeI witness missing");
            const Subgroup& k = result.subgroup;
            GSet sk = periodization(s, k);
            Rat defect(sk.size() - s.size(), k.order());
            const PeriodicityWitness& w = *result.periodicity;
            if (defect != w.defect || Rat(sk.size(), gsize) != w.m_sum_plus_k ||
                Rat(periodization(a, k).size(), gsize) != w.m_a_plus_k ||
                Rat(periodization(b, k).size(), gsize) != w.m_b_plus_k)
                throw Error("TypeI witness does not match recomputation");
            if (defect > eps) throw Error("TypeI: A+B not epsilon-periodic");
            if (w.m_sum_plus_k > w.m_a_plus_k + w.m_b_plus_k)
                throw Error("TypeI: periodized sumset bound fails");
            break;
        }
        case ClassTag::TypeII: {
            if (!result.qp_pair) throw Error("TypeII witness missing");
            const QPPairWitness& w = *result.qp_pair;
            const Subgroup& k = result.subgroup;
            if (!(w.dec_a.subgroup == k) || !(w.dec_b.subgroup == k))
                throw Error("TypeII: decomposition subgroup mismatch");
            Rat defect(periodization(s, k).size() - s.size(), k.order());
            if (!(defect > eps)) throw Error("TypeII: A+B is epsilon-periodic");
            verify_qp_decomposition(w.dec_a, a, eps);
            verify_qp_decomposition(w.dec_b, b, eps);
            if (w.dec_a.periodic_part.empty() && w.dec_b.periodic_part.empty())
                throw Error("TypeII: both periodic parts empty");
            GSet residual_sum = sumset(w.dec_a.residual_part, w.dec_b.residual_part);
            Rat lhs(residual_sum.size(), gsize);
            Rat bound = Rat(w.dec_a.residual_part.size(), gsize) +
                        Rat(w.dec_b.residual_part.size(), gsize) +
                        eps * Rat(k.order(), gsize);
            if (lhs != w.m_residual_sum || bound != w.bound)
                throw Error("TypeII witness does not match recomputation");
            if (lhs > bound) throw Error("TypeII: residual sumset bound fails");
            break;
        }
        case ClassTag::TypeIII_2: {
            if (!result.cover) throw Error("TypeIII_2 witness missing");
            const CoverWitness& w = *result.cover;
            const Subgroup& k = result.subgroup;
            if (!(w.cover.hom.domain == k)) throw Error("TypeIII_2: cover subgroup mismatch");
            if (w.cover.hom.modulus <= result.d)
                throw Error("TypeIII_2: modulus does not exceed the index bound");
            Rat ms(s.size(), gsize);
            Rat cap = (Rat(1) - eps) * Rat(k.order(), gsize);
            if (ms != w.m_sum || cap != w.m_k_cap)
                throw Error("TypeIII_2 witness does not match recomputation");
            if (!(ms < cap)) throw Error("TypeIII_2: sumset not small inside K");
            verify_progression_cover(w.cover, a, b);
            if (!(Rat(w.cover.cover_size_a(), gsize) < Rat(a.size(), gsize) + eps) ||
                !(Rat(w.cover.cover_size_b(), gsize) < Rat(b.size(), gsize) + eps))
                throw Error("TypeIII_2: cover slack bound fails");
            break;
        }
        case ClassTag::Unclassified: break;
    }
}

// ---------------------------------------------------------------------------
// Tame-pair analysis
// ---------------------------------------------------------------------------

TamePairReport tame_pair_check(const GSet& a, const GSet& b) {
    require_same_group(a, b);
    if (a.empty() || b.empty()) throw PreconditionError("tame_pair_check: empty input set");
    const GroupPtr& gp = a.group();
    TamePairReport report;
    GSet s = sumset(a, b);
    if (s.size() < a.size() + b.size()) {
        report.regime = PairRegime::Critical;
        report.certificate = kneser_certificate(a, b);
        report.tame = report.certificate->valid;
        return report;
    }
    if (s.size() > a.size() + b.size()) {
        report.regime = PairRegime::Supercritical;
        return report;
    }
    report.regime = PairRegime::Subcritical;
    const std::vector<Subgroup> subs = enumerate_subgroups(gp, gp->size());

    // Exact type I: some nontrivial K with A+B = A+B+K. (The trivial
    // subgroup satisfies this vacuously and is excluded.)
    for (const Subgroup& k : subs) {
        if (k.order() == 1) continue;
        if (periodization(s, k) == s) {
            report.exact_type_i = k;
            break;
        }
    }
    // Exact type II: A+B != A+B+K, exact quasi-periodic decompositions with
    // at least one nonempty periodic part, and |A0+B0| = |A0|+|B0|.
    for (const Subgroup& k : subs) {
        if (periodization(s, k) == s) continue;
        auto decs_a = quasiperiodic_decompositions(a, k, Rat(0));
        if (decs_a.empty()) continue;
        auto decs_b = quasiperiodic_decompositions(b, k, Rat(0));
        bool found = false;
        for (const QPDecomposition& da : decs_a) {
            for (const QPDecomposition& db : decs_b) {
                if (da.periodic_part.empty() && db.periodic_part.empty()) continue;
                GSet residual_sum = sumset(da.residual_part, db.residual_part);
                if (residual_sum.size() !=
                    da.residual_part.size() + db.residual_part.size())
                    continue;
                report.exact_type_ii = std::make_pair(da, db);
                found = true;
                break;
            }
            if (found) break;
        }
        if (found) break;
    }
    // Exact type III: A+B != A+B+K plus a zero-slack parallel cover, N >= 2.
    for (const Subgroup& k : subs) {
        if (periodization(s, k) == s) continue;
        auto cover = exact_cover_by_parallel_progressions(a, b, k, 1);
        if (cover) {
            report.exact_type_iii = std::move(cover);
            break;
        }
    }
    report.tame = report.exact_type_i.has_value() || report.exact_type_ii.has_value() ||
                  report.exact_type_iii.has_value();
    report.unclassified_exact = !report.tame;
    return report;
}

} // namespace sumset
