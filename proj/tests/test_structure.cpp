#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sumset/errors.hpp"
#include "sumset/group.hpp"
#include "sumset/gset.hpp"
#include "sumset/sets.hpp"
#include "sumset/structure.hpp"
#include "sumset/subgroup.hpp"

using namespace sumset;

namespace {

GSet gs(const GroupPtr& g, std::initializer_list<Elem> elems) {
    return GSet::from_elements(g, elems);
}

Subgroup sub(const GroupPtr& g, std::initializer_list<Elem> elems) {
    return Subgroup::from_members(GSet::from_elements(g, elems));
}

} // namespace

TEST_CASE("Kneser certificates on critical pairs") {
    const GroupPtr z5 = make_group({5});
    const GroupPtr z6 = make_group({6});
    const GroupPtr z7 = make_group({7});

    auto c1 = kneser_certificate(gs(z5, {0, 1}), gs(z5, {0, 1}));
    REQUIRE(c1.has_value());
    CHECK(c1->stab.order() == 1);
    CHECK(c1->lhs == 3);
    CHECK(c1->rhs == 3);
    CHECK(c1->valid);

    auto c2 = kneser_certificate(gs(z6, {0, 3}), gs(z6, {0, 3}));
    REQUIRE(c2.has_value());
    CHECK(c2->stab.members == gs(z6, {0, 3}));
    CHECK(c2->lhs == 2);
    CHECK(c2->rhs == 2);
    CHECK(c2->valid);

    auto c3 = kneser_certificate(GSet::all(z6), GSet::all(z6));
    REQUIRE(c3.has_value());
    CHECK(c3->stab.order() == 6);
    CHECK(c3->lhs == 6);
    CHECK(c3->valid);

    auto c4 = kneser_certificate(gs(z7, {0, 1}), gs(z7, {0, 1}));
    REQUIRE(c4.has_value());
    CHECK(c4->stab.order() == 1);
    CHECK(c4->valid);

    // |A+B| = |A| + |B|: not critical, no certificate.
    CHECK(!kneser_certificate(gs(z5, {0, 2}), gs(z5, {0, 1})).has_value());

    CHECK_THROWS_AS(kneser_certificate(GSet(z5), gs(z5, {0})), PreconditionError);

    // Critical iff a certificate is produced, and it always validates.
    std::mt19937_64 rng(11);
    const GroupPtr z10 = make_group({10});
    for (int round = 0; round < 40; ++round) {
        GSet a = GSet::from_mask(z10, 1 + rng() % 1023);
        GSet b = GSet::from_mask(z10, 1 + rng() % 1023);
        GSet s = sumset::sumset(a, b);
        auto cert = kneser_certificate(a, b);
        CHECK(cert.has_value() == (s.size() < a.size() + b.size()));
        if (cert) {
            CHECK(cert->valid);
            CHECK(cert->stab == stabilizer(s));
        }
    }
}

TEST_CASE("lattice points in closed circle intervals") {
    CHECK(lattice_interval_count(6, {Rat(0), Rat(1, 3)}) == 3);
    CHECK(lattice_interval_count(5, {Rat(0), Rat(1)}) == 5);
    CHECK(lattice_interval_count(4, {Rat(1, 8), Rat(1, 100)}) == 0);
    // Wrapping interval [3/4, 5/4]; both endpoints closed.
    CHECK(lattice_interval_count(4, {Rat(3, 4), Rat(1, 2)}) == 3);
    CHECK(lattice_interval_count(4, {Rat(0), Rat(1, 4)}) == 2);
    CHECK(lattice_interval_count(1, {Rat(1, 2), Rat(1, 4)}) == 0);

    CHECK_THROWS_AS(lattice_interval_count(0, {Rat(0), Rat(1)}), PreconditionError);
    CHECK_THROWS_AS(lattice_interval_count(4, {Rat(1), Rat(1, 2)}), PreconditionError);
    CHECK_THROWS_AS(lattice_interval_count(4, {Rat(-1, 2), Rat(1, 2)}), PreconditionError);
    CHECK_THROWS_AS(lattice_interval_count(4, {Rat(0), Rat(0)}), PreconditionError);
    CHECK_THROWS_AS(lattice_interval_count(4, {Rat(0), Rat(3, 2)}), PreconditionError);

    // The count never strays further than 1 from N * length.
    std::mt19937_64 rng(5);
    for (int round = 0; round < 200; ++round) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 50);
        RationalInterval iv{Rat(static_cast<std::int64_t>(rng() % 64), 64),
                            Rat(1 + static_cast<std::int64_t>(rng() % 64), 64)};
        const std::int64_t count = lattice_interval_count(n, iv);
        Rat expect = Rat(n) * iv.length;
        CHECK(Rat(count) >= expect - Rat(1));
        CHECK(Rat(count) <= expect + Rat(1));
    }
}

TEST_CASE("subgroup exponents") {
    const GroupPtr z6 = make_group({6});
    CHECK(subgroup_exponent(Subgroup::whole(z6)) == 6);
    CHECK(subgroup_exponent(sub(z6, {0, 3})) == 2);
    CHECK(subgroup_exponent(sub(z6, {0, 2, 4})) == 3);
    CHECK(subgroup_exponent(Subgroup::trivial(z6)) == 1);
    CHECK(subgroup_exponent(Subgroup::whole(make_group({2, 2}))) == 2);
    CHECK(subgroup_exponent(Subgroup::whole(make_group({4, 6}))) == 12);
}

TEST_CASE("surjective homomorphisms onto cyclic groups") {
    const GroupPtr z6 = make_group({6});
    const GroupPtr z4 = make_group({4});
    const GroupPtr klein = make_group({2, 2});

    auto h63 = subgroup_homs_to_cyclic(Subgroup::whole(z6), 3);
    REQUIRE(h63.size() == 2);
    CHECK(h63[0].multipliers == std::vector<std::int64_t>{1});
    CHECK(h63[1].multipliers == std::vector<std::int64_t>{2});
    for (const SubgroupHom& h : h63) {
        CHECK(h.modulus == 3);
        CHECK(h.surjective);
        CHECK(h.kernel_subgroup.members == gs(z6, {0, 3}));
    }

    CHECK(subgroup_homs_to_cyclic(Subgroup::whole(make_group({2})), 3).empty());
    CHECK(subgroup_homs_to_cyclic(Subgroup::whole(z4), 8).empty());
    CHECK(subgroup_homs_to_cyclic(sub(z6, {0, 3}), 3).empty());

    auto h44 = subgroup_homs_to_cyclic(Subgroup::whole(z4), 4);
    REQUIRE(h44.size() == 2);
    CHECK(h44[0].multipliers == std::vector<std::int64_t>{1});
    CHECK(h44[1].multipliers == std::vector<std::int64_t>{3});
    for (Elem x = 0; x < 4; ++x) CHECK(h44[0].apply(x) == x);

    auto h61 = subgroup_homs_to_cyclic(Subgroup::whole(z6), 1);
    REQUIRE(h61.size() == 1);
    CHECK(h61[0].modulus == 1);
    CHECK(h61[0].kernel_subgroup.order() == 6);

    auto hk2 = subgroup_homs_to_cyclic(Subgroup::whole(klein), 2);
    REQUIRE(hk2.size() == 3);
    CHECK(hk2[0].multipliers == std::vector<std::int64_t>{0, 1});
    CHECK(hk2[1].multipliers == std::vector<std::int64_t>{1, 0});
    CHECK(hk2[2].multipliers == std::vector<std::int64_t>{1, 1});
    CHECK(hk2[2].kernel_subgroup.members == gs(klein, {0, 3}));

    // Proper subgroup domain: values are -1 outside K.
    auto hsub = subgroup_homs_to_cyclic(sub(z6, {0, 2, 4}), 3);
    REQUIRE(hsub.size() == 2);
    for (const SubgroupHom& h : hsub) {
        CHECK(!h.defined_at(1));
        CHECK(h.defined_at(2));
        CHECK(h.kernel_subgroup.order() == 1);
    }

    CHECK_THROWS_AS(subgroup_homs_to_cyclic(Subgroup::whole(z6), 0), PreconditionError);

    // Homomorphism law and kernel consistency on every returned hom.
    const GroupPtr z12 = make_group({2, 6});
    for (std::int64_t n : {1, 2, 3, 6}) {
        for (const Subgroup& k : enumerate_subgroups(z12, 12)) {
            for (const SubgroupHom& h : subgroup_homs_to_cyclic(k, n)) {
                GSet image_hit(z12); // reuse as a bitset over Z/N via indices
                k.members.for_each([&](Elem x) {
                    k.members.for_each([&](Elem y) {
                        CHECK(h.apply(z12->add(x, y)) == (h.apply(x) + h.apply(y)) % n);
                    });
                    CHECK(h.kernel_subgroup.contains(x) == (h.apply(x) == 0));
                });
                std::vector<char> seen(static_cast<std::size_t>(n), 0);
                k.members.for_each(
                    [&](Elem x) { seen[static_cast<std::size_t>(h.apply(x))] = 1; });
                for (char c : seen) CHECK(c == 1);
            }
        }
    }
}

TEST_CASE("shortest difference-1 progression through marked points") {
    auto prog = [](std::initializer_list<int> marks, std::int64_t n) {
        std::vector<char> present(static_cast<std::size_t>(n), 0);
        for (int m : marks) present[static_cast<std::size_t>(m)] = 1;
        return shortest_progression_containing(present, n);
    };

    CHECK(prog({2}, 5).start == 2);
    CHECK(prog({2}, 5).length == 1);
    CHECK(prog({6, 0}, 7).start == 6);
    CHECK(prog({6, 0}, 7).length == 2);
    CHECK(prog({1, 3, 5}, 7).start == 1);
    CHECK(prog({1, 3, 5}, 7).length == 5);
    CHECK(prog({0, 1, 2, 3}, 4).start == 0);
    CHECK(prog({0, 1, 2, 3}, 4).length == 4);
    CHECK(prog({}, 4).length == 0);
    // Two equal gaps: the tie breaks toward the smaller start.
    CHECK(prog({0, 2}, 4).start == 0);
    CHECK(prog({0, 2}, 4).length == 3);

    CHECK_THROWS_AS(shortest_progression_containing({}, 0), PreconditionError);
}

TEST_CASE("progression preimages under quotient maps") {
    const GroupPtr z6 = make_group({6});
    const GroupPtr z5 = make_group({5});

    SubgroupHom mod3 = subgroup_homs_to_cyclic(Subgroup::whole(z6), 3)[0];
    CHECK(progression_preimage(mod3, 0, 2, 0) == gs(z6, {0, 1, 3, 4}));
    CHECK(progression_preimage(mod3, 0, 2, 1) == gs(z6, {1, 2, 4, 5}));

    SubgroupHom ident = subgroup_homs_to_cyclic(Subgroup::whole(z5), 5)[0];
    CHECK(progression_preimage(ident, 2, 3, 0) == gs(z5, {2, 3, 4}));
    CHECK(progression_preimage(ident, 4, 2, 0) == gs(z5, {4, 0}));

    CHECK_THROWS_AS(progression_preimage(mod3, 0, 0, 0), PreconditionError);
    CHECK_THROWS_AS(progression_preimage(mod3, 0, 4, 0), PreconditionError);
    SubgroupHom broken = mod3;
    broken.surjective = false;
    CHECK_THROWS_AS(progression_preimage(broken, 0, 1, 0), PreconditionError);

    // Cardinality law across every hom of a mixed group.
    const GroupPtr z12 = make_group({12});
    for (std::int64_t n : {2, 3, 4, 6, 12}) {
        for (const SubgroupHom& h : subgroup_homs_to_cyclic(Subgroup::whole(z12), n)) {
            for (std::int64_t len = 1; len <= n; ++len) {
                GSet pre = progression_preimage(h, 1, len, 2);
                CHECK(pre.size() == len * h.kernel_subgroup.order());
            }
        }
    }
}

TEST_CASE("parallel progression covers: pinned searches") {
    const GroupPtr z7 = make_group({7});
    const GSet a7 = gs(z7, {1, 3, 5});
    const GSet b7 = gs(z7, {0, 2});

    auto cover = cover_by_parallel_progressions(a7, b7, Subgroup::whole(z7), Rat(1, 7), 1);
    REQUIRE(cover.has_value());
    CHECK(cover->hom.modulus == 7);
    CHECK(cover->hom.multipliers == std::vector<std::int64_t>{3});
    CHECK(cover->prog_a.start == 1);
    CHECK(cover->prog_a.length == 3);
    CHECK(cover->prog_b.start == 6);
    CHECK(cover->prog_b.length == 2);
    CHECK(cover->shift_a == 0);
    CHECK(cover->shift_b == 0);
    CHECK(cover->cover_size_a() == 3);
    CHECK(cover->cover_size_b() == 2);
    CHECK_NOTHROW(verify_progression_cover(*cover, a7, b7));

    auto all = all_parallel_covers(a7, b7, Subgroup::whole(z7), Rat(1, 7), 1);
    REQUIRE(all.size() == 2);
    CHECK(all[0].hom.multipliers == std::vector<std::int64_t>{3});
    CHECK(all[1].hom.multipliers == std::vector<std::int64_t>{4});

    // Tampered covers are rejected.
    ProgressionCover bad = *cover;
    bad.prog_a.length = 2;
    CHECK_THROWS_AS(verify_progression_cover(bad, a7, b7), Error);
    bad = *cover;
    bad.shift_a = 1;
    CHECK_THROWS_AS(verify_progression_cover(bad, a7, b7), Error);
    bad = *cover;
    bad.prog_b.start = 0;
    CHECK_THROWS_AS(verify_progression_cover(bad, a7, b7), Error);

    // Diagonal pair in the Klein group: covered exactly by the kernel of the
    // (1,1) character, so any positive slack admits it; no modulus above 2
    // exists.
    const GroupPtr klein = make_group({2, 2});
    const GSet diag = gs(klein, {0, 3});
    auto kc = cover_by_parallel_progressions(diag, diag, Subgroup::whole(klein), Rat(1, 4), 1);
    REQUIRE(kc.has_value());
    CHECK(kc->hom.multipliers == (std::vector<std::int64_t>{1, 1}));
    CHECK(kc->prog_a.length == 1);
    CHECK(kc->cover_size_a() == 2);
    CHECK(all_parallel_covers(diag, diag, Subgroup::whole(klein), Rat(1, 4), 1).size() == 1);
    CHECK(!cover_by_parallel_progressions(diag, diag, Subgroup::whole(klein), Rat(1, 4), 2)
               .has_value());

    // A set meeting two cosets of K can never be covered inside K.
    const GroupPtr z6 = make_group({6});
    CHECK(!cover_by_parallel_progressions(gs(z6, {0, 1}), gs(z6, {0}), sub(z6, {0, 3}), Rat(1, 2), 1)
               .has_value());

    CHECK_THROWS_AS(
        cover_by_parallel_progressions(GSet(z6), gs(z6, {0}), Subgroup::whole(z6), Rat(1), 1),
        PreconditionError);
}

TEST_CASE("exact parallel covers") {
    const GroupPtr z6 = make_group({6});
    auto exact =
        exact_cover_by_parallel_progressions(gs(z6, {0, 3}), gs(z6, {0, 3}), Subgroup::whole(z6), 1);
    REQUIRE(exact.has_value());
    CHECK(exact->hom.modulus == 3);
    CHECK(exact->cover_size_a() == 2);
    CHECK(exact->cover_size_b() == 2);
    CHECK_NOTHROW(verify_progression_cover(*exact, gs(z6, {0, 3}), gs(z6, {0, 3})));

    CHECK(!exact_cover_by_parallel_progressions(gs(z6, {0, 1, 3}), gs(z6, {0}),
                                                Subgroup::whole(z6), 1)
               .has_value());
}

TEST_CASE("sum of two progression-fiber sets is always critical") {
    const GroupPtr z12 = make_group({12});
    std::mt19937_64 rng(17);
    for (std::int64_t n : {12, 6, 4, 3, 2}) {
        for (const SubgroupHom& h : subgroup_homs_to_cyclic(Subgroup::whole(z12), n)) {
            const std::int64_t ker = h.kernel_subgroup.order();
            for (int round = 0; round < 6; ++round) {
                const std::int64_t la = 1 + static_cast<std::int64_t>(rng() % n);
                const std::int64_t lb = 1 + static_cast<std::int64_t>(rng() % n);
                GSet a = progression_preimage(h, static_cast<std::int64_t>(rng() % n), la, 0);
                GSet b = progression_preimage(h, static_cast<std::int64_t>(rng() % n), lb, 0);
                GSet s = sumset::sumset(a, b);
                CHECK(s.size() == std::min(n, la + lb - 1) * ker);
                auto cert = kneser_certificate(a, b);
                REQUIRE(cert.has_value()); // |A+B| <= (la+lb-1)|ker| < |A|+|B|
                CHECK(cert->valid);
            }
        }
    }
}

TEST_CASE("classification: periodic sumset (frozen)") {
    const GroupPtr z6 = make_group({6});
    const GSet a = gs(z6, {0, 2, 4});
    ClassificationResult r = classify_pair(a, a, Rat(1, 4), 3, Rat(1, 6));
    CHECK(r.tag == ClassTag::TypeI);
    CHECK(r.subgroup.members == gs(z6, {0, 2, 4}));
    CHECK(r.subgroup.index == 2);
    REQUIRE(r.periodicity.has_value());
    CHECK(r.periodicity->defect == Rat(0));
    CHECK(r.periodicity->m_sum_plus_k == Rat(1, 2));
    CHECK(r.periodicity->m_a_plus_k == Rat(1, 2));
    CHECK(r.periodicity->m_b_plus_k == Rat(1, 2));
    CHECK(r.epsilon == Rat(1, 4));
    CHECK(r.delta_used == Rat(1, 6));
    CHECK(r.d == 3);
    CHECK(r.diagnostics.empty());
    CHECK(r.bohr_interval_route_vacuous);
    CHECK_NOTHROW(verify_classification(r, a, a));

    // Tampered witnesses are rejected by the re-derivation.
    ClassificationResult tampered = r;
    tampered.subgroup = Subgroup::whole(z6);
    CHECK_THROWS_AS(verify_classification(tampered, a, a), Error);
    tampered = r;
    tampered.periodicity->m_sum_plus_k = Rat(1, 3);
    CHECK_THROWS_AS(verify_classification(tampered, a, a), Error);
}

TEST_CASE("classification: quasi-periodic pair (frozen)") {
    const GroupPtr z4 = make_group({4});
    const GSet a = gs(z4, {0, 1, 2});
    const GSet b = gs(z4, {1});
    ClassificationResult r = classify_pair(a, b, Rat(1, 5), 2, Rat(1, 4));
    CHECK(r.tag == ClassTag::TypeII);
    CHECK(r.subgroup.members == gs(z4, {0, 2}));
    REQUIRE(r.qp_pair.has_value());
    CHECK(r.qp_pair->dec_a.periodic_part == gs(z4, {0, 2}));
    CHECK(r.qp_pair->dec_a.residual_part == gs(z4, {1}));
    CHECK(r.qp_pair->dec_a.residual_coset == 1);
    CHECK(r.qp_pair->dec_a.epsilon_defect == Rat(0));
    CHECK(r.qp_pair->dec_b.periodic_part.empty());
    CHECK(r.qp_pair->dec_b.residual_part == gs(z4, {1}));
    CHECK(r.qp_pair->m_residual_sum == Rat(1, 4));
    CHECK(r.qp_pair->bound == Rat(3, 5));
    CHECK_NOTHROW(verify_classification(r, a, b));
}

TEST_CASE("classification: progression cover (frozen)") {
    const GroupPtr z7 = make_group({7});
    const GSet a = gs(z7, {0, 1});
    ClassificationResult r = classify_pair(a, a, Rat(1, 4), 1, Rat(1, 7));
    CHECK(r.tag == ClassTag::TypeIII_2);
    CHECK(r.subgroup.index == 1);
    REQUIRE(r.cover.has_value());
    CHECK(r.cover->cover.hom.modulus == 7);
    CHECK(r.cover->cover.hom.multipliers == std::vector<std::int64_t>{1});
    CHECK(r.cover->cover.prog_a.start == 0);
    CHECK(r.cover->cover.prog_a.length == 2);
    CHECK(r.cover->m_sum == Rat(3, 7));
    CHECK(r.cover->m_k_cap == Rat(3, 4));
    CHECK_NOTHROW(verify_classification(r, a, a));
}

TEST_CASE("classification: unclassified pair carries diagnostics") {
    const GroupPtr z6 = make_group({6});
    const GSet a = gs(z6, {0, 1, 3});
    ClassificationResult r = classify_pair(a, a, Rat(1, 12), 1, Rat(0));
    CHECK(r.tag == ClassTag::Unclassified);
    CHECK(!r.periodicity.has_value());
    CHECK(!r.qp_pair.has_value());
    CHECK(!r.cover.has_value());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].find("I fails") != std::string::npos);
    CHECK(r.diagnostics[0].find("no parallel progression cover") != std::string::npos);
    CHECK(std::string(class_tag_name(r.tag)) == "Unclassified");
}

TEST_CASE("classification: all witnesses in clause-major order") {
    const GroupPtr z6 = make_group({6});
    const GSet a = gs(z6, {0, 2, 4});
    auto all = classify_pair_all(a, a, Rat(1, 4), 6, Rat(1, 6));
    REQUIRE(all.size() == 2);
    CHECK(all[0].tag == ClassTag::TypeI);
    CHECK(all[0].subgroup.index == 2);
    CHECK(all[1].tag == ClassTag::TypeI);
    CHECK(all[1].subgroup.index == 6);

    auto narrowed = classify_pair_all(a, a, Rat(1, 4), 3, Rat(1, 6));
    REQUIRE(narrowed.size() == 1);
    CHECK(narrowed[0].subgroup.index == 2);

    // classify_pair returns the front of the full list.
    ClassificationResult first = classify_pair(a, a, Rat(1, 4), 6, Rat(1, 6));
    CHECK(first.tag == all[0].tag);
    CHECK(first.subgroup.members == all[0].subgroup.members);
}

TEST_CASE("classification preconditions") {
    const GroupPtr z4 = make_group({4});
    const GroupPtr z8 = make_group({8});
    CHECK_THROWS_WITH_AS(classify_pair(gs(z4, {0}), gs(z4, {0, 1}), Rat(1, 4), 1, Rat(0)),
                         "classify_pair: m(A) <= epsilon", PreconditionError);
    CHECK_THROWS_WITH_AS(classify_pair(gs(z4, {0, 1}), gs(z4, {0}), Rat(1, 4), 1, Rat(0)),
                         "classify_pair: m(B) <= epsilon", PreconditionError);
    CHECK_THROWS_WITH_AS(classify_pair(gs(z8, {0, 1}), gs(z8, {0, 2, 5}), Rat(1, 8), 1, Rat(0)),
                         "classify_pair: m(A+B) > m(A) + m(B) + delta", PreconditionError);
    CHECK_THROWS_WITH_AS(classify_pair(gs(z4, {0, 1}), gs(z4, {0, 1}), Rat(-1, 4), 1, Rat(0)),
                         "classify_pair: epsilon must be nonnegative", PreconditionError);
}

TEST_CASE("tame pair reports: pinned cases") {
    const GroupPtr z5 = make_group({5});
    const GroupPtr z6 = make_group({6});
    const GroupPtr z8 = make_group({8});

    TamePairReport critical = tame_pair_check(gs(z6, {0, 1}), gs(z6, {0, 1, 2}));
    CHECK(critical.regime == PairRegime::Critical);
    REQUIRE(critical.certificate.has_value());
    CHECK(critical.certificate->stab.order() == 1);
    CHECK(critical.certificate->lhs == 4);
    CHECK(critical.certificate->rhs == 4);
    CHECK(critical.tame);
    CHECK(!critical.unclassified_exact);

    TamePairReport singleton = tame_pair_check(gs(z5, {0}), gs(z5, {0}));
    CHECK(singleton.regime == PairRegime::Critical);
    CHECK(singleton.tame);

    // |A+B| = |A|+|B| with a K-periodic sumset.
    TamePairReport exact1 = tame_pair_check(gs(z6, {0, 3}), gs(z6, {0, 1}));
    CHECK(exact1.regime == PairRegime::Subcritical);
    REQUIRE(exact1.exact_type_i.has_value());
    CHECK(exact1.exact_type_i->members == gs(z6, {0, 3}));
    CHECK(!exact1.exact_type_iii.has_value());
    CHECK(exact1.tame);

    // Full sumset: the whole group witnesses exact periodicity.
    TamePairReport full = tame_pair_check(gs(z6, {0, 1, 3}), gs(z6, {0, 2, 3}));
    CHECK(full.regime == PairRegime::Subcritical);
    REQUIRE(full.exact_type_i.has_value());
    CHECK(full.exact_type_i->index == 1);

    // Subcritical but outside all three exact clauses.
    TamePairReport rough = tame_pair_check(gs(z6, {0, 1}), gs(z6, {0, 2}));
    CHECK(rough.regime == PairRegime::Subcritical);
    CHECK(!rough.exact_type_i.has_value());
    CHECK(!rough.exact_type_ii.has_value());
    CHECK(!rough.exact_type_iii.has_value());
    CHECK(!rough.tame);
    CHECK(rough.unclassified_exact);

    TamePairReport super = tame_pair_check(gs(z8, {0, 1}), gs(z8, {0, 2, 5}));
    CHECK(super.regime == PairRegime::Supercritical);
    CHECK(!super.certificate.has_value());
    CHECK(!super.tame);
    CHECK(!super.unclassified_exact);

    CHECK_THROWS_AS(tame_pair_check(GSet(z5), gs(z5, {0})), PreconditionError);
}

TEST_CASE("tame pair reports: exhaustive structure over small groups") {
    for (const auto& shape : abelian_group_orders_upto(6)) {
        const GroupPtr g = make_group(shape);
        const std::int64_t n = g->size();
        for (std::uint64_t ma = 1; ma < (std::uint64_t{1} << n); ++ma) {
            for (std::uint64_t mb = ma; mb < (std::uint64_t{1} << n); ++mb) {
                GSet a = GSet::from_mask(g, ma);
                GSet b = GSet::from_mask(g, mb);
                GSet s = sumset::sumset(a, b);
                TamePairReport rep = tame_pair_check(a, b);
                if (s.size() < a.size() + b.size()) {
                    REQUIRE(rep.regime == PairRegime::Critical);
                    REQUIRE(rep.certificate.has_value());
                    REQUIRE(rep.certificate->valid);
                    REQUIRE(rep.tame);
                } else if (s.size() == a.size() + b.size()) {
                    REQUIRE(rep.regime == PairRegime::Subcritical);
                    REQUIRE(rep.tame == (rep.exact_type_i.has_value() ||
                                         rep.exact_type_ii.has_value() ||
                                         rep.exact_type_iii.has_value()));
                    REQUIRE(rep.unclassified_exact == !rep.tame);
                    // A zero-slack progression cover forces |A+B| < |A|+|B|,
                    // so this clause can never fire here.
                    REQUIRE(!rep.exact_type_iii.has_value());
                    if (rep.exact_type_i) {
                        REQUIRE(rep.exact_type_i->order() > 1);
                        REQUIRE(periodization(s, *rep.exact_type_i) == s);
                    }
                    if (rep.exact_type_ii) {
                        const auto& [da, db] = *rep.exact_type_ii;
                        REQUIRE(!(da.periodic_part.empty() && db.periodic_part.empty()));
                        GSet rsum = sumset::sumset(da.residual_part, db.residual_part);
                        REQUIRE(rsum.size() ==
                                da.residual_part.size() + db.residual_part.size());
                        REQUIRE((da.periodic_part | da.residual_part) == a);
                        REQUIRE((db.periodic_part | db.residual_part) == b);
                    }
                } else {
                    REQUIRE(rep.regime == PairRegime::Supercritical);
                    REQUIRE(!rep.tame);
                }
            }
        }
    }
}
