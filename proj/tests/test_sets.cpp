#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "sumset/errors.hpp"
#include "sumset/group.hpp"
#include "sumset/gset.hpp"
#include "sumset/sets.hpp"
#include "sumset/subgroup.hpp"

using namespace sumset;

namespace {
GSet gs(const GroupPtr& g, std::initializer_list<Elem> elems) {
    return GSet::from_elements(g, elems);
}
} // namespace

TEST_CASE("sumset basics") {
    const GroupPtr z5 = make_group({5});
    const GroupPtr z6 = make_group({6});
    CHECK(sumset::sumset(gs(z5, {0, 1}), gs(z5, {0, 1})) == gs(z5, {0, 1, 2}));
    CHECK(sumset::sumset(GSet::all(z6), gs(z6, {0})) == GSet::all(z6));
    CHECK(sumset::sumset(gs(z6, {0, 3}), gs(z6, {0, 3})) == gs(z6, {0, 3}));
    CHECK(sumset::sumset(GSet(z5), gs(z5, {1})).empty());
    CHECK(sumset::sumset(gs(z5, {1}), GSet(z5)).empty());
}

TEST_CASE("sumset is commutative and translation-equivariant") {
    const GroupPtr g = make_group({2, 4});
    std::mt19937_64 rng(11);
    for (int it = 0; it < 200; ++it) {
        GSet a(g), b(g);
        const auto n = static_cast<std::uint64_t>(g->size());
        const std::int64_t sa = 1 + static_cast<std::int64_t>(rng() % n);
        const std::int64_t sb = 1 + static_cast<std::int64_t>(rng() % n);
        while (a.size() < sa) a.insert(static_cast<Elem>(rng() % n));
        while (b.size() < sb) b.insert(static_cast<Elem>(rng() % n));
        const GSet s = sumset::sumset(a, b);
        CHECK(s == sumset::sumset(b, a));
        const Elem t = static_cast<Elem>(rng() % n);
        CHECK(sumset::sumset(a.translated(t), b) == s.translated(t));
    }
}

TEST_CASE("difference set") {
    const GroupPtr z6 = make_group({6});
    CHECK(difference_set(gs(z6, {1, 2}), gs(z6, {1})) == gs(z6, {0, 1}));
    // A - A always contains 0 and is symmetric.
    const GSet a = gs(z6, {0, 1, 3});
    const GSet d = difference_set(a, a);
    CHECK(d.contains(0));
    CHECK(d == d.reflected());
}

TEST_CASE("stabilizer") {
    const GroupPtr z5 = make_group({5});
    const GroupPtr z6 = make_group({6});
    CHECK(stabilizer(gs(z6, {0, 2, 4})).members == gs(z6, {0, 2, 4}));
    CHECK(stabilizer(gs(z5, {0})).members == gs(z5, {0}));
    CHECK(stabilizer(gs(z5, {0, 1, 2})).members == gs(z5, {0}));
    CHECK(stabilizer(GSet(z6)).members == GSet::all(z6)); // empty set: whole group
    CHECK(stabilizer(GSet::all(z6)).members == GSet::all(z6));
}

TEST_CASE("stabilizer is the maximal fixing subgroup") {
    const GroupPtr g = make_group({2, 4});
    std::mt19937_64 rng(5);
    for (int it = 0; it < 100; ++it) {
        GSet s(g);
        const auto n = static_cast<std::uint64_t>(g->size());
        const std::int64_t size = 1 + static_cast<std::int64_t>(rng() % n);
        while (s.size() < size) s.insert(static_cast<Elem>(rng() % n));
        const Subgroup h = stabilizer(s);
        CHECK(sumset::sumset(s, h.members) == s);
        for (Elem e = 0; e < g->size(); ++e)
            CHECK((s.translated(e) == s) == h.members.contains(e));
    }
}

TEST_CASE("mover sets") {
    const GroupPtr z5 = make_group({5});
    const GroupPtr z6 = make_group({6});
    CHECK(mover_set(gs(z5, {0, 1}), gs(z5, {0, 1})) == gs(z5, {0, 1}));
    CHECK(mover_set(GSet::all(z6), gs(z6, {1, 4})) == GSet::all(z6));
    CHECK(mover_set(gs(z6, {0, 3}), gs(z6, {0})) == gs(z6, {0, 3}));
    CHECK(mover_set(gs(z6, {1}), GSet(z6)) == GSet::all(z6)); // empty B: vacuous
    // Movers always include A itself.
    std::mt19937_64 rng(17);
    for (int it = 0; it < 100; ++it) {
        GSet a(z6), b(z6);
        while (a.size() < 1 + static_cast<std::int64_t>(rng() % 6))
            a.insert(static_cast<Elem>(rng() % 6));
        while (b.size() < 1 + static_cast<std::int64_t>(rng() % 6))
            b.insert(static_cast<Elem>(rng() % 6));
        CHECK(a.is_subset_of(mover_set(a, b)));
    }
    CHECK(translates_into(gs(z6, {0, 3}), gs(z6, {0})) == gs(z6, {0, 3}));
    CHECK(translates_into(gs(z6, {2}), GSet(z6)) == GSet::all(z6));
}

TEST_CASE("periodization") {
    const GroupPtr z6 = make_group({6});
    const Subgroup k03 = Subgroup::from_members(gs(z6, {0, 3}));
    const Subgroup k024 = Subgroup::from_members(gs(z6, {0, 2, 4}));
    CHECK(periodization(gs(z6, {1}), k03) == gs(z6, {1, 4}));
    CHECK(periodization(gs(z6, {0, 2, 4}), k024) == gs(z6, {0, 2, 4}));
    CHECK(periodization(gs(z6, {0, 1}), k024) == GSet::all(z6));
    // Idempotent and monotone.
    const GSet p = periodization(gs(z6, {0, 1}), k03);
    CHECK(periodization(p, k03) == p);
    CHECK(gs(z6, {0, 1}).is_subset_of(p));
    // Inner periodization: the largest K-periodic subset.
    CHECK(inner_periodization(gs(z6, {0, 3, 1}), k03) == gs(z6, {0, 3}));
    CHECK(inner_periodization(gs(z6, {1}), k03).empty());
    CHECK(inner_periodization(GSet::all(z6), k03) == GSet::all(z6));
}

TEST_CASE("periodicity defect") {
    const GroupPtr z6 = make_group({6});
    const Subgroup k03 = Subgroup::from_members(gs(z6, {0, 3}));
    const Subgroup k024 = Subgroup::from_members(gs(z6, {0, 2, 4}));
    const Subgroup whole = Subgroup::whole(z6);
    CHECK(epsilon_periodicity(gs(z6, {0, 2, 4}), k024) == Rat(0));
    CHECK(epsilon_periodicity(gs(z6, {0}), whole) == Rat(5, 6));
    CHECK(epsilon_periodicity(gs(z6, {0, 3, 1}), k03) == Rat(1, 2));
    CHECK(epsilon_periodicity(GSet(z6), k03) == Rat(0)); // empty set: zero defect
    CHECK(is_periodic(gs(z6, {0, 3}), k03));
    CHECK(!is_periodic(gs(z6, {0, 1}), k03));
}

TEST_CASE("quasi-periodic decompositions") {
    const GroupPtr z6 = make_group({6});
    const Subgroup k03 = Subgroup::from_members(gs(z6, {0, 3}));

    const auto decs = quasiperiodic_decompositions(gs(z6, {0, 3, 1}), k03, Rat(0));
    REQUIRE(decs.size() == 1);
    CHECK(decs[0].periodic_part == gs(z6, {0, 3}));
    CHECK(decs[0].residual_part == gs(z6, {1}));
    CHECK(decs[0].residual_coset == 1);
    CHECK(decs[0].epsilon_defect == Rat(0));

    const auto single = quasiperiodic_decompositions(gs(z6, {1}), k03, Rat(0));
    REQUIRE(single.size() == 1);
    CHECK(single[0].periodic_part.empty());
    CHECK(single[0].residual_part == gs(z6, {1}));

    CHECK(quasiperiodic_decompositions(gs(z6, {0, 1}), k03, Rat(0)).empty());
    CHECK_THROWS_AS(quasiperiodic_decompositions(GSet(z6), k03, Rat(0)), PreconditionError);

    // Raising epsilon admits imperfect periodic parts: for A = {0,1} the
    // split A1 = {1}, A0 = {0} has defect (2-1)/2 = 1/2.
    const auto loose = quasiperiodic_decompositions(gs(z6, {0, 1}), k03, Rat(1, 2));
    CHECK(loose.size() == 2);
    for (const QPDecomposition& dec : loose) {
        CHECK((dec.periodic_part | dec.residual_part) == gs(z6, {0, 1}));
        CHECK(!dec.periodic_part.intersects(dec.residual_part));
        CHECK(!dec.residual_part.empty());
        CHECK(dec.residual_part.is_subset_of(
            k03.members.translated(dec.residual_coset)));
        CHECK(!periodization(dec.periodic_part, k03).intersects(dec.residual_part));
        CHECK(dec.epsilon_defect <= Rat(1, 2));
    }
}

TEST_CASE("unique expression cosets") {
    const GroupPtr z4 = make_group({4});
    const Subgroup k02 = Subgroup::from_members(gs(z4, {0, 2}));
    CHECK(is_unique_expression(gs(z4, {0, 1, 2}), gs(z4, {1}), k02, 1, 1));
    CHECK(!is_unique_expression(GSet::all(z4), GSet::all(z4), k02, 0, 0));

    const GroupPtr z6 = make_group({6});
    const Subgroup k03 = Subgroup::from_members(gs(z6, {0, 3}));
    CHECK(is_unique_expression(gs(z6, {0, 3}), gs(z6, {1}), k03, 0, 1));
    CHECK_THROWS_AS(is_unique_expression(gs(z6, {0, 3}), gs(z6, {1}), k03, 1, 1),
                    PreconditionError); // a = 1 is not in A
}

TEST_CASE("mass overflow forces the full group") {
    // |A| + |B| > |G| forces A + B = G: exhaustive over Z/6.
    const GroupPtr z6 = make_group({6});
    for (std::uint64_t am = 1; am < 64; ++am)
        for (std::uint64_t bm = 1; bm < 64; ++bm) {
            const GSet a = GSet::from_mask(z6, am);
            const GSet b = GSet::from_mask(z6, bm);
            if (a.size() + b.size() > 6) CHECK(sumset::sumset(a, b).full());
        }
}
