#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "emlab/algebra.hpp"

using namespace emlab;

// Brute-force count of 2x2 matrices over F_p with determinant 1, independent
// of the library's enumeration order and field helpers.
static long brute_sl2_order(long p) {
    long count = 0;
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b)
            for (long c = 0; c < p; ++c)
                for (long d = 0; d < p; ++d)
                    if (((a * d - b * c) % p + p) % p == 1) ++count;
    return count;
}

TEST_CASE("prime field arithmetic") {
    auto F = make_prime_field(13);
    CHECK(F.add(9, 9) == 5);
    CHECK(F.sub(2, 9) == 6);
    CHECK(F.mul(7, 8) == 4);
    CHECK(F.neg(0) == 0);
    for (long a = 1; a < 13; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
    CHECK(F.pow(2, 12) == 1);
    CHECK(F.pow(2, 0) == 1);
    CHECK_THROWS_AS(F.inv(0), DomainError);
    CHECK_THROWS_AS(make_prime_field(12), NotPrimeError);
    CHECK_THROWS_AS(make_prime_field(1), NotPrimeError);
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(91));
}

TEST_CASE("group orders match closed forms") {
    CHECK(make_cyclic(12)->order() == 12);
    CHECK(make_units(13)->order() == 12);
    CHECK(make_affine(5)->order() == 20);
    CHECK(make_vec2(7)->order() == 49);
    CHECK(make_sl2(2)->order() == 6);
    CHECK(make_sl2(3)->order() == 24);
    CHECK(make_sl2(5)->order() == 120);
    CHECK(make_sl2(7)->order() == 336);
    CHECK(make_psl2(2)->order() == 6);
    CHECK(make_psl2(3)->order() == 12);
    CHECK(make_psl2(5)->order() == 60);
    CHECK(make_psl2(7)->order() == 168);
    for (long p : {2L, 3L, 5L, 7L}) CHECK(make_sl2(p)->order() == brute_sl2_order(p));
}

TEST_CASE("size cap and primality are enforced") {
    CHECK_THROWS_AS(make_sl2(47), TooLargeError);
    CHECK_THROWS_AS(make_psl2(61), TooLargeError);
    CHECK_THROWS_AS(make_cyclic(kGroupOrderCap + 1), TooLargeError);
    CHECK_THROWS_AS(make_sl2(9), NotPrimeError);
    CHECK_THROWS_AS(make_affine(10), NotPrimeError);
    CHECK_THROWS_AS(make_units(15), NotPrimeError);
}

TEST_CASE("group axioms hold on sampled triples") {
    std::vector<GroupPtr> groups = {make_cyclic(9),  make_units(11), make_sl2(5),
                                    make_psl2(5),    make_affine(7), make_vec2(5)};
    std::mt19937_64 rng(12345);
    for (const auto& g : groups) {
        const long n = g->order();
        CHECK(g->index_of(g->identity()) == g->identity_idx());
        for (int trial = 0; trial < 50; ++trial) {
            const auto& a = g->element(static_cast<long>(rng() % n));
            const auto& b = g->element(static_cast<long>(rng() % n));
            const auto& c = g->element(static_cast<long>(rng() % n));
            CHECK(g->mul(g->mul(a, b), c) == g->mul(a, g->mul(b, c)));
            CHECK(g->mul(a, g->identity()) == a);
            CHECK(g->mul(g->identity(), a) == a);
            CHECK(g->mul(a, g->inv(a)) == g->identity());
            CHECK(g->mul(g->inv(a), a) == g->identity());
            CHECK(g->contains(a));
        }
    }
}

TEST_CASE("psl2 canonicalization is a 2-to-1 quotient") {
    for (long p : {3L, 5L, 7L}) {
        auto sl2 = make_sl2(p);
        auto psl2 = make_psl2(p);
        auto F = make_prime_field(p);
        std::map<GroupElement, long> preimages;
        for (const auto& m : sl2->elements()) {
            Mat2 mm{m.data[0], m.data[1], m.data[2], m.data[3]};
            Mat2 cc = psl2_canonical(F, mm);
            GroupElement canon{{static_cast<int32_t>(cc.a), static_cast<int32_t>(cc.b),
                                static_cast<int32_t>(cc.c), static_cast<int32_t>(cc.d)}};
            CHECK(psl2->contains(canon));
            preimages[canon]++;
        }
        CHECK(static_cast<long>(preimages.size()) == psl2->order());
        for (const auto& [k, v] : preimages) CHECK(v == 2);
        // the quotient map is a homomorphism on sampled pairs
        std::mt19937_64 rng(7);
        auto project = [&](const GroupElement& m) {
            Mat2 cc = psl2_canonical(F, Mat2{m.data[0], m.data[1], m.data[2], m.data[3]});
            return GroupElement{{static_cast<int32_t>(cc.a), static_cast<int32_t>(cc.b),
                                 static_cast<int32_t>(cc.c), static_cast<int32_t>(cc.d)}};
        };
        for (int t = 0; t < 40; ++t) {
            const auto& a = sl2->element(static_cast<long>(rng() % sl2->order()));
            const auto& b = sl2->element(static_cast<long>(rng() % sl2->order()));
            CHECK(project(sl2->mul(a, b)) == psl2->mul(project(a), project(b)));
        }
    }
}

TEST_CASE("preimages of psl2 sets lift 2-to-1 into sl2") {
    auto psl2 = make_psl2(5);
    auto sl2 = make_sl2(5);
    auto lifted = quotient_preimage_sl2(5, psl2->elements());
    CHECK(lifted.size() == 2 * static_cast<size_t>(psl2->order()));
    std::set<GroupElement> set(lifted.begin(), lifted.end());
    CHECK(set.size() == lifted.size());
    for (const auto& m : lifted) CHECK(sl2->contains(m));
    // p = 2: the quotient is trivial
    auto psl22 = make_psl2(2);
    auto lifted2 = quotient_preimage_sl2(2, psl22->elements());
    CHECK(lifted2.size() == static_cast<size_t>(psl22->order()));
}

TEST_CASE("element orders") {
    auto z12 = make_cyclic(12);
    CHECK(element_order(*z12, GroupElement{{0}}) == 1);
    CHECK(element_order(*z12, GroupElement{{1}}) == 12);
    CHECK(element_order(*z12, GroupElement{{4}}) == 3);
    CHECK(element_order(*z12, GroupElement{{6}}) == 2);
    auto sl23 = make_sl2(3);
    // -I has order 2
    CHECK(element_order(*sl23, GroupElement{{2, 0, 0, 2}}) == 2);
    // a unipotent has order p
    CHECK(element_order(*sl23, GroupElement{{1, 1, 0, 1}}) == 3);
    // in PSL(2,3) the unipotent still has order 3
    auto psl23 = make_psl2(3);
    CHECK(element_order(*psl23, GroupElement{{1, 1, 0, 1}}) == 3);
}

TEST_CASE("semidirect product with the standard sl2 action") {
    auto sl2 = make_sl2(3);
    auto v2 = make_vec2(3);
    auto action = sl2_standard_action(sl2, v2);
    CHECK_NOTHROW(validate_action(action));
    auto g = make_semidirect(action);
    CHECK(g->order() == 24 * 9);
    CHECK(g->descriptor() == "semidirect:sl2:3:vec2");
    CHECK(parse_group("semidirect:sl2:3:vec2")->order() == g->order());

    // spot-check the law: (pi1, v1)(pi2, v2) = (pi1 pi2, v1 + pi1 . v2)
    std::mt19937_64 rng(99);
    for (int t = 0; t < 60; ++t) {
        const auto& x = g->element(static_cast<long>(rng() % g->order()));
        const auto& y = g->element(static_cast<long>(rng() % g->order()));
        auto xl = pair_left(*g, x), xr = pair_right(*g, x);
        auto yl = pair_left(*g, y), yr = pair_right(*g, y);
        GroupElement expect = make_pair_element(
            *g, sl2->mul(xl, yl), v2->mul(xr, action.apply(xl, yr)));
        CHECK(g->mul(x, y) == expect);
        CHECK(g->mul(x, g->inv(x)) == g->identity());
    }
}

TEST_CASE("semidirect of units acting on a line reproduces the affine group") {
    // units(p) acting on cyclic(p) by multiplication is exactly affine(p)
    long p = 5;
    auto u = make_units(p);
    auto line = make_cyclic(p);
    GroupAction mult{u, line, [p](const GroupElement& a, const GroupElement& x) {
                         return GroupElement{{static_cast<int32_t>(
                             (static_cast<long>(a.data[0]) * x.data[0]) % p)}};
                     }};
    CHECK_NOTHROW(validate_action(mult));
    auto sd = make_semidirect(mult);
    auto aff = make_affine(p);
    CHECK(sd->order() == aff->order());
    // multiplication tables agree under (a, b) <-> (a, b)
    for (long i = 0; i < sd->order(); ++i)
        for (long j = 0; j < sd->order(); ++j) {
            const auto& x = sd->element(i);
            const auto& y = sd->element(j);
            GroupElement xa{{x.data[0], x.data[1]}}, ya{{y.data[0], y.data[1]}};
            CHECK(sd->mul(x, y).data == aff->mul(xa, ya).data);
        }
}

TEST_CASE("invalid actions are rejected") {
    auto z4 = make_cyclic(4);
    auto z5 = make_cyclic(5);
    // x -> x + a is not an automorphism action (identity axiom fails for a != 0)
    GroupAction shift{z4, z5, [](const GroupElement& a, const GroupElement& x) {
                          return GroupElement{{static_cast<int32_t>((a.data[0] + x.data[0]) % 5)}};
                      }};
    CHECK_THROWS_AS(validate_action(shift), InvalidActionError);
    // conjugation on a nonabelian group: space fails the abelian requirement
    auto s = make_sl2(3);
    CHECK_THROWS_AS(validate_action(conjugation_action(s)), InvalidActionError);
    // conjugation on an abelian group is the trivial action and passes
    CHECK_NOTHROW(validate_action(conjugation_action(z4)));
}

TEST_CASE("generated subgroups") {
    auto sl2 = make_sl2(3);
    // the two standard unipotents generate all of SL(2,3)
    auto all = generated_subgroup(
        sl2, {GroupElement{{1, 1, 0, 1}}, GroupElement{{1, 0, 1, 1}}});
    CHECK(all->order() == 24);
    // a single unipotent generates a cyclic subgroup of order 3
    auto c3 = generated_subgroup(sl2, {GroupElement{{1, 1, 0, 1}}});
    CHECK(c3->order() == 3);
    CHECK(c3->contains(sl2->identity()));
    // subgroup shares the parent law
    CHECK(c3->mul(GroupElement{{1, 1, 0, 1}}, GroupElement{{1, 1, 0, 1}}) ==
          sl2->mul(GroupElement{{1, 1, 0, 1}}, GroupElement{{1, 1, 0, 1}}));
    CHECK_THROWS_AS(generated_subgroup(sl2, {GroupElement{{0, 0, 0, 0}}}), Error);
}

TEST_CASE("explicit subgroup lists are validated") {
    auto z6 = make_cyclic(6);
    CHECK(subgroup_from_elements(z6, {GroupElement{{0}}, GroupElement{{2}}, GroupElement{{4}}},
                                 "3-torsion")->order() == 3);
    CHECK_THROWS_AS(subgroup_from_elements(z6, {GroupElement{{0}}, GroupElement{{2}}}, "bad"),
                    NotSubgroupError);
    CHECK_THROWS_AS(subgroup_from_elements(z6, {GroupElement{{2}}, GroupElement{{4}}}, "no-id"),
                    NotSubgroupError);
}

TEST_CASE("generating sets are symmetric and identity-free") {
    auto z8 = make_cyclic(8);
    auto s = make_generating_set(z8, {GroupElement{{1}}, GroupElement{{7}}});
    CHECK(s.elems.size() == 2);
    CHECK(std::is_sorted(s.elems.begin(), s.elems.end()));
    // involutions are their own inverses
    CHECK_NOTHROW(make_generating_set(z8, {GroupElement{{4}}}));
    CHECK_THROWS_AS(make_generating_set(z8, {GroupElement{{1}}}), Error);
    CHECK_THROWS_AS(make_generating_set(z8, {GroupElement{{0}}}), Error);
    CHECK_THROWS_AS(make_generating_set(z8, {}), Error);
    // duplicates must come in inverse pairs too
    CHECK_NOTHROW(make_generating_set(
        z8, {GroupElement{{1}}, GroupElement{{1}}, GroupElement{{7}}, GroupElement{{7}}}));
    CHECK_THROWS_AS(make_generating_set(
        z8, {GroupElement{{1}}, GroupElement{{1}}, GroupElement{{7}}}), Error);
}

// Independent union-find orbit counter over explicit permutations, used to
// cross-check the three coset statistics below.
static long brute_double_cosets(const GroupPtr& gamma, const GroupPtr& pi) {
    const long n = gamma->order();
    std::vector<long> parent(n);
    for (long i = 0; i < n; ++i) parent[i] = i;
    std::function<long(long)> find = [&](long x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (long g = 0; g < n; ++g)
        for (const auto& a : pi->elements()) {
            long u = find(g);
            long v = find(gamma->index_of(gamma->mul(a, gamma->element(g))));
            long w = find(gamma->index_of(gamma->mul(gamma->element(g), a)));
            parent[u] = v;
            parent[find(w)] = find(v);
        }
    std::set<long> roots;
    for (long i = 0; i < n; ++i) roots.insert(find(i));
    return static_cast<long>(roots.size());
}

TEST_CASE("double cosets, character norms, and orbits agree") {
    struct Fixture {
        GroupPtr gamma;
        GroupPtr pi;
        long expected;
    };
    std::vector<Fixture> fixtures;

    // gamma = affine(5), pi = stabilizer of 0 = {(a, 0)}: the affine group is
    // 2-transitive on the line, so there are exactly 2 double cosets.
    {
        auto aff = make_affine(5);
        std::vector<GroupElement> stab;
        for (int32_t a = 1; a < 5; ++a) stab.push_back(GroupElement{{a, 0}});
        auto pi = subgroup_from_elements(aff, stab, "stab0");
        fixtures.push_back({aff, pi, 2});
    }
    // gamma = sl2(3) |x vec2(3), pi = sl2 x {0}: SL(2,3) is transitive on the
    // 8 nonzero vectors, so again 2 double cosets.
    {
        auto g = parse_group("semidirect:sl2:3:vec2");
        auto pi = left_factor_subgroup(g);
        fixtures.push_back({g, pi, 2});
    }
    // gamma = cyclic(12), pi = {0, 6}: abelian, so double cosets = plain
    // cosets = 6.
    {
        auto z12 = make_cyclic(12);
        auto pi = subgroup_from_elements(z12, {GroupElement{{0}}, GroupElement{{6}}}, "z2");
        fixtures.push_back({z12, pi, 6});
    }

    for (const auto& f : fixtures) {
        long dcc = double_coset_count(f.gamma, f.pi);
        long icn = induced_character_norm(f.gamma, f.pi);
        long orb = orbit_count(f.gamma, f.pi);
        CHECK(dcc == f.expected);
        CHECK(icn == f.expected);
        CHECK(orb == f.expected);
        CHECK(brute_double_cosets(f.gamma, f.pi) == f.expected);
    }
}

TEST_CASE("coset statistics reject non-subgroups") {
    auto z12 = make_cyclic(12);
    auto z5 = make_cyclic(5);
    CHECK_THROWS_AS(double_coset_count(z12, z5), NotSubgroupError);
    auto not_closed = std::make_shared<FiniteGroup>(
        "fake", std::vector<GroupElement>{GroupElement{{0}}, GroupElement{{1}}},
        [z12](const GroupElement& a, const GroupElement& b) { return z12->mul(a, b); },
        [z12](const GroupElement& a) { return z12->inv(a); }, GroupElement{{0}});
    CHECK_THROWS_AS(double_coset_count(z12, not_closed), NotSubgroupError);
    CHECK_THROWS_AS(induced_character_norm(z12, not_closed), NotSubgroupError);
    CHECK_THROWS_AS(orbit_count(z12, not_closed), NotSubgroupError);
}

TEST_CASE("direct products") {
    auto g = make_product(make_cyclic(3), make_cyclic(4));
    CHECK(g->order() == 12);
    // componentwise law
    GroupElement x = make_pair_element(*g, GroupElement{{2}}, GroupElement{{3}});
    GroupElement y = make_pair_element(*g, GroupElement{{2}}, GroupElement{{2}});
    CHECK(g->mul(x, y) == make_pair_element(*g, GroupElement{{1}}, GroupElement{{1}}));
    CHECK(pair_left(*g, x) == GroupElement{{2}});
    CHECK(pair_right(*g, x) == GroupElement{{3}});
    CHECK(element_order(*g, x) == 12);
    auto emb = left_factor_subgroup(g);
    CHECK(emb->order() == 3);
    // atomic groups have no pair structure
    auto z4 = make_cyclic(4);
    CHECK_THROWS_AS(pair_left(*z4, GroupElement{{1}}), Error);
}

TEST_CASE("descriptor parsing round-trips") {
    for (const char* d : {"cyclic:12", "units:7", "sl2:5", "psl2:5", "affine:13", "vec2:3",
                          "semidirect:sl2:3:vec2"}) {
        auto g = parse_group(d);
        CHECK(g->descriptor() == d);
    }
    CHECK_THROWS_AS(parse_group("dihedral:5"), ParseError);
    CHECK_THROWS_AS(parse_group("sl2"), ParseError);
    CHECK_THROWS_AS(parse_group("sl2:x"), ParseError);
    CHECK_THROWS_AS(parse_group("semidirect:affine:5:vec2"), ParseError);
    CHECK_THROWS_AS(parse_group(""), ParseError);
    CHECK_THROWS_AS(parse_group("sl2:9"), NotPrimeError);
}

TEST_CASE("element formatting") {
    CHECK(format_element(GroupElement{{1, 0, 0, 1}}) == "(1,0,0,1)");
    CHECK(format_element(GroupElement{{}}) == "()");
}

TEST_CASE("smallest primitive roots match the classical table") {
    CHECK(smallest_primitive_root(3) == 2);
    CHECK(smallest_primitive_root(5) == 2);
    CHECK(smallest_primitive_root(7) == 3);
    CHECK(smallest_primitive_root(13) == 2);
    CHECK(smallest_primitive_root(23) == 5);
    CHECK(smallest_primitive_root(41) == 6);
    // the returned element has full multiplicative order
    for (int64_t p : {5, 7, 11, 13, 17, 19, 23}) {
        const int64_t g = smallest_primitive_root(p);
        auto f = make_prime_field(p);
        int64_t x = g;
        int64_t order = 1;
        while (x != 1) {
            x = f.mul(x, g);
            ++order;
        }
        CHECK(order == p - 1);
    }
    CHECK_THROWS_AS(smallest_primitive_root(2), DomainError);
    CHECK_THROWS_AS(smallest_primitive_root(9), NotPrimeError);
}
