#include <catch2/catch_amalgamated.hpp>

#include "ealab/root_system.hpp"

using namespace ealab;

namespace {
IntVec vec(std::initializer_list<int32_t> v) { return IntVec(v.begin(), v.end()); }
}

TEST_CASE("catalog enumeration") {
    CHECK(RootSystem::get({Family::BC, 2}).roots().size() == 13);
    CHECK(RootSystem::get({Family::A, 1}).roots().size() == 3);
    CHECK(RootSystem::get({Family::G, 2}).roots().size() == 13);
    CHECK(RootSystem::get({Family::F, 4}).roots().size() == 49);
    CHECK(RootSystem::get({Family::E, 6}).roots().size() == 73);
    CHECK(RootSystem::get({Family::E, 7}).roots().size() == 127);
    CHECK(RootSystem::get({Family::E, 8}).roots().size() == 241);
    CHECK_THROWS_AS(enumerate_roots({Family::E, 5}), EalabError);
    CHECK_THROWS_AS(enumerate_roots({Family::D, 2}), EalabError);
    // BC_2 as listed: 0, +-e_i, +-2e_i, +-e_1 +- e_2
    auto const& bc2 = RootSystem::get({Family::BC, 2});
    CHECK(bc2.contains(vec({1, 0})));
    CHECK(bc2.contains(vec({0, -2})));
    CHECK(bc2.contains(vec({-1, 1})));
    CHECK(bc2.contains(vec({0, 0})));
    CHECK_FALSE(bc2.contains(vec({2, 1})));
}

TEST_CASE("pairing and reflection") {
    auto const& bc2 = RootSystem::get({Family::BC, 2});
    IntVec alpha = vec({1, 0});
    CHECK(bc2.cartan_int(alpha, alpha) == 2);
    CHECK(bc2.reflect(alpha, alpha) == vec({-1, 0}));
    // x = e_1 against alpha = 2 e_1
    CHECK(bc2.cartan_int(vec({1, 0}), vec({2, 0})) == 1);
    CHECK(bc2.reflect(vec({1, 0}), vec({2, 0})) == vec({-1, 0}));
    // orthogonal vector is fixed
    CHECK(bc2.cartan_int(vec({0, 1}), vec({1, 0})) == 0);
    CHECK(bc2.reflect(vec({0, 1}), vec({1, 0})) == vec({0, 1}));
    CHECK_THROWS_AS(bc2.reflect(alpha, vec({0, 0})), EalabError);
    // reflections are involutions
    for (auto const& a : bc2.roots()) {
        if (is_zero(a)) continue;
        for (auto const& x : bc2.roots()) CHECK(bc2.reflect(bc2.reflect(x, a), a) == x);
    }
}

TEST_CASE("length classes") {
    auto const& bc2 = RootSystem::get({Family::BC, 2});
    CHECK(bc2.u_norm(vec({2, 0})) == 8);
    CHECK(bc2.class_of(vec({2, 0})) == LengthClass::Divisible);
    CHECK(bc2.class_of(vec({1, 1})) == LengthClass::Long);
    CHECK(bc2.class_of(vec({0, 1})) == LengthClass::Short);
    auto const& d4 = RootSystem::get({Family::D, 4});
    for (auto const& r : d4.roots())
        if (!is_zero(r)) CHECK(d4.class_of(r) == LengthClass::Short);
    CHECK_FALSE(d4.has_class(LengthClass::Long));
    CHECK_FALSE(d4.has_class(LengthClass::Divisible));
    auto const& g2 = RootSystem::get({Family::G, 2});
    CHECK(g2.u_norm(vec({2, -1, -1})) == 6);
    CHECK(g2.u_norm(vec({1, -1, 0})) == 2);
}

TEST_CASE("root strings") {
    auto const& a1 = RootSystem::get({Family::A, 1});
    // beta = alpha: 0 and -alpha lie in the string (0 is a root here)
    auto [d, u] = a1.root_string(vec({1, -1}), vec({1, -1}));
    CHECK(d == 2);
    CHECK(u == 0);
    auto const& bc1 = RootSystem::get({Family::BC, 1});
    auto [d2, u2] = bc1.root_string(vec({2}), vec({1}));
    CHECK(d2 == 4);
    CHECK(u2 == 0);
    // orthogonal pair in D4 with beta +- alpha off the system
    auto const& d4 = RootSystem::get({Family::D, 4});
    auto [d3, u3] = d4.root_string(vec({1, 1, 0, 0}), vec({0, 0, 1, -1}));
    CHECK(d3 == 0);
    CHECK(u3 == 0);
}

TEST_CASE("irreducibility and components") {
    CHECK(is_irreducible({Family::B, 3}).irreducible);
    CHECK(is_irreducible({Family::BC, 2}).irreducible);
    std::vector<IntVec> disjoint = {vec({1, -1, 0, 0}), vec({-1, 1, 0, 0}), vec({0, 0, 1, -1}),
                                    vec({0, 0, -1, 1})};
    auto rep = is_irreducible_set(disjoint);
    CHECK_FALSE(rep.irreducible);
    CHECK(rep.component_count == 2);
}

TEST_CASE("axioms hold exhaustively for every catalog id of rank <= 4") {
    std::vector<RootSystemId> ids;
    for (unsigned r = 1; r <= 4; ++r) {
        ids.push_back({Family::A, r});
        ids.push_back({Family::B, r});
        ids.push_back({Family::BC, r});
        if (r >= 2) ids.push_back({Family::C, r});
        if (r >= 3) ids.push_back({Family::D, r});
    }
    ids.push_back({Family::F, 4});
    ids.push_back({Family::G, 2});
    for (auto id : ids) {
        auto const& rs = RootSystem::get(id);
        for (auto const& a : rs.roots()) {
            if (is_zero(a)) continue;
            for (auto const& x : rs.roots()) {
                // closure and integrality
                REQUIRE(rs.contains(rs.reflect(x, a)));
                (void)rs.cartan_int(x, a);
                // strings: unbroken with the down-up identity, length <= 5
                auto [d, u] = rs.root_string(x, a);
                REQUIRE(d - u == rs.cartan_int(x, a));
                REQUIRE(d + u + 1 <= 5);
                // Weyl orbits stay inside their length class
                if (!is_zero(rs.reflect(x, a)))
                    REQUIRE(rs.u_norm(rs.reflect(x, a)) == rs.u_norm(x));
            }
        }
    }
}

TEST_CASE("the co-root sum form induces the same pairings") {
    for (auto id : {RootSystemId{Family::A, 2}, RootSystemId{Family::B, 2},
                    RootSystemId{Family::BC, 2}, RootSystemId{Family::G, 2}}) {
        auto const& rs = RootSystem::get(id);
        // the alternative form is a positive multiple of the normalized one
        // on an irreducible system, so both induce identical Cartan integers
        for (auto const& a : rs.roots()) {
            if (is_zero(a)) continue;
            std::vector<Rat> av(rs.dim());
            for (std::size_t i = 0; i < rs.dim(); ++i) av[i] = Rat(a[i]);
            Rat na = rs.covee_form(av, av);
            for (auto const& x : rs.roots()) {
                std::vector<Rat> xv(rs.dim());
                for (std::size_t i = 0; i < rs.dim(); ++i) xv[i] = Rat(x[i]);
                Rat pair = Rat(2) * rs.covee_form(xv, av) / na;
                CHECK(pair == Rat(rs.cartan_int(x, a)));
            }
        }
    }
}

TEST_CASE("catalog matcher") {
    // matching the standard systems back to themselves
    for (auto id : {RootSystemId{Family::A, 3}, RootSystemId{Family::BC, 2},
                    RootSystemId{Family::G, 2}, RootSystemId{Family::B, 3}}) {
        auto const& rs = RootSystem::get(id);
        std::vector<IntVec> roots;
        for (auto const& r : rs.roots())
            if (!is_zero(r)) roots.push_back(r);
        auto m = match_root_system(
            roots, [&](std::size_t a, std::size_t b) { return rs.u_form(roots[a], roots[b]); });
        REQUIRE(m);
        CHECK(m->id == id);
    }
    // rank-2 systems with equal class counts get the C label
    {
        auto const& c2 = RootSystem::get({Family::C, 2});
        std::vector<IntVec> roots;
        for (auto const& r : c2.roots())
            if (!is_zero(r)) roots.push_back(r);
        auto m = match_root_system(
            roots, [&](std::size_t a, std::size_t b) { return c2.u_form(roots[a], roots[b]); });
        REQUIRE(m);
        CHECK(m->id == RootSystemId{Family::C, 2});
    }
    // scaled coordinates still match (integral base change)
    {
        auto const& a2 = RootSystem::get({Family::A, 2});
        std::vector<IntVec> roots;
        for (auto const& r : a2.roots())
            if (!is_zero(r)) roots.push_back(2 * r);
        auto m = match_root_system(roots, [&](std::size_t a, std::size_t b) {
            return Rat(dot(roots[a], roots[b]));
        });
        REQUIRE(m);
        CHECK(m->id == RootSystemId{Family::A, 2});
    }
    // a non-system is reported, not guessed
    {
        std::vector<IntVec> junk = {vec({1, 0}), vec({-1, 0}), vec({3, 1}), vec({-3, -1})};
        auto m = match_root_system(
            junk, [&](std::size_t a, std::size_t b) { return Rat(dot(junk[a], junk[b])); });
        CHECK_FALSE(m);
    }
}
