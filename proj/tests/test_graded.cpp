#include <catch2/catch_amalgamated.hpp>

#include "ealab/checks.hpp"
#include "ealab/realizations.hpp"

using namespace ealab;

namespace {
IntVec vec(std::initializer_list<int32_t> v) { return IntVec(v.begin(), v.end()); }

GradedHandle<Cyc> abelian_line() {
    // one-dimensional abelian algebra, Z-graded at degree 0
    GradedHandle<Cyc> h;
    h.sys = {Family::A, 1};
    h.lam_rank = 1;
    h.tag = "abelian";
    h.dim = [](Degree const& d) -> std::size_t {
        return is_zero(d.xi) && is_zero(d.lam) ? 1 : 0;
    };
    h.label = [](Degree const&, std::size_t) { return std::string("z"); };
    h.bracket = [](Degree const& d1, std::size_t, Degree const& d2, std::size_t) {
        Degree t = d1 + d2;
        return HomElt<Cyc>{t, std::vector<Cyc>(is_zero(t.xi) && is_zero(t.lam) ? 1 : 0, Cyc(0L))};
    };
    return h;
}
}  // namespace

TEST_CASE("element arithmetic and bracket dispatch") {
    auto h = sl_torus<Cyc>(3, AssocTorus<Cyc>::laurent(1));
    Degree e12{vec({1, -1, 0}), vec({0})};
    Degree e21{vec({-1, 1, 0}), vec({0})};
    auto x = Element<Cyc>::basis(e12, 0, 1);
    auto y = Element<Cyc>::basis(e21, 0, 1);
    // alternating
    CHECK(algebra_eval_bracket(h, x, x).is_zero());
    // [e, f] = h in the defining relations
    auto hh = algebra_eval_bracket(h, x, y);
    REQUIRE(hh.parts().size() == 1);
    auto const& [deg, cv] = *hh.parts().begin();
    CHECK(is_zero(deg.xi));
    CHECK(cv[0] == Cyc::one());
    // loop algebra: [e ox t, f ox t^-1] lands at lattice degree 0
    Degree et{vec({1, -1, 0}), vec({1})};
    Degree ft{vec({-1, 1, 0}), vec({-1})};
    auto z = algebra_eval_bracket(h, Element<Cyc>::basis(et, 0, 1), Element<Cyc>::basis(ft, 0, 1));
    REQUIRE(!z.is_zero());
    CHECK(is_zero(z.parts().begin()->first.lam));
}

TEST_CASE("jacobi detects a perturbed structure constant") {
    auto good = sl_torus<Cyc>(3, AssocTorus<Cyc>::laurent(1));
    CHECK(check_jacobi_grading(good, 1).pass());
    GradedHandle<Cyc> bad = good;
    auto inner = good.bracket;
    Degree probe{vec({1, -1, 0}), vec({0})};
    bad.bracket = [inner, probe](Degree const& d1, std::size_t i1, Degree const& d2,
                                 std::size_t i2) {
        HomElt<Cyc> r = inner(d1, i1, d2, i2);
        if (d1 == probe && is_zero(d1.xi + d2.xi))
            for (auto& x : r.v) x = x * Cyc(2L);
        return r;
    };
    auto rep = check_jacobi_grading(bad, 1);
    CHECK_FALSE(rep.pass());
    bool witnessed = false;
    for (auto const& c : rep.checks)
        if (!c.pass && !c.witnesses.empty()) witnessed = true;
    CHECK(witnessed);
}

TEST_CASE("lie torus suite on the split simple case") {
    auto h = sl_torus<Cyc>(3, AssocTorus<Cyc>::laurent(0));
    auto res = check_lie_torus(h, 0);
    CHECK(res.report.pass());
    // type (A_2, {0})
    CHECK(res.family.at("sh") == std::vector<IntVec>{zero_vec(0)});
}

TEST_CASE("invariant form suite and a degenerate mutation") {
    auto h = sl_torus<Cyc>(3, AssocTorus<Cyc>::laurent(1));
    CHECK(check_invariant_form(h, 1).pass());
    GradedHandle<Cyc> bad = h;
    auto inner = h.form;
    Degree probe{vec({1, -1, 0}), vec({1})};
    bad.form = [inner, probe](Degree const& d1, std::size_t i1, Degree const& d2,
                              std::size_t i2) {
        if (d1 == probe || d2 == probe) return Cyc(0L);
        return inner(d1, i1, d2, i2);
    };
    auto rep = check_invariant_form(bad, 1);
    CHECK_FALSE(rep.find("form-nondegenerate")->pass);
}

TEST_CASE("graded centre") {
    // centreless: sl_3 over Laurent
    auto h = sl_torus<Cyc>(3, AssocTorus<Cyc>::laurent(1));
    auto c = graded_center(h, 1);
    CHECK(c.dims_by_lam.empty());
    // everything is central in the abelian line
    auto a = abelian_line();
    auto ca = graded_center(a, 1);
    CHECK(ca.dims_by_lam.at("(0)") == 1);
}

TEST_CASE("weyl automorphisms permute degrees by the reflection rule") {
    auto h = sl_torus<Cyc>(3, AssocTorus<Cyc>::laurent(1));
    IntVec xi = vec({1, -1, 0});
    // lam = 1: degree (tau, mu) goes to (s_xi tau, mu - <tau, xi^v>)
    auto res = weyl_automorphism(h, xi, vec({1}), 1);
    CHECK(res.report.pass);
    for (auto const& [key, img] : res.images) {
        if (is_zero(key.deg.xi) && is_zero(key.deg.lam)) {
            // L_0^0 maps into L_0^0
            for (auto const& [deg, v] : img.parts()) CHECK(deg == key.deg);
        }
    }
    // the split sl_2 inside: e and -f swap up to the lattice shift
    auto h0 = sl_torus<Cyc>(3, AssocTorus<Cyc>::laurent(0));
    auto res0 = weyl_automorphism(h0, vec({1, -1, 0}), zero_vec(0), 0);
    CHECK(res0.report.pass);
}

TEST_CASE("perfectness and h-congruence properties") {
    auto h = sl_torus<Cyc>(3, AssocTorus<Cyc>::laurent(1));
    CHECK(check_perfect(h, 1).pass);
    // h_xi^lam = h_xi^mu modulo the graded centre: equality on the nose here
    // because the handle is centreless
    IntVec xi = vec({1, -1, 0});
    auto lt = check_lie_torus(h, 1);
    REQUIRE(lt.report.pass());
    Degree d0{xi, vec({0})}, d1{xi, vec({1})};
    Degree n0{-d0.xi, vec({0})}, n1{-d1.xi, vec({-1})};
    // brackets along opposite pairs at different lattice degrees agree
    HomElt<Cyc> ha = h.bracket_basis_elt({d0, 0}, {n0, 0});
    HomElt<Cyc> hb = h.bracket_basis_elt({d1, 0}, {n1, 0});
    REQUIRE(ha.v.size() == hb.v.size());
    for (std::size_t i = 0; i < ha.v.size(); ++i) CHECK(ha.v[i] == hb.v[i]);
}

TEST_CASE("zero-degree spaces are simultaneous eigenspaces") {
    auto h = sl_torus<Cyc>(3, AssocTorus<Cyc>::laurent(1));
    auto const& rs = RootSystem::get(h.sys);
    WindowIndex<Cyc> W(h, 1);
    // [h_xi^0, x_tau] = <tau, xi^v> x_tau for the normalized sl2 partner
    for (auto const& xi : rs.roots()) {
        if (is_zero(xi)) continue;
        Degree d{xi, vec({0})}, nd{-d.xi, vec({0})};
        HomElt<Cyc> hh = h.bracket_basis_elt({d, 0}, {nd, 0});
        HomElt<Cyc> he = h.bracket_hom_basis(hh, {d, 0});
        Cyc c = Cyc(2L) / he.v[0];
        for (auto& x : hh.v) x = x * c;
        for (std::size_t t = 0; t < W.total(); ++t) {
            auto const& kt = W.key(t);
            HomElt<Cyc> act = h.bracket_hom_basis(hh, kt);
            long want = rs.cartan_int(kt.deg.xi, xi);
            for (std::size_t s = 0; s < act.v.size(); ++s)
                CHECK(act.v[s] == (s == kt.idx ? Cyc(want) : Cyc(0L)));
        }
    }
}
