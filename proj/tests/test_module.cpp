#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "dormant/diffmodule.hpp"

using namespace dormant;

namespace {

ratfunc rf(fp p, const std::string& s) { return parse_ratfunc(p, s); }

bool same_module(const diffmodule& a, const diffmodule& b) {
    return a.lv == b.lv && a.log == b.log && a.n == b.n && a.A == b.A;
}

rmatrix mat1(fp p, const std::string& s) {
    rmatrix m(1, 1, p);
    m.at(0, 0) = rf(p, s);
    return m;
}

}  // namespace

TEST_CASE("standard constructors validate on construction") {
    for (level_params lv : {level_params{2, 0}, level_params{3, 0},
                            level_params{2, 1}, level_params{3, 1}}) {
        INFO("p=" << static_cast<unsigned>(lv.p) << " m=" << lv.m);
        CHECK(trivial(lv, 2).validate_report().empty());
        CHECK(nabla(lv, 1).validate_report().empty());
        CHECK(p_module(lv, false).validate_report().empty());
        CHECK(p_module(lv, true).validate_report().empty());
        CHECK(dual(p_module(lv, false)).validate_report().empty());
        CHECK(tensor(nabla(lv, 1), nabla(lv, 2 % lv.q())).validate_report().empty());
        CHECK(eta(trivial(lv, 2)).validate_report().empty());
        CHECK(direct_sum(nabla(lv, 0), nabla(lv, 1)).n == 2);
    }
}

TEST_CASE("frobenius pullback lands one level up") {
    diffmodule low = nabla({2, 0}, 1);
    diffmodule up = frobenius_pullback(low, {2, 1}, 1);
    CHECK(up.lv == level_params{2, 1});
    CHECK(up.n == 1);
    CHECK(up.validate_report().empty());
    // odd indices act by zero, even ones by the contracted matrices
    CHECK(up.A[1].is_zero());
    CHECK(up.A[3].is_zero());
    CHECK(up.A[2].at(0, 0) == low.A[1].at(0, 0));
    CHECK(up.A[4].at(0, 0) == low.A[2].at(0, 0));

    diffmodule base = trivial({3, 0}, 2);
    CHECK(frobenius_pullback(base, {3, 1}, 1).validate_report().empty());
}

TEST_CASE("rank one log modules form a cyclic group under tensor") {
    for (level_params lv : {level_params{2, 1}, level_params{3, 0}}) {
        unsigned long q = lv.q();
        for (unsigned long a = 0; a < q; ++a)
            for (unsigned long b = 0; b < q; ++b) {
                INFO("p=" << static_cast<unsigned>(lv.p) << " m=" << lv.m
                          << " a=" << a << " b=" << b);
                CHECK(same_module(tensor(nabla(lv, a), nabla(lv, b)),
                                  nabla(lv, (a + b) % q)));
            }
        for (unsigned long a = 0; a < q; ++a) {
            INFO("a=" << a);
            CHECK(same_module(dual(nabla(lv, a)), nabla(lv, (q - a) % q)));
        }
        CHECK(same_module(eta(trivial(lv, 1)), nabla(lv, 0)));
    }
}

TEST_CASE("frozen applications") {
    diffmodule N = nabla({2, 0}, 1);
    rvector out = N.apply(1, {rf(2, "1")});
    REQUIRE(out.size() == 1);
    CHECK(to_string(out[0]) == "1");

    diffmodule T = trivial({3, 0}, 1);
    out = T.apply(1, {rf(3, "t^2")});
    CHECK(to_string(out[0]) == "2*t");
}

TEST_CASE("divided power module is dormant and rebuilds from its generators") {
    level_params lv{2, 1};
    for (bool log : {false, true}) {
        INFO("log=" << log);
        diffmodule P = p_module(lv, log);
        CHECK(P.n == lv.q());
        CHECK(P.is_dormant());
        diffmodule R = from_generators(lv, log, {P.A[1], P.A[2]});
        CHECK(same_module(R, P));
    }
    CHECK(p_module({3, 1}, true).is_dormant());
    CHECK(p_module({3, 0}, false).is_dormant());
}

TEST_CASE("inconsistent generators are rejected") {
    level_params lv{2, 1};
    CHECK_THROWS_AS(from_generators(lv, false, {mat1(2, "t"), mat1(2, "1")}),
                    relation_failure);
}

TEST_CASE("generators can build modules with curvature") {
    diffmodule W = from_generators({2, 0}, false, {mat1(2, "1")});
    CHECK(W.validate_report().empty());
    CHECK_FALSE(W.is_dormant());
    CHECK(to_string(W.A[1].at(0, 0)) == "1");
    CHECK(to_string(W.A[2].at(0, 0)) == "1");
}

TEST_CASE("gauge transforms validate and admit the expected morphism") {
    level_params lv{2, 1};
    diffmodule P = p_module(lv, true);
    rmatrix g = ridentity(4, 2);
    g.at(0, 1) = rf(2, "t");
    g.at(2, 3) = rf(2, "1+t");
    diffmodule G = gauge(P, g);
    CHECK(G.validate_report().empty());
    CHECK(G.is_dormant());
    CHECK(morphism_ok(G, P, g));
    CHECK(same_module(gauge(P, ridentity(4, 2)), P));
}

TEST_CASE("unit twist is the scalar gauge") {
    diffmodule T = trivial({3, 0}, 1);
    diffmodule W = twist_by_unit(T, rf(3, "t"));
    CHECK(to_string(W.A[1].at(0, 0)) == "1/t");
    CHECK(W.A[2].is_zero());
    CHECK(W.A[3].is_zero());
    CHECK(W.is_dormant());
    rmatrix g(1, 1, 3);
    g.at(0, 0) = rf(3, "t");
    CHECK(same_module(W, gauge(T, g)));
}

TEST_CASE("eta and its inverse are mutually inverse") {
    diffmodule P = p_module({3, 0}, false);
    CHECK(same_module(eta_inverse(eta(P)), P));
    diffmodule T2 = trivial({2, 1}, 2);
    CHECK(same_module(eta_inverse(eta(T2)), T2));
    CHECK(same_module(eta_inverse(nabla({2, 1}, 0)), trivial({2, 1}, 1)));
}

TEST_CASE("eta inverse requires divisibility") {
    CHECK_THROWS_AS(eta_inverse(nabla({2, 0}, 1)), eta_not_divisible);
    CHECK_THROWS_AS(eta_inverse(nabla({3, 1}, 2)), eta_not_divisible);
}

TEST_CASE("validation rejects corrupted matrices") {
    diffmodule T = trivial({2, 1}, 2);
    auto mats = T.A;
    mats[1].at(0, 1) = rf(2, "t");
    CHECK_THROWS_AS(make_module(T.lv, false, mats), relation_failure);
    diffmodule raw = make_module(T.lv, false, mats, false);
    CHECK_FALSE(raw.validate_report().empty());

    auto mats2 = T.A;
    mats2[0].at(1, 1) = rf(2, "t");
    CHECK_THROWS_AS(make_module(T.lv, false, mats2), relation_failure);
}

TEST_CASE("dormancy across sums and twists") {
    level_params lv{2, 1};
    diffmodule S = direct_sum(nabla(lv, 1), nabla(lv, 3));
    CHECK(S.is_dormant());
    CHECK(S.curvature().is_zero());
    CHECK(trivial(lv, 3).is_dormant());
    CHECK(twist_by_unit(trivial({3, 0}, 2), rf(3, "1+t")).is_dormant());
    CHECK(tensor(p_module(lv, true), nabla(lv, 2)).is_dormant());
}
