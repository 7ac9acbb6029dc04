#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "dormant/descent.hpp"

using namespace dormant;

namespace {

ratfunc rf(fp p, const std::string& s) { return parse_ratfunc(p, s); }

}  // namespace

TEST_CASE("twisted line descends along its section") {
    diffmodule Mt = twist_by_unit(trivial({3, 0}, 1), rf(3, "t"));
    auto [low, C] = descend_once(Mt);
    CHECK_FALSE(low.has_value());
    REQUIRE(C.rows == 1);
    CHECK(to_string(C.at(0, 0)) == "t^2");
}

TEST_CASE("plain modules have the identity as section basis") {
    for (level_params lv : {level_params{2, 0}, level_params{3, 0}}) {
        INFO("p=" << static_cast<unsigned>(lv.p));
        diffmodule T = trivial(lv, 2);
        auto [low, C] = descend_once(T);
        CHECK_FALSE(low.has_value());
        CHECK(C == ridentity(2, lv.p));
    }
}

TEST_CASE("one descent step inverts the frobenius pullback") {
    level_params lv{2, 1};
    rmatrix g(1, 1, 2);
    g.at(0, 0) = rf(2, "1+t");
    diffmodule low = gauge(trivial({2, 0}, 1), g);
    diffmodule up = frobenius_pullback(low, lv, 1);
    auto [rec, C] = descend_once(up);
    REQUIRE(rec.has_value());
    CHECK(rec->lv == level_params{2, 0});
    CHECK(rec->n == 1);
    CHECK(rec->A == low.A);
    CHECK(C == ridentity(1, 2));
}

TEST_CASE("full descent of the divided power module") {
    auto [rank, C] = descend_full(p_module({2, 1}, false));
    CHECK(rank == 4);
    CHECK(rank_of(C) == 4);
}

TEST_CASE("full descent of gauged plain modules across levels") {
    for (level_params lv : {level_params{3, 0}, level_params{2, 1}}) {
        INFO("p=" << static_cast<unsigned>(lv.p) << " m=" << lv.m);
        rmatrix g = ridentity(2, lv.p);
        g.at(0, 1) = rf(lv.p, "t");
        diffmodule M = gauge(trivial(lv, 2), g);
        auto [rank, C] = descend_full(M);
        CHECK(rank == 2);
        CHECK(rank_of(C) == 2);
        diffmodule back = gauge(M, C);
        CHECK(back.A == trivial(lv, 2).A);
    }
}

TEST_CASE("unit and counit checks pass for plain and gauged modules") {
    level_params lv{2, 1};
    unit_counit_report rep = unit_counit_checks(trivial(lv, 2));
    CHECK(rep.counit_iso);
    CHECK(rep.counit_intertwines);
    CHECK(rep.unit_iso);
    CHECK(rep.ok());

    rmatrix g = ridentity(2, 2);
    g.at(0, 1) = rf(2, "t^2");
    g.at(1, 1) = rf(2, "1+t");
    unit_counit_report rep2 = unit_counit_checks(gauge(trivial(lv, 2), g));
    CHECK(rep2.ok());
}

TEST_CASE("curvature blocks descent") {
    rmatrix one(1, 1, 2);
    one.at(0, 0) = rf(2, "1");
    diffmodule W = from_generators({2, 0}, false, {one});
    CHECK_THROWS_AS(descend_once(W), descent_rank_deficient);
}
