#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "dormant/duality.hpp"
#include "dormant/exponents.hpp"

using namespace dormant;

namespace {

ratfunc rf(fp p, const std::string& s) { return parse_ratfunc(p, s); }

rvector ones(fp p, std::size_t n) {
    return rvector(n, ratfunc::constant(p, 1));
}

}  // namespace

TEST_CASE("pinned dual of the induced trivial line") {
    level_params lv{2, 0};
    diffmodule M = eta(trivial(lv, 1));
    rvector v = ones(2, 1);

    rmatrix NU = nu_of(M, v);
    REQUIRE(NU.rows == 1);
    REQUIRE(NU.cols == 2);
    CHECK(to_string(NU.at(0, 0)) == "1");
    CHECK(to_string(NU.at(0, 1)) == "0");

    auto cols = saturate_kernel(lv, NU);
    REQUIRE(cols.size() == 1);
    CHECK(to_string(cols[0][0]) == "0");
    CHECK(to_string(cols[0][1]) == "1");

    pinned_dual d = dualize_pinned(M, v);
    CHECK(d.M.n == 1);
    CHECK(d.M.log);
    CHECK(exponent(d.M) == exponent_t{1});

    double_dual_result w = double_dual_witness(M, v);
    REQUIRE(w.Xi.rows == 1);
    CHECK(to_string(w.Xi.at(0, 0)) == "1");
    CHECK(w.M2.n == 1);
}

TEST_CASE("rank three chain of line sums dualizes down and back") {
    level_params lv{2, 1};
    diffmodule M3 = direct_sum(direct_sum(nabla(lv, 0), nabla(lv, 1)), nabla(lv, 2));
    rvector v3 = ones(2, 3);

    pinned_dual d = dualize_pinned(M3, v3);
    CHECK(d.M.n == 1);
    CHECK(exponent(d.M) == exponent_t{1});

    pinned_dual dd = dualize_pinned(d.M, d.v);
    CHECK(dd.M.n == 3);
    CHECK(exponent(dd.M) == exponent_t{0, 1, 2});

    double_dual_result w = double_dual_witness(M3, v3);
    REQUIRE(w.Xi.rows == 3);
    REQUIRE(w.Xi.cols == 3);
    CHECK(w.M1.n == 1);
    CHECK(w.M2.n == 3);
    rmatrix comp = inverse_of(w.Xi) * w.Xi;
    CHECK(comp == ridentity(3, 2));
    CHECK(morphism_ok(M3, w.M2, w.Xi));
    CHECK(matvec(w.Xi, v3) == w.v2);
}

TEST_CASE("exponents obey the complement negate law under pinned duality") {
    level_params lv{2, 1};
    diffmodule S = direct_sum(nabla(lv, 1), nabla(lv, 2));
    pinned_dual d = dualize_pinned(S, ones(2, 2));
    CHECK(d.M.n == 2);
    CHECK(exponent(d.M) == exponent_duality(exponent(S), lv));
}

TEST_CASE("pinned duality needs a rank strictly inside the window") {
    CHECK_THROWS_AS(dualize_pinned(p_module({2, 0}, true), ones(2, 2)),
                    rank_out_of_range);
    level_params lv{2, 1};
    diffmodule big = direct_sum(p_module(lv, true), trivial(lv, 1, true));
    CHECK_THROWS_AS(dualize_pinned(big, ones(2, 5)), rank_out_of_range);
}

TEST_CASE("pinning vector must generate") {
    level_params lv{2, 1};
    diffmodule S = direct_sum(nabla(lv, 0), nabla(lv, 0));
    CHECK_THROWS_AS(dualize_pinned(S, ones(2, 2)), relation_failure);
}

TEST_CASE("operator images are only defined without curvature") {
    rmatrix one(1, 1, 2);
    one.at(0, 0) = rf(2, "1");
    diffmodule W = from_generators({2, 0}, false, {one});
    CHECK_THROWS_AS(nu_of(W, ones(2, 1)), not_dormant);
}
