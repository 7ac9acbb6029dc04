#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <string>
#include <vector>

#include "dormant/cyclic.hpp"
#include "dormant/exponents.hpp"

using namespace dormant;

namespace {

ratfunc rf(fp p, const std::string& s) { return parse_ratfunc(p, s); }

rmatrix mat1(fp p, const std::string& s) {
    rmatrix m(1, 1, p);
    m.at(0, 0) = rf(p, s);
    return m;
}

}  // namespace

TEST_CASE("log divided power module carries every residue once") {
    for (level_params lv : {level_params{2, 0}, level_params{3, 0},
                            level_params{2, 1}, level_params{3, 1}}) {
        INFO("p=" << static_cast<unsigned>(lv.p) << " m=" << lv.m);
        exponent_t e = exponent(p_module(lv, true));
        exponent_t full(lv.q());
        std::iota(full.begin(), full.end(), 0);
        CHECK(e == full);
        CHECK(is_cyclic_by_exponent(p_module(lv, true)));
    }
}

TEST_CASE("frozen residue lengths of the log divided power module") {
    diffmodule P21 = p_module({2, 1}, true);
    CHECK(residue_length(P21) == 6);
    CHECK(residue_graded_lengths(P21) == std::vector<unsigned long>{2, 4});

    diffmodule P31 = p_module({3, 1}, true);
    CHECK(residue_length(P31) == 36);
    CHECK(residue_graded_lengths(P31) == std::vector<unsigned long>{9, 27});
}

TEST_CASE("twist by t shifts the rank one class to its maximum") {
    for (level_params lv : {level_params{2, 0}, level_params{3, 0},
                            level_params{5, 0}, level_params{2, 1},
                            level_params{3, 1}, level_params{2, 2}}) {
        INFO("p=" << static_cast<unsigned>(lv.p) << " m=" << lv.m);
        rmatrix g(1, 1, lv.p);
        g.at(0, 0) = rf(lv.p, "t");
        CHECK(classify_rank1(gauge(nabla(lv, 0), g)) == lv.q() - 1);
    }
}

TEST_CASE("rank one residues read off the index") {
    for (level_params lv : {level_params{2, 1}, level_params{3, 0}}) {
        for (unsigned long a = 0; a < lv.q(); ++a) {
            INFO("p=" << static_cast<unsigned>(lv.p) << " m=" << lv.m << " a=" << a);
            CHECK(exponent(nabla(lv, a)) == exponent_t{a});
            CHECK(residue_length(nabla(lv, a)) == a);
        }
    }
}

TEST_CASE("repeated residues block cyclicity") {
    level_params lv{2, 1};
    CHECK_FALSE(is_cyclic_by_exponent(trivial(lv, 2, true)));
    CHECK(is_cyclic_by_exponent(direct_sum(nabla(lv, 0), nabla(lv, 1))));
    CHECK_FALSE(is_cyclic_by_exponent(direct_sum(nabla(lv, 3), nabla(lv, 3))));
}

TEST_CASE("zero residue recognizes modules induced from plain ones") {
    level_params lv{2, 1};
    CHECK(has_nonlog_origin(eta(trivial(lv, 2))));
    CHECK(has_nonlog_origin(nabla(lv, 0)));
    CHECK_FALSE(has_nonlog_origin(nabla(lv, 1)));
    CHECK(has_nonlog_origin(eta(p_module({3, 0}, false))));
}

TEST_CASE("tensor with a rank one module shifts the whole multiset") {
    level_params lv{2, 1};
    diffmodule S = direct_sum(nabla(lv, 0), nabla(lv, 1));
    CHECK(exponent(tensor(nabla(lv, 2), S)) == exponent_t{2, 3});
    CHECK(exponent(tensor(nabla(lv, 3), S)) == exponent_t{0, 3});
}

TEST_CASE("exponent is stable under gauges invertible at the origin") {
    level_params lv{2, 1};
    diffmodule P = p_module(lv, true);
    rmatrix g = ridentity(4, 2);
    g.at(0, 1) = rf(2, "t");
    g.at(1, 2) = rf(2, "t^2");
    g.at(0, 3) = rf(2, "1");
    CHECK(exponent(gauge(P, g)) == exponent(P));
}

TEST_CASE("frozen duality, radius, and pullback values") {
    CHECK(exponent_duality({0, 1}, {3, 0}) == exponent_t{1});
    CHECK(radius_from_exponent_pair({0, 1}, 5, 1) == 2);
    CHECK(radius_from_exponent_pair({0, 3}, 5, 1) == 1);
    CHECK(exponent_pullback({0, 1}, 3, 5, 1) == exponent_t{0, 3});
}

TEST_CASE("duality complements and negates") {
    // delta = {0, 2} in q = 4: complement {1, 3}, negated {3, 1}
    CHECK(exponent_duality({0, 2}, {2, 1}) == exponent_t{1, 3});
    // full multiset dualizes to nothing
    exponent_t full = {0, 1, 2};
    CHECK(exponent_duality(full, {3, 0}).empty());
}

TEST_CASE("pullback scales residues modulo the ramification modulus") {
    CHECK(exponent_pullback({0, 1, 2}, 2, 3, 1) == exponent_t{0, 1, 2});
    CHECK(exponent_pullback({1, 2}, 5, 5, 2) == exponent_t{5, 10});
    CHECK(exponent_pullback({0}, 7, 3, 2) == exponent_t{0});
}

TEST_CASE("poles at the origin are rejected") {
    diffmodule M = from_generators({2, 0}, true, {mat1(2, "1/t")});
    CHECK(M.validate_report().empty());
    CHECK_FALSE(M.regular_at_zero());
    CHECK_THROWS_AS(exponent(M), not_regular_at_zero);
}

TEST_CASE("nilpotent fibers are rejected") {
    rmatrix g(2, 2, 2);
    g.at(0, 1) = rf(2, "1");
    g.at(1, 0) = rf(2, "t");
    diffmodule M = from_generators({2, 0}, true, {g});
    CHECK(M.validate_report().empty());
    CHECK_THROWS_AS(exponent(M), not_diagonalizable);
}

TEST_CASE("radius is undefined in even characteristic") {
    CHECK_THROWS_AS(radius_from_exponent_pair({0, 1}, 2, 1), even_characteristic);
}
