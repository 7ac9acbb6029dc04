#include <catch2/catch_amalgamated.hpp>

#include "dormant/brackets.hpp"

using namespace dormant;

TEST_CASE("table fingerprints on the six-point grid") {
    CHECK(tables({2, 0}).fingerprint16() == "4a5271a59dcc2ed9");
    CHECK(tables({3, 0}).fingerprint16() == "0087b011bfed600e");
    CHECK(tables({5, 0}).fingerprint16() == "51c37d4b8d3a015f");
    CHECK(tables({2, 1}).fingerprint16() == "128fb0e58c70f3f4");
    CHECK(tables({3, 1}).fingerprint16() == "92673d08e9258f5a");
    CHECK(tables({2, 2}).fingerprint16() == "fa8370ccafc03845");
}

TEST_CASE("index decomposition") {
    level_params lv{2, 1};
    CHECK(qr_decompose(0, lv) == std::pair<unsigned long, unsigned long>{0, 0});
    CHECK(qr_decompose(1, lv) == std::pair<unsigned long, unsigned long>{0, 1});
    CHECK(qr_decompose(5, lv) == std::pair<unsigned long, unsigned long>{2, 1});
    CHECK(qr_decompose(8, lv) == std::pair<unsigned long, unsigned long>{4, 0});
    level_params l30{3, 0};
    CHECK(qr_decompose(7, l30) == std::pair<unsigned long, unsigned long>{7, 0});
}

TEST_CASE("bracket rows at p=2, m=1") {
    const bracket_table& T = tables({2, 1});
    std::vector<std::vector<fp>> brace_rows = {
        {1},
        {1, 1},
        {1, 1, 1},
        {1, 1, 1, 1},
        {1, 0, 0, 0, 1},
        {1, 1, 0, 0, 1, 1},
        {1, 1, 1, 0, 1, 1, 1},
        {1, 1, 1, 1, 1, 1, 1, 1},
        {1, 0, 0, 0, 0, 0, 0, 0, 1},
    };
    std::vector<std::vector<fp>> angle_rows = {
        {1},
        {1, 1},
        {1, 0, 1},
        {1, 1, 1, 1},
        {1, 0, 1, 0, 1},
        {1, 1, 1, 1, 1, 1},
        {1, 0, 1, 0, 1, 0, 1},
        {1, 1, 1, 1, 1, 1, 1, 1},
        {1, 0, 1, 0, 1, 0, 1, 0, 1},
    };
    for (unsigned long j = 0; j <= 8; ++j)
        for (unsigned long jp = 0; jp <= j; ++jp) {
            INFO("j=" << j << " jp=" << jp);
            CHECK(T.brace(j, jp) == brace_rows[j][jp]);
            CHECK(T.angle(j, jp) == angle_rows[j][jp]);
        }
}

TEST_CASE("fractional reductions that stay p-integral") {
    // 10/3 at p=2: reduced denominator 3 is odd, value 10 * 3^{-1} = 0 mod 2
    CHECK(tables({2, 1}).angle(6, 3) == 0);
    // 35/2 at p=3: reduced denominator 2 is prime to 3, value 35 * 2^{-1} = 1 mod 3
    CHECK(tables({3, 1}).angle(7, 3) == 1);
}

TEST_CASE("derivation coefficients") {
    const bracket_table& t20 = tables({2, 0});
    // dcoef(n, j) = q_j! * binom(n, j)
    CHECK(t20.dcoef(3, 1) == 1);
    CHECK(t20.dcoef(2, 1) == 0);
    CHECK(t20.dcoef(-1, 1) == 1);
    CHECK(t20.dcoef(-1, 2) == 0);  // 2-factorial kills the top index
    const bracket_table& t21 = tables({2, 1});
    CHECK(t21.dcoef(2, 2) == 1);
    CHECK(t21.dcoef(3, 2) == 1);
    CHECK(t21.dcoef(-1, 4) == 0);
    const bracket_table& t30 = tables({3, 0});
    CHECK(t30.dcoef(4, 1) == 1);
    CHECK(t30.dcoef(-2, 1) == 1);  // -2 = 1 mod 3
}

TEST_CASE("angle-top spot values at p=2, m=1") {
    const bracket_table& T = tables({2, 1});
    CHECK(T.atop(1, 1, 1) == 1);
    CHECK(T.atop(2, 1, 1) == 1);
    CHECK(T.atop(2, 1, 2) == 0);
    CHECK(T.atop(2, 2, 2) == 1);
    CHECK(T.atop(3, 1, 2) == 0);
    CHECK(T.atop(3, 1, 3) == 1);
    CHECK(T.atop(3, 2, 2) == 0);
    CHECK(T.atop(3, 2, 3) == 1);
    CHECK(T.atop(4, 2, 2) == 1);
    CHECK(T.atop(4, 2, 3) == 0);
    CHECK(T.atop(4, 2, 4) == 1);
    CHECK(T.atop(4, 4, 4) == 1);
    const bracket_table& T3 = tables({3, 1});
    CHECK(T3.atop(3, 3, 3) == 1);
    CHECK(T3.atop(4, 3, 3) == 0);
    CHECK(T3.atop(4, 3, 4) == 1);
    CHECK(T3.atop(9, 9, 9) == 1);
}

TEST_CASE("canonical text begins with the header line") {
    std::string text = tables({2, 0}).canonical_text();
    CHECK(text.rfind("p 2 m 0\n", 0) == 0);
    CHECK(text.find("\nB 0 0 1\n") != std::string::npos);
}
