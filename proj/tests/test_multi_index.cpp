#include <doctest.h>

#include "entire/multi_index.hpp"

using namespace entire;

TEST_CASE("graded lex order puts lower order first, then larger leading exponents")
{
    const MonomialBasis b(2, 2);
    REQUIRE(b.size() == 6);
    CHECK(b[0] == MultiIndex{0, 0});
    CHECK(b[1] == MultiIndex{1, 0});
    CHECK(b[2] == MultiIndex{0, 1});
    CHECK(b[3] == MultiIndex{2, 0});
    CHECK(b[4] == MultiIndex{1, 1});
    CHECK(b[5] == MultiIndex{0, 2});
    CHECK(MultiIndex{2, 0} < MultiIndex{1, 1});
    CHECK(MultiIndex{0, 1} < MultiIndex{2, 0});
}

TEST_CASE("closed-form rank agrees with enumeration")
{
    for (std::size_t d = 1; d <= 4; ++d) {
        for (int n = 0; n <= 7; ++n) {
            const MonomialBasis b(d, n);
            CHECK(b.size() == monomial_count(d, n));
            for (std::size_t i = 0; i < b.size(); ++i) {
                CHECK(b.index_of(b[i]) == i);
                if (i > 0) {
                    CHECK(b[i - 1] < b[i]);
                }
            }
        }
    }
}

TEST_CASE("index past the cutoff is rejected")
{
    const MonomialBasis b(2, 3);
    CHECK_THROWS_AS(b.index_of(MultiIndex{2, 2}), Error);
    CHECK_THROWS_AS(MultiIndex({1, -1}), Error);
}

TEST_CASE("factorials and binomials")
{
    CHECK(MultiIndex{3, 2}.factorial() == 12.0);
    CHECK(binomial(6, 2) == 15.0);
    CHECK(binomial(3, 5) == 0.0);
    CHECK(falling_factorial(MultiIndex{4, 2}, MultiIndex{2, 1}) == 24.0);
    CHECK(multi_binomial(MultiIndex{4, 2}, MultiIndex{2, 1}) == 12.0);
    CHECK_THROWS_AS(MultiIndex({1, 0}) - MultiIndex({0, 1}), Error);
}
