#include <random>

#include "doctest.h"
#include "qpd/matrix.hpp"

using namespace qpd;

namespace {

RatMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rat_of(num(rng), den(rng));
    return m;
}

}  // namespace

TEST_CASE("rref: identity and zero") {
    auto id = rref(RatMatrix::identity(3));
    CHECK(id.rank == 3);
    CHECK(id.pivots == std::vector<std::size_t>{0, 1, 2});
    auto z = rref(RatMatrix::zero(2, 5));
    CHECK(z.rank == 0);
    CHECK(z.pivots.empty());
}

TEST_CASE("rref: rank-1 hand elimination") {
    RatMatrix m = RatMatrix::from_rows({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}});
    auto r = rref(m);
    CHECK(r.rank == 1);
    CHECK(r.R == RatMatrix::from_rows({{Rat(1), Rat(2)}, {Rat(0), Rat(0)}}));
}

TEST_CASE("kernel_basis basics") {
    CHECK(kernel_basis(RatMatrix::identity(2)).cols() == 0);
    CHECK(kernel_basis(RatMatrix::zero(1, 3)).cols() == 3);
    RatMatrix m = RatMatrix::from_rows({{Rat(1), Rat(2)}});
    RatMatrix k = kernel_basis(m);
    REQUIRE(k.cols() == 1);
    CHECK(k.at(0, 0) == Rat(-2));
    CHECK(k.at(1, 0) == Rat(1));
}

TEST_CASE("solve: consistency and absence") {
    auto s1 = solve(RatMatrix::identity(2), {Rat(3), Rat(5)});
    REQUIRE(s1.has_value());
    CHECK(*s1 == RatVec{Rat(3), Rat(5)});

    RatMatrix m = RatMatrix::from_rows({{Rat(1), Rat(1)}});
    auto s2 = solve(m, {Rat(2)});
    REQUIRE(s2.has_value());
    CHECK(m.mul_vec(*s2) == RatVec{Rat(2)});

    RatMatrix m3 = RatMatrix::from_rows({{Rat(1)}, {Rat(0)}});
    CHECK(!solve(m3, {Rat(0), Rat(1)}).has_value());
    CHECK_THROWS_AS((void)solve(m3, {Rat(0)}), input_error);
}

TEST_CASE("rref idempotence and row/column rank agree on random matrices") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 8);
        RatMatrix m = random_matrix(rng, dim(rng), dim(rng));
        auto r = rref(m);
        CHECK(rref(r.R).R == r.R);
        CHECK(r.rank == rank(m.transpose()));
        // kernel columns really lie in the kernel and are independent
        RatMatrix k = kernel_basis(m);
        CHECK((m * k).is_zero());
        CHECK(rank(k) == k.cols());
        CHECK(k.cols() == m.cols() - r.rank);
        // solving reproduces the right-hand side when a solution is returned
        RatVec b = random_matrix(rng, m.rows(), 1).col(0);
        if (auto x = solve(m, b)) CHECK(m.mul_vec(*x) == b);
    }
}

TEST_CASE("square_class and prime_support") {
    CHECK(square_class(rat_of(8)) == 2);
    CHECK(square_class(rat_of(-18)) == -2);
    CHECK(square_class(rat_of(1, 4)) == 1);
    CHECK(square_class(rat_of(2, 3)) == 6);
    auto ps = prime_support(Int(360));
    CHECK(ps == std::vector<Int>{2, 3, 5});
}

TEST_CASE("canonical_column_space independent of spanning order") {
    RatMatrix a = RatMatrix::from_rows({{Rat(1), Rat(2)}, {Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    RatMatrix b = a.cols_subset({1, 0});
    CHECK(canonical_column_space(a) == canonical_column_space(b));
}
