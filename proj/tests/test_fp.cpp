#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "koszul/fp.hpp"
#include "koszul/sampler.hpp"

using namespace koszul;

namespace {

FpMatrix make(int rows, int cols, int p, std::initializer_list<int> vals) {
    FpMatrix m(rows, cols, p);
    auto it = vals.begin();
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.set(r, c, *it++);
    return m;
}

/* row space by enumerating all F_p-combinations of the rows */
int brute_rank(const FpMatrix& M) {
    FpField f(M.p());
    std::set<Vec> span;
    std::vector<int> coef(M.rows(), 0);
    while (true) {
        Vec v(M.cols(), 0);
        for (int r = 0; r < M.rows(); ++r)
            for (int c = 0; c < M.cols(); ++c) v[c] = f.add(v[c], f.mul(coef[r], M.at(r, c)));
        span.insert(v);
        int i = int(coef.size()) - 1;
        for (; i >= 0; --i) {
            if (++coef[i] < M.p()) break;
            coef[i] = 0;
        }
        if (i < 0) break;
    }
    int rank = 0;
    std::size_t n = span.size();
    while (n > 1) {
        n /= M.p();
        ++rank;
    }
    return rank;
}

FpMatrix random_matrix(Sampler& rng, int rows, int cols, int p) {
    FpMatrix m(rows, cols, p);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.set(r, c, int(rng.below(p)));
    return m;
}

} // namespace

TEST_CASE("field arithmetic over small primes") {
    for (int p : {2, 3, 5, 7, 13}) {
        FpField f(p);
        for (int a = 1; a < p; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
        CHECK(f.reduce(-1) == p - 1);
        CHECK(f.neg(0) == 0);
    }
    CHECK_THROWS_AS(FpField(4), std::invalid_argument);
    CHECK(is_prime(2));
    CHECK(is_prime(101));
    CHECK(!is_prime(1));
    CHECK(!is_prime(91));
}

TEST_CASE("rref on the frozen examples") {
    SUBCASE("identity stays put") {
        auto rr = rref(FpMatrix::identity(3, 5));
        CHECK(rr.R == FpMatrix::identity(3, 5));
        CHECK(rr.pivots == std::vector<int>{0, 1, 2});
        CHECK(rr.rank == 3);
    }
    SUBCASE("zero matrix") {
        auto rr = rref(FpMatrix(2, 4, 3));
        CHECK(rr.R.is_zero());
        CHECK(rr.pivots.empty());
        CHECK(rr.rank == 0);
    }
    SUBCASE("repeated row over F_2") {
        FpMatrix m = make(2, 2, 2, {1, 1, 1, 1});
        auto rr = rref(m);
        CHECK(rr.R == make(2, 2, 2, {1, 1, 0, 0}));
        CHECK(rr.rank == 1);
        CHECK(brute_rank(m) == 1); /* all 4 row combinations span {00,11} */
    }
}

TEST_CASE("kernel bases") {
    CHECK(kernel_basis(FpMatrix::identity(2, 3)).empty());
    CHECK(kernel_basis(FpMatrix(1, 3, 5)).size() == 3);

    FpMatrix m = make(1, 2, 3, {1, 2});
    auto ker = kernel_basis(m);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0] == Vec{1, 1});
    /* enumeration of F_3^2: only multiples of (1,1) die */
    FpField f(3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            bool dies = f.add(f.mul(1, a), f.mul(2, b)) == 0;
            CHECK(dies == (a == b));
        }
}

TEST_CASE("complement by pivot scan") {
    auto c0 = complement({}, 2, 2);
    REQUIRE(c0.size() == 2);
    CHECK(c0[0] == Vec{1, 0});
    CHECK(c0[1] == Vec{0, 1});

    auto c1 = complement({Vec{1, 0}}, 2, 3);
    REQUIRE(c1.size() == 1);
    CHECK(c1[0] == Vec{0, 1});

    auto c2 = complement({Vec{1, 1}}, 2, 2);
    REQUIRE(c2.size() == 1);
    CHECK(c2[0] == Vec{0, 1});
    /* the union spans F_2^2 */
    CHECK(rank(FpMatrix::from_rows({Vec{1, 1}, c2[0]}, 2, 2)) == 2);

    CHECK_THROWS_AS(complement({Vec{1, 1}, Vec{2, 2}}, 2, 3), DependentInput);
}

TEST_CASE("solve with free variables pinned to zero") {
    FpMatrix id = FpMatrix::identity(3, 7);
    CHECK(*solve(id, Vec{2, 4, 6}) == Vec{2, 4, 6});

    CHECK(!solve(FpMatrix(2, 2, 2), Vec{1, 0}).has_value());

    FpMatrix m = make(2, 2, 3, {1, 1, 0, 0});
    auto x = solve(m, Vec{1, 0});
    REQUIRE(x.has_value());
    CHECK(*x == Vec{1, 0});
    CHECK(m.apply(*x) == Vec{1, 0});
    /* of the enumerated solutions {(1,0),(0,1),(2,2)} ours zeroes the free column */
}

TEST_CASE("randomized structural properties") {
    Sampler rng(0xC0FFEE);
    for (int trial = 0; trial < 60; ++trial) {
        int p = std::vector<int>{2, 3, 5, 7}[rng.below(4)];
        int rows = 1 + int(rng.below(6)), cols = 1 + int(rng.below(6));
        FpMatrix m = random_matrix(rng, rows, cols, p);

        auto rr = rref(m);
        auto ker = kernel_basis(m);
        CHECK(int(ker.size()) == cols - rr.rank);
        for (auto& v : ker) CHECK(vec_is_zero(m.apply(v)));
        for (std::size_t i = 1; i < rr.pivots.size(); ++i) CHECK(rr.pivots[i - 1] < rr.pivots[i]);

        /* image basis really spans the image */
        auto im = image_basis(m);
        CHECK(int(im.size()) == rr.rank);
        if (!im.empty()) CHECK(rank(FpMatrix::from_columns(im, rows, p)) == rr.rank);

        /* complement of an independent family */
        if (!im.empty() && rows > 0) {
            std::vector<Vec> u = im;
            auto comp = complement(u, rows, p);
            CHECK(int(u.size() + comp.size()) == rows);
            std::vector<Vec> all = u;
            all.insert(all.end(), comp.begin(), comp.end());
            CHECK(rank(FpMatrix::from_rows(all, rows, p)) == rows);
        }

        /* solve(M, Mx) hits the same image vector */
        Vec x(cols);
        for (int c = 0; c < cols; ++c) x[c] = int(rng.below(p));
        Vec b = m.apply(x);
        auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        CHECK(m.apply(*sol) == b);

        /* determinism: recomputation is bit-identical */
        CHECK(rref(m).R == rr.R);
        CHECK(kernel_basis(m) == ker);
    }
}

TEST_CASE("inverse and modulus mismatch") {
    FpMatrix m = make(2, 2, 5, {1, 2, 3, 4});
    FpMatrix mi = inverse(m);
    CHECK(m * mi == FpMatrix::identity(2, 5));
    CHECK_THROWS_AS(inverse(make(2, 2, 5, {1, 2, 2, 4})), std::invalid_argument);
    CHECK_THROWS_AS(m * FpMatrix::identity(2, 3), ModulusMismatch);
}
