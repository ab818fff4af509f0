#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "koszul/iwasawa.hpp"
#include "koszul/sampler.hpp"

using namespace koszul;

TEST_CASE("rational arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(Rational(4).str() == "4");
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("p-valuation of group elements") {
    PValuedGroupSpec spec;
    spec.p = 5;
    spec.d = 2;
    SUBCASE("omega(1,0) = 1") { CHECK(p_valuation(spec, {1, 0}, 4) == Rational(1)); }
    SUBCASE("omega(p, p^2) = 2") { CHECK(p_valuation(spec, {5, 25}, 4) == Rational(2)); }
    SUBCASE("identity rejected") {
        CHECK_THROWS_AS(p_valuation(spec, {0, 0}, 4), IdentityElement);
        CHECK_THROWS_AS(p_valuation(spec, {625, 0}, 2), IdentityElement); /* vanishes at precision 2 */
    }
    SUBCASE("omega(g^p) = omega(g) + 1 on sampled elements") {
        Sampler rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<long long> x(2);
            for (auto& c : x) c = (long long)rng.below(2000) - 1000;
            if (x[0] == 0 && x[1] == 0) x[0] = 1;
            /* g^p has coordinates p*x in the abelian group */
            std::vector<long long> px{5 * x[0], 5 * x[1]};
            Rational w = p_valuation(spec, x, 6);
            Rational wp = p_valuation(spec, px, 7);
            CHECK(wp == w + Rational(1));
        }
    }
    SUBCASE("mixed weights use the ordered-basis formula") {
        PValuedGroupSpec m;
        m.p = 3;
        m.d = 2;
        m.weights = {Rational(1), Rational(2)};
        CHECK(p_valuation(m, {1, 1}, 4) == Rational(1));
        CHECK(p_valuation(m, {3, 1}, 4) == Rational(2)); /* min(1+1, 2+0) */
        CHECK(p_valuation(m, {9, 3}, 4) == Rational(3)); /* min(1+2, 2+1) */
    }
    SUBCASE("validation") {
        PValuedGroupSpec bad;
        bad.p = 4;
        CHECK_THROWS_AS(p_valuation(bad, {1}, 2), std::invalid_argument);
        PValuedGroupSpec low;
        low.p = 3;
        low.d = 1;
        low.weights = {Rational(1, 2)}; /* = 1/(p-1): not allowed */
        CHECK_THROWS_AS(p_valuation(low, {1}, 2), std::invalid_argument);
    }
}

TEST_CASE("omega~ on the truncated Iwasawa algebra") {
    PValuedGroupSpec spec;
    spec.p = 3;
    spec.d = 2;
    FilteredIwasawaTruncation T(spec, 4);
    const MonomialAlgebra& A = T.omega_N;

    SUBCASE("frozen examples") {
        /* b1 b2 + b1^3 has valuation 2 */
        Vec v(A.dim(), 0);
        v[A.index_of({1, 1})] = 1;
        v[A.index_of({3, 0})] = 1;
        auto w = omega_tilde(T, v);
        REQUIRE(w);
        CHECK(*w == Rational(2));
        /* the unit has valuation 0, zero has valuation +infinity */
        Vec one(A.dim(), 0);
        one[0] = 1;
        CHECK(*omega_tilde(T, one) == Rational(0));
        CHECK(!omega_tilde(T, Vec(A.dim(), 0)).has_value());
    }
    SUBCASE("filtration laws on sampled pairs") {
        Sampler rng(11);
        FpField f(3);
        for (int trial = 0; trial < 100; ++trial) {
            Vec x(A.dim(), 0), y(A.dim(), 0);
            for (int k = 0; k < 4; ++k) {
                x[rng.below(A.dim())] = int(rng.below(3));
                y[rng.below(A.dim())] = int(rng.below(3));
            }
            auto wx = omega_tilde(T, x), wy = omega_tilde(T, y);
            /* submultiplicative */
            Vec xy = A.mul(x, y, nullptr);
            auto wxy = omega_tilde(T, xy);
            if (wx && wy && wxy) CHECK(!(*wxy < *wx + *wy));
            /* superadditive under addition */
            Vec s = vec_add(x, y, 3);
            auto ws = omega_tilde(T, s);
            if (wx && wy && ws) {
                Rational lo = *wx < *wy ? *wx : *wy;
                CHECK(!(*ws < lo));
            }
        }
    }
}

TEST_CASE("associated graded algebra") {
    SUBCASE("d = 2, N = 3, unit weights: dims 2, 3") {
        PValuedGroupSpec spec;
        spec.p = 5;
        spec.d = 2;
        FilteredIwasawaTruncation T(spec, 3);
        auto gr = gr_algebra(T);
        CHECK(gr.dims.at("1") == 2);
        CHECK(gr.dims.at("2") == 3);
        CHECK(gr.iso_to_symmetric);
    }
    SUBCASE("d = 1 is a truncated polynomial line") {
        PValuedGroupSpec spec;
        spec.p = 3;
        spec.d = 1;
        FilteredIwasawaTruncation T(spec, 5);
        auto gr = gr_algebra(T);
        for (int v = 1; v <= 4; ++v) CHECK(gr.dims.at(std::to_string(v)) == 1);
        CHECK(gr.iso_to_symmetric);
    }
    SUBCASE("mixed weights (1,2), N = 4") {
        PValuedGroupSpec spec;
        spec.p = 3;
        spec.d = 2;
        spec.weights = {Rational(1), Rational(2)};
        FilteredIwasawaTruncation T(spec, 4);
        auto gr = gr_algebra(T);
        CHECK(gr.dims.at("1") == 1);
        CHECK(gr.dims.at("2") == 2);
        CHECK(gr.dims.at("3") == 2);
        CHECK(gr.iso_to_symmetric);
        /* weighted monomial count oracle: #{alpha : sum alpha_i w_i = v, |alpha| < N} */
        for (auto& [vs, dim] : gr.dims) {
            int count = 0;
            for (int a1 = 0; a1 < 4; ++a1)
                for (int a2 = 0; a1 + a2 < 4; ++a2) {
                    if (a1 + a2 == 0) continue;
                    if (std::to_string(a1 + 2 * a2) == vs) ++count;
                }
            CHECK(count == dim);
        }
    }
}

TEST_CASE("betti numbers") {
    SUBCASE("koszul route equals binomials") {
        for (int d : {1, 2, 3}) {
            auto r = betti_numbers(d, 3, d + 1, "koszul");
            CHECK(r.matches_binomial);
            REQUIRE(int(r.dims.size()) == d + 2);
            for (int i = 0; i <= d + 1; ++i) CHECK(r.dims[i] == binomial(d, i));
        }
    }
    SUBCASE("bar route certified window equals binomials") {
        for (int d : {1, 2, 3}) {
            auto r = betti_numbers(d, 3, d + 1, "bar");
            CHECK(r.certified_through == d + 1);
            CHECK(r.matches_binomial);
            for (int i = 0; i <= r.certified_through; ++i) CHECK(r.dims[i] == binomial(d, i));
        }
    }
    SUBCASE("d = 1, p = 3: certified (1,1,0) even though Omega_N has periodic Ext") {
        auto r = betti_numbers(1, 3, 2, "bar");
        REQUIRE(r.certified_through >= 2);
        CHECK(r.dims[0] == 1);
        CHECK(r.dims[1] == 1);
        CHECK(r.dims[2] == 0);
    }
    SUBCASE("route agreement, d = 2") {
        auto a = betti_numbers(2, 3, 3, "bar");
        auto b = betti_numbers(2, 3, 3, "koszul");
        int n = std::min(a.certified_through, b.certified_through);
        for (int i = 0; i <= n; ++i) CHECK(a.dims[i] == b.dims[i]);
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(betti_numbers(0, 3, 2, "bar"), std::invalid_argument);
        CHECK_THROWS_AS(betti_numbers(2, 4, 2, "bar"), std::invalid_argument);
        CHECK_THROWS_AS(betti_numbers(2, 2, 2, "bar"), std::invalid_argument);
        CHECK_THROWS_AS(betti_numbers(2, 3, 2, "minimal"), std::invalid_argument);
    }
}

TEST_CASE("binomial helper") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(3, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(5, -1) == 0);
}
