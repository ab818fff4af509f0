#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "koszul/ainf.hpp"
#include "koszul/resolution.hpp"
#include "test_helpers.hpp"

using namespace koszul;
using namespace koszul::testing;

TEST_CASE("stasheff checker accepts DGAs") {
    SUBCASE("exterior algebras up to n = 6") {
        for (int d : {1, 2}) {
            auto A = exterior_ainfinity(d, 5);
            auto rep = check_stasheff(A, 6);
            CHECK(rep.pass);
            CHECK(rep.checked > 0);
            CHECK(rep.skipped_uncertified == 0);
            CHECK(check_strict_unitality(A).pass);
        }
    }
    SUBCASE("end_dga of a complex with nontrivial differential") {
        CochainComplex C;
        C.p = 3;
        C.space.dims = {{-1, 1}, {0, 2}, {1, 1}};
        C.d[-1] = mat(2, 1, 3, {1, 2});
        C.d[0] = mat(1, 2, 3, {1, 1});
        REQUIRE(check_complex(C).pass);
        for (auto order : {CompositionOrder::direct, CompositionOrder::opposite}) {
            auto E = end_dga(C, order);
            auto A = dga_to_ainfinity(E);
            auto rep = check_stasheff(A, 4);
            CHECK_MESSAGE(rep.pass, "order=", int(order), " violations=", rep.violations.size());
            CHECK(check_strict_unitality(A).pass);
        }
    }
    SUBCASE("module-action end of the d=1 koszul resolution") {
        auto R = koszul_resolution(1, 3, 3);
        EndResolutionDGA E(R, CompositionOrder::direct);
        auto A = dga_to_ainfinity(E);
        auto rep = check_stasheff(A, 3);
        CHECK(rep.pass);
        CHECK(rep.checked > 0);
    }
}

TEST_CASE("stasheff checker rejects a planted bad m_4") {
    /* one line in each degree 0..4, m_2 like a polynomial algebra, m_4 planted;
     * the n = 5 identity then reduces to m_2/m_4 cross terms that do not cancel */
    AInfinity A;
    A.p = 3;
    A.n_max = 6;
    for (int i = 0; i <= 4; ++i) A.space.dims[i] = 1;
    A.rebuild_index();
    A.unit = Element{0, Vec(1, 1)};
    MultiTable m2;
    m2.arity = 2;
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; i + j <= 4; ++j)
            m2.entries[{A.idx.global(i, 0), A.idx.global(j, 0)}] = Element{i + j, Vec(1, 1)};
    A.maps[2] = std::move(m2);
    REQUIRE(check_stasheff(A, 4).pass); /* associative, minimal: fine through n = 4 */

    MultiTable m4;
    m4.arity = 4;
    /* degree 2-4 = -2: inputs (1,1,1,1) -> output degree 2 */
    m4.entries[{A.idx.global(1, 0), A.idx.global(1, 0), A.idx.global(1, 0), A.idx.global(1, 0)}] =
        Element{2, Vec(1, 1)};
    A.maps[4] = std::move(m4);
    auto rep = check_stasheff(A, 5);
    CHECK(!rep.pass);
    bool has_n5 = false;
    for (auto& v : rep.violations) has_n5 |= (v.arity == 5);
    CHECK(has_n5);
}

TEST_CASE("strict unitality violations are caught with a witness") {
    auto A = exterior_ainfinity(2, 5);
    MultiTable m3;
    m3.arity = 3;
    /* corrupt: m_3(1 (x) e1 (x) e2) != 0 */
    m3.entries[{A.idx.global(0, 0), A.idx.global(1, 0), A.idx.global(1, 1)}] =
        Element{1, Vec{1, 0}};
    A.maps[3] = std::move(m3);
    auto rep = check_strict_unitality(A);
    CHECK(!rep.pass);
    REQUIRE(!rep.violations.empty());
    CHECK(rep.violations[0].arity == 3);
    /* the stasheff suite also notices: unital corruption breaks n = 3..5 */
    CHECK(!check_stasheff(A, 5).pass);
}

TEST_CASE("identity morphism passes, a non-chain-map fails at n = 1") {
    auto A = exterior_ainfinity(2, 3);
    AInfinityMorphism id;
    id.source = &A;
    id.target = ops_from_table(A);
    id.n_max = 4;
    MultiTable f1;
    f1.arity = 1;
    for (int g = 0; g < A.idx.size(); ++g) {
        auto [deg, k] = A.idx.atom(g);
        Element e{deg, Vec(A.space.dim(deg), 0)};
        e.v[k] = 1;
        f1.entries[{g}] = std::move(e);
    }
    id.f[1] = std::move(f1);
    auto rep = check_morphism(id, 4);
    CHECK(rep.pass);
    CHECK(check_strict_unitality(id).pass);

    /* break multiplicativity: kill the top class while fixing the generators */
    AInfinityMorphism bad = id;
    bad.f[1].entries.erase({A.idx.global(2, 0)});
    auto rep2 = check_morphism(bad, 2);
    CHECK(!rep2.pass);
}

TEST_CASE("non-chain-map fails at n = 1 when the differential is nonzero") {
    CochainComplex C;
    C.p = 3;
    C.space.dims = {{0, 1}, {1, 1}};
    C.d[0] = FpMatrix::identity(1, 3);
    auto E = end_dga(C);
    auto B = dga_to_ainfinity(E);

    AInfinityMorphism f;
    f.source = &B;
    f.target = ops_from_table(B);
    f.n_max = 1;
    MultiTable f1;
    f1.arity = 1;
    for (int g = 0; g < B.idx.size(); ++g) {
        auto [deg, k] = B.idx.atom(g);
        Element e{deg, Vec(B.space.dim(deg), 0)};
        e.v[k] = 1;
        f1.entries[{g}] = std::move(e);
    }
    /* swap the two degree-0 basis vectors: no longer commutes with d */
    Element e0{0, Vec{0, 1}}, e1{0, Vec{1, 0}};
    f1.entries[{B.idx.global(0, 0)}] = e0;
    f1.entries[{B.idx.global(0, 1)}] = e1;
    f.f[1] = std::move(f1);
    auto rep = check_morphism(f, 1);
    CHECK(!rep.pass);
    REQUIRE(!rep.violations.empty());
    CHECK(rep.violations[0].arity == 1);
}

TEST_CASE("opposite structure") {
    SUBCASE("n = 2 signs on odd and even degrees") {
        auto A = exterior_ainfinity(2, 5);
        auto B = opposite(A);
        /* deg-1 generators anticommute in the opposite: m2_op(a,b) = -m2(b,a) */
        int a = A.idx.global(1, 0), b = A.idx.global(1, 1);
        auto lhs = B.apply(2, {a, b});
        auto rhs = A.apply(2, {b, a});
        REQUIRE(lhs);
        REQUIRE(rhs);
        FpField f(5);
        CHECK(lhs->v == vec_scale(rhs->v, f.neg(1), 5));
        /* unit has even degree: m2_op(1,x) = +m2(x,1) */
        auto lu = B.apply(2, {A.idx.global(0, 0), a});
        auto ru = A.apply(2, {a, A.idx.global(0, 0)});
        REQUIRE(lu);
        REQUIRE(ru);
        CHECK(lu->v == ru->v);
    }
    SUBCASE("opposite preserves stasheff and is an involution") {
        auto A = exterior_ainfinity(2, 3);
        auto B = opposite(A);
        CHECK(check_stasheff(B, 5).pass);
        auto C = opposite(B);
        for (auto& [n, t] : A.maps) {
            REQUIRE(C.maps.count(n));
            CHECK(C.maps.at(n).entries.size() == t.entries.size());
            for (auto& [tuple, val] : t.entries) {
                auto it = C.maps.at(n).entries.find(tuple);
                REQUIRE(it != C.maps.at(n).entries.end());
                CHECK(it->second.v == val.v);
            }
        }
    }
}

TEST_CASE("module checkers") {
    SUBCASE("a DGA as a module over itself") {
        CochainComplex C;
        C.p = 3;
        C.space.dims = {{0, 1}, {1, 1}};
        C.d[0] = FpMatrix::identity(1, 3);
        auto E = end_dga(C);
        auto B = dga_to_ainfinity(E);
        auto M = module_from_dga(E, B);
        auto rep = check_module_stasheff(M, 4);
        CHECK(rep.pass);
        CHECK(rep.checked > 0);
        CHECK(check_strict_unitality(M).pass);
    }
    SUBCASE("nu_1 squared nonzero fails at n = 1") {
        auto A = exterior_ainfinity(1, 3);
        AInfinityModule M;
        M.algebra = &A;
        M.p = 3;
        M.mspace.dims = {{0, 1}, {1, 1}, {2, 1}};
        M.rebuild_index();
        M.n_max = 2;
        MultiTable nu1;
        nu1.arity = 1;
        nu1.entries[{M.midx.global(0, 0)}] = Element{1, Vec(1, 1)};
        nu1.entries[{M.midx.global(1, 0)}] = Element{2, Vec(1, 1)};
        M.nu[1] = std::move(nu1);
        auto rep = check_module_stasheff(M, 1);
        CHECK(!rep.pass);
        REQUIRE(!rep.violations.empty());
        CHECK(rep.violations[0].arity == 1);
    }
}

TEST_CASE("restriction along the identity and along a strict morphism") {
    CochainComplex C;
    C.p = 3;
    C.space.dims = {{0, 1}, {1, 1}};
    C.d[0] = FpMatrix::identity(1, 3);
    auto E = end_dga(C);
    auto B = dga_to_ainfinity(E);
    auto M = module_from_dga(E, B);

    AInfinityMorphism id;
    id.source = &B;
    id.target = ops_from_table(B);
    id.n_max = 4;
    MultiTable f1;
    f1.arity = 1;
    for (int g = 0; g < B.idx.size(); ++g) {
        auto [deg, k] = B.idx.atom(g);
        Element e{deg, Vec(B.space.dim(deg), 0)};
        e.v[k] = 1;
        f1.entries[{g}] = std::move(e);
    }
    id.f[1] = std::move(f1);
    REQUIRE(check_morphism(id, 3).pass);

    auto MM = restrict_module(id, M, 4);
    SUBCASE("f = Id gives back M entrywise") {
        for (int n = 1; n <= 3; ++n) {
            REQUIRE(MM.nu.count(n));
            auto& got = MM.nu.at(n).entries;
            auto& want = M.nu.count(n) ? M.nu.at(n).entries : got;
            if (M.nu.count(n)) {
                CHECK(got.size() == want.size());
                for (auto& [tuple, val] : want) {
                    auto it = got.find(tuple);
                    REQUIRE(it != got.end());
                    CHECK(it->second.v == val.v);
                }
            } else {
                CHECK(got.empty());
            }
        }
    }
    SUBCASE("restricted module passes the module identities") {
        CHECK(check_module_stasheff(MM, 4).pass);
    }
}
