#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "koszul/ext.hpp"
#include "koszul/resolution.hpp"
#include "koszul/transfer.hpp"
#include "test_helpers.hpp"

using namespace koszul;
using namespace koszul::testing;

namespace {

/* the exterior algebra as an honest DGA with zero differential */
TableDGA exterior_dga(int d, int p) {
    auto A = exterior_ainfinity(d, p);
    CochainComplex cx;
    cx.p = p;
    cx.space = A.space;
    TableDGA dga(cx, {0, 0});
    for (auto& [tuple, val] : A.maps.at(2).entries) {
        auto [da, ia] = A.idx.atom(tuple[0]);
        auto [db, ib] = A.idx.atom(tuple[1]);
        dga.set_product(da, ia, db, ib, val.v);
    }
    return dga;
}

Element atom_element(const AInfinity& H, int deg, int k) {
    Element e{deg, Vec(H.space.dim(deg), 0)};
    e.v[k] = 1;
    return e;
}

} // namespace

TEST_CASE("transfer from a zero-differential DGA returns the algebra itself") {
    auto dga = exterior_dga(2, 5);
    auto S = cohomology_splitting(dga.complex(), unit_seeded_options(dga));
    auto tr = transfer_minimal_model(dga, S, 5);
    const AInfinity& H = *tr.H;
    /* H = A (d = 0 means B = C = 0, h = 0) */
    for (auto& [deg, n] : dga.complex().space.dims) CHECK(H.space.dim(deg) == n);
    /* mu_2 = m_2 up to the harmonic relabeling (here H basis = ambient basis) */
    for (auto& [tuple, val] : H.maps.at(2).entries) {
        auto [da, ia] = H.idx.atom(tuple[0]);
        auto [db, ib] = H.idx.atom(tuple[1]);
        Element a{da, S.incl.at(da).column(ia)};
        Element b{db, S.incl.at(db).column(ib)};
        Element want = dga.mul(a, b, nullptr);
        CHECK(S.proj.at(want.deg).apply(want.v) == val.v);
    }
    /* mu_n = 0 for n >= 3 and f_n = 0 for n >= 2 */
    for (int n = 3; n <= 5; ++n) CHECK(H.maps.at(n).entries.empty());
    for (int n = 2; n <= 5; ++n) CHECK(tr.f.f.at(n).entries.empty());
    CHECK(check_stasheff(H, 6).pass);
    CHECK(check_morphism(tr.f, 5).pass);
    CHECK(check_strict_unitality(H).pass);
    CHECK(check_strict_unitality(tr.f).pass);
}

TEST_CASE("lambda_2 is the product") {
    auto R = koszul_resolution(1, 3, 4);
    EndResolutionDGA E(R, CompositionOrder::direct);
    auto S = cohomology_splitting(E.complex(), unit_seeded_options(E));
    Element a{0, Vec(E.complex().space.dim(0), 0)}, b{1, Vec(E.complex().space.dim(1), 0)};
    a.v[0] = 1;
    b.v[0] = 2;
    auto [lam, taint] = transfer_lambda(E, S, {a, b});
    CHECK(!taint);
    CHECK(lam.v == E.mul(a, b, nullptr).v);
}

TEST_CASE("transfer rejects an invalid splitting") {
    auto dga = exterior_dga(1, 3);
    auto S = cohomology_splitting(dga.complex(), unit_seeded_options(dga));
    S.h[1] = FpMatrix::identity(1, 3); /* plant a nonzero homotopy on a d = 0 complex */
    CHECK_THROWS_AS(transfer_minimal_model(dga, S, 3), BadSplitting);
}

TEST_CASE("d = 1 koszul End transfers to the dual numbers, formally") {
    for (int p : {3, 5}) {
        auto R = koszul_resolution(1, p, 11);
        EndResolutionDGA E(R, CompositionOrder::direct);
        auto S = cohomology_splitting(E.complex(), unit_seeded_options(E));
        TransferOptions opts;
        opts.n_max = 6;
        opts.deg_lo = 0;
        opts.weight_hi = 0;
        auto tr = transfer_minimal_model(E, S, opts);
        const AInfinity& H = *tr.H;
        CHECK(H.space.dim(0) == 1);
        CHECK(H.space.dim(1) == 1);
        CHECK(H.idx.size() == 2);
        /* mu_2: unital, epsilon^2 = 0; mu_n = 0 beyond */
        for (int n = 3; n <= 6; ++n) {
            CHECK(H.maps.at(n).entries.empty());
            CHECK(H.maps.at(n).uncertified.empty());
        }
        auto eps2 = H.apply(2, {H.idx.global(1, 0), H.idx.global(1, 0)});
        REQUIRE(eps2);
        CHECK(eps2->is_zero());
        auto rep = check_stasheff(H, 6);
        CHECK(rep.pass);
        CHECK(rep.skipped_uncertified == 0);
        auto repm = check_morphism(tr.f, 5);
        CHECK_MESSAGE(repm.pass, "p=", p, " violations: ", repm.violations.size());
        CHECK(repm.skipped_uncertified == 0);
        CHECK(check_strict_unitality(H).pass);
        CHECK(check_strict_unitality(tr.f).pass);
    }
}

TEST_CASE("x^3 minimal End: mu_3(y,y,y) matches the bracket oracle and is nonzero") {
    auto R = minimal_power_resolution(3, 3, 8);
    EndResolutionDGA E(R, CompositionOrder::direct);
    auto S = cohomology_splitting(E.complex(), unit_seeded_options(E));
    TransferOptions opts;
    opts.n_max = 6;
    opts.deg_lo = 0;
    opts.deg_hi = 6;
    opts.weight_hi = 0;
    auto tr = transfer_minimal_model(E, S, opts);
    const AInfinity& H = *tr.H;
    /* one line in each certified degree */
    for (int j = 0; j <= 6; ++j) CHECK(H.space.dim(j) == 1);

    int y = H.idx.global(1, 0);
    auto mu3 = H.apply(3, {y, y, y});
    REQUIRE(mu3);
    CHECK(!mu3->is_zero());

    /* independent bracket-style oracle by direct matrix arithmetic:
     * p m_2(h m_2(iy,iy), iy) + p m_2(iy, h m_2(iy,iy)) */
    Element iy{1, S.incl.at(1).column(0)};
    bool capped = false;
    Element yy = E.mul(iy, iy, &capped);
    REQUIRE(!capped);
    Element hyy{1, S.homotopy(E.complex(), 2).apply(yy.v)};
    Element t1 = E.mul(hyy, iy, &capped);
    Element t2 = E.mul(iy, hyy, &capped);
    Vec sum = vec_add(t1.v, t2.v, 3);
    Vec oracle = S.proj.at(2).apply(sum);
    /* compare on the kept harmonic line in degree 2 (weight -3 class) */
    REQUIRE(mu3->v.size() == 1);
    bool matched = false;
    for (int k = 0; k < int(oracle.size()); ++k)
        if (oracle[k] != 0) {
            CHECK(oracle[k] == mu3->v[0]);
            matched = true;
        }
    CHECK(matched);

    auto rep = check_stasheff(H, 6);
    CHECK_MESSAGE(rep.pass, "violations: ", rep.violations.size());
    auto repm = check_morphism(tr.f, 5);
    CHECK_MESSAGE(repm.pass, "violations: ", repm.violations.size());
    CHECK(check_strict_unitality(H).pass);
    CHECK(check_strict_unitality(tr.f).pass);

    SUBCASE("opposite is an involution on the transferred structure") {
        auto op = opposite(H);
        CHECK(check_stasheff(op, 5).pass);
        auto opop = opposite(op);
        for (auto& [n, t] : H.maps) {
            REQUIRE(opop.maps.count(n));
            CHECK(opop.maps.at(n).entries.size() == t.entries.size());
            for (auto& [tuple, val] : t.entries) CHECK(opop.maps.at(n).entries.at(tuple).v == val.v);
        }
    }
}

TEST_CASE("mu_2 agrees with the independent cocycle decomposition") {
    auto R = koszul_resolution(2, 3, 6);
    EndResolutionDGA E(R, CompositionOrder::direct);
    auto S = cohomology_splitting(E.complex(), unit_seeded_options(E));
    TransferOptions opts;
    opts.n_max = 2;
    opts.deg_lo = 0;
    opts.weight_hi = 0;
    auto tr = transfer_minimal_model(E, S, opts);
    const AInfinity& H = *tr.H;
    for (int ga = 0; ga < H.idx.size(); ++ga)
        for (int gb = 0; gb < H.idx.size(); ++gb) {
            auto [da, ia] = H.idx.atom(ga);
            auto [db, ib] = H.idx.atom(gb);
            auto mu = H.apply(2, {ga, gb});
            REQUIRE(mu);
            Element x{da, S.incl.at(da).column(ia)};
            Element y{db, S.incl.at(db).column(ib)};
            Element c = cohomology_product_by_decomposition(E, S, x, y);
            /* compare against the kept coordinates */
            Vec want(H.space.dim(mu->deg), 0);
            for (int k = 0; k < int(want.size()); ++k) want[k] = c.v[k];
            CHECK(mu->v == want);
        }
}

TEST_CASE("f_1 induces the identity on cohomology") {
    auto R = koszul_resolution(2, 5, 6);
    EndResolutionDGA E(R, CompositionOrder::direct);
    auto S = cohomology_splitting(E.complex(), unit_seeded_options(E));
    TransferOptions opts;
    opts.n_max = 2;
    opts.deg_lo = 0;
    opts.weight_hi = 0;
    auto tr = transfer_minimal_model(E, S, opts);
    const AInfinity& H = *tr.H;
    for (int g = 0; g < H.idx.size(); ++g) {
        auto [deg, k] = H.idx.atom(g);
        auto fx = tr.f.apply_f(1, {g});
        REQUIRE(fx);
        /* f_1(x) is a cocycle whose class projects back to x */
        CHECK(E.d(*fx).is_zero());
        Vec back = S.proj.at(deg).apply(fx->v);
        Vec expect(S.h_dim(deg), 0);
        /* the kept classes sit first only if nothing was filtered before them;
         * recover the kept-column index instead */
        Element probe{deg, S.incl.at(deg).column(0)};
        (void)probe;
        int nz = 0, at = -1;
        for (int r = 0; r < int(back.size()); ++r)
            if (back[r] != 0) {
                ++nz;
                at = r;
            }
        CHECK(nz == 1);
        CHECK(back[at] == 1);
    }
}

TEST_CASE("restriction along the transfer quasi-isomorphism") {
    /* x^3 is nonformal, so the transfer morphism has f_2 != 0 and the
     * restriction signs are exercised non-vacuously */
    auto R = minimal_power_resolution(3, 3, 5);
    EndResolutionDGA E(R, CompositionOrder::direct);
    auto S = cohomology_splitting(E.complex(), unit_seeded_options(E));
    TransferOptions opts;
    opts.n_max = 4;
    opts.deg_lo = 0;
    opts.deg_hi = 3;
    opts.weight_hi = 0;
    auto tr = transfer_minimal_model(E, S, opts);
    REQUIRE(check_morphism(tr.f, 3).pass);
    bool f2_nonzero = !tr.f.f.at(2).entries.empty();
    CHECK(f2_nonzero);

    auto Btable = dga_to_ainfinity(E);
    auto M = module_from_dga(E, Btable);
    REQUIRE(check_module_stasheff(M, 2).pass);

    /* the restriction consumes f-values inside B = the module's algebra */
    AInfinityMorphism f = tr.f;
    auto MM = restrict_module(f, M, 4);
    auto rep = check_module_stasheff(MM, 4);
    CHECK_MESSAGE(rep.pass, "violations: ", rep.violations.size());
    CHECK(rep.checked > 0);
}

TEST_CASE("ext algebra is associative and unital on all basis triples") {
    auto R = koszul_resolution(2, 3, 4);
    auto ext = ext_algebra(R, 2, 3);
    const AInfinity& H = *ext.H;
    REQUIRE(H.unit);
    /* stasheff n = 3 with mu_1 = 0 is exactly associativity; re-derive it
     * directly on triples as well */
    FpField f(3);
    for (int ga = 0; ga < H.idx.size(); ++ga)
        for (int gb = 0; gb < H.idx.size(); ++gb)
            for (int gc = 0; gc < H.idx.size(); ++gc) {
                auto ab = H.apply(2, {ga, gb});
                auto bc = H.apply(2, {gb, gc});
                REQUIRE(ab);
                REQUIRE(bc);
                auto [dc, ic] = H.idx.atom(gc);
                auto [da, ia] = H.idx.atom(ga);
                Element c_elt{dc, Vec(H.space.dim(dc), 0)};
                c_elt.v[ic] = 1;
                Element a_elt{da, Vec(H.space.dim(da), 0)};
                a_elt.v[ia] = 1;
                auto left = H.apply_elements(2, {*ab, c_elt});
                auto right = H.apply_elements(2, {a_elt, *bc});
                REQUIRE(left);
                REQUIRE(right);
                CHECK(left->v == right->v);
            }
    CHECK(check_strict_unitality(H).pass);
}

TEST_CASE("F_2[x]/(x^2): periodic Ext with nonzero Yoneda square") {
    /* the linear algebra itself works at p = 2 */
    auto R = minimal_power_resolution(2, 2, 7);
    auto ext = ext_algebra(R, 4, 2);
    for (int i = 0; i <= 4; ++i) CHECK(ext.dim(i) == 1);
    auto& H = *ext.H;
    auto y2 = H.apply(2, {H.idx.global(1, 0), H.idx.global(1, 0)});
    REQUIRE(y2);
    CHECK(!y2->is_zero());
    /* independent chain-level composition: decompose i(y) o i(y) */
    Element iy{1, ext.split->incl.at(1).column(0)};
    Element c = cohomology_product_by_decomposition(*ext.endo, *ext.split, iy, iy);
    CHECK(!vec_is_zero(Vec{c.v[0]}));
    CHECK(c.v[0] == y2->v[0]);
}

TEST_CASE("error paths: uncertified degree and arity overflow") {
    /* requesting Ext beyond the certified window of a truncated resolution */
    auto R = minimal_power_resolution(3, 3, 4);
    CHECK_THROWS_AS(ext_algebra(R, 5, 2), UncertifiedDegree);

    /* restriction needing a module operation beyond the stored arity bound */
    auto A = exterior_ainfinity(1, 3);
    AInfinityModule M;
    M.algebra = &A;
    M.p = 3;
    M.mspace.dims = {{0, 1}};
    M.rebuild_index();
    M.n_max = 2; /* nu_3 and beyond undeclared */
    MultiTable nu2;
    nu2.arity = 2;
    M.nu[2] = std::move(nu2);

    AInfinityMorphism f;
    f.source = &A;
    f.target = ops_from_table(A);
    f.n_max = 4;
    MultiTable f1;
    f1.arity = 1;
    for (int g = 0; g < A.idx.size(); ++g) {
        auto [deg, k] = A.idx.atom(g);
        Element e{deg, Vec(A.space.dim(deg), 0)};
        e.v[k] = 1;
        f1.entries[{g}] = std::move(e);
    }
    f.f[1] = std::move(f1);
    CHECK_THROWS_AS(restrict_module(f, M, 4), ArityOverflow);
}

TEST_CASE("minimality: the transferred structure has no m_1") {
    auto R = koszul_resolution(1, 3, 4);
    EndResolutionDGA E(R, CompositionOrder::direct);
    auto S = cohomology_splitting(E.complex(), unit_seeded_options(E));
    TransferOptions opts;
    opts.n_max = 3;
    opts.deg_lo = 0;
    opts.weight_hi = 0;
    auto tr = transfer_minimal_model(E, S, opts);
    CHECK(tr.H->maps.count(1) == 0);
    for (int g = 0; g < tr.H->idx.size(); ++g) {
        auto v = tr.H->apply(1, {g});
        if (v) CHECK(v->is_zero());
    }
    /* degree bookkeeping: every stored entry obeys deg out = sum + 2 - n */
    for (auto& [n, t] : tr.H->maps)
        for (auto& [tuple, val] : t.entries) {
            int s = 0;
            for (int g : tuple) s += tr.H->deg_of(g);
            CHECK(val.deg == s + 2 - n);
        }
}
