#include "koszul/ext.hpp"

#include <cassert>

namespace koszul {

std::optional<Element> ExtResult::product(int deg_a, int ia, int deg_b, int ib) const {
    std::vector<int> tuple{H->idx.global(deg_a, ia), H->idx.global(deg_b, ib)};
    return H->apply(2, tuple);
}

ExtResult ext_algebra(const Resolution& R, int i_max, int n_max, int threads) {
    if (R.length_truncated && i_max > R.certified_ext_degree)
        throw UncertifiedDegree("Ext requested through degree " + std::to_string(i_max) +
                                " but the resolution certifies only " +
                                std::to_string(R.certified_ext_degree));
    ExtResult out;
    out.i_max = i_max;
    out.endo = std::make_shared<EndResolutionDGA>(R, CompositionOrder::direct);
    out.split = std::make_shared<CohomologySplitting>(
        cohomology_splitting(out.endo->complex(), unit_seeded_options(*out.endo, threads)));
    TransferOptions opts;
    opts.n_max = std::max(2, n_max);
    opts.deg_lo = 0;
    /* genuine Ext classes sit at non-positive internal weight; the positive
     * weights of a degree-capped algebra are truncation junk */
    opts.weight_hi = 0;
    if (R.length_truncated) opts.deg_hi = R.certified_ext_degree;
    TransferResult tr = transfer_minimal_model(*out.endo, *out.split, opts);
    out.H = tr.H;
    out.f = std::move(tr.f);
    out.f.source = out.H.get();
    return out;
}

Element cohomology_product_by_decomposition(const DGAlgebra& A, const CohomologySplitting& S,
                                            const Element& x, const Element& y) {
    bool capped = false;
    Element z = A.mul(x, y, &capped);
    assert(!capped);
    /* z is a cocycle; solve [incl | d_prev] (c; w) = z */
    const CochainComplex& cx = A.complex();
    FpMatrix incl = S.incl.count(z.deg) ? S.incl.at(z.deg)
                                        : FpMatrix(cx.space.dim(z.deg), 0, A.p());
    FpMatrix dprev = cx.d.count(z.deg - 1) ? cx.diff(z.deg - 1)
                                           : FpMatrix(cx.space.dim(z.deg), cx.space.dim(z.deg - 1), A.p());
    FpMatrix sys = incl.augment(dprev);
    auto sol = solve(sys, z.v);
    assert(sol.has_value());
    Vec c(incl.cols());
    for (int i = 0; i < incl.cols(); ++i) c[i] = (*sol)[i];
    return Element{z.deg, c};
}

} // namespace koszul
