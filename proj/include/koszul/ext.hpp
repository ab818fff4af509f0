#pragma once

#include "koszul/resolution.hpp"
#include "koszul/transfer.hpp"

namespace koszul {

/* Ext algebra of the trivial module, realized as the transferred minimal
 * model of the End DGA of a resolution; mu_2 is the Yoneda product. */
struct ExtResult {
    std::shared_ptr<EndResolutionDGA> endo;
    std::shared_ptr<CohomologySplitting> split;
    std::shared_ptr<AInfinity> H;
    AInfinityMorphism f;
    int i_max = 0;

    int dim(int i) const { return H->space.dim(i); }
    /* structure constants of the product on cohomology */
    std::optional<Element> product(int deg_a, int ia, int deg_b, int ib) const;
};

/* Throws UncertifiedDegree when i_max exceeds the resolution's certified
 * window.  n_max controls how many higher operations are transferred. */
ExtResult ext_algebra(const Resolution& R, int i_max, int n_max = 2, int threads = 1);

/* Independent route to the product: decompose the cocycle product
 * m_2(i(x), i(y)) as i(c) + d(w) by solving the linear system [incl | d];
 * returns c.  Used to cross-check mu_2. */
Element cohomology_product_by_decomposition(const DGAlgebra& A, const CohomologySplitting& S,
                                            const Element& x, const Element& y);

} // namespace koszul
