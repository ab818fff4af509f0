#pragma once

#include "koszul/dga.hpp"

namespace koszul {

/* Morphism complex Hom^n(I,J) = sum_q Hom(I^q, J^{q+n}) inside the finite
 * support windows, with differential d(a)_q = d_J o a_q - (-1)^n a_{q+1} o d_I.
 * Basis elements are single-entry maps (q, src, dst) meaning I^q basis vector
 * src |-> J^{q+n} basis vector dst; ordered by (q, src, dst). */
struct HomBasisElt {
    int q, src, dst;
};

struct HomComplex {
    CochainComplex cx;
    CochainComplex source, target;
    std::map<int, std::vector<HomBasisElt>> basis;
    std::map<int, std::map<std::tuple<int, int, int>, int>> index;

    int index_of(int n, int q, int src, int dst) const {
        auto dit = index.find(n);
        if (dit == index.end()) return -1;
        auto it = dit->second.find({q, src, dst});
        return it == dit->second.end() ? -1 : it->second;
    }
};

HomComplex hom_complex(const CochainComplex& I, const CochainComplex& J);

/* End DGA of a complex.  direct order: (ab)_q = a_{q+j} o b_q (apply b
 * first); opposite order: (ab)_q = (-1)^{ij} b_{q+i} o a_q, the graded
 * opposite.  Both satisfy the Leibniz rule for the morphism-complex
 * differential. */
class EndComplexDGA : public DGAlgebra {
public:
    EndComplexDGA(const CochainComplex& I, CompositionOrder order);
    Vec unit() const override;
    Vec multiply(int da, const Vec& a, int db, const Vec& b, bool* capped) const override;
    const HomComplex& hom() const { return hom_; }
    CompositionOrder order() const { return order_; }

private:
    HomComplex hom_;
    CompositionOrder order_;
    bool window_exact_;
};

EndComplexDGA end_dga(const CochainComplex& I, CompositionOrder order = CompositionOrder::direct);

/* Dual complex P with P^{-i} = (I^i)^v and transposed differentials. */
CochainComplex dual_complex(const CochainComplex& I);

/* The comparison End(I)^op -> End(P): a degree-i element at position q maps
 * to position t = -q-i with matrix transposed and the Koszul normalization
 * (-1)^{i(i+1)/2}.  Returns per-degree matrices in the End bases. */
std::map<int, FpMatrix> dual_end_comparison(const EndComplexDGA& EI_op, const EndComplexDGA& EP);

/* Checks the comparison is a bijective chain map and multiplicative on all
 * basis pairs. */
bool verify_dual_end_isomorphism(const CochainComplex& I, std::string* why = nullptr);

} // namespace koszul
