#pragma once

#include <memory>

#include "koszul/dga.hpp"
#include "koszul/monalg.hpp"

namespace koszul {

struct BadLength : std::runtime_error {
    explicit BadLength(const std::string& msg) : std::runtime_error(msg) {}
};
struct UncertifiedDegree : std::runtime_error {
    explicit UncertifiedDegree(const std::string& msg) : std::runtime_error(msg) {}
};

/* One column entry of an A-linear differential: coeff * mono * generator dst. */
struct AEntry {
    int dst, mono, coeff;
};

struct FreeLevel {
    int rank = 0;
    std::vector<std::string> labels;
    std::vector<int> weights; /* internal degree per generator */
};

/* Complex of free A-modules in non-positive degrees with P^0 ->> k the
 * augmentation; differentials stored per source generator. */
struct Resolution {
    std::shared_ptr<const MonomialAlgebra> A;
    std::map<int, FreeLevel> levels;
    std::map<int, std::vector<std::vector<AEntry>>> d; /* source degree -> per-generator entry lists */
    bool length_truncated = false;
    int certified_ext_degree = 1 << 20; /* h^i of the End DGA trustworthy for |i| <= this */

    int rank(int level) const {
        auto it = levels.find(level);
        return it == levels.end() ? 0 : it->second.rank;
    }
    int min_level() const { return levels.empty() ? 0 : levels.begin()->first; }
};

/* Unnormalized bar resolution P^{-i} = A tensor A^{tensor i}, generators are
 * i-tuples of basis monomials, with the standard bar differential. */
Resolution bar_resolution(const MonomialAlgebra& A, int L);

/* Koszul resolution K^{-i} = S tensor Lambda^i V over the degree-D truncation
 * of S(V); generators are index subsets, internal degree i. */
Resolution koszul_resolution(int d, int p, int D);

/* Minimal resolution of k over F_p[x]/(x^n): rank one in every level with
 * differentials alternating x and x^{n-1}. */
Resolution minimal_power_resolution(int n, int p, int L);

/* Expansion to an F_p cochain complex (basis: generator x monomial). */
CochainComplex resolution_to_fp_complex(const Resolution& R);

/* Hom_A(P^bullet, k): one k-line per generator, in non-negative degrees. */
CochainComplex resolution_k_dual(const Resolution& R);

/* Reduced (normalized) cobar complex of the augmentation ideal: degree-i
 * basis tuples (m_1..m_i) of positive-degree monomials of total weight
 * <= wmax; computes Ext^i_A(k,k) blockwise per weight. */
CochainComplex reduced_cobar_complex(const MonomialAlgebra& A, int imax, int wmax);

/* End DGA over the base algebra: degree-n basis elements (t, src, dst, mono)
 * for the A-linear map P^t -> P^{t+n}, src |-> mono * dst. */
struct EndBasisElt {
    int t, src, dst, mono;
};

class EndResolutionDGA : public DGAlgebra {
public:
    EndResolutionDGA(Resolution R, CompositionOrder order);
    Vec unit() const override;
    Vec multiply(int da, const Vec& a, int db, const Vec& b, bool* capped) const override;
    const Resolution& resolution() const { return R_; }
    const std::vector<EndBasisElt>& basis(int deg) const;
    int index_of(int n, int t, int src, int dst, int mono) const;
    CompositionOrder order() const { return order_; }

private:
    Resolution R_;
    CompositionOrder order_;
    std::map<int, std::vector<EndBasisElt>> basis_;
    std::map<int, std::map<int, int>> t_offset_;
};

EndResolutionDGA module_action_end_dga(const Resolution& R,
                                       CompositionOrder order = CompositionOrder::direct);

} // namespace koszul
