#pragma once

#include <memory>

#include "koszul/ainf.hpp"

namespace koszul {

struct BadSplitting : std::runtime_error {
    explicit BadSplitting(const std::string& msg) : std::runtime_error(msg) {}
};

/* Certificate for a homotopy transfer: the DGA together with its chosen
 * splitting; the tree maps lambda_n are derived from these two. */
struct TransferData {
    const DGAlgebra* dga = nullptr;
    CohomologySplitting split;
};

struct TransferOptions {
    int n_max = 2;
    /* keep only harmonic classes inside these windows; length-truncated End
     * DGAs carry junk cohomology outside the genuine weight range, which
     * would otherwise flood the minimal model */
    int deg_lo = std::numeric_limits<int>::min() / 2;
    int deg_hi = std::numeric_limits<int>::max() / 2;
    int weight_lo = std::numeric_limits<int>::min() / 2;
    int weight_hi = std::numeric_limits<int>::max() / 2;
};

struct TransferResult {
    std::shared_ptr<AInfinity> H; /* minimal model, mu_1 = 0 */
    AInfinityMorphism f;          /* quasi-isomorphism H -> A, f_1 = i */
    TransferData data;
    /* mu/f values with a component on a dropped harmonic class are recorded
     * as uncertified; this counts them */
    long dropped_component_tuples = 0;
};

/* Merkulov-style tree recursion:
 *   lambda_2 = m_2,
 *   lambda_n = sum_{s=1}^{n-1} (-1)^{s+1} m_2((h lambda_s) (x) (h lambda_{n-s})),
 * with h lambda_1 = -Id and the Koszul sign convention for applying tensor
 * products of operators to homogeneous inputs.  Returns the value and a taint
 * flag signalling that a truncation boundary was touched. */
std::pair<Element, bool> transfer_lambda(const DGAlgebra& A, const CohomologySplitting& S,
                                         const std::vector<Element>& inputs);

/* Minimal model mu_n = p o lambda_n o i^{(x)n} and quasi-isomorphism
 * f_1 = i, f_n = h o lambda_n o i^{(x)n} for 2 <= n <= n_max.  Throws
 * BadSplitting when the splitting fails verification. */
TransferResult transfer_minimal_model(const DGAlgebra& A, const CohomologySplitting& S,
                                      const TransferOptions& opts);
inline TransferResult transfer_minimal_model(const DGAlgebra& A, const CohomologySplitting& S,
                                             int n_max) {
    TransferOptions o;
    o.n_max = n_max;
    return transfer_minimal_model(A, S, o);
}

/* Splitting options that seat the DGA unit as a harmonic basis vector. */
SplittingOptions unit_seeded_options(const DGAlgebra& A, int threads = 1);

} // namespace koszul
