#pragma once

#include <map>
#include <string>
#include <vector>

#include "koszul/fp.hpp"

namespace koszul {

/* Finite-dimensional commutative monomial quotient algebra: the k-basis is
 * the set of monomials in d variables of total degree <= cap, products beyond
 * the cap are zero.  Covers
 *   - F_p[X_1..X_d]/(X_1,..,X_d)^N            (cap = N-1, exact quotient)
 *   - F_p[x]/(x^n)                            (cap = n-1, exact quotient)
 *   - S(V) truncated at total degree D        (cap = D, stand-in for the
 *     polynomial algebra: overflowing products are a truncation artifact and
 *     are flagged as uncertified by consumers).
 * Monomials are ordered by (total degree, lexicographic exponents). */
class MonomialAlgebra {
public:
    MonomialAlgebra(int d, int p, int cap, bool exact_quotient);

    static MonomialAlgebra truncated_polynomial(int d, int p, int N) {
        return MonomialAlgebra(d, p, N - 1, true);
    }
    static MonomialAlgebra power_of_variable(int n, int p) {
        return MonomialAlgebra(1, p, n - 1, true);
    }
    static MonomialAlgebra graded_symmetric(int d, int p, int D) {
        return MonomialAlgebra(d, p, D, false);
    }

    int p() const { return p_; }
    int vars() const { return d_; }
    int cap() const { return cap_; }
    bool exact_quotient() const { return exact_; }
    int dim() const { return int(monos_.size()); }

    int unit_index() const { return 0; }
    const std::vector<int>& exponents(int idx) const { return monos_[idx]; }
    int degree(int idx) const { return degs_[idx]; }
    int index_of(const std::vector<int>& expo) const; /* -1 beyond cap */
    /* product of basis monomials; -1 when it falls out of the basis */
    int mono_mul(int a, int b) const;
    int augment_mono(int idx) const { return degs_[idx] == 0 ? 1 : 0; }
    std::string label(int idx) const;

    /* element operations on dense coefficient vectors */
    Vec mul(const Vec& x, const Vec& y, bool* capped) const;
    int augment(const Vec& x) const { return x.empty() ? 0 : x[0]; }
    int dim_of_degree(int deg) const;
    std::vector<int> monos_of_degree(int deg) const;

private:
    int d_, p_, cap_;
    bool exact_;
    std::vector<std::vector<int>> monos_;
    std::vector<int> degs_;
    std::map<std::vector<int>, int> index_;
};

} // namespace koszul
