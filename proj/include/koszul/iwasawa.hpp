#pragma once

#include <optional>

#include "koszul/monalg.hpp"
#include "koszul/resolution.hpp"

namespace koszul {

struct IdentityElement : std::runtime_error {
    explicit IdentityElement(const std::string& msg) : std::runtime_error(msg) {}
};

/* Exact rational arithmetic for valuations. */
struct Rational {
    long long num = 0, den = 1;
    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d);
    Rational operator+(const Rational& o) const;
    Rational operator*(long long k) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    std::string str() const;
};

/* Abelian p-valued group of rank d: Z_p^d with basis valuations
 * omega(g_i) > 1/(p-1). */
struct PValuedGroupSpec {
    int p = 3;
    int d = 1;
    std::vector<Rational> weights; /* omega(g_i); defaults to all 1 */
    bool abelian = true;

    Rational weight(int i) const { return weights.empty() ? Rational(1) : weights[i]; }
    void validate() const;
};

/* omega(g) = min_i(omega(g_i) + v(x_i)) for g = g_1^{x_1}...g_d^{x_d}; the
 * coordinates are integer representatives known to `precision` p-adic digits.
 * Throws IdentityElement when every coordinate vanishes at that precision. */
Rational p_valuation(const PValuedGroupSpec& spec, const std::vector<long long>& coords,
                     int precision);

/* Omega_N = F_p[X_1..X_d]/(X_1..X_d)^N with b_i <-> X_i and the induced
 * valuation omega~. */
struct FilteredIwasawaTruncation {
    PValuedGroupSpec spec;
    int N;
    MonomialAlgebra omega_N;

    FilteredIwasawaTruncation(const PValuedGroupSpec& s, int N_)
        : spec(s), N(N_), omega_N(MonomialAlgebra::truncated_polynomial(s.d, s.p, N_)) {
        spec.validate();
    }
    Rational mono_weight(int mono) const;
};

/* min over nonzero coefficients of sum_i alpha_i omega(g_i); nullopt (= +inf)
 * on the zero element. */
std::optional<Rational> omega_tilde(const FilteredIwasawaTruncation& T, const Vec& elt);

struct GrComparison {
    std::map<std::string, int> dims;  /* gr_v dimension per weight (key = v as string) */
    bool iso_to_symmetric = true;     /* structure constants match truncated S(g) */
    std::string failure;
};

/* Associated graded of the omega~ filtration together with the comparison
 * xi^alpha |-> b^alpha against the weighted truncated symmetric algebra. */
GrComparison gr_algebra(const FilteredIwasawaTruncation& T);

struct BettiResult {
    int d = 1, p = 3, i_max = 1;
    std::string route; /* "bar" or "koszul" */
    int truncation = 0;
    std::vector<int> dims; /* certified dim Ext^i for 0 <= i <= certified_through */
    int certified_through = 0;
    bool matches_binomial = true;
};

/* dim Ext^i(k,k): the bar route works over Omega_N via the weight-blocked
 * reduced cobar complex (certified weights < N); the koszul route works over
 * the graded-truncated symmetric algebra. */
BettiResult betti_numbers(int d, int p, int i_max, const std::string& route, int trunc_override = -1);

long long binomial(int n, int k);

} // namespace koszul
