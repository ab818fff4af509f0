#include "koszul/iwasawa.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace koszul {

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator*(long long k) const { return Rational(num * k, den); }

bool Rational::operator<(const Rational& o) const { return num * o.den < o.num * den; }

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

void PValuedGroupSpec::validate() const {
    if (!is_prime(p) || p == 2) throw std::invalid_argument("p must be an odd prime");
    if (d < 1) throw std::invalid_argument("rank must be at least 1");
    if (!abelian) throw std::invalid_argument("only abelian groups are supported");
    if (!weights.empty() && int(weights.size()) != d)
        throw std::invalid_argument("expected one valuation per basis element");
    Rational bound(1, p - 1);
    for (int i = 0; i < int(weights.size()); ++i)
        if (weights[i] <= bound)
            throw std::invalid_argument("omega(g_" + std::to_string(i + 1) + ") must exceed 1/(p-1)");
}

Rational p_valuation(const PValuedGroupSpec& spec, const std::vector<long long>& coords,
                     int precision) {
    spec.validate();
    if (int(coords.size()) != spec.d) throw std::invalid_argument("coordinate count != rank");
    if (precision < 1) throw std::invalid_argument("precision must be positive");
    long long mod = 1;
    for (int k = 0; k < precision; ++k) mod *= spec.p;
    bool any = false;
    Rational best(0);
    for (int i = 0; i < spec.d; ++i) {
        long long x = coords[i] % mod;
        if (x < 0) x += mod;
        if (x == 0) continue; /* valuation >= precision: cannot beat a definite minimum */
        int v = 0;
        while (x % spec.p == 0) {
            x /= spec.p;
            ++v;
        }
        Rational cand = spec.weight(i) + Rational(v);
        if (!any || cand < best) {
            best = cand;
            any = true;
        }
    }
    if (!any) throw IdentityElement("all coordinates vanish at this precision");
    return best;
}

Rational FilteredIwasawaTruncation::mono_weight(int mono) const {
    const auto& e = omega_N.exponents(mono);
    Rational w(0);
    for (int i = 0; i < spec.d; ++i) w = w + spec.weight(i) * e[i];
    return w;
}

std::optional<Rational> omega_tilde(const FilteredIwasawaTruncation& T, const Vec& elt) {
    std::optional<Rational> best;
    for (int m = 0; m < int(elt.size()); ++m) {
        if (elt[m] == 0) continue;
        Rational w = T.mono_weight(m);
        if (!best || w < *best) best = w;
    }
    return best;
}

GrComparison gr_algebra(const FilteredIwasawaTruncation& T) {
    GrComparison out;
    const MonomialAlgebra& A = T.omega_N;
    /* gr_v dimensions: one line per monomial of weight exactly v */
    std::map<std::string, int> dims;
    std::vector<Rational> wts(A.dim(), Rational(0));
    for (int m = 0; m < A.dim(); ++m) {
        wts[m] = T.mono_weight(m);
        if (A.degree(m) == 0) continue; /* gr is graded over v > 0; unit sits in gr_0 */
        dims[wts[m].str()]++;
    }
    out.dims = std::move(dims);

    /* product comparison: the class of b^alpha times the class of b^beta is
     * the weight-(v+v') part of b^alpha b^beta, which must equal b^{alpha+beta}
     * = the image of xi^{alpha+beta}; certified for |alpha|+|beta| < N */
    for (int a = 0; a < A.dim() && out.iso_to_symmetric; ++a)
        for (int b = 0; b < A.dim(); ++b) {
            if (A.degree(a) + A.degree(b) > A.cap()) continue;
            int prod = A.mono_mul(a, b);
            std::vector<int> expect(A.vars());
            for (int i = 0; i < A.vars(); ++i)
                expect[i] = A.exponents(a)[i] + A.exponents(b)[i];
            if (prod < 0 || A.exponents(prod) != expect || !(wts[prod] == wts[a] + wts[b])) {
                out.iso_to_symmetric = false;
                out.failure = "gr product mismatch at " + A.label(a) + " * " + A.label(b);
                break;
            }
        }
    return out;
}

long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

BettiResult betti_numbers(int d, int p, int i_max, const std::string& route, int trunc_override) {
    if (d < 1) throw std::invalid_argument("rank must be at least 1");
    if (!is_prime(p) || p == 2) throw std::invalid_argument("p must be an odd prime");
    if (i_max < 0) throw std::invalid_argument("i_max must be non-negative");
    BettiResult out;
    out.d = d;
    out.p = p;
    out.i_max = i_max;
    out.route = route;

    std::map<int, int> h;
    if (route == "bar") {
        /* reduced cobar complex of Omega_N; weights < N agree with gr Omega */
        int N = trunc_override > 0 ? trunc_override : i_max + 1;
        out.truncation = N;
        MonomialAlgebra A = MonomialAlgebra::truncated_polynomial(d, p, N);
        CochainComplex C = reduced_cobar_complex(A, i_max + 1, N - 1);
        for (auto& [deg, per_w] : cohomology_dims_by_weight(C))
            for (auto& [w, dim] : per_w) h[deg] += dim;
        out.certified_through = std::min(i_max, N - 1);
    } else if (route == "koszul") {
        int D = trunc_override > 0 ? trunc_override : std::max(d, i_max) + 1;
        out.truncation = D;
        Resolution K = koszul_resolution(d, p, D);
        CochainComplex C = resolution_k_dual(K);
        h = cohomology_dims(C);
        out.certified_through = i_max;
    } else {
        throw std::invalid_argument("unknown resolution route: " + route);
    }

    out.dims.assign(out.certified_through + 1, 0);
    for (int i = 0; i <= out.certified_through; ++i) {
        auto it = h.find(i);
        out.dims[i] = it == h.end() ? 0 : it->second;
    }
    out.matches_binomial = true;
    for (int i = 0; i <= out.certified_through; ++i)
        if (out.dims[i] != binomial(d, i)) out.matches_binomial = false;
    return out;
}

} // namespace koszul
