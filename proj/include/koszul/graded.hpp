#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "koszul/fp.hpp"

namespace koszul {

struct MalformedComplex : std::runtime_error {
    explicit MalformedComplex(const std::string& msg) : std::runtime_error(msg) {}
};

/* Z-graded vector space with finite support.  Basis labels and internal
 * (weight) degrees are optional metadata; when weights are present every map
 * between graded pieces is expected to be weight-homogeneous. */
struct GradedSpace {
    std::map<int, int> dims;
    std::map<int, std::vector<std::string>> labels;
    std::map<int, std::vector<int>> weights;

    int dim(int deg) const {
        auto it = dims.find(deg);
        return it == dims.end() ? 0 : it->second;
    }
    int min_deg() const { return dims.empty() ? 0 : dims.begin()->first; }
    int max_deg() const { return dims.empty() ? 0 : dims.rbegin()->first; }
    int total_dim() const {
        int t = 0;
        for (auto& [d, n] : dims) t += n;
        return t;
    }
    bool has_weights() const { return !weights.empty(); }
    std::string label(int deg, int idx) const;
    int weight(int deg, int idx) const; /* requires weights present */
};

/* Cochain complex: degree +1 differentials d[i] : A^i -> A^{i+1}, stored as
 * dim(i+1) x dim(i) matrices.  Degrees outside the support window are zero.
 * [cert_lo, cert_hi] is the degree range on which the complex is known to
 * agree with the untruncated object it stands in for (the full window for a
 * genuinely finite complex). */
struct CochainComplex {
    int p = 3;
    GradedSpace space;
    std::map<int, FpMatrix> d;
    int cert_lo = std::numeric_limits<int>::min() / 2;
    int cert_hi = std::numeric_limits<int>::max() / 2;

    const FpMatrix& diff(int i) const; /* zero matrix of the right shape if absent */
    FpMatrix zero_diff(int i) const { return FpMatrix(space.dim(i + 1), space.dim(i), p); }
    void set_certified(int lo, int hi) { cert_lo = lo; cert_hi = hi; }
    bool certified(int deg) const { return deg >= cert_lo && deg <= cert_hi; }
};

struct ComplexCheckReport {
    bool pass = true;
    int first_failure_degree = 0;
    std::string message;
};

/* d^{i+1} o d^i = 0 for every i in the support window. */
ComplexCheckReport check_complex(const CochainComplex& C);

/* Per-degree splitting A^i = B^i + H^i + C^i with Z^i = B^i + H^i, the
 * inclusion/projection pair for H, and the homotopy h (zero on H + C, the
 * inverse of d : C^{i-1} -> B^i on B^i).  All families are stored as
 * column-matrices over the ambient basis. */
struct CohomologySplitting {
    int p = 3;
    std::map<int, FpMatrix> B, H, C; /* columns = chosen basis vectors */
    std::map<int, FpMatrix> incl;    /* dim(i) x dimH(i) */
    std::map<int, FpMatrix> proj;    /* dimH(i) x dim(i) */
    std::map<int, FpMatrix> h;       /* dim(i-1) x dim(i), keyed by i */

    int h_dim(int deg) const {
        auto it = H.find(deg);
        return it == H.end() ? 0 : it->second.cols();
    }
    const FpMatrix& inclusion(int deg) const;
    const FpMatrix& projection(int deg) const;
    /* homotopy out of degree i (a dim(i-1) x dim(i) matrix; zero if absent) */
    FpMatrix homotopy(const CochainComplex& C, int i) const;
};

struct SplittingOptions {
    /* candidate vectors to try first when choosing the harmonic complement
     * H^deg (k-dim ambient coordinates); used to seat the unit of an End DGA
     * as an actual basis vector of H^0 */
    std::map<int, std::vector<Vec>> preferred_h;
    /* split blockwise per internal weight when the complex carries weights */
    bool blockwise = true;
    int threads = 1;
};

/* The splitting from the chosen-complement recipe; deterministic for a fixed
 * input.  Throws MalformedComplex when d o d != 0. */
CohomologySplitting cohomology_splitting(const CochainComplex& C, const SplittingOptions& opts = {});

/* All seven defining identities, as exact matrix equations. */
bool verify_splitting(const CochainComplex& C, const CohomologySplitting& S, std::string* why = nullptr);

/* dim H^i for every degree in the support window. */
std::map<int, int> cohomology_dims(const CochainComplex& C);

/* dim H^{i,w} per internal weight (requires weight metadata; the differential
 * must be weight-homogeneous). */
std::map<int, std::map<int, int>> cohomology_dims_by_weight(const CochainComplex& C);

} // namespace koszul
