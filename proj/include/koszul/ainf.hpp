#pragma once

#include <functional>
#include <optional>
#include <set>

#include "koszul/dga.hpp"

namespace koszul {

struct ArityOverflow : std::runtime_error {
    explicit ArityOverflow(const std::string& msg) : std::runtime_error(msg) {}
};

/* odometer step over tuples with entries in [0, base); returns false after
 * the last tuple */
bool next_tuple_step(std::vector<int>& t, int base);

/* Global indexing of the basis atoms of a graded space, ordered by
 * (degree, index). */
struct BasisIndexing {
    std::vector<std::pair<int, int>> atoms;
    std::map<int, int> offsets;

    BasisIndexing() = default;
    explicit BasisIndexing(const GradedSpace& s) {
        for (auto& [deg, n] : s.dims) {
            offsets[deg] = int(atoms.size());
            for (int i = 0; i < n; ++i) atoms.emplace_back(deg, i);
        }
    }
    int size() const { return int(atoms.size()); }
    int global(int deg, int idx) const { return offsets.at(deg) + idx; }
    std::pair<int, int> atom(int g) const { return atoms[g]; }
};

/* One multilinear operation: input tuples of global atom indices, outputs
 * homogeneous elements.  Absent tuple = zero (on the certified domain);
 * tuples listed in `uncertified` have no trustworthy value. */
struct MultiTable {
    int arity = 0;
    std::map<std::vector<int>, Element> entries;
    std::set<std::vector<int>> uncertified;
};

/* A-infinity structure with operations m_n (n <= n_max) given by tables.
 * m_n has degree 2-n; [cert_lo, cert_hi] is the certified degree window. */
struct AInfinity {
    int p = 3;
    GradedSpace space;
    BasisIndexing idx;
    int n_max = 2;
    std::optional<Element> unit;
    std::map<int, MultiTable> maps;
    int cert_lo = std::numeric_limits<int>::min() / 2;
    int cert_hi = std::numeric_limits<int>::max() / 2;

    void rebuild_index() { idx = BasisIndexing(space); }
    int deg_of(int g) const { return idx.atom(g).first; }
    bool in_window(int deg) const { return deg >= cert_lo && deg <= cert_hi; }

    /* m_n on a tuple of atoms; nullopt when the value is not certified */
    std::optional<Element> apply(int n, const std::vector<int>& tuple) const;
    /* multilinear extension to homogeneous elements */
    std::optional<Element> apply_elements(int n, const std::vector<Element>& args) const;
};

/* m_n evaluation interface for morphism targets (table structure or DGA). */
struct TargetOps {
    int p = 3;
    int max_nonzero_arity = 2;
    std::function<std::optional<Element>(const std::vector<Element>&)> m;
    std::function<int(int)> dim; /* degree -> dimension */
    Element unit;
};

TargetOps ops_from_dga(const DGAlgebra& B);
TargetOps ops_from_table(const AInfinity& B);

/* A-infinity morphism f: source -> target with f_n of degree 1-n. */
struct AInfinityMorphism {
    const AInfinity* source = nullptr;
    TargetOps target;
    int n_max = 1;
    std::map<int, MultiTable> f;

    std::optional<Element> apply_f(int n, const std::vector<int>& tuple) const;
    std::optional<Element> apply_f_elements(int n, const std::vector<Element>& args) const;
};

/* Strictly unital module over a table algebra: nu_n : A^{n-1} (x) M -> M. */
struct AInfinityModule {
    const AInfinity* algebra = nullptr;
    int p = 3;
    GradedSpace mspace;
    BasisIndexing midx;
    int n_max = 2;
    std::map<int, MultiTable> nu; /* tuple = n-1 algebra atoms + 1 module atom */
    int cert_lo = std::numeric_limits<int>::min() / 2;
    int cert_hi = std::numeric_limits<int>::max() / 2;

    void rebuild_index() { midx = BasisIndexing(mspace); }
    std::optional<Element> apply_nu(int n, const std::vector<int>& tuple) const;
};

struct Violation {
    int arity;
    std::vector<int> tuple;
    Element residual;
    std::string note;
};

struct CheckReport {
    bool pass = true;
    long checked = 0;
    long skipped_uncertified = 0;
    long violation_count = 0;
    std::vector<Violation> violations; /* first kMaxRecorded witnesses */
    static constexpr int kMaxRecorded = 32;
    void add(Violation v) {
        pass = false;
        ++violation_count;
        if (int(violations.size()) < kMaxRecorded) violations.push_back(std::move(v));
    }
};

/* Stasheff identities sum (-1)^{r+st} m_{r+1+t}(1^r (x) m_s (x) 1^t) = 0 on
 * every basis tuple of arity <= n_max inside the certified window. */
CheckReport check_stasheff(const AInfinity& A, int n_max);

/* Morphism identities with sign sigma = sum (r-j)(i_j - 1). */
CheckReport check_morphism(const AInfinityMorphism& fm, int n_max);

/* Module Stasheff identities with the nu_{r+1}(1^r (x) nu_s) convention at
 * t = 0. */
CheckReport check_module_stasheff(const AInfinityModule& M, int n_max);

CheckReport check_strict_unitality(const AInfinity& A);
CheckReport check_strict_unitality(const AInfinityMorphism& fm);
CheckReport check_strict_unitality(const AInfinityModule& M);

/* Opposite structure m_n^op = (-1)^{C(n,2)+1} m_n o reverse (with Koszul
 * reversal signs on homogeneous atoms); an involution. */
AInfinity opposite(const AInfinity& A);

/* Restriction of M along f; needs f.n_max >= n-1 and module arities r+1. */
AInfinityModule restrict_module(const AInfinityMorphism& fm, const AInfinityModule& M, int n_max);

/* Materialize a (small) DGA as a table structure: m_1 = d, m_2 = product. */
AInfinity dga_to_ainfinity(const DGAlgebra& A);

/* The DGA viewed as a module over itself (nu_1 = d, nu_2 = product). */
AInfinityModule module_from_dga(const DGAlgebra& B, const AInfinity& Btable);

/* Exterior algebra on d generators of degree 1 as a minimal structure. */
AInfinity exterior_ainfinity(int d, int p, int n_max = 6);

} // namespace koszul
