#include "koszul/resolution.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace koszul {

namespace {

/* tuple <-> index for bar generators (big-endian lexicographic) */
long long tuple_index(const std::vector<int>& t, int base) {
    long long idx = 0;
    for (int x : t) idx = idx * base + x;
    return idx;
}

std::vector<int> tuple_decode(long long idx, int len, int base) {
    std::vector<int> t(len);
    for (int i = len - 1; i >= 0; --i) {
        t[i] = int(idx % base);
        idx /= base;
    }
    return t;
}

} // namespace

Resolution bar_resolution(const MonomialAlgebra& A, int L) {
    if (L < 1) throw BadLength("bar resolution needs length >= 1");
    int n = A.dim();
    double size = 1;
    for (int i = 0; i < L; ++i) size *= n;
    if (size > double(1 << 22)) throw std::invalid_argument("bar resolution too large at this length");

    Resolution R;
    R.A = std::make_shared<MonomialAlgebra>(A);
    R.length_truncated = true;
    R.certified_ext_degree = std::max(0, L - 2);

    long long rank = 1;
    for (int i = 0; i <= L; ++i) {
        FreeLevel lvl;
        lvl.rank = int(rank);
        for (long long g = 0; g < rank; ++g) {
            auto t = tuple_decode(g, i, n);
            std::string lab = "[";
            int w = 0;
            for (int j = 0; j < i; ++j) {
                if (j) lab += "|";
                lab += A.label(t[j]);
                w += A.degree(t[j]);
            }
            lab += "]";
            lvl.labels.push_back(lab);
            lvl.weights.push_back(w);
        }
        R.levels[-i] = std::move(lvl);
        rank *= n;
    }

    FpField f(A.p());
    for (int i = 1; i <= L; ++i) {
        int src_rank = R.levels.at(-i).rank;
        std::vector<std::vector<AEntry>> cols(src_rank);
        for (long long g = 0; g < src_rank; ++g) {
            auto t = tuple_decode(g, i, n);
            auto& col = cols[g];
            /* leading term: m_1 becomes the module coefficient */
            {
                std::vector<int> rest(t.begin() + 1, t.end());
                col.push_back({int(tuple_index(rest, n)), t[0], 1});
            }
            /* inner merges with alternating signs */
            for (int j = 1; j < i; ++j) {
                int m = A.mono_mul(t[j - 1], t[j]);
                if (m < 0) continue;
                std::vector<int> merged;
                merged.reserve(i - 1);
                for (int k = 0; k < i; ++k) {
                    if (k == j - 1) merged.push_back(m);
                    else if (k != j) merged.push_back(t[k]);
                }
                col.push_back({int(tuple_index(merged, n)), A.unit_index(), j % 2 ? f.neg(1) : 1});
            }
            /* augmentation of the last factor */
            if (A.augment_mono(t[i - 1]) != 0) {
                std::vector<int> head(t.begin(), t.end() - 1);
                col.push_back({int(tuple_index(head, n)), A.unit_index(), i % 2 ? f.neg(1) : 1});
            }
        }
        R.d[-i] = std::move(cols);
    }
    return R;
}

Resolution koszul_resolution(int d, int p, int D) {
    if (d < 1) throw std::invalid_argument("koszul resolution needs d >= 1");
    if (D < d) throw std::invalid_argument("degree cap below d leaves the resolution uncertified");
    Resolution R;
    R.A = std::make_shared<MonomialAlgebra>(MonomialAlgebra::graded_symmetric(d, p, D));
    R.length_truncated = false;

    /* subsets of {1..d} of size i, lexicographic */
    std::vector<std::vector<std::vector<int>>> subsets(d + 1);
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        subsets[cur.size()].push_back(cur);
        for (int j = start; j < d; ++j) {
            cur.push_back(j);
            rec(j + 1);
            cur.pop_back();
        }
    };
    rec(0);

    std::vector<std::map<std::vector<int>, int>> subset_index(d + 1);
    for (int i = 0; i <= d; ++i) {
        FreeLevel lvl;
        lvl.rank = int(subsets[i].size());
        for (int g = 0; g < lvl.rank; ++g) {
            subset_index[i][subsets[i][g]] = g;
            std::string lab = "e{";
            for (int k = 0; k < i; ++k) {
                if (k) lab += ",";
                lab += std::to_string(subsets[i][g][k] + 1);
            }
            lab += "}";
            lvl.labels.push_back(lab);
            lvl.weights.push_back(i);
        }
        R.levels[-i] = std::move(lvl);
    }

    FpField f(p);
    const MonomialAlgebra& S = *R.A;
    for (int i = 1; i <= d; ++i) {
        std::vector<std::vector<AEntry>> cols(R.levels.at(-i).rank);
        for (int g = 0; g < int(cols.size()); ++g) {
            const auto& sub = subsets[i][g];
            for (int a = 0; a < i; ++a) {
                std::vector<int> expo(d, 0);
                expo[sub[a]] = 1;
                int mono = S.index_of(expo);
                std::vector<int> rest;
                for (int k = 0; k < i; ++k)
                    if (k != a) rest.push_back(sub[k]);
                cols[g].push_back({subset_index[i - 1].at(rest), mono, a % 2 ? f.neg(1) : 1});
            }
        }
        R.d[-i] = std::move(cols);
    }
    return R;
}

Resolution minimal_power_resolution(int n, int p, int L) {
    if (L < 1) throw BadLength("resolution needs length >= 1");
    if (n < 2) throw std::invalid_argument("need x^n with n >= 2");
    Resolution R;
    R.A = std::make_shared<MonomialAlgebra>(MonomialAlgebra::power_of_variable(n, p));
    R.length_truncated = true;
    R.certified_ext_degree = std::max(0, L - 2);
    for (int i = 0; i <= L; ++i) {
        FreeLevel lvl;
        lvl.rank = 1;
        lvl.labels = {"g" + std::to_string(i)};
        /* internal degree of the i-th syzygy: n per period of two */
        lvl.weights = {(i / 2) * n + (i % 2)};
        R.levels[-i] = std::move(lvl);
    }
    const MonomialAlgebra& A = *R.A;
    std::vector<int> e1(1, 1), en1(1, n - 1);
    int x = A.index_of(e1), xn1 = A.index_of(en1);
    for (int i = 1; i <= L; ++i)
        R.d[-i] = {{AEntry{0, i % 2 ? x : xn1, 1}}};
    return R;
}

CochainComplex resolution_to_fp_complex(const Resolution& R) {
    const MonomialAlgebra& A = *R.A;
    int na = A.dim();
    CochainComplex C;
    C.p = A.p();
    for (auto& [lvl, fl] : R.levels) {
        if (fl.rank == 0) continue;
        C.space.dims[lvl] = fl.rank * na;
        for (int g = 0; g < fl.rank; ++g)
            for (int m = 0; m < na; ++m) {
                C.space.labels[lvl].push_back(A.label(m) + "." + fl.labels[g]);
                C.space.weights[lvl].push_back(A.degree(m) + fl.weights[g]);
            }
    }
    FpField f(C.p);
    for (auto& [lvl, cols] : R.d) {
        int rows = C.space.dim(lvl + 1);
        FpMatrix D(rows, C.space.dim(lvl), C.p);
        for (int g = 0; g < int(cols.size()); ++g)
            for (int m = 0; m < na; ++m) {
                int col = g * na + m;
                for (const AEntry& e : cols[g]) {
                    int mm = A.mono_mul(e.mono, m);
                    if (mm < 0) continue;
                    int row = e.dst * na + mm;
                    D.at(row, col) = f.add(D.at(row, col), f.reduce(e.coeff));
                }
            }
        C.d[lvl] = std::move(D);
    }
    if (R.length_truncated) C.set_certified(R.min_level() + 1, 0);
    return C;
}

CochainComplex resolution_k_dual(const Resolution& R) {
    CochainComplex C;
    C.p = R.A->p();
    for (auto& [lvl, fl] : R.levels) {
        if (fl.rank == 0) continue;
        C.space.dims[-lvl] = fl.rank;
        for (int g = 0; g < fl.rank; ++g) {
            C.space.labels[-lvl].push_back(fl.labels[g] + "^v");
            C.space.weights[-lvl].push_back(fl.weights[g]);
        }
    }
    FpField f(C.p);
    for (auto& [lvl, cols] : R.d) {
        /* delta: C^{-lvl-1} -> C^{-lvl}, dual to d: P^lvl -> P^{lvl+1} */
        int i = -lvl - 1;
        FpMatrix D(C.space.dim(i + 1), C.space.dim(i), C.p);
        for (int g = 0; g < int(cols.size()); ++g)
            for (const AEntry& e : cols[g])
                if (R.A->augment_mono(e.mono) != 0)
                    D.at(g, e.dst) = f.add(D.at(g, e.dst), f.reduce(e.coeff));
        C.d[i] = std::move(D);
    }
    if (R.length_truncated) C.set_certified(0, -R.min_level() - 1);
    return C;
}

CochainComplex reduced_cobar_complex(const MonomialAlgebra& A, int imax, int wmax) {
    CochainComplex C;
    C.p = A.p();
    /* positive-degree monomials */
    std::vector<int> pos;
    for (int m = 0; m < A.dim(); ++m)
        if (A.degree(m) > 0) pos.push_back(m);

    std::vector<std::vector<std::vector<int>>> tuples(imax + 1);
    tuples[0] = {{}};
    for (int i = 1; i <= imax; ++i) {
        for (const auto& t : tuples[i - 1]) {
            int w = 0;
            for (int m : t) w += A.degree(m);
            for (int m : pos) {
                if (w + A.degree(m) > wmax) continue;
                auto nt = t;
                nt.push_back(m);
                tuples[i].push_back(std::move(nt));
            }
        }
    }
    std::vector<std::map<std::vector<int>, int>> index(imax + 1);
    for (int i = 0; i <= imax; ++i) {
        if (tuples[i].empty()) continue;
        C.space.dims[i] = int(tuples[i].size());
        for (int k = 0; k < int(tuples[i].size()); ++k) {
            index[i][tuples[i][k]] = k;
            int w = 0;
            std::string lab = "[";
            for (int j = 0; j < i; ++j) {
                if (j) lab += "|";
                lab += A.label(tuples[i][k][j]);
                w += A.degree(tuples[i][k][j]);
            }
            lab += "]";
            C.space.labels[i].push_back(lab);
            C.space.weights[i].push_back(w);
        }
    }

    /* (delta phi)(t) = sum_j (-1)^j phi(merge_j(t)) */
    FpField f(C.p);
    for (int i = 0; i < imax; ++i) {
        if (tuples[i + 1].empty()) break;
        FpMatrix D(int(tuples[i + 1].size()), int(tuples[i].size()), C.p);
        for (int r = 0; r < int(tuples[i + 1].size()); ++r) {
            const auto& t = tuples[i + 1][r];
            for (int j = 1; j <= i; ++j) {
                int m = A.mono_mul(t[j - 1], t[j]);
                if (m < 0) continue;
                std::vector<int> merged;
                merged.reserve(i);
                for (int k = 0; k <= i; ++k) {
                    if (k == j - 1) merged.push_back(m);
                    else if (k != j) merged.push_back(t[k]);
                }
                auto it = index[i].find(merged);
                if (it == index[i].end()) continue;
                int s = j % 2 ? f.neg(1) : 1;
                D.at(r, it->second) = f.add(D.at(r, it->second), s);
            }
        }
        C.d[i] = std::move(D);
    }
    C.set_certified(0, imax - 1);
    return C;
}

EndResolutionDGA::EndResolutionDGA(Resolution R, CompositionOrder order)
    : R_(std::move(R)), order_(order) {
    const MonomialAlgebra& A = *R_.A;
    int na = A.dim();
    cx_.p = A.p();
    int lo = R_.min_level(), hi = 0;
    for (int n = lo - hi; n <= hi - lo; ++n) {
        std::vector<EndBasisElt> belts;
        auto& offs = t_offset_[n];
        for (auto& [t, fl] : R_.levels) {
            int rank_dst = R_.rank(t + n);
            if (fl.rank == 0 || rank_dst == 0) continue;
            offs[t] = int(belts.size());
            for (int s = 0; s < fl.rank; ++s)
                for (int g = 0; g < rank_dst; ++g)
                    for (int m = 0; m < na; ++m) belts.push_back({t, s, g, m});
        }
        if (belts.empty()) {
            t_offset_.erase(n);
            continue;
        }
        cx_.space.dims[n] = int(belts.size());
        auto& wts = cx_.space.weights[n];
        auto& labs = cx_.space.labels[n];
        for (const auto& e : belts) {
            wts.push_back(A.degree(e.mono) + R_.levels.at(e.t + n).weights[e.dst] -
                          R_.levels.at(e.t).weights[e.src]);
            labs.push_back("(" + std::to_string(e.t) + ")" + std::to_string(e.src) + "->" +
                           A.label(e.mono) + "." + std::to_string(e.dst));
        }
        basis_[n] = std::move(belts);
    }

    /* differential: d_End(e) = d_R o e - (-1)^n e o d_R */
    FpField f(cx_.p);
    for (auto& [n, belts] : basis_) {
        int rows = cx_.space.dim(n + 1);
        if (rows == 0) continue;
        FpMatrix D(rows, int(belts.size()), cx_.p);
        int sgn = (n % 2 == 0) ? f.neg(1) : 1;
        for (int col = 0; col < int(belts.size()); ++col) {
            const auto& e = belts[col];
            auto dit = R_.d.find(e.t + n);
            if (dit != R_.d.end()) {
                for (const AEntry& a : dit->second[e.dst]) {
                    int mm = A.mono_mul(a.mono, e.mono);
                    if (mm < 0) continue;
                    int k = index_of(n + 1, e.t, e.src, a.dst, mm);
                    if (k >= 0) D.at(k, col) = f.add(D.at(k, col), f.reduce(a.coeff));
                }
            }
            auto sit = R_.d.find(e.t - 1);
            if (sit != R_.d.end()) {
                for (int sprev = 0; sprev < int(sit->second.size()); ++sprev)
                    for (const AEntry& a : sit->second[sprev]) {
                        if (a.dst != e.src) continue;
                        int mm = A.mono_mul(a.mono, e.mono);
                        if (mm < 0) continue;
                        int k = index_of(n + 1, e.t - 1, sprev, e.dst, mm);
                        if (k >= 0) D.at(k, col) = f.add(D.at(k, col), f.mul(sgn, f.reduce(a.coeff)));
                    }
            }
        }
        cx_.d[n] = std::move(D);
    }
}

const std::vector<EndBasisElt>& EndResolutionDGA::basis(int deg) const {
    static const std::vector<EndBasisElt> empty;
    auto it = basis_.find(deg);
    return it == basis_.end() ? empty : it->second;
}

int EndResolutionDGA::index_of(int n, int t, int src, int dst, int mono) const {
    auto nit = t_offset_.find(n);
    if (nit == t_offset_.end()) return -1;
    auto tit = nit->second.find(t);
    if (tit == nit->second.end()) return -1;
    int rank_dst = R_.rank(t + n);
    return tit->second + (src * rank_dst + dst) * R_.A->dim() + mono;
}

Vec EndResolutionDGA::unit() const {
    Vec u(cx_.space.dim(0), 0);
    for (auto& [t, fl] : R_.levels)
        for (int g = 0; g < fl.rank; ++g) {
            int k = index_of(0, t, g, g, R_.A->unit_index());
            if (k >= 0) u[k] = 1;
        }
    return u;
}

Vec EndResolutionDGA::multiply(int da, const Vec& a, int db, const Vec& b, bool* capped) const {
    const MonomialAlgebra& A = *R_.A;
    FpField f(cx_.p);
    int dout = da + db;
    Vec out(cx_.space.dim(dout), 0);
    auto ait = basis_.find(da), bit = basis_.find(db);
    if (ait == basis_.end() || bit == basis_.end()) return out;
    const auto& BA = ait->second;
    const auto& BB = bit->second;
    for (int ib = 0; ib < int(b.size()); ++ib) {
        if (b[ib] == 0) continue;
        const EndBasisElt& eb = BB[ib];
        for (int ia = 0; ia < int(a.size()); ++ia) {
            if (a[ia] == 0) continue;
            const EndBasisElt& ea = BA[ia];
            int coef = f.mul(a[ia], b[ib]);
            if (order_ == CompositionOrder::direct) {
                if (ea.t != eb.t + db || ea.src != eb.dst) continue;
                int mm = A.mono_mul(ea.mono, eb.mono);
                if (mm < 0) {
                    if (capped && !A.exact_quotient()) *capped = true;
                    continue;
                }
                int k = index_of(dout, eb.t, eb.src, ea.dst, mm);
                assert(k >= 0);
                out[k] = f.add(out[k], coef);
            } else {
                if (eb.t != ea.t + da || eb.src != ea.dst) continue;
                int mm = A.mono_mul(ea.mono, eb.mono);
                if (mm < 0) {
                    if (capped && !A.exact_quotient()) *capped = true;
                    continue;
                }
                int k = index_of(dout, ea.t, ea.src, eb.dst, mm);
                assert(k >= 0);
                int s = ((da % 2) && (db % 2)) ? f.neg(coef) : coef;
                out[k] = f.add(out[k], s);
            }
        }
    }
    return out;
}

EndResolutionDGA module_action_end_dga(const Resolution& R, CompositionOrder order) {
    return EndResolutionDGA(R, order);
}

} // namespace koszul
