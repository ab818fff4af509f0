#include "koszul/graded.hpp"

#include <algorithm>
#include <cassert>
#include <future>
#include <set>

namespace koszul {

std::string GradedSpace::label(int deg, int idx) const {
    auto it = labels.find(deg);
    if (it != labels.end() && idx < int(it->second.size())) return it->second[idx];
    return "b" + std::to_string(deg) + "_" + std::to_string(idx);
}

int GradedSpace::weight(int deg, int idx) const {
    auto it = weights.find(deg);
    if (it == weights.end() || idx >= int(it->second.size()))
        throw std::invalid_argument("no weight stored at degree " + std::to_string(deg));
    return it->second[idx];
}

const FpMatrix& CochainComplex::diff(int i) const {
    static const FpMatrix empty;
    auto it = d.find(i);
    if (it != d.end()) return it->second;
    return empty;
}

ComplexCheckReport check_complex(const CochainComplex& C) {
    ComplexCheckReport rep;
    for (auto& [i, di] : C.d) {
        if (di.rows() != C.space.dim(i + 1) || di.cols() != C.space.dim(i)) {
            rep.pass = false;
            rep.first_failure_degree = i;
            rep.message = "differential shape mismatch at degree " + std::to_string(i);
            return rep;
        }
    }
    for (auto& [i, di] : C.d) {
        auto next = C.d.find(i + 1);
        if (next == C.d.end()) continue;
        if (!(next->second * di).is_zero()) {
            rep.pass = false;
            rep.first_failure_degree = i;
            rep.message = "d o d != 0 at degree " + std::to_string(i);
            return rep;
        }
    }
    return rep;
}

const FpMatrix& CohomologySplitting::inclusion(int deg) const {
    static const FpMatrix empty;
    auto it = incl.find(deg);
    return it == incl.end() ? empty : it->second;
}

const FpMatrix& CohomologySplitting::projection(int deg) const {
    static const FpMatrix empty;
    auto it = proj.find(deg);
    return it == proj.end() ? empty : it->second;
}

FpMatrix CohomologySplitting::homotopy(const CochainComplex& C, int i) const {
    auto it = h.find(i);
    if (it != h.end()) return it->second;
    return FpMatrix(C.space.dim(i - 1), C.space.dim(i), p);
}

namespace {

/* incremental row-echelon span tracker */
struct SpanTracker {
    int n, p;
    std::vector<Vec> rows;   /* echelon rows, leading entry 1 */
    std::vector<int> pivots; /* pivot column per row */
    explicit SpanTracker(int n_, int p_) : n(n_), p(p_) {}
    bool try_add(const Vec& v0) {
        FpField f(p);
        Vec v = v0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            int c = v[pivots[i]];
            if (c == 0) continue;
            for (int k = pivots[i]; k < n; ++k) v[k] = f.sub(v[k], f.mul(c, rows[i][k]));
        }
        int pc = -1;
        for (int k = 0; k < n; ++k)
            if (v[k] != 0) {
                pc = k;
                break;
            }
        if (pc < 0) return false;
        int s = f.inv(v[pc]);
        for (int k = pc; k < n; ++k) v[k] = f.mul(v[k], s);
        rows.push_back(std::move(v));
        pivots.push_back(pc);
        return true;
    }
};

CohomologySplitting splitting_plain(const CochainComplex& C,
                                    const std::map<int, std::vector<Vec>>& preferred) {
    CohomologySplitting S;
    S.p = C.p;
    int lo = C.space.min_deg(), hi = C.space.max_deg();
    for (int i = lo; i <= hi; ++i) {
        int n = C.space.dim(i);
        if (n == 0) continue;

        FpMatrix d_i = C.d.count(i) ? C.diff(i) : C.zero_diff(i);
        FpMatrix d_prev = C.d.count(i - 1) ? C.diff(i - 1) : C.zero_diff(i - 1);

        std::vector<Vec> Z = kernel_basis(d_i);
        std::vector<Vec> B = image_basis(d_prev);

        /* H: extend B to a basis of Z, preferred candidates first */
        SpanTracker span(n, C.p);
        for (auto& b : B) {
            bool ok = span.try_add(b);
            assert(ok);
            (void)ok;
        }
        std::vector<Vec> H;
        auto pit = preferred.find(i);
        if (pit != preferred.end()) {
            for (const Vec& v : pit->second) {
                if (int(v.size()) != n) continue;
                if (!vec_is_zero(d_i.apply(v))) continue; /* must be a cocycle */
                if (span.try_add(v)) H.push_back(v);
            }
        }
        for (const Vec& z : Z)
            if (span.try_add(z)) H.push_back(z);

        /* C: standard vectors completing Z inside A^i */
        std::vector<Vec> Cc = complement(Z, n, C.p);

        S.B[i] = FpMatrix::from_columns(B, n, C.p);
        S.H[i] = FpMatrix::from_columns(H, n, C.p);
        S.C[i] = FpMatrix::from_columns(Cc, n, C.p);
    }

    /* inclusion, projection, homotopy from the assembled bases */
    for (int i = lo; i <= hi; ++i) {
        int n = C.space.dim(i);
        if (n == 0) continue;
        const FpMatrix &B = S.B[i], &H = S.H[i], &Cc = S.C[i];
        FpMatrix T = B.augment(H).augment(Cc);
        FpMatrix Tinv = inverse(T);
        std::vector<int> h_rows(H.cols()), b_rows(B.cols());
        for (int k = 0; k < H.cols(); ++k) h_rows[k] = B.cols() + k;
        for (int k = 0; k < B.cols(); ++k) b_rows[k] = k;
        S.incl[i] = H;
        S.proj[i] = Tinv.sub_rows(h_rows);

        /* h on degree i: gamma o (projection onto B in B-coordinates) where
         * gamma inverts d : C^{i-1} -> B^i */
        if (B.cols() > 0) {
            const FpMatrix& Cprev = S.C.at(i - 1);
            FpMatrix dC = C.diff(i - 1) * Cprev; /* n x dimC(i-1), lands in B */
            /* express the columns of dC in the B basis: B * D = dC */
            FpMatrix D(B.cols(), dC.cols(), C.p);
            for (int c = 0; c < dC.cols(); ++c) {
                auto x = solve(B, dC.column(c));
                assert(x.has_value());
                for (int r = 0; r < B.cols(); ++r) D.at(r, c) = (*x)[r];
            }
            FpMatrix gamma = Cprev * inverse(D); /* B-coordinates -> A^{i-1} */
            S.h[i] = gamma * Tinv.sub_rows(b_rows);
        }
    }
    return S;
}

/* indices of degree-i basis vectors of a given weight, in basis order */
std::map<int, std::map<int, std::vector<int>>> weight_blocks(const CochainComplex& C) {
    std::map<int, std::map<int, std::vector<int>>> blocks; /* weight -> degree -> indices */
    for (auto& [deg, n] : C.space.dims)
        for (int k = 0; k < n; ++k) blocks[C.space.weight(deg, k)][deg].push_back(k);
    return blocks;
}

} // namespace

CohomologySplitting cohomology_splitting(const CochainComplex& C, const SplittingOptions& opts) {
    ComplexCheckReport chk = check_complex(C);
    if (!chk.pass) throw MalformedComplex(chk.message);

    if (!opts.blockwise || !C.space.has_weights())
        return splitting_plain(C, opts.preferred_h);

    /* split each weight subcomplex independently and reassemble */
    auto blocks = weight_blocks(C);

    struct BlockResult {
        int weight;
        std::map<int, std::vector<int>> idx;
        CohomologySplitting S;
    };

    auto run_block = [&](int /*weight*/, const std::map<int, std::vector<int>>& idx) {
        CochainComplex sub;
        sub.p = C.p;
        for (auto& [deg, ids] : idx) sub.space.dims[deg] = int(ids.size());
        for (auto& [deg, ids] : idx) {
            auto jt = idx.find(deg + 1);
            int rows = jt == idx.end() ? 0 : int(jt->second.size());
            if (rows == 0 || ids.empty()) continue;
            FpMatrix m(rows, int(ids.size()), C.p);
            const FpMatrix& full = C.diff(deg);
            if (full.rows() > 0)
                for (int r = 0; r < rows; ++r)
                    for (int c = 0; c < int(ids.size()); ++c)
                        m.at(r, c) = full.at(jt->second[r], ids[c]);
            sub.d[deg] = std::move(m);
        }
        /* restrict any preferred vectors supported on this block */
        std::map<int, std::vector<Vec>> pref;
        for (auto& [deg, vecs] : opts.preferred_h) {
            auto it = idx.find(deg);
            if (it == idx.end()) continue;
            for (const Vec& v : vecs) {
                if (int(v.size()) != C.space.dim(deg)) continue;
                Vec r(it->second.size(), 0);
                bool outside = false;
                std::set<int> ids(it->second.begin(), it->second.end());
                for (int k = 0; k < int(v.size()); ++k)
                    if (v[k] != 0 && !ids.count(k)) { outside = true; break; }
                if (outside) continue;
                for (int c = 0; c < int(it->second.size()); ++c) r[c] = v[it->second[c]];
                if (!vec_is_zero(r)) pref[deg].push_back(std::move(r));
            }
        }
        return splitting_plain(sub, pref);
    };

    std::vector<BlockResult> results;
    std::vector<std::pair<int, std::map<int, std::vector<int>>>> work(blocks.begin(), blocks.end());
    int threads = std::max(1, opts.threads);
    if (threads <= 1 || work.size() <= 1) {
        for (auto& [w, idx] : work) results.push_back({w, idx, run_block(w, idx)});
    } else {
        std::vector<std::future<CohomologySplitting>> futs;
        futs.reserve(work.size());
        for (auto& [w, idx] : work) {
            while (int(futs.size()) - int(results.size()) >= threads) {
                std::size_t k = results.size();
                results.push_back({work[k].first, work[k].second, futs[k].get()});
            }
            futs.push_back(std::async(std::launch::async, run_block, w, idx));
        }
        for (std::size_t k = results.size(); k < futs.size(); ++k)
            results.push_back({work[k].first, work[k].second, futs[k].get()});
    }

    /* merge: H/B/C columns ordered by (weight, block order) */
    CohomologySplitting S;
    S.p = C.p;
    std::map<int, std::vector<Vec>> colsB, colsH, colsC;
    for (auto& br : results) {
        for (auto& [deg, ids] : br.idx) {
            int n = C.space.dim(deg);
            auto embed_cols = [&](const std::map<int, FpMatrix>& src, std::map<int, std::vector<Vec>>& dst) {
                auto it = src.find(deg);
                if (it == src.end()) return;
                for (int c = 0; c < it->second.cols(); ++c) {
                    Vec v(n, 0);
                    for (int r = 0; r < it->second.rows(); ++r) v[ids[r]] = it->second.at(r, c);
                    dst[deg].push_back(std::move(v));
                }
            };
            embed_cols(br.S.B, colsB);
            embed_cols(br.S.H, colsH);
            embed_cols(br.S.C, colsC);
        }
    }
    for (auto& [deg, n] : C.space.dims) {
        if (n == 0) continue;
        S.B[deg] = FpMatrix::from_columns(colsB[deg], n, C.p);
        S.H[deg] = FpMatrix::from_columns(colsH[deg], n, C.p);
        S.C[deg] = FpMatrix::from_columns(colsC[deg], n, C.p);
        S.incl[deg] = S.H[deg];
    }
    /* projections and homotopies: scatter the per-block matrices */
    std::map<int, int> h_offset;
    for (auto& br : results) {
        for (auto& [deg, ids] : br.idx) {
            int hb = br.S.h_dim(deg);
            int n = C.space.dim(deg);
            if (S.proj.find(deg) == S.proj.end()) S.proj[deg] = FpMatrix(S.H[deg].cols(), n, C.p);
            auto pit = br.S.proj.find(deg);
            if (pit != br.S.proj.end()) {
                for (int r = 0; r < hb; ++r)
                    for (int c = 0; c < int(ids.size()); ++c)
                        S.proj[deg].at(h_offset[deg] + r, ids[c]) = pit->second.at(r, c);
            }
            h_offset[deg] += hb;
        }
        for (auto& [deg, hm] : br.S.h) {
            auto up = br.idx.find(deg);
            auto down = br.idx.find(deg - 1);
            if (up == br.idx.end() || down == br.idx.end()) continue;
            if (S.h.find(deg) == S.h.end())
                S.h[deg] = FpMatrix(C.space.dim(deg - 1), C.space.dim(deg), C.p);
            for (int r = 0; r < hm.rows(); ++r)
                for (int c = 0; c < hm.cols(); ++c)
                    if (hm.at(r, c) != 0) S.h[deg].at(down->second[r], up->second[c]) = hm.at(r, c);
        }
    }
    return S;
}

namespace {

bool verify_splitting_plain(const CochainComplex& C, const CohomologySplitting& S, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    int lo = C.space.min_deg(), hi = C.space.max_deg();
    for (int i = lo; i <= hi; ++i) {
        int n = C.space.dim(i);
        if (n == 0) continue;
        auto bit = S.B.find(i);
        if (bit == S.B.end()) return fail("missing splitting at degree " + std::to_string(i));
        const FpMatrix &B = S.B.at(i), &H = S.H.at(i), &Cc = S.C.at(i);
        if (B.cols() + H.cols() + Cc.cols() != n) return fail("dimension count at " + std::to_string(i));
        if (rank(B.augment(H).augment(Cc)) != n) return fail("not a direct sum at " + std::to_string(i));
        /* Z = B + H: both consist of cocycles, and dim matches cols - rank d */
        FpMatrix d_i = C.d.count(i) ? C.diff(i) : C.zero_diff(i);
        if (!(d_i * B).is_zero() || !(d_i * H).is_zero())
            return fail("B or H not cocycles at " + std::to_string(i));
        FpMatrix d_prev = C.d.count(i - 1) ? C.diff(i - 1) : C.zero_diff(i - 1);
        if (H.cols() != n - rank(d_i) - rank(d_prev))
            return fail("dim H wrong at " + std::to_string(i));

        /* p o i = Id_H */
        const FpMatrix &P = S.proj.at(i), &I = S.incl.at(i);
        if (!(P * I == FpMatrix::identity(H.cols(), C.p))) return fail("p o i != Id at " + std::to_string(i));

        /* Id - i p = d h + h d */
        FpMatrix hi_ = S.homotopy(C, i);
        FpMatrix hnext = S.homotopy(C, i + 1);
        FpMatrix lhs = FpMatrix::identity(n, C.p) - I * P;
        FpMatrix rhs = d_prev * hi_ + hnext * d_i;
        if (!(lhs == rhs)) return fail("Id - ip != dh + hd at " + std::to_string(i));

        /* side conditions */
        if (!(hi_ * I).is_zero()) return fail("h o i != 0 at " + std::to_string(i));
        if (S.proj.count(i - 1) && !(S.proj.at(i - 1) * hi_).is_zero())
            return fail("p o h != 0 at " + std::to_string(i));
        FpMatrix hprev = S.homotopy(C, i - 1);
        if (hi_.rows() > 0 && hprev.cols() == hi_.rows() && !(hprev * hi_).is_zero())
            return fail("h o h != 0 at " + std::to_string(i));
    }
    if (why) why->clear();
    return true;
}

/* weight of a column vector when homogeneous; nullopt otherwise */
std::optional<int> column_weight(const CochainComplex& C, int deg, const Vec& v) {
    std::optional<int> w;
    for (int r = 0; r < int(v.size()); ++r) {
        if (v[r] == 0) continue;
        int wr = C.space.weight(deg, r);
        if (!w) w = wr;
        else if (*w != wr) return std::nullopt;
    }
    return w ? w : std::optional<int>(std::numeric_limits<int>::min());
}

} // namespace

bool verify_splitting(const CochainComplex& C, const CohomologySplitting& S, std::string* why) {
    if (!C.space.has_weights()) return verify_splitting_plain(C, S, why);

    /* try to verify block-per-weight; fall back to the dense check when the
     * splitting does not respect the weights */
    auto blocks = weight_blocks(C);
    std::map<int, std::map<int, std::vector<int>>> colsB, colsH, colsC; /* deg -> weight -> col idx */
    bool homogeneous = true;
    auto classify = [&](const std::map<int, FpMatrix>& fam,
                        std::map<int, std::map<int, std::vector<int>>>& out) {
        for (auto& [deg, m] : fam)
            for (int c = 0; c < m.cols() && homogeneous; ++c) {
                auto w = column_weight(C, deg, m.column(c));
                if (!w || *w == std::numeric_limits<int>::min()) homogeneous = false;
                else out[deg][*w].push_back(c);
            }
    };
    classify(S.B, colsB);
    classify(S.H, colsH);
    classify(S.C, colsC);
    /* the homotopy must preserve weights entrywise */
    for (auto& [deg, hm] : S.h) {
        if (!homogeneous) break;
        for (int r = 0; r < hm.rows() && homogeneous; ++r)
            for (int c = 0; c < hm.cols(); ++c)
                if (hm.at(r, c) != 0 && C.space.weight(deg - 1, r) != C.space.weight(deg, c)) {
                    homogeneous = false;
                    break;
                }
    }
    if (!homogeneous) return verify_splitting_plain(C, S, why);

    for (auto& [w, idx] : blocks) {
        /* assemble the block complex and block splitting */
        CochainComplex sub;
        sub.p = C.p;
        std::map<int, std::map<int, int>> pos; /* deg -> ambient row -> block row */
        for (auto& [deg, ids] : idx) {
            sub.space.dims[deg] = int(ids.size());
            for (int k = 0; k < int(ids.size()); ++k) pos[deg][ids[k]] = k;
        }
        for (auto& [deg, ids] : idx) {
            auto jt = idx.find(deg + 1);
            int rows = jt == idx.end() ? 0 : int(jt->second.size());
            if (rows == 0 || ids.empty()) continue;
            FpMatrix m(rows, int(ids.size()), C.p);
            if (C.d.count(deg)) {
                const FpMatrix& full = C.diff(deg);
                for (int r = 0; r < rows; ++r)
                    for (int c = 0; c < int(ids.size()); ++c) m.at(r, c) = full.at(jt->second[r], ids[c]);
            }
            sub.d[deg] = std::move(m);
        }
        CohomologySplitting subS;
        subS.p = C.p;
        auto restrict_cols = [&](const std::map<int, FpMatrix>& fam,
                                 std::map<int, std::map<int, std::vector<int>>>& cols,
                                 std::map<int, FpMatrix>& dst) {
            for (auto& [deg, ids] : idx) {
                auto fit = fam.find(deg);
                std::vector<int> use;
                if (fit != fam.end() && cols.count(deg) && cols[deg].count(w)) use = cols[deg][w];
                FpMatrix m(int(ids.size()), int(use.size()), C.p);
                for (int c = 0; c < int(use.size()); ++c)
                    for (int k = 0; k < int(ids.size()); ++k) m.at(k, c) = fit->second.at(ids[k], use[c]);
                dst[deg] = std::move(m);
            }
        };
        restrict_cols(S.B, colsB, subS.B);
        restrict_cols(S.H, colsH, subS.H);
        restrict_cols(S.C, colsC, subS.C);
        for (auto& [deg, ids] : idx) subS.incl[deg] = subS.H[deg];
        /* projection rows follow the H columns of this weight */
        for (auto& [deg, ids] : idx) {
            std::vector<int> use;
            if (colsH.count(deg) && colsH[deg].count(w)) use = colsH[deg][w];
            FpMatrix m(int(use.size()), int(ids.size()), C.p);
            if (S.proj.count(deg)) {
                const FpMatrix& full = S.proj.at(deg);
                for (int r = 0; r < int(use.size()); ++r)
                    for (int k = 0; k < int(ids.size()); ++k) m.at(r, k) = full.at(use[r], ids[k]);
            }
            subS.proj[deg] = std::move(m);
        }
        for (auto& [deg, hm] : S.h) {
            auto up = idx.find(deg);
            auto down = idx.find(deg - 1);
            if (up == idx.end()) continue;
            int rows = down == idx.end() ? 0 : int(down->second.size());
            FpMatrix m(rows, int(up->second.size()), C.p);
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < int(up->second.size()); ++c)
                    m.at(r, c) = hm.at(down->second[r], up->second[c]);
            subS.h[deg] = std::move(m);
        }
        std::string sub_why;
        if (!verify_splitting_plain(sub, subS, &sub_why)) {
            if (why) *why = "weight " + std::to_string(w) + ": " + sub_why;
            return false;
        }
        /* the projection must also kill every other weight block */
        for (auto& [deg, ids] : idx) {
            (void)ids;
            if (!S.proj.count(deg)) continue;
            const FpMatrix& full = S.proj.at(deg);
            std::vector<int> use;
            if (colsH.count(deg) && colsH[deg].count(w)) use = colsH[deg][w];
            for (int r : use)
                for (int k = 0; k < full.cols(); ++k)
                    if (full.at(r, k) != 0 && C.space.weight(deg, k) != w) {
                        if (why) *why = "projection mixes weights at degree " + std::to_string(deg);
                        return false;
                    }
        }
    }
    if (why) why->clear();
    return true;
}

std::map<int, int> cohomology_dims(const CochainComplex& C) {
    std::map<int, int> dims;
    for (auto& [i, n] : C.space.dims) {
        if (n == 0) continue;
        FpMatrix d_i = C.d.count(i) ? C.diff(i) : C.zero_diff(i);
        FpMatrix d_prev = C.d.count(i - 1) ? C.diff(i - 1) : C.zero_diff(i - 1);
        dims[i] = n - rank(d_i) - rank(d_prev);
    }
    return dims;
}

std::map<int, std::map<int, int>> cohomology_dims_by_weight(const CochainComplex& C) {
    if (!C.space.has_weights()) throw std::invalid_argument("complex carries no weights");
    auto blocks = weight_blocks(C);
    std::map<int, std::map<int, int>> out;
    for (auto& [w, idx] : blocks) {
        CochainComplex sub;
        sub.p = C.p;
        for (auto& [deg, ids] : idx) sub.space.dims[deg] = int(ids.size());
        for (auto& [deg, ids] : idx) {
            auto jt = idx.find(deg + 1);
            if (jt == idx.end() || ids.empty()) continue;
            FpMatrix m(int(jt->second.size()), int(ids.size()), C.p);
            if (C.d.count(deg)) {
                const FpMatrix& full = C.diff(deg);
                for (int r = 0; r < m.rows(); ++r)
                    for (int c = 0; c < m.cols(); ++c) m.at(r, c) = full.at(jt->second[r], ids[c]);
            }
            sub.d[deg] = std::move(m);
        }
        for (auto& [deg, dim] : cohomology_dims(sub))
            if (dim != 0) out[deg][w] = dim;
    }
    return out;
}

} // namespace koszul
