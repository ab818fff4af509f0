#include "koszul/homcx.hpp"

#include <cassert>

namespace koszul {

HomComplex hom_complex(const CochainComplex& I, const CochainComplex& J) {
    if (I.p != J.p) throw ModulusMismatch("hom_complex across moduli");
    HomComplex H;
    H.source = I;
    H.target = J;
    H.cx.p = I.p;

    int n_lo = J.space.min_deg() - I.space.max_deg();
    int n_hi = J.space.max_deg() - I.space.min_deg();
    bool weighted = I.space.has_weights() && J.space.has_weights();

    for (int n = n_lo; n <= n_hi; ++n) {
        std::vector<HomBasisElt> basis;
        for (auto& [q, nq] : I.space.dims) {
            int mq = J.space.dim(q + n);
            if (nq == 0 || mq == 0) continue;
            for (int s = 0; s < nq; ++s)
                for (int t = 0; t < mq; ++t) basis.push_back({q, s, t});
        }
        if (basis.empty()) continue;
        H.cx.space.dims[n] = int(basis.size());
        auto& idx = H.index[n];
        for (int k = 0; k < int(basis.size()); ++k) {
            idx[{basis[k].q, basis[k].src, basis[k].dst}] = k;
            const auto& e = basis[k];
            H.cx.space.labels[n].push_back("(" + std::to_string(e.q) + ":" + I.space.label(e.q, e.src) +
                                           "->" + J.space.label(e.q + n, e.dst) + ")");
            if (weighted)
                H.cx.space.weights[n].push_back(J.space.weight(e.q + n, e.dst) - I.space.weight(e.q, e.src));
        }
        H.basis[n] = std::move(basis);
    }

    /* d(a)_q = d_J o a_q - (-1)^n a_{q+1} o d_I, expanded on basis elements */
    FpField f(I.p);
    for (auto& [n, belts] : H.basis) {
        int rows = H.cx.space.dim(n + 1);
        if (rows == 0) continue;
        FpMatrix D(rows, int(belts.size()), I.p);
        int sgn = (n % 2 == 0) ? f.neg(1) : 1; /* -(-1)^n */
        for (int col = 0; col < int(belts.size()); ++col) {
            const auto& e = belts[col];
            if (J.d.count(e.q + n)) {
                const FpMatrix& dJ = J.diff(e.q + n);
                for (int r = 0; r < dJ.rows(); ++r) {
                    int c = dJ.at(r, e.dst);
                    if (c == 0) continue;
                    int k = H.index_of(n + 1, e.q, e.src, r);
                    if (k >= 0) D.at(k, col) = f.add(D.at(k, col), c);
                }
            }
            if (I.d.count(e.q - 1)) {
                const FpMatrix& dI = I.diff(e.q - 1);
                for (int c0 = 0; c0 < dI.cols(); ++c0) {
                    int c = dI.at(e.src, c0);
                    if (c == 0) continue;
                    int k = H.index_of(n + 1, e.q - 1, c0, e.dst);
                    if (k >= 0) D.at(k, col) = f.add(D.at(k, col), f.mul(sgn, c));
                }
            }
        }
        H.cx.d[n] = std::move(D);
    }
    return H;
}

EndComplexDGA::EndComplexDGA(const CochainComplex& I, CompositionOrder order)
    : hom_(hom_complex(I, I)), order_(order) {
    cx_ = hom_.cx;
    /* the window is exact when I is a genuinely finite complex */
    window_exact_ = I.certified(I.space.min_deg()) && I.certified(I.space.max_deg());
}

Vec EndComplexDGA::unit() const {
    Vec u(cx_.space.dim(0), 0);
    for (auto& [q, nq] : hom_.source.space.dims)
        for (int s = 0; s < nq; ++s) {
            int k = hom_.index_of(0, q, s, s);
            if (k >= 0) u[k] = 1;
        }
    return u;
}

Vec EndComplexDGA::multiply(int da, const Vec& a, int db, const Vec& b, bool* capped) const {
    FpField f(p());
    int dout = da + db;
    Vec out(cx_.space.dim(dout), 0);
    auto ait = hom_.basis.find(da);
    auto bit = hom_.basis.find(db);
    if (ait == hom_.basis.end() || bit == hom_.basis.end()) return out;
    const auto& BA = ait->second;
    const auto& BB = bit->second;
    for (int ia = 0; ia < int(a.size()); ++ia) {
        if (a[ia] == 0) continue;
        const HomBasisElt& ea = BA[ia];
        for (int ib = 0; ib < int(b.size()); ++ib) {
            if (b[ib] == 0) continue;
            const HomBasisElt& eb = BB[ib];
            int coef = f.mul(a[ia], b[ib]);
            if (order_ == CompositionOrder::direct) {
                /* a o b: positions must chain as I^{q_b} -> I^{q_b+db} -> ... */
                if (ea.q != eb.q + db || ea.src != eb.dst) continue;
                int k = hom_.index_of(dout, eb.q, eb.src, ea.dst);
                if (k < 0) {
                    if (capped && !window_exact_) *capped = true;
                    continue;
                }
                out[k] = f.add(out[k], coef);
            } else {
                /* (-1)^{da db} b o a */
                if (eb.q != ea.q + da || eb.src != ea.dst) continue;
                int k = hom_.index_of(dout, ea.q, ea.src, eb.dst);
                if (k < 0) {
                    if (capped && !window_exact_) *capped = true;
                    continue;
                }
                int s = ((da % 2) && (db % 2)) ? f.neg(coef) : coef;
                out[k] = f.add(out[k], s);
            }
        }
    }
    return out;
}

EndComplexDGA end_dga(const CochainComplex& I, CompositionOrder order) {
    return EndComplexDGA(I, order);
}

CochainComplex dual_complex(const CochainComplex& I) {
    CochainComplex P;
    P.p = I.p;
    for (auto& [i, n] : I.space.dims) {
        if (n == 0) continue;
        P.space.dims[-i] = n;
        for (int k = 0; k < n; ++k) P.space.labels[-i].push_back(I.space.label(i, k) + "^v");
        if (I.space.has_weights())
            for (int k = 0; k < n; ++k) P.space.weights[-i].push_back(-I.space.weight(i, k));
    }
    /* d_P^t = (d_I^{-t-1})^T : (I^{-t})^v -> (I^{-t-1})^v */
    for (auto& [i, di] : I.d) {
        if (di.rows() == 0 || di.cols() == 0) continue;
        P.d[-i - 1] = di.transpose();
    }
    return P;
}

std::map<int, FpMatrix> dual_end_comparison(const EndComplexDGA& EI, const EndComplexDGA& EP) {
    FpField f(EI.p());
    std::map<int, FpMatrix> phi;
    for (auto& [n, belts] : EI.hom().basis) {
        int rows = EP.complex().space.dim(n);
        FpMatrix M(rows, int(belts.size()), EI.p());
        /* (-1)^{n(n+1)/2} with n possibly negative */
        long long e = (long long)n * (n + 1) / 2;
        int sgn = (e % 2 != 0) ? f.neg(1) : 1;
        for (int col = 0; col < int(belts.size()); ++col) {
            const auto& a = belts[col];
            int k = EP.hom().index_of(n, -a.q - n, a.dst, a.src);
            if (k >= 0) M.at(k, col) = sgn;
        }
        phi[n] = std::move(M);
    }
    return phi;
}

bool verify_dual_end_isomorphism(const CochainComplex& I, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    CochainComplex P = dual_complex(I);
    EndComplexDGA EI(I, CompositionOrder::opposite);
    EndComplexDGA EP(P, CompositionOrder::direct);
    auto phi = dual_end_comparison(EI, EP);

    for (auto& [n, M] : phi) {
        if (M.rows() != M.cols() || rank(M) != M.rows())
            return fail("comparison not bijective in degree " + std::to_string(n));
    }
    /* chain map */
    for (auto& [n, dn] : EI.complex().d) {
        if (!phi.count(n)) continue;
        FpMatrix lhs = phi.count(n + 1) ? phi.at(n + 1) * dn
                                        : FpMatrix(EP.complex().space.dim(n + 1), dn.cols(), I.p);
        FpMatrix dP = EP.complex().d.count(n) ? EP.complex().diff(n)
                                              : FpMatrix(EP.complex().space.dim(n + 1), EP.complex().space.dim(n), I.p);
        FpMatrix rhs = dP * phi.at(n);
        if (!(lhs == rhs)) return fail("comparison not a chain map in degree " + std::to_string(n));
    }
    /* multiplicative on all basis pairs; unit preserved */
    for (auto& [da, na] : EI.complex().space.dims)
        for (auto& [db, nb] : EI.complex().space.dims) {
            for (int ia = 0; ia < na; ++ia)
                for (int ib = 0; ib < nb; ++ib) {
                    Element a{da, Vec(na, 0)}, b{db, Vec(nb, 0)};
                    a.v[ia] = 1;
                    b.v[ib] = 1;
                    Element ab = EI.mul(a, b, nullptr);
                    Vec lhs = phi.count(ab.deg) ? phi.at(ab.deg).apply(ab.v)
                                                : Vec(EP.complex().space.dim(ab.deg), 0);
                    Element fa{da, phi.at(da).apply(a.v)}, fb{db, phi.at(db).apply(b.v)};
                    Vec rhs = EP.mul(fa, fb, nullptr).v;
                    if (lhs != rhs)
                        return fail("comparison not multiplicative at degrees (" + std::to_string(da) +
                                    "," + std::to_string(db) + ")");
                }
        }
    Vec u = phi.at(0).apply(EI.unit());
    if (u != EP.unit()) return fail("comparison does not preserve the unit");
    if (why) why->clear();
    return true;
}

} // namespace koszul
