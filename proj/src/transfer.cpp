#include "koszul/transfer.hpp"

#include <cassert>

namespace koszul {

namespace {

struct LambdaEval {
    const DGAlgebra& A;
    const CohomologySplitting& S;
    const std::vector<Element>& x;
    /* memo[(a,b)] = h(lambda(x_a..x_{b-1})), with h lambda_1 = -Id */
    std::map<std::pair<int, int>, std::pair<Element, bool>> memo;

    std::pair<Element, bool> lambda(int a, int b) {
        int m = b - a;
        assert(m >= 2);
        FpField f(A.p());
        int degsum_total = 0;
        for (int j = a; j < b; ++j) degsum_total += x[j].deg;
        Element acc{degsum_total + 2 - m, Vec(A.complex().space.dim(degsum_total + 2 - m), 0)};
        bool taint = false;
        for (int k = 1; k < m; ++k) {
            auto [left, tl] = hlambda(a, a + k);
            auto [right, tr] = hlambda(a + k, b);
            taint |= tl | tr;
            if (left.is_zero() || right.is_zero()) continue;
            /* Koszul: the right operator (degree 1-(m-k)) passes the first k
             * inputs */
            int presum = 0;
            for (int j = a; j < a + k; ++j) presum += x[j].deg;
            long long sgn = std::int64_t(k + 1) + std::int64_t(1 - (m - k)) * presum;
            bool capped = false;
            Element prod = A.mul(left, right, &capped);
            taint |= capped;
            if (prod.is_zero()) continue;
            assert(prod.deg == acc.deg);
            int c = (sgn % 2 != 0) ? f.neg(1) : 1;
            for (std::size_t i = 0; i < prod.v.size(); ++i)
                acc.v[i] = f.add(acc.v[i], f.mul(c, prod.v[i]));
        }
        return {acc, taint};
    }

    std::pair<Element, bool> hlambda(int a, int b) {
        auto key = std::make_pair(a, b);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::pair<Element, bool> out;
        if (b - a == 1) {
            FpField f(A.p());
            Element e = x[a];
            e.v = vec_scale(e.v, f.neg(1), A.p());
            out = {std::move(e), false};
        } else {
            auto [lam, taint] = lambda(a, b);
            Element h{lam.deg - 1, S.homotopy(A.complex(), lam.deg).apply(lam.v)};
            out = {std::move(h), taint};
        }
        memo[key] = out;
        return out;
    }
};

} // namespace

std::pair<Element, bool> transfer_lambda(const DGAlgebra& A, const CohomologySplitting& S,
                                         const std::vector<Element>& inputs) {
    if (inputs.size() == 1) return {inputs[0], false};
    if (inputs.size() == 2) {
        bool capped = false;
        Element prod = A.mul(inputs[0], inputs[1], &capped);
        return {prod, capped};
    }
    LambdaEval ev{A, S, inputs, {}};
    return ev.lambda(0, int(inputs.size()));
}

SplittingOptions unit_seeded_options(const DGAlgebra& A, int threads) {
    SplittingOptions opts;
    opts.preferred_h[0] = {A.unit()};
    opts.threads = threads;
    return opts;
}

TransferResult transfer_minimal_model(const DGAlgebra& A, const CohomologySplitting& S,
                                      const TransferOptions& opts) {
    std::string why;
    if (!verify_splitting(A.complex(), S, &why)) throw BadSplitting("invalid splitting: " + why);

    const CochainComplex& cx = A.complex();
    TransferResult out;
    out.data = TransferData{&A, S};
    out.H = std::make_shared<AInfinity>();
    AInfinity& H = *out.H;
    H.p = A.p();
    H.n_max = opts.n_max;

    /* per degree: kept column indices of the harmonic basis */
    std::map<int, std::vector<int>> kept;
    std::map<int, int> full_hdim;
    for (auto& [deg, n] : cx.space.dims) {
        (void)n;
        int hd = S.h_dim(deg);
        full_hdim[deg] = hd;
        if (hd == 0 || deg < opts.deg_lo || deg > opts.deg_hi) continue;
        const FpMatrix& cols = S.H.at(deg);
        std::vector<int> cols_kept;
        for (int k = 0; k < hd; ++k) {
            int w = 0;
            bool have_w = cx.space.has_weights();
            if (have_w) {
                bool found = false;
                for (int r = 0; r < cols.rows(); ++r) {
                    if (cols.at(r, k) == 0) continue;
                    int wr = cx.space.weight(deg, r);
                    if (!found) {
                        w = wr;
                        found = true;
                    } else if (wr != w) {
                        throw BadSplitting("harmonic basis vector not weight-homogeneous");
                    }
                }
            }
            if (have_w && (w < opts.weight_lo || w > opts.weight_hi)) continue;
            cols_kept.push_back(k);
            int idx = int(cols_kept.size()) - 1;
            H.space.dims[deg] = idx + 1;
            H.space.labels[deg].push_back("h" + std::to_string(deg) + "_" + std::to_string(idx));
            if (have_w) H.space.weights[deg].push_back(w);
        }
        if (!cols_kept.empty()) kept[deg] = std::move(cols_kept);
    }
    H.rebuild_index();

    auto restrict_h = [&](const Element& full) -> std::pair<Element, bool> {
        /* split a full harmonic-coordinate vector at degree full.deg into the
         * kept part and a flag for nonzero dropped coordinates */
        Element r{full.deg, Vec(H.space.dim(full.deg), 0)};
        bool dropped = false;
        auto it = kept.find(full.deg);
        std::vector<bool> is_kept(full.v.size(), false);
        if (it != kept.end())
            for (int j = 0; j < int(it->second.size()); ++j) {
                is_kept[it->second[j]] = true;
                r.v[j] = full.v[it->second[j]];
            }
        for (int k = 0; k < int(full.v.size()); ++k)
            if (full.v[k] != 0 && !is_kept[k]) dropped = true;
        return {r, dropped};
    };

    /* unit = p(1) */
    if (S.proj.count(0)) {
        auto [u, dropped] = restrict_h(Element{0, S.proj.at(0).apply(A.unit())});
        if (!dropped) H.unit = std::move(u);
    }

    /* f_1 = i on the kept classes */
    AInfinityMorphism& f = out.f;
    f.source = out.H.get();
    f.target = ops_from_dga(A);
    f.n_max = opts.n_max;
    MultiTable f1;
    f1.arity = 1;
    for (int g = 0; g < H.idx.size(); ++g) {
        auto [deg, k] = H.idx.atom(g);
        f1.entries[{g}] = Element{deg, S.incl.at(deg).column(kept.at(deg)[k])};
    }
    f.f[1] = std::move(f1);

    /* mu_n and f_n by the tree recursion */
    int dim = H.idx.size();
    for (int n = 2; n <= opts.n_max; ++n) {
        MultiTable mu, fn;
        mu.arity = n;
        fn.arity = n;
        std::vector<int> T(n, 0);
        if (dim == 0) {
            H.maps[n] = std::move(mu);
            f.f[n] = std::move(fn);
            continue;
        }
        bool more = true;
        while (more) {
            std::vector<Element> inputs;
            inputs.reserve(n);
            int degsum = 0;
            for (int g : T) {
                auto [deg, k] = H.idx.atom(g);
                degsum += deg;
                inputs.push_back(Element{deg, S.incl.at(deg).column(kept.at(deg)[k])});
            }
            auto [lam, taint] = transfer_lambda(A, S, inputs);
            assert(lam.deg == degsum + 2 - n);

            Element mu_full{lam.deg, S.proj.count(lam.deg) ? S.proj.at(lam.deg).apply(lam.v)
                                                           : Vec(full_hdim.count(lam.deg) ? full_hdim[lam.deg] : 0, 0)};
            auto [muv, dropped] = restrict_h(mu_full);
            /* f_n = -h lambda_n: the sign is forced by the morphism identity
             * at n = 2 (f_1 mu_2 - m_2(f_1,f_1) = d(-h lambda_2)) and the
             * checker confirms it for the higher arities */
            FpField fld(A.p());
            Element fv{lam.deg - 1,
                       vec_scale(S.homotopy(cx, lam.deg).apply(lam.v), fld.neg(1), A.p())};

            if (taint || dropped) {
                if (dropped) ++out.dropped_component_tuples;
                mu.uncertified.insert(T);
                fn.uncertified.insert(T);
            } else {
                if (!muv.is_zero()) mu.entries[T] = std::move(muv);
                if (!fv.is_zero()) fn.entries[T] = std::move(fv);
            }
            more = next_tuple_step(T, dim);
        }
        H.maps[n] = std::move(mu);
        f.f[n] = std::move(fn);
    }
    return out;
}

} // namespace koszul
