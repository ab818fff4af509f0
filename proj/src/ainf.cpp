#include "koszul/ainf.hpp"

#include <algorithm>
#include <cassert>

namespace koszul {

bool next_tuple_step(std::vector<int>& t, int base) {
    for (int i = int(t.size()) - 1; i >= 0; --i) {
        if (++t[i] < base) return true;
        t[i] = 0;
    }
    return false;
}

namespace {

bool next_tuple(std::vector<int>& t, int base) { return next_tuple_step(t, base); }

void accumulate(Element& acc, const Element& x, int coeff, int p) {
    FpField f(p);
    int c = f.reduce(coeff);
    if (c == 0) return;
    assert(acc.deg == x.deg && acc.v.size() == x.v.size());
    for (std::size_t i = 0; i < x.v.size(); ++i) acc.v[i] = f.add(acc.v[i], f.mul(c, x.v[i]));
}

void compositions_rec(int n, int r, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& cb) {
    if (int(cur.size()) == r - 1) {
        int used = 0;
        for (int x : cur) used += x;
        if (n - used >= 1) {
            cur.push_back(n - used);
            cb(cur);
            cur.pop_back();
        }
        return;
    }
    int used = 0;
    for (int x : cur) used += x;
    for (int i = 1; used + i + (r - 1 - int(cur.size())) <= n; ++i) {
        cur.push_back(i);
        compositions_rec(n, r, cur, cb);
        cur.pop_back();
    }
}

void compositions(int n, int r, const std::function<void(const std::vector<int>&)>& cb) {
    if (r < 1 || r > n) return;
    std::vector<int> cur;
    compositions_rec(n, r, cur, cb);
}

int pow_sign(long long e) { return (e % 2 != 0) ? -1 : 1; }

} // namespace

std::optional<Element> AInfinity::apply(int n, const std::vector<int>& tuple) const {
    if (n > n_max) return std::nullopt;
    int degsum = 0;
    for (int g : tuple) {
        int dg = deg_of(g);
        if (!in_window(dg)) return std::nullopt;
        degsum += dg;
    }
    int outdeg = degsum + 2 - n;
    if (!in_window(outdeg)) return std::nullopt;
    auto mit = maps.find(n);
    if (mit != maps.end()) {
        if (mit->second.uncertified.count(tuple)) return std::nullopt;
        auto it = mit->second.entries.find(tuple);
        if (it != mit->second.entries.end()) return it->second;
    }
    return Element{outdeg, Vec(space.dim(outdeg), 0)};
}

std::optional<Element> AInfinity::apply_elements(int n, const std::vector<Element>& args) const {
    int degsum = 0;
    for (auto& a : args) degsum += a.deg;
    Element acc{degsum + 2 - n, Vec(space.dim(degsum + 2 - n), 0)};
    if (!in_window(acc.deg)) return std::nullopt;

    std::vector<int> tuple(args.size());
    std::function<std::optional<bool>(std::size_t, int)> rec = [&](std::size_t pos, int coeff) -> std::optional<bool> {
        if (pos == args.size()) {
            auto val = apply(n, tuple);
            if (!val) return std::nullopt;
            accumulate(acc, *val, coeff, p);
            return true;
        }
        const Element& a = args[pos];
        for (int i = 0; i < int(a.v.size()); ++i) {
            if (a.v[i] == 0) continue;
            tuple[pos] = idx.global(a.deg, i);
            FpField f(p);
            auto r = rec(pos + 1, f.mul(f.reduce(coeff), a.v[i]));
            if (!r) return std::nullopt;
        }
        return true;
    };
    auto ok = rec(0, 1);
    if (!ok) return std::nullopt;
    return acc;
}

TargetOps ops_from_dga(const DGAlgebra& B) {
    TargetOps ops;
    ops.p = B.p();
    ops.max_nonzero_arity = 2;
    ops.unit = B.unit_element();
    const DGAlgebra* pb = &B;
    ops.dim = [pb](int deg) { return pb->complex().space.dim(deg); };
    ops.m = [pb](const std::vector<Element>& args) -> std::optional<Element> {
        const CochainComplex& cx = pb->complex();
        for (auto& a : args)
            if (!cx.certified(a.deg)) return std::nullopt;
        if (args.size() == 1) {
            Element r = pb->d(args[0]);
            if (!r.is_zero() && !cx.certified(r.deg)) return std::nullopt;
            return r;
        }
        if (args.size() == 2) {
            bool capped = false;
            Element r = pb->mul(args[0], args[1], &capped);
            if (capped) return std::nullopt;
            if (!cx.certified(r.deg) && cx.space.dim(r.deg) > 0) return std::nullopt;
            return r;
        }
        int degsum = 0;
        for (auto& a : args) degsum += a.deg;
        int outdeg = degsum + 2 - int(args.size());
        return Element{outdeg, Vec(cx.space.dim(outdeg), 0)};
    };
    return ops;
}

TargetOps ops_from_table(const AInfinity& B) {
    TargetOps ops;
    ops.p = B.p;
    ops.max_nonzero_arity = B.n_max;
    if (B.unit) ops.unit = *B.unit;
    const AInfinity* pb = &B;
    ops.dim = [pb](int deg) { return pb->space.dim(deg); };
    ops.m = [pb](const std::vector<Element>& args) { return pb->apply_elements(int(args.size()), args); };
    return ops;
}

std::optional<Element> AInfinityMorphism::apply_f(int n, const std::vector<int>& tuple) const {
    if (n > n_max) return std::nullopt;
    int degsum = 0;
    for (int g : tuple) {
        int dg = source->deg_of(g);
        if (!source->in_window(dg)) return std::nullopt;
        degsum += dg;
    }
    int outdeg = degsum + 1 - n;
    auto mit = f.find(n);
    if (mit != f.end()) {
        if (mit->second.uncertified.count(tuple)) return std::nullopt;
        auto it = mit->second.entries.find(tuple);
        if (it != mit->second.entries.end()) return it->second;
    }
    return Element{outdeg, Vec(target.dim(outdeg), 0)};
}

std::optional<Element> AInfinityMorphism::apply_f_elements(int n, const std::vector<Element>& args) const {
    int degsum = 0;
    for (auto& a : args) degsum += a.deg;
    Element acc{degsum + 1 - n, Vec(target.dim(degsum + 1 - n), 0)};

    std::vector<int> tuple(args.size());
    std::function<std::optional<bool>(std::size_t, int)> rec = [&](std::size_t pos, int coeff) -> std::optional<bool> {
        if (pos == args.size()) {
            auto val = apply_f(n, tuple);
            if (!val) return std::nullopt;
            accumulate(acc, *val, coeff, target.p);
            return true;
        }
        const Element& a = args[pos];
        for (int i = 0; i < int(a.v.size()); ++i) {
            if (a.v[i] == 0) continue;
            tuple[pos] = source->idx.global(a.deg, i);
            FpField fld(target.p);
            auto r = rec(pos + 1, fld.mul(fld.reduce(coeff), a.v[i]));
            if (!r) return std::nullopt;
        }
        return true;
    };
    auto ok = rec(0, 1);
    if (!ok) return std::nullopt;
    return acc;
}

std::optional<Element> AInfinityModule::apply_nu(int n, const std::vector<int>& tuple) const {
    assert(int(tuple.size()) == n);
    int degsum = 0;
    for (int i = 0; i + 1 < n; ++i) degsum += algebra->deg_of(tuple[i]);
    int mdeg = midx.atom(tuple[n - 1]).first;
    degsum += mdeg;
    int outdeg = degsum + 2 - n;
    if (outdeg < cert_lo || outdeg > cert_hi || mdeg < cert_lo || mdeg > cert_hi) return std::nullopt;
    auto mit = nu.find(n);
    if (mit != nu.end()) {
        if (mit->second.uncertified.count(tuple)) return std::nullopt;
        auto it = mit->second.entries.find(tuple);
        if (it != mit->second.entries.end()) return it->second;
    }
    if (n > n_max) return std::nullopt;
    return Element{outdeg, Vec(mspace.dim(outdeg), 0)};
}

CheckReport check_stasheff(const AInfinity& A, int n_max) {
    CheckReport rep;
    FpField f(A.p);
    int dim = A.idx.size();
    for (int n = 1; n <= n_max; ++n) {
        std::vector<int> T(n, 0);
        if (dim == 0) break;
        do {
            int degsum = 0;
            for (int g : T) degsum += A.deg_of(g);
            int outdeg = degsum + 3 - n;
            Element acc{outdeg, Vec(A.space.dim(outdeg), 0)};
            bool uncert = false;

            for (int r = 0; r < n && !uncert; ++r) {
                for (int s = 1; r + s <= n && !uncert; ++s) {
                    int t = n - r - s;
                    std::vector<int> inner_tuple(T.begin() + r, T.begin() + r + s);
                    auto inner = A.apply(s, inner_tuple);
                    if (!inner) { uncert = true; break; }
                    if (inner->is_zero()) continue;
                    int presum = 0;
                    for (int j = 0; j < r; ++j) presum += A.deg_of(T[j]);
                    int coef = pow_sign(r + std::int64_t(s) * t) * pow_sign(std::int64_t(s) * presum);
                    for (int c = 0; c < int(inner->v.size()); ++c) {
                        if (inner->v[c] == 0) continue;
                        std::vector<int> outer(T.begin(), T.begin() + r);
                        outer.push_back(A.idx.global(inner->deg, c));
                        outer.insert(outer.end(), T.begin() + r + s, T.end());
                        auto val = A.apply(r + 1 + t, outer);
                        if (!val) { uncert = true; break; }
                        accumulate(acc, *val, f.reduce(coef) * inner->v[c] % f.p(), A.p);
                    }
                }
            }
            if (uncert) {
                ++rep.skipped_uncertified;
                continue;
            }
            ++rep.checked;
            if (!acc.is_zero()) rep.add({n, T, acc, "stasheff"});
        } while (next_tuple(T, dim));
    }
    return rep;
}

CheckReport check_morphism(const AInfinityMorphism& fm, int n_max) {
    CheckReport rep;
    const AInfinity& A = *fm.source;
    FpField f(fm.target.p);
    int dim = A.idx.size();
    for (int n = 1; n <= n_max; ++n) {
        std::vector<int> T(n, 0);
        if (dim == 0) break;
        do {
            int degsum = 0;
            for (int g : T) degsum += A.deg_of(g);
            int outdeg = degsum + 2 - n;
            Element acc{outdeg, Vec(fm.target.dim(outdeg), 0)};
            bool uncert = false;

            /* LHS: sum (-1)^{r+st} f_{r+1+t}(1^r (x) m_s (x) 1^t) */
            for (int r = 0; r < n && !uncert; ++r) {
                for (int s = 1; r + s <= n && !uncert; ++s) {
                    int t = n - r - s;
                    std::vector<int> inner_tuple(T.begin() + r, T.begin() + r + s);
                    auto inner = A.apply(s, inner_tuple);
                    if (!inner) { uncert = true; break; }
                    if (inner->is_zero()) continue;
                    int presum = 0;
                    for (int j = 0; j < r; ++j) presum += A.deg_of(T[j]);
                    int coef = pow_sign(r + std::int64_t(s) * t) * pow_sign(std::int64_t(s) * presum);
                    for (int c = 0; c < int(inner->v.size()); ++c) {
                        if (inner->v[c] == 0) continue;
                        std::vector<int> outer(T.begin(), T.begin() + r);
                        outer.push_back(A.idx.global(inner->deg, c));
                        outer.insert(outer.end(), T.begin() + r + s, T.end());
                        auto val = fm.apply_f(r + 1 + t, outer);
                        if (!val) { uncert = true; break; }
                        accumulate(acc, *val, f.reduce(coef) * inner->v[c] % f.p(), f.p());
                    }
                }
            }

            /* RHS: sum (-1)^sigma m_r(f_{i_1} (x) ... (x) f_{i_r}), subtracted */
            for (int r = 1; r <= n && !uncert; ++r) {
                compositions(n, r, [&](const std::vector<int>& parts) {
                    if (uncert) return;
                    long long sigma = 0;
                    for (int j = 1; j <= r - 1; ++j) sigma += std::int64_t(r - j) * (parts[j - 1] - 1);
                    /* Koszul sign: f_{i_v} of degree 1-i_v passes the inputs
                     * of the earlier blocks */
                    long long kz = 0;
                    {
                        int pre = 0, off = 0;
                        for (int v = 0; v < r; ++v) {
                            if (v > 0) kz += std::int64_t(1 - parts[v]) * pre;
                            for (int j = 0; j < parts[v]; ++j) pre += A.deg_of(T[off + j]);
                            off += parts[v];
                        }
                    }
                    std::vector<Element> blocks;
                    int off = 0;
                    for (int v = 0; v < r; ++v) {
                        std::vector<int> blk(T.begin() + off, T.begin() + off + parts[v]);
                        auto val = fm.apply_f(parts[v], blk);
                        if (!val) { uncert = true; return; }
                        blocks.push_back(*val);
                        off += parts[v];
                    }
                    auto prod = fm.target.m(blocks);
                    if (!prod) { uncert = true; return; }
                    accumulate(acc, *prod, f.neg(f.reduce(pow_sign(sigma + kz))), f.p());
                });
            }

            if (uncert) {
                ++rep.skipped_uncertified;
                continue;
            }
            ++rep.checked;
            if (!acc.is_zero()) rep.add({n, T, acc, "morphism"});
        } while (next_tuple(T, dim));
    }
    return rep;
}

CheckReport check_module_stasheff(const AInfinityModule& M, int n_max) {
    CheckReport rep;
    const AInfinity& A = *M.algebra;
    FpField f(M.p);
    int dimA = A.idx.size();
    int dimM = M.midx.size();
    for (int n = 1; n <= n_max; ++n) {
        if (dimM == 0) break;
        std::vector<int> T(n, 0); /* first n-1 over algebra atoms, last over module atoms */
        auto next_mixed = [&]() {
            for (int i = n - 1; i >= 0; --i) {
                int base = (i == n - 1) ? dimM : dimA;
                if (++T[i] < base) return true;
                T[i] = 0;
            }
            return false;
        };
        do {
            if (n > 1 && dimA == 0) break;
            int degsum = 0;
            for (int i = 0; i + 1 < n; ++i) degsum += A.deg_of(T[i]);
            degsum += M.midx.atom(T[n - 1]).first;
            int outdeg = degsum + 3 - n;
            Element acc{outdeg, Vec(M.mspace.dim(outdeg), 0)};
            bool uncert = false;

            for (int r = 0; r < n && !uncert; ++r) {
                for (int s = 1; r + s <= n && !uncert; ++s) {
                    int t = n - r - s;
                    int presum = 0;
                    for (int j = 0; j < r; ++j) presum += A.deg_of(T[j]);
                    int coef = pow_sign(r + std::int64_t(s) * t) * pow_sign(std::int64_t(s) * presum);
                    if (t == 0) {
                        /* nu_{r+1}(a_1..a_r, nu_s(a_{r+1}..a_{n-1}, m)) */
                        std::vector<int> inner_tuple(T.begin() + r, T.end());
                        auto inner = M.apply_nu(s, inner_tuple);
                        if (!inner) { uncert = true; break; }
                        if (inner->is_zero()) continue;
                        for (int c = 0; c < int(inner->v.size()); ++c) {
                            if (inner->v[c] == 0) continue;
                            std::vector<int> outer(T.begin(), T.begin() + r);
                            outer.push_back(M.midx.global(inner->deg, c));
                            auto val = M.apply_nu(r + 1, outer);
                            if (!val) { uncert = true; break; }
                            accumulate(acc, *val, f.reduce(coef) * inner->v[c] % f.p(), f.p());
                        }
                    } else {
                        /* m_s acts on algebra slots only */
                        std::vector<int> inner_tuple(T.begin() + r, T.begin() + r + s);
                        auto inner = A.apply(s, inner_tuple);
                        if (!inner) { uncert = true; break; }
                        if (inner->is_zero()) continue;
                        for (int c = 0; c < int(inner->v.size()); ++c) {
                            if (inner->v[c] == 0) continue;
                            std::vector<int> outer(T.begin(), T.begin() + r);
                            outer.push_back(A.idx.global(inner->deg, c));
                            outer.insert(outer.end(), T.begin() + r + s, T.end());
                            auto val = M.apply_nu(r + 1 + t, outer);
                            if (!val) { uncert = true; break; }
                            accumulate(acc, *val, f.reduce(coef) * inner->v[c] % f.p(), f.p());
                        }
                    }
                }
            }
            if (uncert) {
                ++rep.skipped_uncertified;
                continue;
            }
            ++rep.checked;
            if (!acc.is_zero()) rep.add({n, T, acc, "module stasheff"});
        } while (next_mixed());
    }
    return rep;
}

CheckReport check_strict_unitality(const AInfinity& A) {
    CheckReport rep;
    if (!A.unit) {
        rep.pass = false;
        rep.violations.push_back({0, {}, {}, "no unit designated"});
        return rep;
    }
    const Element& one = *A.unit;
    int dim = A.idx.size();
    /* m_2(1,x) = x = m_2(x,1) */
    for (int g = 0; g < dim; ++g) {
        auto [dg, ig] = A.idx.atom(g);
        Element x{dg, Vec(A.space.dim(dg), 0)};
        x.v[ig] = 1;
        auto lx = A.apply_elements(2, {one, x});
        auto rx = A.apply_elements(2, {x, one});
        if (!lx || !rx) {
            ++rep.skipped_uncertified;
            continue;
        }
        ++rep.checked;
        if (lx->v != x.v) rep.add({2, {g}, *lx, "m_2(1,x) != x"});
        if (rx->v != x.v) rep.add({2, {g}, *rx, "m_2(x,1) != x"});
    }
    /* m_n vanishes on tuples containing the unit, n != 2; arities without a
     * stored table are identically zero and vacuously unital */
    std::vector<int> arities;
    for (auto& [n, t] : A.maps)
        if (n != 2 && !t.entries.empty()) arities.push_back(n);
    for (int n : arities) {
        if (n > 1 && dim == 0) break;
        for (int pos = 0; pos < n; ++pos) {
            std::vector<int> rest(n - 1, 0);
            bool more = true;
            while (more) {
                std::vector<Element> args;
                for (int i = 0, j = 0; i < n; ++i) {
                    if (i == pos) {
                        args.push_back(one);
                    } else {
                        auto [dg, ig] = A.idx.atom(rest[j++]);
                        Element x{dg, Vec(A.space.dim(dg), 0)};
                        x.v[ig] = 1;
                        args.push_back(std::move(x));
                    }
                }
                auto val = A.apply_elements(n, args);
                if (!val) {
                    ++rep.skipped_uncertified;
                } else {
                    ++rep.checked;
                    if (!val->is_zero()) {
                        std::vector<int> tup = rest;
                        tup.insert(tup.begin() + pos, -1);
                        rep.add({n, tup, *val, "m_n with unit input != 0"});
                    }
                }
                more = (n > 1) && next_tuple(rest, dim);
                if (n == 1) break;
            }
            if (n == 1) break; /* only one slot */
        }
    }
    return rep;
}

CheckReport check_strict_unitality(const AInfinityMorphism& fm) {
    CheckReport rep;
    const AInfinity& A = *fm.source;
    if (!A.unit) {
        rep.pass = false;
        rep.violations.push_back({0, {}, {}, "no unit designated on the source"});
        return rep;
    }
    auto f1 = fm.apply_f_elements(1, {*A.unit});
    if (!f1) {
        ++rep.skipped_uncertified;
    } else {
        ++rep.checked;
        if (f1->v != fm.target.unit.v) rep.add({1, {}, *f1, "f_1(1) != 1"});
    }
    int dim = A.idx.size();
    std::vector<int> arities;
    for (auto& [n, t] : fm.f)
        if (n >= 2 && !t.entries.empty()) arities.push_back(n);
    for (int n : arities) {
        for (int pos = 0; pos < n; ++pos) {
            std::vector<int> rest(n - 1, 0);
            bool more = dim > 0;
            while (more) {
                std::vector<Element> args;
                for (int i = 0, j = 0; i < n; ++i) {
                    if (i == pos) {
                        args.push_back(*A.unit);
                    } else {
                        auto [dg, ig] = A.idx.atom(rest[j++]);
                        Element x{dg, Vec(A.space.dim(dg), 0)};
                        x.v[ig] = 1;
                        args.push_back(std::move(x));
                    }
                }
                auto val = fm.apply_f_elements(n, args);
                if (!val) {
                    ++rep.skipped_uncertified;
                } else {
                    ++rep.checked;
                    if (!val->is_zero()) rep.add({n, rest, *val, "f_n with unit input != 0"});
                }
                more = next_tuple(rest, dim);
            }
        }
    }
    return rep;
}

CheckReport check_strict_unitality(const AInfinityModule& M) {
    CheckReport rep;
    const AInfinity& A = *M.algebra;
    if (!A.unit) {
        rep.pass = false;
        rep.violations.push_back({0, {}, {}, "no unit designated on the algebra"});
        return rep;
    }
    int dimM = M.midx.size(), dimA = A.idx.size();
    FpField f(M.p);
    /* nu_2(1, m) = m */
    for (int g = 0; g < dimM; ++g) {
        Element acc{M.midx.atom(g).first, Vec(M.mspace.dim(M.midx.atom(g).first), 0)};
        bool uncert = false;
        for (int c = 0; c < int(A.unit->v.size()); ++c) {
            if (A.unit->v[c] == 0) continue;
            auto val = M.apply_nu(2, {A.idx.global(0, c), g});
            if (!val) { uncert = true; break; }
            accumulate(acc, *val, A.unit->v[c], M.p);
        }
        if (uncert) {
            ++rep.skipped_uncertified;
            continue;
        }
        ++rep.checked;
        Vec expect(M.mspace.dim(M.midx.atom(g).first), 0);
        expect[M.midx.atom(g).second] = 1;
        if (acc.v != expect) rep.add({2, {g}, acc, "nu_2(1,m) != m"});
    }
    /* nu_n with a unit among the algebra slots vanishes for n > 2 */
    std::vector<int> arities;
    for (auto& [n, t] : M.nu)
        if (n >= 3 && !t.entries.empty()) arities.push_back(n);
    for (int n : arities) {
        for (int pos = 0; pos + 1 < n; ++pos) {
            std::vector<int> rest(n - 2, 0);
            for (int gm = 0; gm < dimM; ++gm) {
                std::vector<int> rr = rest;
                bool more = true;
                while (more) {
                    Element acc;
                    bool uncert = false;
                    bool first = true;
                    for (int c = 0; c < int(A.unit->v.size()); ++c) {
                        if (A.unit->v[c] == 0) continue;
                        std::vector<int> tup;
                        for (int i = 0, j = 0; i + 1 < n; ++i) {
                            if (i == pos) tup.push_back(A.idx.global(0, c));
                            else tup.push_back(rr[j++]);
                        }
                        tup.push_back(gm);
                        auto val = M.apply_nu(n, tup);
                        if (!val) { uncert = true; break; }
                        if (first) {
                            acc = Element{val->deg, Vec(val->v.size(), 0)};
                            first = false;
                        }
                        accumulate(acc, *val, A.unit->v[c], M.p);
                    }
                    if (uncert) ++rep.skipped_uncertified;
                    else {
                        ++rep.checked;
                        if (!first && !acc.is_zero()) rep.add({n, rr, acc, "nu_n with unit input != 0"});
                    }
                    more = (n > 2) && !rr.empty() && next_tuple(rr, dimA);
                    if (rr.empty()) break;
                }
            }
        }
    }
    return rep;
}

AInfinity opposite(const AInfinity& A) {
    AInfinity B = A;
    B.maps.clear();
    FpField f(A.p);
    for (auto& [n, table] : A.maps) {
        MultiTable op;
        op.arity = n;
        long long base = std::int64_t(n) * (n - 1) / 2 + 1;
        for (auto& [tuple, val] : table.entries) {
            std::vector<int> rev(tuple.rbegin(), tuple.rend());
            int odd = 0;
            for (int g : tuple)
                if (A.deg_of(g) % 2 != 0) ++odd;
            long long kz = std::int64_t(odd) * (odd - 1) / 2;
            int sgn = pow_sign(base + kz);
            Element e = val;
            if (sgn < 0) e.v = vec_scale(e.v, f.neg(1), A.p);
            op.entries[rev] = std::move(e);
        }
        for (auto& tuple : table.uncertified)
            op.uncertified.insert(std::vector<int>(tuple.rbegin(), tuple.rend()));
        B.maps[n] = std::move(op);
    }
    return B;
}

AInfinityModule restrict_module(const AInfinityMorphism& fm, const AInfinityModule& M, int n_max) {
    const AInfinity& A = *fm.source;
    AInfinityModule out;
    out.algebra = &A;
    out.p = M.p;
    out.mspace = M.mspace;
    out.rebuild_index();
    out.n_max = n_max;
    out.cert_lo = M.cert_lo;
    out.cert_hi = M.cert_hi;
    FpField f(M.p);

    int dimA = A.idx.size(), dimM = M.midx.size();
    for (int n = 1; n <= n_max; ++n) {
        MultiTable table;
        table.arity = n;
        std::vector<int> T(n, 0);
        auto next_mixed = [&]() {
            for (int i = n - 1; i >= 0; --i) {
                int base = (i == n - 1) ? dimM : dimA;
                if (++T[i] < base) return true;
                T[i] = 0;
            }
            return false;
        };
        if (dimM == 0 || (n > 1 && dimA == 0)) {
            out.nu[n] = std::move(table);
            continue;
        }
        do {
            int degsum = 0;
            for (int i = 0; i + 1 < n; ++i) degsum += A.deg_of(T[i]);
            int mdeg = M.midx.atom(T[n - 1]).first;
            Element acc{degsum + mdeg + 2 - n, Vec(M.mspace.dim(degsum + mdeg + 2 - n), 0)};
            bool uncert = false;

            if (n == 1) {
                auto val = M.apply_nu(1, {T[0]});
                if (!val) uncert = true;
                else acc = *val;
            } else {
                for (int r = 1; r <= n - 1 && !uncert; ++r) {
                    if (r + 1 > M.n_max) {
                        bool any = false;
                        compositions(n - 1, r, [&](const std::vector<int>&) { any = true; });
                        if (any) throw ArityOverflow("restriction needs nu_" + std::to_string(r + 1));
                    }
                    compositions(n - 1, r, [&](const std::vector<int>& parts) {
                        if (uncert) return;
                        /* sigma over the blocks (f_{i_1},...,f_{i_r}, Id): the
                         * identity slot counts as an (r+1)-th block of arity 1;
                         * the checker rejects the other reading */
                        long long sigma = 0;
                        for (int j = 1; j <= r; ++j) sigma += std::int64_t(r + 1 - j) * (parts[j - 1] - 1);
                        long long kz = 0;
                        {
                            int pre = 0, off = 0;
                            for (int v = 0; v < r; ++v) {
                                if (v > 0) kz += std::int64_t(1 - parts[v]) * pre;
                                for (int j = 0; j < parts[v]; ++j) pre += A.deg_of(T[off + j]);
                                off += parts[v];
                            }
                        }
                        std::vector<Element> blocks;
                        int off = 0;
                        for (int v = 0; v < r; ++v) {
                            std::vector<int> blk(T.begin() + off, T.begin() + off + parts[v]);
                            auto val = fm.apply_f(parts[v], blk);
                            if (!val) { uncert = true; return; }
                            blocks.push_back(*val);
                            off += parts[v];
                        }
                        /* expand nu_{r+1}(blocks..., m-atom) multilinearly */
                        int coef0 = pow_sign(sigma + kz);
                        std::vector<int> tup(r + 1);
                        tup[r] = T[n - 1];
                        std::function<void(int, int)> expand = [&](int v, int coeff) {
                            if (uncert) return;
                            if (v == r) {
                                auto val = M.apply_nu(r + 1, tup);
                                if (!val) { uncert = true; return; }
                                accumulate(acc, *val, coeff, M.p);
                                return;
                            }
                            for (int c = 0; c < int(blocks[v].v.size()); ++c) {
                                if (blocks[v].v[c] == 0) continue;
                                tup[v] = M.algebra->idx.global(blocks[v].deg, c);
                                expand(v + 1, f.mul(f.reduce(coeff), blocks[v].v[c]));
                            }
                        };
                        expand(0, coef0);
                    });
                }
            }
            if (uncert) table.uncertified.insert(T);
            else if (!acc.is_zero()) table.entries[T] = std::move(acc);
        } while (next_mixed());
        out.nu[n] = std::move(table);
    }
    return out;
}

AInfinity dga_to_ainfinity(const DGAlgebra& A) {
    const CochainComplex& cx = A.complex();
    if (cx.space.total_dim() > 5000)
        throw std::invalid_argument("DGA too large to materialize as tables");
    AInfinity out;
    out.p = A.p();
    out.space = cx.space;
    out.rebuild_index();
    out.n_max = 8;
    out.cert_lo = cx.cert_lo;
    out.cert_hi = cx.cert_hi;
    out.unit = A.unit_element();

    MultiTable m1;
    m1.arity = 1;
    for (int g = 0; g < out.idx.size(); ++g) {
        auto [dg, ig] = out.idx.atom(g);
        Element x{dg, Vec(cx.space.dim(dg), 0)};
        x.v[ig] = 1;
        Element dx = A.d(x);
        if (!dx.is_zero()) m1.entries[{g}] = std::move(dx);
    }
    out.maps[1] = std::move(m1);

    MultiTable m2;
    m2.arity = 2;
    for (int ga = 0; ga < out.idx.size(); ++ga) {
        auto [da, ia] = out.idx.atom(ga);
        Element a{da, Vec(cx.space.dim(da), 0)};
        a.v[ia] = 1;
        for (int gb = 0; gb < out.idx.size(); ++gb) {
            auto [db, ib] = out.idx.atom(gb);
            Element b{db, Vec(cx.space.dim(db), 0)};
            b.v[ib] = 1;
            bool capped = false;
            Element ab = A.mul(a, b, &capped);
            if (capped) m2.uncertified.insert({ga, gb});
            else if (!ab.is_zero()) m2.entries[{ga, gb}] = std::move(ab);
        }
    }
    out.maps[2] = std::move(m2);
    return out;
}

AInfinityModule module_from_dga(const DGAlgebra& B, const AInfinity& Btable) {
    AInfinityModule M;
    M.algebra = &Btable;
    M.p = B.p();
    M.mspace = B.complex().space;
    M.rebuild_index();
    M.n_max = 8;
    M.cert_lo = B.complex().cert_lo;
    M.cert_hi = B.complex().cert_hi;

    MultiTable nu1;
    nu1.arity = 1;
    for (int g = 0; g < M.midx.size(); ++g) {
        auto [dg, ig] = M.midx.atom(g);
        Element x{dg, Vec(M.mspace.dim(dg), 0)};
        x.v[ig] = 1;
        Element dx = B.d(x);
        if (!dx.is_zero()) nu1.entries[{g}] = std::move(dx);
    }
    M.nu[1] = std::move(nu1);

    MultiTable nu2;
    nu2.arity = 2;
    for (int ga = 0; ga < Btable.idx.size(); ++ga) {
        auto [da, ia] = Btable.idx.atom(ga);
        Element a{da, Vec(B.complex().space.dim(da), 0)};
        a.v[ia] = 1;
        for (int gm = 0; gm < M.midx.size(); ++gm) {
            auto [dm, im] = M.midx.atom(gm);
            Element x{dm, Vec(M.mspace.dim(dm), 0)};
            x.v[im] = 1;
            bool capped = false;
            Element ax = B.mul(a, x, &capped);
            if (capped) nu2.uncertified.insert({ga, gm});
            else if (!ax.is_zero()) nu2.entries[{ga, gm}] = std::move(ax);
        }
    }
    M.nu[2] = std::move(nu2);
    return M;
}

AInfinity exterior_ainfinity(int d, int p, int n_max) {
    AInfinity out;
    out.p = p;
    out.n_max = n_max;
    /* basis: subsets of {1..d}, degree = size, ordered lexicographically */
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
        out.space.dims[i] = int(subsets[i].size());
        for (int k = 0; k < int(subsets[i].size()); ++k) {
            subset_index[i][subsets[i][k]] = k;
            std::string lab = "e{";
            for (int j = 0; j < i; ++j) {
                if (j) lab += ",";
                lab += std::to_string(subsets[i][k][j] + 1);
            }
            lab += "}";
            out.space.labels[i].push_back(lab);
            out.space.weights[i].push_back(i);
        }
    }
    out.rebuild_index();
    out.unit = Element{0, Vec(1, 1)};

    FpField f(p);
    MultiTable m2;
    m2.arity = 2;
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j)
            for (int a = 0; a < int(subsets[i].size()); ++a)
                for (int b = 0; b < int(subsets[j].size()); ++b) {
                    const auto &S = subsets[i][a], &T = subsets[j][b];
                    bool overlap = false;
                    for (int x : S)
                        for (int y : T)
                            if (x == y) overlap = true;
                    if (overlap) continue;
                    int inv = 0;
                    for (int x : S)
                        for (int y : T)
                            if (x > y) ++inv;
                    std::vector<int> un;
                    un.reserve(i + j);
                    std::merge(S.begin(), S.end(), T.begin(), T.end(), std::back_inserter(un));
                    Element e{i + j, Vec(out.space.dim(i + j), 0)};
                    e.v[subset_index[i + j].at(un)] = inv % 2 ? f.neg(1) : 1;
                    m2.entries[{out.idx.global(i, a), out.idx.global(j, b)}] = std::move(e);
                }
    out.maps[2] = std::move(m2);
    return out;
}

} // namespace koszul
