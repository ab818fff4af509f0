#include "koszul/dga.hpp"

namespace koszul {

Element DGAlgebra::d(const Element& a) const {
    Element out;
    out.deg = a.deg + 1;
    out.v.assign(cx_.space.dim(out.deg), 0);
    if (cx_.space.dim(a.deg) == 0) return out;
    auto it = cx_.d.find(a.deg);
    if (it != cx_.d.end()) out.v = it->second.apply(a.v);
    return out;
}

TableDGA::TableDGA(CochainComplex cx, std::pair<int, int> unit_atom) : unit_atom_(unit_atom) {
    cx_ = std::move(cx);
}

void TableDGA::set_product(int da, int ia, int db, int ib, Vec result) {
    prod_[{da, ia, db, ib}] = std::move(result);
}

Vec TableDGA::unit() const {
    Vec u(cx_.space.dim(unit_atom_.first), 0);
    u[unit_atom_.second] = 1;
    return u;
}

Vec TableDGA::multiply(int da, const Vec& a, int db, const Vec& b, bool* capped) const {
    (void)capped;
    FpField f(p());
    Vec out(cx_.space.dim(da + db), 0);
    for (int ia = 0; ia < int(a.size()); ++ia) {
        if (a[ia] == 0) continue;
        for (int ib = 0; ib < int(b.size()); ++ib) {
            if (b[ib] == 0) continue;
            auto it = prod_.find({da, ia, db, ib});
            if (it == prod_.end()) continue;
            int c = f.mul(a[ia], b[ib]);
            for (int k = 0; k < int(out.size()); ++k)
                out[k] = f.add(out[k], f.mul(c, it->second[k]));
        }
    }
    return out;
}

bool check_leibniz(const DGAlgebra& A, std::string* why) {
    const CochainComplex& cx = A.complex();
    FpField f(A.p());
    for (auto& [da, na] : cx.space.dims) {
        for (auto& [db, nb] : cx.space.dims) {
            for (int ia = 0; ia < na; ++ia)
                for (int ib = 0; ib < nb; ++ib) {
                    Element a{da, Vec(na, 0)}, b{db, Vec(nb, 0)};
                    a.v[ia] = 1;
                    b.v[ib] = 1;
                    Element ab = A.mul(a, b, nullptr);
                    Element lhs = A.d(ab);
                    Element t1 = A.mul(A.d(a), b, nullptr);
                    Element t2 = A.mul(a, A.d(b), nullptr);
                    Vec rhs = vec_add(t1.v, vec_scale(t2.v, da % 2 ? f.neg(1) : 1, A.p()), A.p());
                    if (lhs.v != rhs) {
                        if (why)
                            *why = "Leibniz fails at degrees (" + std::to_string(da) + "," +
                                   std::to_string(db) + ") basis (" + std::to_string(ia) + "," +
                                   std::to_string(ib) + ")";
                        return false;
                    }
                }
        }
    }
    if (why) why->clear();
    return true;
}

bool check_dga_unit(const DGAlgebra& A, std::string* why) {
    Element one = A.unit_element();
    if (!A.d(one).is_zero()) {
        if (why) *why = "d(1) != 0";
        return false;
    }
    for (auto& [deg, n] : A.complex().space.dims) {
        for (int i = 0; i < n; ++i) {
            Element x{deg, Vec(n, 0)};
            x.v[i] = 1;
            if (A.mul(one, x, nullptr).v != x.v || A.mul(x, one, nullptr).v != x.v) {
                if (why) *why = "unit fails at degree " + std::to_string(deg) + " index " + std::to_string(i);
                return false;
            }
        }
    }
    if (why) why->clear();
    return true;
}

} // namespace koszul
