#pragma once

#include <memory>

#include "koszul/graded.hpp"

namespace koszul {

/* Homogeneous element of a graded space: degree + dense coefficient vector
 * over that degree's basis. */
struct Element {
    int deg = 0;
    Vec v;
    bool is_zero() const { return vec_is_zero(v); }
};

enum class CompositionOrder { direct, opposite };

/* Differential graded algebra presented on an explicit finite complex.
 * multiply() reports (via *capped) when the product lost terms to a
 * truncation boundary, i.e. when the result is not certified to agree with
 * the untruncated object. */
class DGAlgebra {
public:
    virtual ~DGAlgebra() = default;
    const CochainComplex& complex() const { return cx_; }
    int p() const { return cx_.p; }
    virtual Vec unit() const = 0;
    virtual Vec multiply(int deg_a, const Vec& a, int deg_b, const Vec& b, bool* capped) const = 0;

    Element mul(const Element& a, const Element& b, bool* capped) const {
        return Element{a.deg + b.deg, multiply(a.deg, a.v, b.deg, b.v, capped)};
    }
    Element d(const Element& a) const;
    Element unit_element() const { return Element{0, unit()}; }

protected:
    CochainComplex cx_;
};

/* DGA given by explicit degree-wise product tables; used for small test
 * algebras and JSON-loaded fixtures.  product[(da,ia),(db,ib)] is the dense
 * result vector in degree da+db. */
class TableDGA : public DGAlgebra {
public:
    TableDGA(CochainComplex cx, std::pair<int, int> unit_atom);
    void set_product(int da, int ia, int db, int ib, Vec result);
    Vec unit() const override;
    Vec multiply(int da, const Vec& a, int db, const Vec& b, bool* capped) const override;

private:
    std::pair<int, int> unit_atom_;
    std::map<std::tuple<int, int, int, int>, Vec> prod_;
};

/* Leibniz rule on every pair of homogeneous basis elements. */
bool check_leibniz(const DGAlgebra& A, std::string* why = nullptr);

/* Unit axioms: d(1) = 0, 1*x = x = x*1 on every basis element. */
bool check_dga_unit(const DGAlgebra& A, std::string* why = nullptr);

} // namespace koszul
