#include "koszul/fp.hpp"

#include <algorithm>
#include <cassert>

namespace koszul {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; std::int64_t(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FpField::FpField(int p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("modulus must be prime, got " + std::to_string(p));
}

int FpField::inv(int a) const {
    if (a == 0) throw std::invalid_argument("inverse of 0");
    /* extended Euclid */
    int t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
        int q = r / new_r;
        int tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    assert(r == 1);
    return t < 0 ? t + p_ : t;
}

FpMatrix::FpMatrix(int rows, int cols, int p) : rows_(rows), cols_(cols), p_(p) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    a_.assign(std::size_t(rows) * cols, 0);
}

FpMatrix FpMatrix::identity(int n, int p) {
    FpMatrix m(n, n, p);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FpMatrix FpMatrix::from_columns(const std::vector<Vec>& cols, int rows, int p) {
    FpMatrix m(rows, int(cols.size()), p);
    for (int c = 0; c < int(cols.size()); ++c) {
        if (int(cols[c].size()) != rows) throw std::invalid_argument("column length mismatch");
        for (int r = 0; r < rows; ++r) m.set(r, c, cols[c][r]);
    }
    return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<Vec>& rows, int cols, int p) {
    FpMatrix m(int(rows.size()), cols, p);
    for (int r = 0; r < int(rows.size()); ++r) {
        if (int(rows[r].size()) != cols) throw std::invalid_argument("row length mismatch");
        for (int c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
    }
    return m;
}

void FpMatrix::set(int r, int c, int v) {
    FpField f(p_);
    at(r, c) = f.reduce(v);
}

bool FpMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](int x) { return x == 0; });
}

bool FpMatrix::operator==(const FpMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix m(cols_, rows_, p_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
    return m;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
    if (p_ != o.p_) throw ModulusMismatch("matrix product across moduli");
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    FpMatrix m(rows_, o.cols_, p_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            int v = at(r, k);
            if (v == 0) continue;
            for (int c = 0; c < o.cols_; ++c) {
                std::int64_t s = m.at(r, c) + std::int64_t(v) * o.at(k, c);
                m.at(r, c) = int(s % p_);
            }
        }
    return m;
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
    if (p_ != o.p_) throw ModulusMismatch("matrix sum across moduli");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    FpMatrix m(rows_, cols_, p_);
    FpField f(p_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f.add(a_[i], o.a_[i]);
    return m;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
    if (p_ != o.p_) throw ModulusMismatch("matrix difference across moduli");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference shape mismatch");
    FpMatrix m(rows_, cols_, p_);
    FpField f(p_);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f.sub(a_[i], o.a_[i]);
    return m;
}

FpMatrix FpMatrix::scaled(int c) const {
    FpMatrix m(rows_, cols_, p_);
    FpField f(p_);
    int cc = f.reduce(c);
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = f.mul(a_[i], cc);
    return m;
}

Vec FpMatrix::apply(const Vec& v) const {
    if (int(v.size()) != cols_) throw std::invalid_argument("matrix apply length mismatch");
    Vec out(rows_, 0);
    for (int r = 0; r < rows_; ++r) {
        std::int64_t s = 0;
        for (int c = 0; c < cols_; ++c) s += std::int64_t(at(r, c)) * v[c];
        out[r] = int(s % p_);
    }
    return out;
}

Vec FpMatrix::column(int c) const {
    Vec v(rows_);
    for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

Vec FpMatrix::row(int r) const {
    Vec v(cols_);
    for (int c = 0; c < cols_; ++c) v[c] = at(r, c);
    return v;
}

FpMatrix FpMatrix::augment(const FpMatrix& o) const {
    if (p_ != o.p_) throw ModulusMismatch("augment across moduli");
    if (rows_ != o.rows_) throw std::invalid_argument("augment row mismatch");
    FpMatrix m(rows_, cols_ + o.cols_, p_);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
        for (int c = 0; c < o.cols_; ++c) m.at(r, cols_ + c) = o.at(r, c);
    }
    return m;
}

FpMatrix FpMatrix::sub_columns(const std::vector<int>& idx) const {
    FpMatrix m(rows_, int(idx.size()), p_);
    for (int c = 0; c < int(idx.size()); ++c)
        for (int r = 0; r < rows_; ++r) m.at(r, c) = at(r, idx[c]);
    return m;
}

FpMatrix FpMatrix::sub_rows(const std::vector<int>& idx) const {
    FpMatrix m(int(idx.size()), cols_, p_);
    for (int r = 0; r < int(idx.size()); ++r)
        for (int c = 0; c < cols_; ++c) m.at(r, c) = at(idx[r], c);
    return m;
}

RrefResult rref(const FpMatrix& M) {
    FpField f(M.p());
    FpMatrix R = M;
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < R.cols() && row < R.rows(); ++col) {
        int piv = -1;
        for (int r = row; r < R.rows(); ++r)
            if (R.at(r, col) != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int c = col; c < R.cols(); ++c) std::swap(R.at(piv, c), R.at(row, c));
        int s = f.inv(R.at(row, col));
        for (int c = col; c < R.cols(); ++c) R.at(row, c) = f.mul(R.at(row, c), s);
        for (int r = 0; r < R.rows(); ++r) {
            if (r == row || R.at(r, col) == 0) continue;
            int m = R.at(r, col);
            for (int c = col; c < R.cols(); ++c)
                R.at(r, c) = f.sub(R.at(r, c), f.mul(m, R.at(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    return RrefResult{std::move(R), std::move(pivots), row};
}

int rank(const FpMatrix& M) { return rref(M).rank; }

std::vector<Vec> kernel_basis(const FpMatrix& M) {
    RrefResult rr = rref(M);
    FpField f(M.p());
    std::vector<bool> is_pivot(M.cols(), false);
    for (int c : rr.pivots) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int free = 0; free < M.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(M.cols(), 0);
        v[free] = 1;
        for (int r = 0; r < int(rr.pivots.size()); ++r)
            v[rr.pivots[r]] = f.neg(rr.R.at(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Vec> image_basis(const FpMatrix& M) {
    RrefResult rr = rref(M);
    std::vector<Vec> basis;
    for (int c : rr.pivots) basis.push_back(M.column(c));
    return basis;
}

std::vector<Vec> complement(const std::vector<Vec>& U, int n, int p) {
    FpMatrix rowsU = FpMatrix::from_rows(U, n, p);
    RrefResult rr = rref(rowsU);
    if (rr.rank != int(U.size())) throw DependentInput("complement: input vectors are dependent");
    std::vector<bool> is_pivot(n, false);
    for (int c : rr.pivots) is_pivot[c] = true;
    std::vector<Vec> out;
    for (int j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        Vec e(n, 0);
        e[j] = 1;
        out.push_back(std::move(e));
    }
    return out;
}

std::optional<Vec> solve(const FpMatrix& M, const Vec& b) {
    if (int(b.size()) != M.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    FpMatrix aug = M.augment(FpMatrix::from_columns({b}, M.rows(), M.p()));
    RrefResult rr = rref(aug);
    for (int c : rr.pivots)
        if (c == M.cols()) return std::nullopt;
    Vec x(M.cols(), 0);
    for (int r = 0; r < int(rr.pivots.size()); ++r) x[rr.pivots[r]] = rr.R.at(r, M.cols());
    return x;
}

FpMatrix inverse(const FpMatrix& M) {
    if (M.rows() != M.cols()) throw std::invalid_argument("inverse of non-square matrix");
    int n = M.rows();
    if (n == 0) return M;
    RrefResult rr = rref(M.augment(FpMatrix::identity(n, M.p())));
    /* invertible iff the pivots are exactly the first n columns */
    if (int(rr.pivots.size()) < n || rr.pivots[n - 1] != n - 1)
        throw std::invalid_argument("inverse of singular matrix");
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = n + i;
    return rr.R.sub_columns(idx);
}

Vec vec_add(const Vec& a, const Vec& b, int p) {
    FpField f(p);
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.add(a[i], b[i]);
    return out;
}

Vec vec_sub(const Vec& a, const Vec& b, int p) {
    FpField f(p);
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
    return out;
}

Vec vec_scale(const Vec& a, int c, int p) {
    FpField f(p);
    int cc = f.reduce(c);
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.mul(a[i], cc);
    return out;
}

bool vec_is_zero(const Vec& a) {
    return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

} // namespace koszul
