#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace koszul {

using Vec = std::vector<int>;

struct ModulusMismatch : std::runtime_error {
    explicit ModulusMismatch(const std::string& msg) : std::runtime_error(msg) {}
};
struct DependentInput : std::runtime_error {
    explicit DependentInput(const std::string& msg) : std::runtime_error(msg) {}
};

bool is_prime(int n);

/* Arithmetic context for F_p. Values are canonical representatives in [0, p). */
class FpField {
public:
    explicit FpField(int p);
    int p() const { return p_; }
    int add(int a, int b) const { int s = a + b; return s >= p_ ? s - p_ : s; }
    int sub(int a, int b) const { int s = a - b; return s < 0 ? s + p_ : s; }
    int neg(int a) const { return a == 0 ? 0 : p_ - a; }
    int mul(int a, int b) const { return int(std::int64_t(a) * b % p_); }
    int inv(int a) const;
    /* reduce an arbitrary integer into [0, p) */
    int reduce(std::int64_t a) const {
        int r = int(a % p_);
        return r < 0 ? r + p_ : r;
    }

private:
    int p_;
};

/* Dense matrix over F_p, row-major, acting on column vectors. */
class FpMatrix {
public:
    FpMatrix() : rows_(0), cols_(0), p_(2) {}
    FpMatrix(int rows, int cols, int p);

    static FpMatrix identity(int n, int p);
    static FpMatrix from_columns(const std::vector<Vec>& cols, int rows, int p);
    static FpMatrix from_rows(const std::vector<Vec>& rows, int cols, int p);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int p() const { return p_; }
    int& at(int r, int c) { return a_[std::size_t(r) * cols_ + c]; }
    int at(int r, int c) const { return a_[std::size_t(r) * cols_ + c]; }
    void set(int r, int c, int v);

    bool is_zero() const;
    bool operator==(const FpMatrix& o) const;
    bool operator!=(const FpMatrix& o) const { return !(*this == o); }

    FpMatrix transpose() const;
    FpMatrix operator*(const FpMatrix& o) const;
    FpMatrix operator+(const FpMatrix& o) const;
    FpMatrix operator-(const FpMatrix& o) const;
    FpMatrix scaled(int c) const;
    Vec apply(const Vec& v) const;

    Vec column(int c) const;
    Vec row(int r) const;
    /* horizontal concatenation [this | o] */
    FpMatrix augment(const FpMatrix& o) const;
    FpMatrix sub_columns(const std::vector<int>& idx) const;
    FpMatrix sub_rows(const std::vector<int>& idx) const;

private:
    int rows_, cols_, p_;
    std::vector<int> a_;
};

struct RrefResult {
    FpMatrix R;
    std::vector<int> pivots; /* strictly increasing column indices */
    int rank;
};

/* Reduced row echelon form by Gauss-Jordan over F_p.  Deterministic:
 * pivot = first row with a nonzero entry in the leftmost unfinished column. */
RrefResult rref(const FpMatrix& M);

int rank(const FpMatrix& M);

/* Basis of {v : Mv = 0}; one vector per free column, in increasing column
 * order, with the free coordinate set to 1.  Size = cols - rank. */
std::vector<Vec> kernel_basis(const FpMatrix& M);

/* Basis of the column space: the original columns of M at the rref pivot
 * indices. */
std::vector<Vec> image_basis(const FpMatrix& M);

/* Extend the independent family U to a basis of F_p^n by the standard basis
 * vectors at the non-pivot columns of rref(U).  Throws DependentInput if U is
 * dependent. */
std::vector<Vec> complement(const std::vector<Vec>& U, int n, int p);

/* Particular solution of Mx = b with all free variables set to zero, or
 * nullopt when b is not in the image of M. */
std::optional<Vec> solve(const FpMatrix& M, const Vec& b);

/* Inverse of a square invertible matrix; throws std::invalid_argument if
 * singular. */
FpMatrix inverse(const FpMatrix& M);

/* Vector helpers (modulus passed explicitly). */
Vec vec_add(const Vec& a, const Vec& b, int p);
Vec vec_sub(const Vec& a, const Vec& b, int p);
Vec vec_scale(const Vec& a, int c, int p);
bool vec_is_zero(const Vec& a);

} // namespace koszul
