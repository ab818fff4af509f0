#include "koszul/monalg.hpp"

#include <algorithm>

namespace koszul {

namespace {
void gen_monomials(int d, int cap, std::vector<int>& cur, int used, int pos,
                   std::vector<std::vector<int>>& out) {
    if (pos == d) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e + used <= cap; ++e) {
        cur[pos] = e;
        gen_monomials(d, cap, cur, used + e, pos + 1, out);
    }
    cur[pos] = 0;
}
} // namespace

MonomialAlgebra::MonomialAlgebra(int d, int p, int cap, bool exact_quotient)
    : d_(d), p_(p), cap_(cap), exact_(exact_quotient) {
    if (d < 1) throw std::invalid_argument("need at least one variable");
    if (cap < 0) throw std::invalid_argument("negative degree cap");
    if (!is_prime(p)) throw std::invalid_argument("modulus must be prime");
    std::vector<std::vector<int>> all;
    std::vector<int> cur(d, 0);
    gen_monomials(d, cap, cur, 0, 0, all);
    std::sort(all.begin(), all.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        int da = 0, db = 0;
        for (int x : a) da += x;
        for (int x : b) db += x;
        if (da != db) return da < db;
        return a < b;
    });
    monos_ = std::move(all);
    degs_.resize(monos_.size());
    for (int i = 0; i < int(monos_.size()); ++i) {
        int s = 0;
        for (int x : monos_[i]) s += x;
        degs_[i] = s;
        index_[monos_[i]] = i;
    }
}

int MonomialAlgebra::index_of(const std::vector<int>& expo) const {
    auto it = index_.find(expo);
    return it == index_.end() ? -1 : it->second;
}

int MonomialAlgebra::mono_mul(int a, int b) const {
    std::vector<int> e(d_);
    int deg = 0;
    for (int i = 0; i < d_; ++i) {
        e[i] = monos_[a][i] + monos_[b][i];
        deg += e[i];
    }
    if (deg > cap_) return -1;
    return index_.at(e);
}

std::string MonomialAlgebra::label(int idx) const {
    const auto& e = monos_[idx];
    std::string s;
    for (int i = 0; i < d_; ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += (d_ == 1 ? "x" : "X" + std::to_string(i + 1));
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

Vec MonomialAlgebra::mul(const Vec& x, const Vec& y, bool* capped) const {
    FpField f(p_);
    Vec out(dim(), 0);
    for (int a = 0; a < int(x.size()); ++a) {
        if (x[a] == 0) continue;
        for (int b = 0; b < int(y.size()); ++b) {
            if (y[b] == 0) continue;
            int m = mono_mul(a, b);
            if (m < 0) {
                if (capped && !exact_) *capped = true;
                continue;
            }
            out[m] = f.add(out[m], f.mul(x[a], y[b]));
        }
    }
    return out;
}

int MonomialAlgebra::dim_of_degree(int deg) const {
    int n = 0;
    for (int d0 : degs_)
        if (d0 == deg) ++n;
    return n;
}

std::vector<int> MonomialAlgebra::monos_of_degree(int deg) const {
    std::vector<int> out;
    for (int i = 0; i < dim(); ++i)
        if (degs_[i] == deg) out.push_back(i);
    return out;
}

} // namespace koszul
