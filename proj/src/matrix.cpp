#include "qpd/matrix.hpp"

#include <algorithm>

namespace qpd {

Int square_class(const Rat& r) {
    if (is_zero(r)) throw input_error("square_class of zero");
    Int n = r.get_num() * r.get_den();
    Int sign = sgn(n) < 0 ? -1 : 1;
    n = abs(n);
    Int out = 1;
    Int p = 2;
    while (p * p <= n) {
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            Int psq = p * p;
            if (mpz_divisible_p(n.get_mpz_t(), psq.get_mpz_t()))
                n /= psq;
            else {
                n /= p;
                out *= p;
            }
        }
        p += (p == 2 ? 1 : 2);
    }
    out *= n;  // leftover prime
    return sign * out;
}

std::vector<Int> prime_support(const Int& n_in) {
    Int n = abs(n_in);
    std::vector<Int> out;
    if (n <= 1) return out;
    Int p = 2;
    while (p * p <= n) {
        if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            out.push_back(p);
            while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) n /= p;
        }
        p += (p == 2 ? 1 : 2);
    }
    if (n > 1) out.push_back(n);
    return out;
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<RatVec>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    RatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw input_error("ragged rows");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

RatMatrix RatMatrix::col_vector(const RatVec& v) {
    RatMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw internal_error("matrix product shape mismatch");
    RatMatrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& a = at(i, k);
            if (qpd::is_zero(a)) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) p.at(i, j) += a * o.at(k, j);
        }
    return p;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw internal_error("matrix sum shape mismatch");
    RatMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) s.e_[i] = e_[i] + o.e_[i];
    return s;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
    return *this + o.scaled(Rat(-1));
}

RatMatrix RatMatrix::scaled(const Rat& c) const {
    RatMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) s.e_[i] = e_[i] * c;
    return s;
}

bool RatMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Rat& r) { return qpd::is_zero(r); });
}

RatVec RatMatrix::mul_vec(const RatVec& v) const {
    if (v.size() != cols_) throw internal_error("mul_vec shape mismatch");
    RatVec out(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!qpd::is_zero(at(i, j))) out[i] += at(i, j) * v[j];
    return out;
}

RatVec RatMatrix::col(std::size_t j) const {
    RatVec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

RatVec RatMatrix::row(std::size_t i) const {
    RatVec v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

void RatMatrix::set_col(std::size_t j, const RatVec& v) {
    for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

RatMatrix RatMatrix::hcat(const RatMatrix& o) const {
    if (rows_ != o.rows_) throw internal_error("hcat row mismatch");
    RatMatrix m(rows_, cols_ + o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < o.cols_; ++j) m.at(i, cols_ + j) = o.at(i, j);
    }
    return m;
}

RatMatrix RatMatrix::vcat(const RatMatrix& o) const {
    if (cols_ != o.cols_) throw internal_error("vcat col mismatch");
    RatMatrix m(rows_ + o.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < o.rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(rows_ + i, j) = o.at(i, j);
    return m;
}

RatMatrix RatMatrix::cols_subset(const std::vector<std::size_t>& idx) const {
    RatMatrix m(rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) m.set_col(j, col(idx[j]));
    return m;
}

RrefResult rref(const RatMatrix& m) {
    RrefResult res;
    res.R = m;
    RatMatrix& A = res.R;
    std::size_t r = 0;
    for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
        std::size_t piv = r;
        while (piv < A.rows() && is_zero(A.at(piv, c))) ++piv;
        if (piv == A.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < A.cols(); ++j) std::swap(A.at(piv, j), A.at(r, j));
        Rat inv = 1 / A.at(r, c);
        for (std::size_t j = 0; j < A.cols(); ++j) A.at(r, j) *= inv;
        for (std::size_t i = 0; i < A.rows(); ++i) {
            if (i == r || is_zero(A.at(i, c))) continue;
            Rat f = A.at(i, c);
            for (std::size_t j = 0; j < A.cols(); ++j) A.at(i, j) -= f * A.at(r, j);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = r;
    return res;
}

std::size_t rank(const RatMatrix& m) { return rref(m).rank; }

RatMatrix kernel_basis(const RatMatrix& m) {
    RrefResult rr = rref(m);
    std::vector<std::size_t> free_cols;
    std::size_t p = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (p < rr.pivots.size() && rr.pivots[p] == c)
            ++p;
        else
            free_cols.push_back(c);
    }
    RatMatrix K(m.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t fc = free_cols[k];
        K.at(fc, k) = 1;
        for (std::size_t i = 0; i < rr.pivots.size(); ++i)
            K.at(rr.pivots[i], k) = -rr.R.at(i, fc);
    }
    return K;
}

std::optional<RatVec> solve(const RatMatrix& m, const RatVec& b) {
    if (b.size() != m.rows()) throw input_error("solve: dimension mismatch");
    RatMatrix aug = m.hcat(RatMatrix::col_vector(b));
    RrefResult rr = rref(aug);
    // Inconsistent iff a pivot lands in the augmented column.
    if (!rr.pivots.empty() && rr.pivots.back() == m.cols()) return std::nullopt;
    RatVec x(m.cols(), Rat(0));
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) x[rr.pivots[i]] = rr.R.at(i, m.cols());
    return x;
}

std::optional<RatMatrix> solve_matrix(const RatMatrix& m, const RatMatrix& b) {
    if (b.rows() != m.rows()) throw input_error("solve_matrix: dimension mismatch");
    RatMatrix x(m.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        auto xi = solve(m, b.col(j));
        if (!xi) return std::nullopt;
        x.set_col(j, *xi);
    }
    return x;
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw input_error("inverse of non-square matrix");
    return solve_matrix(m, RatMatrix::identity(m.rows()));
}

bool in_span(const RatMatrix& basis, const RatVec& v) {
    return solve(basis, v).has_value();
}

RatMatrix canonical_column_space(const RatMatrix& spanning) {
    RrefResult rr = rref(spanning.transpose());
    RatMatrix out(spanning.rows(), rr.rank);
    for (std::size_t i = 0; i < rr.rank; ++i)
        for (std::size_t j = 0; j < spanning.rows(); ++j) out.at(j, i) = rr.R.at(i, j);
    return out;
}

RatMatrix standard_complement(const RatMatrix& inside, std::size_t n) {
    RatMatrix cur = inside;
    RatMatrix added(n, 0);
    std::size_t have = rank(cur);
    for (std::size_t j = 0; j < n && have < n; ++j) {
        RatVec e(n, Rat(0));
        e[j] = 1;
        RatMatrix cand = cur.hcat(RatMatrix::col_vector(e));
        if (rank(cand) > have) {
            cur = cand;
            added = added.hcat(RatMatrix::col_vector(e));
            ++have;
        }
    }
    return added;
}

RatVec operator+(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw internal_error("vec sum size mismatch");
    RatVec c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

RatVec operator-(const RatVec& a, const RatVec& b) {
    return a + scaled(b, Rat(-1));
}

RatVec scaled(const RatVec& v, const Rat& c) {
    RatVec o(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) o[i] = v[i] * c;
    return o;
}

bool vec_is_zero(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& r) { return is_zero(r); });
}

}  // namespace qpd
