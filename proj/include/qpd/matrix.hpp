#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qpd/rational.hpp"

namespace qpd {

/// Dense matrix over Q.  Entries are exact; 0xN and Nx0 shapes are legal.
class RatMatrix {
  public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, Rat(0)) {}

    static RatMatrix identity(std::size_t n);
    static RatMatrix zero(std::size_t rows, std::size_t cols) { return RatMatrix(rows, cols); }
    static RatMatrix from_rows(const std::vector<RatVec>& rows);
    static RatMatrix col_vector(const RatVec& v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    RatMatrix transpose() const;
    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix operator+(const RatMatrix& o) const;
    RatMatrix operator-(const RatMatrix& o) const;
    RatMatrix scaled(const Rat& c) const;
    bool operator==(const RatMatrix& o) const = default;

    bool is_zero() const;
    RatVec mul_vec(const RatVec& v) const;
    RatVec col(std::size_t j) const;
    RatVec row(std::size_t i) const;
    void set_col(std::size_t j, const RatVec& v);

    /// Columns of `this` followed by columns of `o` (row counts must agree).
    RatMatrix hcat(const RatMatrix& o) const;
    /// Rows of `this` followed by rows of `o`.
    RatMatrix vcat(const RatMatrix& o) const;
    RatMatrix cols_subset(const std::vector<std::size_t>& idx) const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> e_;
};

struct RrefResult {
    std::size_t rank = 0;
    RatMatrix R;                       // reduced row echelon form
    std::vector<std::size_t> pivots;   // strictly increasing pivot columns
};

/// Gauss-Jordan with first-nonzero pivot in column order (deterministic).
RrefResult rref(const RatMatrix& m);

std::size_t rank(const RatMatrix& m);

/// Columns span ker M; deterministic standard construction from the RREF.
RatMatrix kernel_basis(const RatMatrix& m);

/// One exact solution of M x = b, or nullopt when b is outside the column space.
std::optional<RatVec> solve(const RatMatrix& m, const RatVec& b);

/// Columnwise solve; nullopt if any column of B is outside the column space.
std::optional<RatMatrix> solve_matrix(const RatMatrix& m, const RatMatrix& b);

/// Inverse of a square invertible matrix.
std::optional<RatMatrix> inverse(const RatMatrix& m);

/// True iff v lies in the column span of basis.
bool in_span(const RatMatrix& basis, const RatVec& v);

/// Canonical basis of the column space: transposed RREF of the row space.
/// Independent of the order/scaling of the spanning columns.
RatMatrix canonical_column_space(const RatMatrix& spanning);

/// Greedily extend `inside` (columns, assumed independent) to a basis of Q^n by
/// standard basis vectors in index order; returns the appended vectors.
RatMatrix standard_complement(const RatMatrix& inside, std::size_t n);

RatVec operator+(const RatVec& a, const RatVec& b);
RatVec operator-(const RatVec& a, const RatVec& b);
RatVec scaled(const RatVec& v, const Rat& c);
bool vec_is_zero(const RatVec& v);

}  // namespace qpd
