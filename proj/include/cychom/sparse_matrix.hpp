#pragma once

#include "cychom/rational.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cychom {

struct LinalgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionMismatch : LinalgError {
    using LinalgError::LinalgError;
};
struct CompositionNotZero : LinalgError {
    using LinalgError::LinalgError;
};

/* Sparse rational matrix, column-major, no stored zeros.
 * Columns follow the basis index order produced by enumeration, so all
 * derived results are reproducible bit for bit. */
class SparseMatrix {
  public:
    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), cols_data_(cols) {
        if (rows < 0 || cols < 0) throw DimensionMismatch("negative matrix dimension");
    }

    static SparseMatrix identity(int n) {
        SparseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.cols_data_[i].emplace_back(i, rat(1));
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    /* Accumulate v at (r,c); keeps the column sorted by row and drops
     * entries that cancel to zero. */
    void add(int r, int c, const Rational& v);
    void set(int r, int c, const Rational& v);
    Rational get(int r, int c) const;

    const std::vector<std::pair<int, Rational>>& column(int c) const { return cols_data_[c]; }
    void set_column(int c, std::vector<std::pair<int, Rational>> entries);

    long nnz() const {
        long n = 0;
        for (const auto& col : cols_data_) n += static_cast<long>(col.size());
        return n;
    }
    bool is_zero() const { return nnz() == 0; }

    SparseMatrix multiply(const SparseMatrix& rhs) const;
    SparseMatrix add_matrix(const SparseMatrix& rhs) const;
    SparseMatrix scale(const Rational& c) const;

    /* [this | rhs] side by side. */
    SparseMatrix augment_columns(const SparseMatrix& rhs) const;

    std::vector<Rational> apply(const std::vector<Rational>& v) const;

    bool operator==(const SparseMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && cols_data_ == o.cols_data_;
    }

  private:
    int rows_;
    int cols_;
    std::vector<std::vector<std::pair<int, Rational>>> cols_data_;
};

/* Rank over the rationals by sparse elimination with Markowitz pivot
 * selection (least fill-in first, deterministic tie-break). */
int rank(const SparseMatrix& m);

/* Canonical basis of the right kernel, from the reduced column-order
 * echelon form; length = cols - rank. */
std::vector<std::vector<Rational>> kernel_basis(const SparseMatrix& m);

/* dim ker(d_out) - rank(d_in) for a three-term piece
 *   . --d_in--> middle --d_out--> .
 * Throws CompositionNotZero / DimensionMismatch. */
long homology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out);

/* Quotient V / columnspace(m): canonical non-pivot coordinates survive.
 * Built once, then reduces arbitrary vectors of V deterministically. */
class QuotientSpace {
  public:
    explicit QuotientSpace(const SparseMatrix& m);

    int ambient_dim() const { return ambient_; }
    int dim() const { return static_cast<int>(free_rows_.size()); }
    /* Ambient row indices that survive as quotient coordinates. */
    const std::vector<int>& surviving_rows() const { return free_rows_; }

    /* Coordinates of [v] on the surviving rows. */
    std::vector<Rational> reduce(const std::vector<Rational>& v) const;
    bool is_in_subspace(const std::vector<Rational>& v) const;

  private:
    int ambient_;
    std::vector<int> free_rows_;
    /* Echelon columns, each with a unit leading entry at pivot_rows_[i]. */
    std::vector<int> pivot_rows_;
    std::vector<std::vector<std::pair<int, Rational>>> echelon_;
};

} // namespace cychom
