#include "cychom/sparse_matrix.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace cychom {

namespace {

void check_index(int r, int c, int rows, int cols) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
        throw DimensionMismatch("matrix index out of range");
}

using SparseVec = std::map<int, Rational>;

void axpy(SparseVec& target, const Rational& coeff, const std::vector<std::pair<int, Rational>>& src) {
    if (is_zero(coeff)) return;
    for (const auto& [i, v] : src) {
        auto it = target.find(i);
        if (it == target.end()) {
            target.emplace(i, coeff * v);
        } else {
            it->second += coeff * v;
            if (is_zero(it->second)) target.erase(it);
        }
    }
}

std::vector<std::pair<int, Rational>> to_entries(const SparseVec& v) {
    return {v.begin(), v.end()};
}

} // namespace

void SparseMatrix::add(int r, int c, const Rational& v) {
    check_index(r, c, rows_, cols_);
    if (cychom::is_zero(v)) return;
    auto& col = cols_data_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const std::pair<int, Rational>& e, int row) { return e.first < row; });
    if (it != col.end() && it->first == r) {
        it->second += v;
        if (cychom::is_zero(it->second)) col.erase(it);
    } else {
        col.insert(it, {r, v});
    }
}

void SparseMatrix::set(int r, int c, const Rational& v) {
    check_index(r, c, rows_, cols_);
    auto& col = cols_data_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const std::pair<int, Rational>& e, int row) { return e.first < row; });
    if (it != col.end() && it->first == r) {
        if (cychom::is_zero(v))
            col.erase(it);
        else
            it->second = v;
    } else if (!cychom::is_zero(v)) {
        col.insert(it, {r, v});
    }
}

Rational SparseMatrix::get(int r, int c) const {
    check_index(r, c, rows_, cols_);
    const auto& col = cols_data_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const std::pair<int, Rational>& e, int row) { return e.first < row; });
    if (it != col.end() && it->first == r) return it->second;
    return rat(0);
}

void SparseMatrix::set_column(int c, std::vector<std::pair<int, Rational>> entries) {
    if (c < 0 || c >= cols_) throw DimensionMismatch("set_column: column out of range");
    for (const auto& [r, v] : entries)
        if (r < 0 || r >= rows_) throw DimensionMismatch("set_column: row out of range");
    cols_data_[c] = std::move(entries);
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionMismatch("multiply: inner dimensions differ");
    SparseMatrix out(rows_, rhs.cols_);
    for (int j = 0; j < rhs.cols_; ++j) {
        SparseVec acc;
        for (const auto& [k, v] : rhs.cols_data_[j]) axpy(acc, v, cols_data_[k]);
        out.cols_data_[j] = to_entries(acc);
    }
    return out;
}

SparseMatrix SparseMatrix::add_matrix(const SparseMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("add: shapes differ");
    SparseMatrix out(rows_, cols_);
    for (int j = 0; j < cols_; ++j) {
        SparseVec acc;
        axpy(acc, rat(1), cols_data_[j]);
        axpy(acc, rat(1), rhs.cols_data_[j]);
        out.cols_data_[j] = to_entries(acc);
    }
    return out;
}

SparseMatrix SparseMatrix::scale(const Rational& c) const {
    SparseMatrix out(rows_, cols_);
    if (cychom::is_zero(c)) return out;
    for (int j = 0; j < cols_; ++j) {
        out.cols_data_[j] = cols_data_[j];
        for (auto& e : out.cols_data_[j]) e.second *= c;
    }
    return out;
}

SparseMatrix SparseMatrix::augment_columns(const SparseMatrix& rhs) const {
    if (rows_ != rhs.rows_) throw DimensionMismatch("augment: row counts differ");
    SparseMatrix out(rows_, cols_ + rhs.cols_);
    for (int j = 0; j < cols_; ++j) out.cols_data_[j] = cols_data_[j];
    for (int j = 0; j < rhs.cols_; ++j) out.cols_data_[cols_ + j] = rhs.cols_data_[j];
    return out;
}

std::vector<Rational> SparseMatrix::apply(const std::vector<Rational>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw DimensionMismatch("apply: vector length differs");
    std::vector<Rational> out(rows_, rat(0));
    for (int j = 0; j < cols_; ++j) {
        if (cychom::is_zero(v[j])) continue;
        for (const auto& [i, val] : cols_data_[j]) out[i] += val * v[j];
    }
    return out;
}

int rank(const SparseMatrix& m) {
    const int nrows = m.rows();
    const int ncols = m.cols();
    if (nrows == 0 || ncols == 0) return 0;

    std::vector<SparseVec> row_data(nrows);
    std::vector<std::set<int>> col_rows(ncols);
    for (int j = 0; j < ncols; ++j)
        for (const auto& [i, v] : m.column(j)) {
            row_data[i][j] = v;
            col_rows[j].insert(i);
        }

    std::vector<bool> row_done(nrows, false), col_done(ncols, false);
    int r = 0;
    while (true) {
        /* Markowitz: minimize (row_nnz - 1) * (col_nnz - 1), smallest
         * (row, col) on ties. */
        long best_score = std::numeric_limits<long>::max();
        int pr = -1, pc = -1;
        for (int i = 0; i < nrows; ++i) {
            if (row_done[i] || row_data[i].empty()) continue;
            long rn = static_cast<long>(row_data[i].size());
            for (const auto& [j, v] : row_data[i]) {
                long cn = static_cast<long>(col_rows[j].size());
                long score = (rn - 1) * (cn - 1);
                if (score < best_score) {
                    best_score = score;
                    pr = i;
                    pc = j;
                }
            }
        }
        if (pr < 0) break;

        const Rational pivot = row_data[pr][pc];
        std::vector<int> victims(col_rows[pc].begin(), col_rows[pc].end());
        for (int i : victims) {
            if (i == pr || row_done[i]) continue;
            auto it = row_data[i].find(pc);
            if (it == row_data[i].end()) continue;
            Rational factor = it->second / pivot;
            for (const auto& [j, v] : row_data[pr]) {
                if (col_done[j]) continue;
                auto jt = row_data[i].find(j);
                if (jt == row_data[i].end()) {
                    row_data[i][j] = -factor * v;
                    col_rows[j].insert(i);
                } else {
                    jt->second -= factor * v;
                    if (is_zero(jt->second)) {
                        row_data[i].erase(jt);
                        col_rows[j].erase(i);
                    }
                }
            }
        }
        for (const auto& [j, v] : row_data[pr]) col_rows[j].erase(pr);
        row_done[pr] = true;
        col_done[pc] = true;
        col_rows[pc].clear();
        ++r;
    }
    return r;
}

namespace {

/* Unique reduced row echelon form; pivot columns in increasing order. */
struct Rref {
    std::vector<SparseVec> rows;
    std::vector<int> pivot_cols;
};

Rref rref_of(const SparseMatrix& m) {
    std::vector<SparseVec> work(m.rows());
    for (int j = 0; j < m.cols(); ++j)
        for (const auto& [i, v] : m.column(j)) work[i][j] = v;

    Rref out;
    std::vector<bool> used(m.rows(), false);
    for (int col = 0; col < m.cols(); ++col) {
        int pick = -1;
        size_t pick_nnz = 0;
        for (int i = 0; i < m.rows(); ++i) {
            if (used[i]) continue;
            auto it = work[i].begin();
            if (it == work[i].end() || it->first != col) continue;
            if (pick < 0 || work[i].size() < pick_nnz) {
                pick = i;
                pick_nnz = work[i].size();
            }
        }
        if (pick < 0) continue;
        used[pick] = true;
        SparseVec pivot_row = work[pick];
        Rational lead = pivot_row.begin()->second;
        for (auto& [j, v] : pivot_row) v /= lead;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == pick) continue;
            auto it = work[i].find(col);
            if (it == work[i].end()) continue;
            Rational factor = it->second;
            for (const auto& [j, v] : pivot_row) {
                auto jt = work[i].find(j);
                if (jt == work[i].end()) {
                    work[i][j] = -factor * v;
                } else {
                    jt->second -= factor * v;
                    if (is_zero(jt->second)) work[i].erase(jt);
                }
            }
        }
        for (auto& row : out.rows) {
            auto it = row.find(col);
            if (it == row.end()) continue;
            Rational factor = it->second;
            for (const auto& [j, v] : pivot_row) {
                auto jt = row.find(j);
                if (jt == row.end()) {
                    row[j] = -factor * v;
                } else {
                    jt->second -= factor * v;
                    if (is_zero(jt->second)) row.erase(jt);
                }
            }
        }
        out.rows.push_back(std::move(pivot_row));
        out.pivot_cols.push_back(col);
        work[pick].clear();
    }
    return out;
}

} // namespace

std::vector<std::vector<Rational>> kernel_basis(const SparseMatrix& m) {
    Rref rref = rref_of(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : rref.pivot_cols) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols(), rat(0));
        v[f] = rat(1);
        for (size_t r = 0; r < rref.rows.size(); ++r) {
            auto it = rref.rows[r].find(f);
            if (it != rref.rows[r].end()) v[rref.pivot_cols[r]] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

long homology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out) {
    if (d_in.rows() != d_out.cols())
        throw DimensionMismatch("homology_dim: middle space dimensions differ");
    if (!d_out.multiply(d_in).is_zero())
        throw CompositionNotZero("homology_dim: d_out * d_in is nonzero");
    long ker = static_cast<long>(d_out.cols()) - rank(d_out);
    return ker - rank(d_in);
}

QuotientSpace::QuotientSpace(const SparseMatrix& m) : ambient_(m.rows()) {
    for (int c = 0; c < m.cols(); ++c) {
        SparseVec vec;
        for (const auto& [i, v] : m.column(c)) vec[i] = v;
        for (size_t e = 0; e < echelon_.size(); ++e) {
            auto it = vec.find(pivot_rows_[e]);
            if (it == vec.end()) continue;
            Rational factor = -it->second;
            axpy(vec, factor, echelon_[e]);
        }
        if (vec.empty()) continue;
        int pivot = vec.begin()->first;
        Rational lead = vec.begin()->second;
        for (auto& [i, v] : vec) v /= lead;
        auto entries = to_entries(vec);
        for (size_t e = 0; e < echelon_.size(); ++e) {
            SparseVec old;
            for (const auto& pr : echelon_[e]) old[pr.first] = pr.second;
            auto it = old.find(pivot);
            if (it == old.end()) continue;
            Rational factor = -it->second;
            axpy(old, factor, entries);
            echelon_[e] = to_entries(old);
        }
        echelon_.push_back(std::move(entries));
        pivot_rows_.push_back(pivot);
    }
    std::vector<bool> is_pivot(ambient_, false);
    for (int p : pivot_rows_) is_pivot[p] = true;
    for (int i = 0; i < ambient_; ++i)
        if (!is_pivot[i]) free_rows_.push_back(i);
}

std::vector<Rational> QuotientSpace::reduce(const std::vector<Rational>& v) const {
    if (static_cast<int>(v.size()) != ambient_)
        throw DimensionMismatch("QuotientSpace::reduce: vector length differs");
    SparseVec vec;
    for (int i = 0; i < ambient_; ++i)
        if (!is_zero(v[i])) vec[i] = v[i];
    for (size_t e = 0; e < echelon_.size(); ++e) {
        auto it = vec.find(pivot_rows_[e]);
        if (it == vec.end()) continue;
        Rational factor = -it->second;
        axpy(vec, factor, echelon_[e]);
    }
    std::vector<Rational> out(free_rows_.size(), rat(0));
    for (size_t k = 0; k < free_rows_.size(); ++k) {
        auto it = vec.find(free_rows_[k]);
        if (it != vec.end()) out[k] = it->second;
    }
    return out;
}

bool QuotientSpace::is_in_subspace(const std::vector<Rational>& v) const {
    auto coords = reduce(v);
    for (const auto& c : coords)
        if (!is_zero(c)) return false;
    return true;
}

} // namespace cychom
