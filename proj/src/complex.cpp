#include "cychom/complex.hpp"

#include <sstream>

namespace cychom {

Complex::Complex(std::string name, int weight, int lo, int hi)
    : name_(std::move(name)), weight_(weight), lo_(lo), hi_(hi) {
    if (hi < lo) throw WindowTooSmall(name_ + ": empty degree window");
    for (int d = lo; d <= hi; ++d) basis_[d] = {};
}

void Complex::set_basis(int d, std::vector<std::string> labels) {
    if (!in_window(d)) throw WindowTooSmall(name_ + ": basis outside the window");
    basis_[d] = std::move(labels);
}

void Complex::set_diff(int d, SparseMatrix m) {
    if (d <= lo_ || d > hi_) throw WindowTooSmall(name_ + ": differential outside the window");
    if (m.cols() != dim(d) || m.rows() != dim(d - 1))
        throw DimensionMismatch(name_ + ": differential shape does not match the bases");
    diff_[d] = std::move(m);
}

int Complex::dim(int d) const {
    if (!in_window(d)) throw WindowTooSmall(name_ + ": dimension outside the window");
    return static_cast<int>(basis_.at(d).size());
}

const std::vector<std::string>& Complex::labels(int d) const {
    if (!in_window(d)) throw WindowTooSmall(name_ + ": labels outside the window");
    return basis_.at(d);
}

const SparseMatrix& Complex::diff(int d) const {
    auto it = diff_.find(d);
    if (it == diff_.end())
        throw WindowTooSmall(name_ + ": differential at degree " + std::to_string(d) +
                             " is outside the window");
    return it->second;
}

long Complex::homology(int d) const {
    if (d <= lo_ || d >= hi_)
        throw WindowTooSmall(name_ + ": homology at degree " + std::to_string(d) +
                             " needs a wider window");
    return homology_dim(diff(d + 1), diff(d));
}

void Complex::check_differential() const {
    for (int d = lo_ + 2; d <= hi_; ++d)
        if (!diff(d - 1).multiply(diff(d)).is_zero())
            throw CompositionNotZero(name_ + ": differential does not square to zero at degree " +
                                     std::to_string(d));
}

const SparseMatrix& ChainMap::at(int d) const {
    auto it = mats.find(d);
    if (it == mats.end())
        throw WindowTooSmall(name + ": map at degree " + std::to_string(d) +
                             " is outside the window");
    return it->second;
}

bool is_chain_map(const ChainMap& f, std::string* why) {
    auto explain = [&](const std::string& msg) {
        if (why) *why = f.name + ": " + msg;
        return false;
    };
    if (!f.src || !f.dst) return explain("unset endpoints");
    int lo = std::max(f.src->lo(), f.dst->lo());
    int hi = std::min(f.src->hi(), f.dst->hi());
    for (int d = lo; d <= hi; ++d) {
        auto it = f.mats.find(d);
        if (it == f.mats.end()) return explain("missing matrix at degree " + std::to_string(d));
        if (it->second.cols() != f.src->dim(d) || it->second.rows() != f.dst->dim(d))
            return explain("matrix shape mismatch at degree " + std::to_string(d));
    }
    for (int d = lo + 1; d <= hi; ++d) {
        SparseMatrix lhs = f.at(d - 1).multiply(f.src->diff(d));
        SparseMatrix rhs = f.dst->diff(d).multiply(f.at(d));
        if (!(lhs == rhs))
            return explain("does not commute with the differential at degree " +
                           std::to_string(d));
    }
    return true;
}

Complex cone(const ChainMap& f, const std::string& name) {
    const Complex& src = *f.src;
    const Complex& dst = *f.dst;
    int lo = std::max(dst.lo(), src.lo() + 1);
    int hi = std::min(dst.hi(), src.hi() + 1);
    Complex out(name, dst.weight(), lo, hi);
    for (int d = lo; d <= hi; ++d) {
        std::vector<std::string> labels = dst.labels(d);
        for (const auto& l : src.labels(d - 1)) labels.push_back("s(" + l + ")");
        out.set_basis(d, std::move(labels));
    }
    for (int d = lo + 1; d <= hi; ++d) {
        int ddim = dst.dim(d);
        int sdim = src.dim(d - 1);
        SparseMatrix m(dst.dim(d - 1) + src.dim(d - 2), ddim + sdim);
        const SparseMatrix& dd = dst.diff(d);
        for (int c = 0; c < ddim; ++c)
            for (const auto& [r, v] : dd.column(c)) m.set(r, c, v);
        const SparseMatrix& fm = f.at(d - 1);
        for (int c = 0; c < sdim; ++c)
            for (const auto& [r, v] : fm.column(c)) m.set(r, ddim + c, v);
        const SparseMatrix& ds = src.diff(d - 1);
        for (int c = 0; c < sdim; ++c)
            for (const auto& [r, v] : ds.column(c)) m.set(dst.dim(d - 1) + r, ddim + c, -v);
        out.set_diff(d, std::move(m));
    }
    return out;
}

bool is_quasi_iso(const ChainMap& f, int lo, int hi, std::string* why) {
    std::string reason;
    if (!is_chain_map(f, &reason)) {
        if (why) *why = reason;
        return false;
    }
    Complex c = cone(f, "cone(" + f.name + ")");
    if (c.lo() > lo - 1 || c.hi() < hi + 1)
        throw WindowTooSmall("cone(" + f.name + "): windows certify only " +
                             std::to_string(c.lo() + 1) + ".." + std::to_string(c.hi() - 1) +
                             ", requested " + std::to_string(lo) + ".." + std::to_string(hi));
    c.check_differential();
    for (int d = lo; d <= hi; ++d) {
        if (c.homology(d) != 0) {
            if (why)
                *why = "cone(" + f.name + ") has homology " + std::to_string(c.homology(d)) +
                       " at degree " + std::to_string(d);
            return false;
        }
    }
    return true;
}

} // namespace cychom
