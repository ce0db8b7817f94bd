#pragma once

#include "cychom/sparse_matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace cychom {

struct WindowTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Chain complex in one Adams weight, materialized on a degree window.
 * Builders populate [lo, hi] with basis labels per degree and the
 * differentials C_d -> C_{d-1} for lo < d <= hi. Homology is available
 * strictly inside the window; asking outside throws WindowTooSmall so
 * a too-narrow window can never pass silently. */
class Complex {
  public:
    Complex() = default;
    Complex(std::string name, int weight, int lo, int hi);

    const std::string& name() const { return name_; }
    int weight() const { return weight_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }

    void set_basis(int d, std::vector<std::string> labels);
    void set_diff(int d, SparseMatrix m);

    bool in_window(int d) const { return d >= lo_ && d <= hi_; }
    int dim(int d) const;
    const std::vector<std::string>& labels(int d) const;
    const SparseMatrix& diff(int d) const;

    /* dim ker(d_d) - rank(d_{d+1}); valid for lo < d < hi. */
    long homology(int d) const;

    /* d*d = 0 across the stored window. */
    void check_differential() const;

  private:
    std::string name_;
    int weight_ = 0;
    int lo_ = 0;
    int hi_ = -1;
    std::map<int, std::vector<std::string>> basis_;
    std::map<int, SparseMatrix> diff_;
};

/* Degree-preserving chain map f: src -> dst on the overlap of the two
 * windows. Matrices are indexed by source degree. */
struct ChainMap {
    std::string name;
    const Complex* src = nullptr;
    const Complex* dst = nullptr;
    std::map<int, SparseMatrix> mats;

    const SparseMatrix& at(int d) const;
};

/* f is defined and commutes with the differentials wherever both
 * windows allow the comparison. Returns false with a reason. */
bool is_chain_map(const ChainMap& f, std::string* why = nullptr);

/* cone(f)_d = dst_d + src_{d-1}, differential (y,x) -> (dy + fx, -dx).
 * The window shrinks to where both pieces exist. */
Complex cone(const ChainMap& f, const std::string& name);

/* H(cone f) = 0 for every degree in [lo, hi]; throws WindowTooSmall if
 * the materialized windows cannot certify that range. */
bool is_quasi_iso(const ChainMap& f, int lo, int hi, std::string* why = nullptr);

} // namespace cychom
