#pragma once

#include "cychom/presentation.hpp"
#include "cychom/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace cychom {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Basis element handle. wt == 0 names the identity of object idx;
 * wt >= 1 points into that weight's canonical basis list. */
struct Handle {
    int wt = 0;
    int idx = 0;
    bool operator<(const Handle& o) const { return wt != o.wt ? wt < o.wt : idx < o.idx; }
    bool operator==(const Handle& o) const { return wt == o.wt && idx == o.idx; }
};

using Elem = std::map<Handle, Rational>;

struct BasisInfo {
    std::string label;
    int deg = 0;
    int src = 0;
    int tgt = 0;
};

void add_to(Elem& target, const Elem& e, const Rational& coeff);

/* What the cyclic-type chain complexes need from a dg category with a
 * chosen weight-graded basis: finitely many basis elements in each
 * Adams weight, exact products and differentials on them. */
class Algebra {
  public:
    virtual ~Algebra() = default;

    virtual const std::string& name() const = 0;
    virtual const std::vector<std::string>& objects() const = 0;

    /* Number of non-identity basis elements of weight w >= 1. */
    virtual int weight_count(int w) const = 0;
    virtual const BasisInfo& info(const Handle& h) const = 0;

    virtual Elem mul(const Handle& a, const Handle& b) const = 0;
    virtual Elem diff(const Handle& h) const = 0;

    bool is_identity(const Handle& h) const { return h.wt == 0; }
    Handle identity(int obj) const { return Handle{0, obj}; }

    /* Largest degree appearing among basis elements of weight <= w.
     * Bounds every chain-degree window. */
    int max_deg_in_weight(int w) const;

    Elem mul_elems(const Elem& a, const Elem& b) const;
    Elem diff_elem(const Elem& e) const;
};

class SemiFreeAlgebra : public Algebra {
  public:
    explicit SemiFreeAlgebra(SemiFreePresentation p);

    const std::string& name() const override { return pres_.name; }
    const std::vector<std::string>& objects() const override { return pres_.objects; }
    int weight_count(int w) const override;
    const BasisInfo& info(const Handle& h) const override;
    Elem mul(const Handle& a, const Handle& b) const override;
    Elem diff(const Handle& h) const override;

    const SemiFreePresentation& presentation() const { return pres_; }

    /* Letter word of a basis handle (wt >= 1). */
    const std::vector<int>& word_of(const Handle& h) const;
    Handle handle_of_word(const std::vector<int>& word) const;
    Elem expr_to_elem(const WordExpr& e) const;

    /* d(g) expanded on letters, one call per generator index. */
    const WordExpr& gen_diff(int g) const { return pres_.diff[g]; }

  private:
    struct WeightLevel {
        std::vector<std::vector<int>> words;
        std::vector<BasisInfo> infos;
        std::map<std::vector<int>, int> index;
    };
    const WeightLevel& level(int w) const;

    SemiFreePresentation pres_;
    mutable std::map<int, WeightLevel> levels_;
    std::vector<BasisInfo> identity_infos_;
};

class FiniteDimAlgebra : public Algebra {
  public:
    explicit FiniteDimAlgebra(FiniteDimPresentation p);

    const std::string& name() const override { return pres_.name; }
    const std::vector<std::string>& objects() const override { return pres_.objects; }
    int weight_count(int w) const override;
    const BasisInfo& info(const Handle& h) const override;
    Elem mul(const Handle& a, const Handle& b) const override;
    Elem diff(const Handle& h) const override;

    const FiniteDimPresentation& presentation() const { return pres_; }

  private:
    int pres_index(const Handle& h) const;
    Handle handle_of_pres_index(int i) const;

    FiniteDimPresentation pres_;
    std::map<int, std::vector<int>> by_weight_; /* weight -> presentation indices */
    std::vector<BasisInfo> infos_;              /* per presentation index */
    std::vector<BasisInfo> identity_infos_;
    std::vector<Handle> handle_by_index_;
};

/* Structural checks beyond what the parser can see. Throws
 * ValidationError with a readable message on the first failure. */
struct ValidationSummary {
    bool cofibrant_verified = false; /* triangular semifree presentations */
    bool cofibrant_asserted = false;
    std::vector<std::string> notes;
};

ValidationSummary validate(const SemiFreePresentation& p);
ValidationSummary validate(const FiniteDimPresentation& p);

} // namespace cychom
