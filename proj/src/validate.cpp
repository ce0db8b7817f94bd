#include "cychom/algebra.hpp"

#include <set>
#include <sstream>

namespace cychom {

namespace {

void fail(const std::string& where, const std::string& what) {
    throw ValidationError(where + ": " + what);
}

void check_objects(const std::vector<std::string>& objects) {
    if (objects.empty()) fail("objects", "at least one object is required");
    std::set<std::string> seen;
    for (const auto& o : objects)
        if (!seen.insert(o).second) fail("objects", "duplicate object " + o);
}

} // namespace

ValidationSummary validate(const SemiFreePresentation& p) {
    ValidationSummary out;
    check_objects(p.objects);

    std::set<std::string> names;
    for (const auto& o : p.objects) names.insert("1_" + o);
    for (const auto& g : p.gens) {
        if (!names.insert(g.name).second)
            fail(g.name, "generator name collides with another name");
        if (g.src < 0 || g.src >= static_cast<int>(p.objects.size()) || g.tgt < 0 ||
            g.tgt >= static_cast<int>(p.objects.size()))
            fail(g.name, "generator endpoint out of range");
        if (g.deg < 0) fail(g.name, "generator degree must be nonnegative");
        if (g.wt < 1) fail(g.name, "generator weight must be at least 1");
    }
    if (p.diff.size() != p.gens.size())
        fail(p.name, "differential table size does not match generator count");

    bool triangular = true;
    for (size_t gi = 0; gi < p.gens.size(); ++gi) {
        const auto& g = p.gens[gi];
        for (const auto& [word, c] : p.diff[gi]) {
            if (is_zero(c)) fail(g.name, "differential stores an explicit zero term");
            if (word.empty()) fail(g.name, "differential term is an identity word");
            int deg = 0, wt = 0;
            for (size_t i = 0; i < word.size(); ++i) {
                int l = word[i];
                if (l < 0 || l >= static_cast<int>(p.gens.size()))
                    fail(g.name, "differential uses an unknown generator");
                if (l >= static_cast<int>(gi)) triangular = false;
                if (i + 1 < word.size() && p.gens[word[i]].src != p.gens[word[i + 1]].tgt)
                    fail(g.name, "differential word is not composable");
                deg += p.gens[l].deg;
                wt += p.gens[l].wt;
            }
            if (p.gens[word.back()].src != g.src || p.gens[word.front()].tgt != g.tgt)
                fail(g.name, "differential word endpoints do not match the generator");
            if (deg != g.deg - 1) fail(g.name, "differential is not of degree -1");
            if (wt != g.wt) fail(g.name, "differential does not preserve weight");
        }
    }

    SemiFreeAlgebra a(p);
    for (size_t gi = 0; gi < p.gens.size(); ++gi) {
        Elem dd = a.diff_elem(a.expr_to_elem(p.diff[gi]));
        if (!dd.empty()) fail(p.gens[gi].name, "differential does not square to zero");
    }

    out.cofibrant_verified = triangular;
    out.cofibrant_asserted = p.cofibrant_asserted;
    out.notes.push_back(triangular ? "presentation is triangular; cofibrancy verified"
                                   : (p.cofibrant_asserted
                                          ? "cofibrancy asserted by the input, not verified"
                                          : "presentation is not triangular"));
    return out;
}

ValidationSummary validate(const FiniteDimPresentation& p) {
    ValidationSummary out;
    check_objects(p.objects);

    std::set<std::string> names;
    std::vector<int> identity_of(p.objects.size(), -1);
    for (size_t i = 0; i < p.basis.size(); ++i) {
        const auto& b = p.basis[i];
        if (!names.insert(b.name).second) fail(b.name, "duplicate basis name");
        if (b.src < 0 || b.src >= static_cast<int>(p.objects.size()) || b.tgt < 0 ||
            b.tgt >= static_cast<int>(p.objects.size()))
            fail(b.name, "basis endpoint out of range");
        if (b.identity) {
            if (b.src != b.tgt) fail(b.name, "identity must be an endomorphism");
            if (b.deg != 0 || b.wt != 0) fail(b.name, "identity must sit in degree 0, weight 0");
            if (identity_of[b.src] != -1) fail(b.name, "object has two identities");
            identity_of[b.src] = static_cast<int>(i);
        } else {
            if (b.wt < 1) fail(b.name, "weight grading must be positive off the identities");
            if (b.deg < 0) fail(b.name, "degree must be nonnegative");
        }
    }
    for (size_t o = 0; o < p.objects.size(); ++o)
        if (identity_of[o] < 0) fail(p.objects[o], "object has no identity basis element");

    if (p.diff.size() != p.basis.size())
        fail(p.name, "differential table size does not match basis count");

    auto elem_name = [&](int i) { return p.basis[i].name; };
    for (const auto& [key, value] : p.mult) {
        auto [i, j] = key;
        if (i < 0 || i >= static_cast<int>(p.basis.size()) || j < 0 ||
            j >= static_cast<int>(p.basis.size()))
            fail(p.name, "product table uses an unknown basis element");
        const auto& a = p.basis[i];
        const auto& b = p.basis[j];
        if (a.identity || b.identity)
            fail(elem_name(i), "product table must not list identity factors");
        for (const auto& [k, c] : value) {
            if (is_zero(c)) fail(elem_name(i), "product table stores an explicit zero");
            if (k < 0 || k >= static_cast<int>(p.basis.size()))
                fail(elem_name(i), "product lands on an unknown basis element");
            const auto& r = p.basis[k];
            if (a.src != b.tgt)
                fail(elem_name(i), "product of non-composable morphisms must vanish");
            if (r.identity) fail(elem_name(i), "weight grading forbids identity-valued products");
            if (r.src != b.src || r.tgt != a.tgt)
                fail(elem_name(i), "product endpoints do not match");
            if (r.deg != a.deg + b.deg) fail(elem_name(i), "product is not degree-additive");
            if (r.wt != a.wt + b.wt) fail(elem_name(i), "product is not weight-additive");
        }
    }

    for (size_t i = 0; i < p.basis.size(); ++i) {
        const auto& b = p.basis[i];
        for (const auto& [k, c] : p.diff[i]) {
            if (is_zero(c)) fail(b.name, "differential stores an explicit zero");
            if (b.identity) fail(b.name, "identity must be closed");
            if (k < 0 || k >= static_cast<int>(p.basis.size()))
                fail(b.name, "differential lands on an unknown basis element");
            const auto& r = p.basis[k];
            if (r.src != b.src || r.tgt != b.tgt)
                fail(b.name, "differential endpoints do not match");
            if (r.deg != b.deg - 1) fail(b.name, "differential is not of degree -1");
            if (r.wt != b.wt) fail(b.name, "differential does not preserve weight");
        }
    }

    FiniteDimAlgebra a(p);
    std::vector<Handle> nonid;
    std::map<int, int> counter;
    for (const auto& b : p.basis)
        if (!b.identity) nonid.push_back(Handle{b.wt, counter[b.wt]++});

    for (const auto& ha : nonid) {
        Elem dd = a.diff_elem(a.diff(ha));
        if (!dd.empty()) fail(a.info(ha).label, "differential does not square to zero");
        for (const auto& hb : nonid) {
            Elem lhs = a.diff_elem(a.mul(ha, hb));
            Elem rhs;
            add_to(rhs, a.mul_elems(a.diff(ha), Elem{{hb, rat(1)}}), rat(1));
            add_to(rhs, a.mul_elems(Elem{{ha, rat(1)}}, a.diff(hb)),
                   rat(a.info(ha).deg % 2 == 0 ? 1 : -1));
            add_to(lhs, rhs, rat(-1));
            if (!lhs.empty()) fail(a.info(ha).label, "product does not satisfy the Leibniz rule");
            for (const auto& hc : nonid) {
                Elem l = a.mul_elems(a.mul(ha, hb), Elem{{hc, rat(1)}});
                Elem r = a.mul_elems(Elem{{ha, rat(1)}}, a.mul(hb, hc));
                add_to(l, r, rat(-1));
                if (!l.empty()) fail(a.info(ha).label, "product is not associative");
            }
        }
    }

    out.cofibrant_verified = false;
    out.cofibrant_asserted = false;
    out.notes.push_back("finite-dimensional model; treated as not cofibrant");
    return out;
}

} // namespace cychom
