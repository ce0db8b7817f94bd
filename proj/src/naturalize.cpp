#include "cychom/naturalize.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cychom {

int CyclicLetters::word_deg(const std::vector<int>& w) const {
    int d = 0;
    for (int l : w) d += deg[l];
    return d;
}

int CyclicLetters::word_wt(const std::vector<int>& w) const {
    int s = 0;
    for (int l : w) s += wt[l];
    return s;
}

bool CyclicLetters::closed_composable(const std::vector<int>& w) const {
    if (w.empty()) return false;
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (src[w[i]] != tgt[w[i + 1]]) return false;
    return src[w.back()] == tgt[w.front()];
}

std::string CyclicLetters::label(const std::vector<int>& w) const {
    std::string s = "[";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += "*";
        s += names[w[i]];
    }
    s += "]";
    return s;
}

CyclicLetters letters_of(const SemiFreeAlgebra& a) {
    const SemiFreePresentation& p = a.presentation();
    CyclicLetters L;
    L.objects = p.objects;
    for (size_t g = 0; g < p.gens.size(); ++g) {
        L.names.push_back(p.gens[g].name);
        L.src.push_back(p.gens[g].src);
        L.tgt.push_back(p.gens[g].tgt);
        L.deg.push_back(p.gens[g].deg);
        L.wt.push_back(p.gens[g].wt);
        L.diff.push_back(p.diff[g]);
    }
    return L;
}

CyclicLetters adjoin_contracting_loops(const CyclicLetters& base) {
    CyclicLetters L = base;
    for (size_t x = 0; x < base.objects.size(); ++x) {
        L.names.push_back("t_" + base.objects[x]);
        L.src.push_back(static_cast<int>(x));
        L.tgt.push_back(static_cast<int>(x));
        L.deg.push_back(1);
        L.wt.push_back(0);
        WordExpr unit;
        unit[std::vector<int>{}] = rat(1);
        L.diff.push_back(unit);
    }
    return L;
}

CyclicCanon cyclic_canonicalize(const CyclicLetters& L, const std::vector<int>& word) {
    if (word.empty()) throw std::logic_error("cyclic_canonicalize: empty word");
    int total = L.word_deg(word);
    std::vector<int> cur = word;
    std::vector<int> best = word;
    int cur_sign = 1, best_sign = 1;
    bool zero = false;
    for (size_t r = 1; r < word.size(); ++r) {
        int front = cur.front();
        int flip = (L.deg[front] % 2) && ((total - L.deg[front]) % 2) ? -1 : 1;
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        cur_sign *= flip;
        if (cur < best) {
            best = cur;
            best_sign = cur_sign;
        } else if (cur == best && cur_sign != best_sign) {
            zero = true;
        }
    }
    CyclicCanon c;
    c.key.word = best;
    c.sign = best_sign;
    c.zero = zero;
    return c;
}

namespace {

bool gap_condition(const CyclicLetters& L, const std::vector<int>& w) {
    std::vector<size_t> marks;
    for (size_t i = 0; i < w.size(); ++i)
        if (L.wt[w[i]] == 0) marks.push_back(i);
    if (marks.empty()) return true;
    if (w.size() == 1) return true;
    for (size_t k = 0; k < marks.size(); ++k) {
        size_t a = marks[k];
        size_t b = marks[(k + 1) % marks.size()];
        size_t gap = (b + w.size() - a - 1) % w.size();
        if (gap == 0) return false;
    }
    return true;
}

void extend(const CyclicLetters& L, std::vector<int>& w, int deg_left, int wt_left,
            std::set<CycKey>& out, bool gaps) {
    if (!w.empty() && deg_left == 0 && wt_left == 0 && L.closed_composable(w)) {
        if (!gaps || gap_condition(L, w)) {
            CyclicCanon c = cyclic_canonicalize(L, w);
            if (!c.zero) out.insert(c.key);
        }
    }
    int need_tgt = w.empty() ? -1 : L.src[w.back()];
    for (int l = 0; l < L.count(); ++l) {
        if (need_tgt >= 0 && L.tgt[l] != need_tgt) continue;
        if (L.deg[l] > deg_left || L.wt[l] > wt_left) continue;
        w.push_back(l);
        extend(L, w, deg_left - L.deg[l], wt_left - L.wt[l], out, gaps);
        w.pop_back();
    }
}

} // namespace

std::vector<CycKey> cyclic_basis(const CyclicLetters& L, int deg, int wt,
                                 bool normalized_loops) {
    std::vector<CycKey> basis;
    if (deg < 0 || wt < 0) return basis;
    if (deg == 0 && wt == 0) {
        for (size_t x = 0; x < L.objects.size(); ++x) {
            CycKey k;
            k.obj = static_cast<int>(x);
            basis.push_back(k);
        }
        return basis;
    }
    std::set<CycKey> classes;
    std::vector<int> w;
    extend(L, w, deg, wt, classes, normalized_loops);
    basis.assign(classes.begin(), classes.end());
    return basis;
}

Complex cyclic_word_complex(const CyclicLetters& L, const std::string& name, int wt, int lo,
                            int hi, bool normalized_loops) {
    Complex c(name, wt, lo - 1, hi + 1);
    std::map<int, std::vector<CycKey>> bases;
    std::map<int, std::map<CycKey, int>> index;
    for (int d = lo - 1; d <= hi + 1; ++d) {
        bases[d] = cyclic_basis(L, d, wt, normalized_loops);
        std::vector<std::string> labels;
        for (size_t i = 0; i < bases[d].size(); ++i) {
            const CycKey& k = bases[d][i];
            labels.push_back(k.obj >= 0 ? "[1_" + L.objects[k.obj] + "]" : L.label(k.word));
            index[d][k] = static_cast<int>(i);
        }
        c.set_basis(d, labels);
    }
    for (int d = lo; d <= hi + 1; ++d) {
        SparseMatrix m(static_cast<int>(bases[d - 1].size()), static_cast<int>(bases[d].size()));
        for (size_t col = 0; col < bases[d].size(); ++col) {
            const CycKey& k = bases[d][col];
            if (k.obj >= 0) continue;
            const std::vector<int>& w = k.word;
            int prefix_deg = 0;
            for (size_t i = 0; i < w.size(); ++i) {
                int letter = w[i];
                for (const auto& [rep, coeff] : L.diff[letter]) {
                    std::vector<int> out;
                    out.insert(out.end(), w.begin(), w.begin() + i);
                    out.insert(out.end(), rep.begin(), rep.end());
                    out.insert(out.end(), w.begin() + i + 1, w.end());
                    Rational val = (prefix_deg % 2) ? -coeff : coeff;
                    if (out.empty()) {
                        CycKey id_key;
                        id_key.obj = L.src[letter];
                        auto it = index[d - 1].find(id_key);
                        if (it == index[d - 1].end())
                            throw std::logic_error("cyclic_word_complex: identity class missing");
                        m.add(it->second, static_cast<int>(col), val);
                    } else {
                        CyclicCanon canon = cyclic_canonicalize(L, out);
                        if (canon.zero) continue;
                        auto it = index[d - 1].find(canon.key);
                        if (it == index[d - 1].end())
                            throw std::logic_error(
                                "cyclic_word_complex: class escapes the basis at " +
                                L.label(out));
                        m.add(it->second, static_cast<int>(col),
                              canon.sign < 0 ? -val : val);
                    }
                }
                prefix_deg += L.deg[letter];
            }
        }
        c.set_diff(d, m);
    }
    return c;
}

} // namespace cychom
