#include "cychom/xside.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace cychom {

namespace {

const Generator& gen_of(const SemiFreeAlgebra& a, int i) { return a.presentation().gens[i]; }

bool xword_closed(const SemiFreeAlgebra& a, const XWord& w) {
    const auto& ls = w.letters;
    for (size_t i = 0; i + 1 < ls.size(); ++i)
        if (x_src(a, ls[i]) != x_tgt(a, ls[i + 1])) return false;
    return x_src(a, ls.back()) == x_tgt(a, ls.front());
}

XWord splice(const XWord& w, size_t i, const std::vector<XLetter>& rep) {
    XWord out;
    out.letters.reserve(w.letters.size() - 1 + rep.size());
    out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.begin() + i);
    out.letters.insert(out.letters.end(), rep.begin(), rep.end());
    out.letters.insert(out.letters.end(), w.letters.begin() + i + 1, w.letters.end());
    return out;
}

/* All S-leading closed words with exactly n S-letters and weight w,
 * bucketed by degree. E costs an S-slot and the rest cost weight, so
 * every branch shrinks one of the two budgets. */
std::map<int, std::vector<XWord>> enumerate_xwords(const SemiFreeAlgebra& a, int n, int w) {
    std::map<int, std::vector<XWord>> buckets;
    const int nobj = static_cast<int>(a.objects().size());
    const int ngen = static_cast<int>(a.presentation().gens.size());
    std::vector<XLetter> pool;
    for (int i = 0; i < nobj; ++i) pool.push_back(XLetter{XLetter::E, i});
    for (int i = 0; i < ngen; ++i) pool.push_back(XLetter{XLetter::SD, i});
    for (int i = 0; i < ngen; ++i) pool.push_back(XLetter{XLetter::A, i});

    XWord cur;
    std::function<void(int, int)> extend = [&](int s_rem, int w_rem) {
        if (s_rem == 0 && w_rem == 0) {
            if (xword_closed(a, cur)) buckets[x_word_deg(a, cur)].push_back(cur);
            return;
        }
        const int need_tgt = x_src(a, cur.letters.back());
        for (const XLetter& l : pool) {
            if (x_tgt(a, l) != need_tgt) continue;
            const int ds = l.kind == XLetter::A ? 0 : 1;
            const int dw = x_wt(a, l);
            if (ds > s_rem || dw > w_rem || ds + dw == 0) continue;
            cur.letters.push_back(l);
            extend(s_rem - ds, w_rem - dw);
            cur.letters.pop_back();
        }
    };
    for (const XLetter& l : pool) {
        if (l.kind == XLetter::A) continue;
        if (x_wt(a, l) > w || n < 1) continue;
        cur.letters.assign(1, l);
        extend(n - 1, w - x_wt(a, l));
    }
    for (auto& [d, v] : buckets) std::sort(v.begin(), v.end());
    return buckets;
}

void accumulate_dx(const SemiFreeAlgebra& a, const XWord& w, std::map<XWord, Rational>& out) {
    int pre = 0;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        const XLetter& l = w.letters[i];
        const int psign = pre % 2 == 0 ? 1 : -1;
        auto emit = [&](const std::vector<XLetter>& rep, const Rational& coef) {
            auto [cw, s] = x_canonical(a, splice(w, i, rep));
            Rational v = coef;
            if (psign * s < 0) v = -v;
            auto [it, inserted] = out.try_emplace(std::move(cw), v);
            if (!inserted) it->second += v;
        };
        if (l.kind == XLetter::A) {
            for (const auto& [gw, coef] : a.presentation().diff[l.idx]) {
                std::vector<XLetter> rep;
                for (int g : gw) rep.push_back(XLetter{XLetter::A, g});
                emit(rep, coef);
            }
        } else if (l.kind == XLetter::SD) {
            const Generator& g = gen_of(a, l.idx);
            emit({XLetter{XLetter::A, l.idx}, XLetter{XLetter::E, g.src}}, rat(1));
            emit({XLetter{XLetter::E, g.tgt}, XLetter{XLetter::A, l.idx}}, rat(-1));
            for (const auto& [gw, coef] : a.presentation().diff[l.idx]) {
                int q = 0;
                for (size_t j = 0; j < gw.size(); ++j) {
                    std::vector<XLetter> rep;
                    for (size_t t = 0; t < gw.size(); ++t)
                        rep.push_back(XLetter{t == j ? XLetter::SD : XLetter::A, gw[t]});
                    emit(rep, q % 2 == 0 ? Rational(-coef) : coef);
                    q += gen_of(a, gw[j]).deg;
                }
            }
        }
        pre += x_deg(a, l);
    }
}

const std::vector<XWord>& words_at(const XData& x, int d) {
    auto it = x.words.find(d);
    if (it == x.words.end())
        throw WindowTooSmall(x.complex.name() + ": degree " + std::to_string(d) +
                             " not materialized");
    return it->second;
}

int index_of(const XData& x, int d, const XWord& w) {
    const auto& idx = x.index.at(d);
    auto it = idx.find(w);
    if (it == idx.end())
        throw std::logic_error(x.complex.name() + ": word " + x_word_label(*x.alg, w) +
                               " escapes the degree " + std::to_string(d) + " basis");
    return it->second;
}

void copy_block(SparseMatrix& dst, const SparseMatrix& src, int row_off, int col_off) {
    for (int c = 0; c < src.cols(); ++c)
        for (const auto& [r, v] : src.column(c)) dst.add(row_off + r, col_off + c, v);
}

int floordiv2(int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

} // namespace

int x_deg(const SemiFreeAlgebra& a, const XLetter& l) {
    switch (l.kind) {
        case XLetter::A: return gen_of(a, l.idx).deg;
        case XLetter::E: return 0;
        default: return gen_of(a, l.idx).deg + 1;
    }
}

int x_wt(const SemiFreeAlgebra& a, const XLetter& l) {
    return l.kind == XLetter::E ? 0 : gen_of(a, l.idx).wt;
}

int x_src(const SemiFreeAlgebra& a, const XLetter& l) {
    return l.kind == XLetter::E ? l.idx : gen_of(a, l.idx).src;
}

int x_tgt(const SemiFreeAlgebra& a, const XLetter& l) {
    return l.kind == XLetter::E ? l.idx : gen_of(a, l.idx).tgt;
}

std::string x_label(const SemiFreeAlgebra& a, const XLetter& l) {
    switch (l.kind) {
        case XLetter::A: return gen_of(a, l.idx).name;
        case XLetter::E: return "E_" + a.objects()[l.idx];
        default: return "sD(" + gen_of(a, l.idx).name + ")";
    }
}

int x_word_deg(const SemiFreeAlgebra& a, const XWord& w) {
    int d = 0;
    for (const XLetter& l : w.letters) d += x_deg(a, l);
    return d;
}

std::string x_word_label(const SemiFreeAlgebra& a, const XWord& w) {
    std::string s;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i) s += "*";
        s += x_label(a, w.letters[i]);
    }
    return s;
}

int x_e_count(const XWord& w) {
    int n = 0;
    for (const XLetter& l : w.letters)
        if (l.kind == XLetter::E) ++n;
    return n;
}

std::pair<XWord, int> x_canonical(const SemiFreeAlgebra& a, XWord w) {
    int sign = 1;
    const int total = x_word_deg(a, w);
    size_t moved = 0;
    while (w.letters.front().kind == XLetter::A) {
        if (++moved > w.letters.size())
            throw std::logic_error("word without an S-letter cannot be canonicalized");
        const int dl = x_deg(a, w.letters.front());
        if (dl % 2 == 1 && (total - dl) % 2 == 1) sign = -sign;
        std::rotate(w.letters.begin(), w.letters.begin() + 1, w.letters.end());
    }
    return {std::move(w), sign};
}

XData build_x(const SemiFreeAlgebra& a, int n, int w, int lo, int hi) {
    XData x;
    x.alg = &a;
    x.n = n;
    x.weight = w;
    auto buckets = enumerate_xwords(a, n, w);
    const int wlo = lo - 1, whi = hi + 1;
    x.complex = Complex("X:" + std::to_string(n) + "(" + a.name() + ")", w, wlo, whi);
    for (int d = wlo; d <= whi; ++d) {
        std::vector<XWord> ws;
        if (auto it = buckets.find(d); it != buckets.end()) ws = std::move(it->second);
        std::vector<std::string> labels;
        labels.reserve(ws.size());
        std::map<XWord, int> idx;
        for (int i = 0; i < static_cast<int>(ws.size()); ++i) {
            labels.push_back(x_word_label(a, ws[i]));
            idx[ws[i]] = i;
        }
        x.complex.set_basis(d, std::move(labels));
        x.words[d] = std::move(ws);
        x.index[d] = std::move(idx);
    }
    for (int d = wlo + 1; d <= whi; ++d) {
        SparseMatrix m(x.complex.dim(d - 1), x.complex.dim(d));
        const auto& ws = x.words.at(d);
        for (int col = 0; col < static_cast<int>(ws.size()); ++col) {
            std::map<XWord, Rational> terms;
            accumulate_dx(a, ws[col], terms);
            for (const auto& [tw, coef] : terms)
                if (!is_zero(coef)) m.add(index_of(x, d - 1, tw), col, coef);
        }
        x.complex.set_diff(d, m);
    }
    return x;
}

int x_top_degree(const SemiFreeAlgebra& a, int n, int w) {
    auto buckets = enumerate_xwords(a, n, w);
    int top = 0;
    for (const auto& [d, v] : buckets)
        if (!v.empty()) top = std::max(top, d);
    return top;
}

SparseMatrix x_tau(const XData& x, int d) {
    const SemiFreeAlgebra& a = *x.alg;
    const auto& ws = words_at(x, d);
    SparseMatrix m(static_cast<int>(ws.size()), static_cast<int>(ws.size()));
    for (int col = 0; col < static_cast<int>(ws.size()); ++col) {
        const auto& ls = ws[col].letters;
        size_t p = ls.size();
        while (p > 0 && ls[p - 1].kind == XLetter::A) --p;
        --p; /* position of the last S-letter */
        int bd = 0;
        for (size_t i = p; i < ls.size(); ++i) bd += x_deg(a, ls[i]);
        const int rest = x_word_deg(a, ws[col]) - bd;
        XWord r;
        r.letters.reserve(ls.size());
        r.letters.insert(r.letters.end(), ls.begin() + p, ls.end());
        r.letters.insert(r.letters.end(), ls.begin(), ls.begin() + p);
        const int sign = (bd % 2 == 1 && rest % 2 == 1) ? -1 : 1;
        m.add(index_of(x, d, r), col, rat(sign));
    }
    return m;
}

SparseMatrix x_sDtilde(const XData& src, const XData& dst, int d) {
    const SemiFreeAlgebra& a = *src.alg;
    const auto& ws = words_at(src, d);
    SparseMatrix m(dst.complex.dim(d + 1), static_cast<int>(ws.size()));
    for (int col = 0; col < static_cast<int>(ws.size()); ++col) {
        int pre = 0;
        for (size_t i = 0; i < ws[col].letters.size(); ++i) {
            const XLetter& l = ws[col].letters[i];
            if (l.kind == XLetter::A) {
                auto [cw, s] = x_canonical(a, splice(ws[col], i, {XLetter{XLetter::SD, l.idx}}));
                const int sign = (pre % 2 == 0 ? 1 : -1) * s;
                m.add(index_of(dst, d + 1, cw), col, rat(sign));
            }
            pre += x_deg(a, l);
        }
    }
    return m;
}

SparseMatrix x_adE(const XData& src, const XData& dst, int d) {
    const SemiFreeAlgebra& a = *src.alg;
    const auto& ws = words_at(src, d);
    SparseMatrix m(dst.complex.dim(d), static_cast<int>(ws.size()));
    for (int col = 0; col < static_cast<int>(ws.size()); ++col) {
        for (size_t i = 0; i < ws[col].letters.size(); ++i) {
            const XLetter& l = ws[col].letters[i];
            if (l.kind == XLetter::E) continue;
            auto [w1, s1] =
                x_canonical(a, splice(ws[col], i, {l, XLetter{XLetter::E, x_src(a, l)}}));
            m.add(index_of(dst, d, w1), col, rat(s1));
            auto [w2, s2] =
                x_canonical(a, splice(ws[col], i, {XLetter{XLetter::E, x_tgt(a, l)}, l}));
            m.add(index_of(dst, d, w2), col, rat(-s2));
        }
    }
    return m;
}

SparseMatrix x_homotopy(const XData& x, int d) {
    const SemiFreeAlgebra& a = *x.alg;
    const auto& ws = words_at(x, d);
    SparseMatrix m(x.complex.dim(d + 1), static_cast<int>(ws.size()));
    for (int col = 0; col < static_cast<int>(ws.size()); ++col) {
        const auto& ls = ws[col].letters;
        size_t p = ls.size();
        while (p > 0 && ls[p - 1].kind == XLetter::A) --p;
        --p;
        if (ls[p].kind != XLetter::E) continue;
        XWord tail_front; /* u_n then zeta, the E dropped */
        tail_front.letters.insert(tail_front.letters.end(), ls.begin() + p + 1, ls.end());
        const size_t un_len = tail_front.letters.size();
        tail_front.letters.insert(tail_front.letters.end(), ls.begin(), ls.begin() + p);
        int un_deg = 0;
        for (size_t i = 0; i < un_len; ++i) un_deg += x_deg(a, tail_front.letters[i]);
        int zeta_deg = x_word_deg(a, tail_front) - un_deg;
        const int outer = (un_deg % 2 == 1 && zeta_deg % 2 == 1) ? -1 : 1;
        int pre = 0;
        for (size_t i = 0; i < tail_front.letters.size(); ++i) {
            const XLetter& l = tail_front.letters[i];
            if (l.kind == XLetter::A) {
                auto [cw, s] =
                    x_canonical(a, splice(tail_front, i, {XLetter{XLetter::SD, l.idx}}));
                const int sign = outer * (pre % 2 == 0 ? 1 : -1) * s;
                m.add(index_of(x, d + 1, cw), col, rat(sign));
            }
            pre += x_deg(a, l);
        }
    }
    return m;
}

ScData build_sc(const SemiFreeAlgebra& a, int n, int w, int lo, int hi) {
    ScData s;
    s.base = build_x(a, n, w, lo, hi);
    const int wlo = s.base.complex.lo(), whi = s.base.complex.hi();
    s.complex = Complex("scX:" + std::to_string(n) + "(" + a.name() + ")", w, wlo, whi);
    for (int d = wlo; d <= whi; ++d) {
        const int dim = s.base.complex.dim(d);
        SparseMatrix tau = x_tau(s.base, d);
        std::vector<int> to(dim, -1);
        std::vector<int> sg(dim, 1);
        for (int c = 0; c < dim; ++c) {
            const auto& col = tau.column(c);
            if (col.size() != 1 || (col[0].second != rat(1) && col[0].second != rat(-1)))
                throw std::logic_error("block rotation is not a signed permutation");
            to[c] = col[0].first;
            sg[c] = col[0].second == rat(1) ? 1 : -1;
        }
        std::vector<int> cls(dim, -2);
        std::vector<int> acc(dim, 1);
        std::vector<int> reps;
        for (int c0 = 0; c0 < dim; ++c0) {
            if (cls[c0] != -2) continue;
            std::vector<int> orbit;
            int c = c0;
            int sign = 1;
            do {
                orbit.push_back(c);
                acc[c] = sign;
                sign *= sg[c];
                c = to[c];
            } while (c != c0);
            if (sign == -1) {
                for (int o : orbit) cls[o] = -1;
            } else {
                const int k = static_cast<int>(reps.size());
                for (int o : orbit) cls[o] = k;
                reps.push_back(c0);
            }
        }
        SparseMatrix proj(static_cast<int>(reps.size()), dim);
        SparseMatrix section(dim, static_cast<int>(reps.size()));
        std::vector<std::string> labels;
        for (int k = 0; k < static_cast<int>(reps.size()); ++k) {
            section.add(reps[k], k, rat(1));
            labels.push_back(s.base.complex.labels(d)[reps[k]]);
        }
        for (int c = 0; c < dim; ++c)
            if (cls[c] >= 0) proj.add(cls[c], c, rat(acc[c]));
        s.complex.set_basis(d, std::move(labels));
        s.proj.emplace(d, std::move(proj));
        s.section.emplace(d, std::move(section));
    }
    for (int d = wlo + 1; d <= whi; ++d)
        s.complex.set_diff(
            d, s.proj.at(d - 1).multiply(s.base.complex.diff(d)).multiply(s.section.at(d)));
    return s;
}

bool sc_differential_descends(const ScData& s, std::string* why) {
    const Complex& x = s.base.complex;
    for (int d = x.lo() + 1; d <= x.hi(); ++d) {
        SparseMatrix lhs = s.proj.at(d - 1).multiply(x.diff(d));
        SparseMatrix rhs = lhs.multiply(s.section.at(d)).multiply(s.proj.at(d));
        if (!lhs.add_matrix(rhs.scale(rat(-1))).is_zero()) {
            if (why)
                *why = s.complex.name() + ": differential does not descend at degree " +
                       std::to_string(d);
            return false;
        }
    }
    return true;
}

HodgeData build_hodge(const SemiFreeAlgebra& a, int w, int r, int lo, int hi) {
    if (r < 0) throw std::invalid_argument("filtration level must be nonnegative");
    HodgeData h;
    h.alg = &a;
    h.weight = w;
    h.r = r;
    const int M = std::max(0, a.max_deg_in_weight(w));
    const int T = w * (2 * M + 1);
    const int wlo = lo - 1, whi = hi + 1;
    const int npieces = std::max(0, floordiv2(T - wlo));

    CyclicLetters L = letters_of(a);
    h.cyc0 = cyclic_word_complex(L, "nat(" + a.name() + ")", w, 0, T);
    for (int d = -1; d <= T + 1; ++d) h.cyc0_basis[d] = cyclic_basis(L, d, w);
    for (int n = 1; n <= npieces; ++n) h.pieces.push_back(build_sc(a, n, w, 0, T));

    auto piece_dim = [&](int n, int xd) {
        if (xd < -1 || xd > T + 1) return 0;
        return n == 0 ? h.cyc0.dim(xd) : h.pieces[n - 1].complex.dim(xd);
    };
    auto piece_labels = [&](int n, int xd) -> const std::vector<std::string>& {
        return n == 0 ? h.cyc0.labels(xd) : h.pieces[n - 1].complex.labels(xd);
    };

    const std::string nm =
        (r == 0 ? std::string("Xtot(") : "F" + std::to_string(r) + "Xtot(") + a.name() + ")";
    h.complex = Complex(nm, w, wlo, whi);
    for (int D = wlo; D <= whi; ++D) {
        std::vector<TowerBlock> bl;
        std::vector<std::string> labels;
        int off = 0;
        for (int n = std::max(r, -floordiv2(D)); D + 2 * n <= T; ++n) {
            const int xd = D + 2 * n;
            if (xd < 0) continue;
            const int size = piece_dim(n, xd);
            if (size == 0) continue;
            bl.push_back(TowerBlock{n, xd, off, size});
            const auto& pl = piece_labels(n, xd);
            for (int i = 0; i < size; ++i)
                labels.push_back(n == 0 ? pl[i] : "u^" + std::to_string(n) + "*" + pl[i]);
            off += size;
        }
        h.complex.set_basis(D, std::move(labels));
        h.blocks[D] = std::move(bl);
    }

    /* sD-insertion from piece n at x-degree xd into piece n+1, on
     * coinvariant coordinates */
    auto b_matrix = [&](int n, int xd) -> SparseMatrix {
        if (n == 0) {
            const auto& keys = h.cyc0_basis.at(xd);
            const ScData& p1 = h.pieces[0];
            SparseMatrix out(p1.base.complex.dim(xd + 1), static_cast<int>(keys.size()));
            for (int col = 0; col < static_cast<int>(keys.size()); ++col) {
                const CycKey& k = keys[col];
                if (k.obj >= 0) continue;
                int q = 0;
                for (size_t j = 0; j < k.word.size(); ++j) {
                    XWord nw;
                    for (size_t t = 0; t < k.word.size(); ++t)
                        nw.letters.push_back(
                            XLetter{t == j ? XLetter::SD : XLetter::A, k.word[t]});
                    auto [cw, s] = x_canonical(a, std::move(nw));
                    const int sign = (q % 2 == 0 ? 1 : -1) * s;
                    out.add(index_of(p1.base, xd + 1, cw), col, rat(sign));
                    q += gen_of(a, k.word[j]).deg;
                }
            }
            return h.pieces[0].proj.at(xd + 1).multiply(out);
        }
        const ScData& pn = h.pieces[n - 1];
        const ScData& pm = h.pieces[n];
        return pm.proj.at(xd + 1)
            .multiply(x_sDtilde(pn.base, pm.base, xd))
            .multiply(pn.section.at(xd));
    };

    std::map<std::pair<int, int>, SparseMatrix> bcache;
    for (int D = wlo + 1; D <= whi; ++D) {
        SparseMatrix m(h.complex.dim(D - 1), h.complex.dim(D));
        auto block_at = [&](int degree, int n) -> const TowerBlock* {
            for (const TowerBlock& b : h.blocks.at(degree))
                if (b.j == n) return &b;
            return nullptr;
        };
        for (const TowerBlock& sb : h.blocks.at(D)) {
            if (sb.ch_degree >= 1)
                if (const TowerBlock* tb = block_at(D - 1, sb.j)) {
                    const SparseMatrix& dn = sb.j == 0
                                                 ? h.cyc0.diff(sb.ch_degree)
                                                 : h.pieces[sb.j - 1].complex.diff(sb.ch_degree);
                    copy_block(m, dn, tb->offset, sb.offset);
                }
            if (sb.j + 1 <= npieces && sb.ch_degree + 1 <= T)
                if (const TowerBlock* tb = block_at(D - 1, sb.j + 1)) {
                    auto key = std::make_pair(sb.j, sb.ch_degree);
                    auto it = bcache.find(key);
                    if (it == bcache.end())
                        it = bcache.emplace(key, b_matrix(sb.j, sb.ch_degree)).first;
                    copy_block(m, it->second, tb->offset, sb.offset);
                }
        }
        h.complex.set_diff(D, m);
    }
    return h;
}

} // namespace cychom
