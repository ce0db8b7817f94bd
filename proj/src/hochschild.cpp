#include "cychom/hochschild.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace cychom {

namespace {

std::vector<Handle> handles_of_weight(const Algebra& a, int w) {
    std::vector<Handle> out;
    if (w == 0) {
        for (int i = 0; i < static_cast<int>(a.objects().size()); ++i) out.push_back(Handle{0, i});
    } else {
        for (int i = 0; i < a.weight_count(w); ++i) out.push_back(Handle{w, i});
    }
    return out;
}

int chain_degree(const Algebra& a, const Chain& c) {
    int d = c.n();
    for (const Handle& h : c.slots) d += a.info(h).deg;
    return d;
}

/* All normalized chains of total weight w, bucketed by degree. Tail
 * slots carry weight >= 1, so the recursion is finite. */
std::map<int, std::vector<Chain>> enumerate_chains(const Algebra& a, int w) {
    std::map<int, std::vector<Chain>> buckets;
    std::vector<std::vector<Handle>> tail_by_wt(w + 1);
    for (int ww = 1; ww <= w; ++ww) tail_by_wt[ww] = handles_of_weight(a, ww);

    std::vector<Handle> slots;
    std::function<void(int)> extend = [&](int remaining) {
        const BasisInfo& first = a.info(slots.front());
        const BasisInfo& last = a.info(slots.back());
        if (remaining == 0) {
            if (last.src == first.tgt) {
                Chain c{slots};
                buckets[chain_degree(a, c)].push_back(c);
            }
            return;
        }
        for (int ww = 1; ww <= remaining; ++ww)
            for (const Handle& h : tail_by_wt[ww]) {
                if (a.info(h).tgt != last.src) continue;
                slots.push_back(h);
                extend(remaining - ww);
                slots.pop_back();
            }
    };
    for (int hw = 0; hw <= w; ++hw)
        for (const Handle& h0 : handles_of_weight(a, hw)) {
            slots.assign(1, h0);
            extend(w - hw);
        }
    for (auto& [d, v] : buckets) std::sort(v.begin(), v.end());
    return buckets;
}

/* b(c) as a combination of basis chains: slot merges with alternating
 * signs, the wrap-around merge with the extra Koszul factor, then the
 * internal differentials with the global (-1)^n twist. Merged or
 * replaced entries that become identities in a tail slot are
 * degenerate and vanish. */
void accumulate_b(const Algebra& a, const Chain& c, std::map<Chain, Rational>& out) {
    const int n = c.n();
    std::vector<int> degs(n + 1);
    for (int i = 0; i <= n; ++i) degs[i] = a.info(c.slots[i]).deg;

    auto add_term = [&](Chain&& m, const Rational& coef, long sign_exp) {
        Rational v = (sign_exp % 2 == 0) ? coef : Rational(-coef);
        auto [it, inserted] = out.try_emplace(std::move(m), v);
        if (!inserted) it->second += v;
    };

    for (int i = 0; i < n; ++i) {
        Elem prod = a.mul(c.slots[i], c.slots[i + 1]);
        for (const auto& [hh, coef] : prod) {
            if (i >= 1 && a.is_identity(hh)) continue;
            Chain m;
            m.slots.reserve(n);
            m.slots.insert(m.slots.end(), c.slots.begin(), c.slots.begin() + i);
            m.slots.push_back(hh);
            m.slots.insert(m.slots.end(), c.slots.begin() + i + 2, c.slots.end());
            add_term(std::move(m), coef, i);
        }
    }
    if (n >= 1) {
        Elem prod = a.mul(c.slots[n], c.slots[0]);
        long presum = 0;
        for (int j = 0; j < n; ++j) presum += degs[j];
        for (const auto& [hh, coef] : prod) {
            Chain m;
            m.slots.reserve(n);
            m.slots.push_back(hh);
            m.slots.insert(m.slots.end(), c.slots.begin() + 1, c.slots.begin() + n);
            add_term(std::move(m), coef, n + static_cast<long>(degs[n]) * presum);
        }
    }
    long pre = 0;
    for (int i = 0; i <= n; ++i) {
        Elem dd = a.diff(c.slots[i]);
        for (const auto& [hh, coef] : dd) {
            if (i >= 1 && a.is_identity(hh)) continue;
            Chain m = c;
            m.slots[i] = hh;
            add_term(std::move(m), coef, n + pre);
        }
        pre += degs[i];
    }
}

const std::vector<Chain>& chains_at(const HochschildData& h, int d) {
    auto it = h.chains.find(d);
    if (it == h.chains.end())
        throw WindowTooSmall(h.complex.name() + ": degree " + std::to_string(d) +
                             " not materialized");
    return it->second;
}

int index_of(const HochschildData& h, int d, const Chain& c) {
    const auto& idx = h.index.at(d);
    auto it = idx.find(c);
    if (it == idx.end())
        throw std::logic_error(h.complex.name() + ": chain " + chain_label(*h.alg, c) +
                               " escapes the degree " + std::to_string(d) + " basis");
    return it->second;
}

SparseMatrix boundary_matrix(const HochschildData& h, int d) {
    SparseMatrix m(h.complex.dim(d - 1), h.complex.dim(d));
    const auto& cs = chains_at(h, d);
    for (int col = 0; col < static_cast<int>(cs.size()); ++col) {
        std::map<Chain, Rational> terms;
        accumulate_b(*h.alg, cs[col], terms);
        for (const auto& [ch, coef] : terms)
            if (!is_zero(coef)) m.add(index_of(h, d - 1, ch), col, coef);
    }
    return m;
}

void copy_block(SparseMatrix& dst, const SparseMatrix& src, int row_off, int col_off) {
    for (int c = 0; c < src.cols(); ++c)
        for (const auto& [r, v] : src.column(c)) dst.add(row_off + r, col_off + c, v);
}

int floordiv2(int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

} // namespace

std::string chain_label(const Algebra& a, const Chain& c) {
    std::string s = "[";
    for (size_t i = 0; i < c.slots.size(); ++i) {
        if (i) s += "|";
        s += a.info(c.slots[i]).label;
    }
    return s + "]";
}

HochschildData build_hochschild(const Algebra& a, int w, int lo, int hi) {
    HochschildData h;
    h.alg = &a;
    h.weight = w;
    auto buckets = enumerate_chains(a, w);
    const int wlo = lo - 1, whi = hi + 1;
    h.complex = Complex("CH(" + a.name() + ")", w, wlo, whi);
    for (int d = wlo; d <= whi; ++d) {
        std::vector<Chain> cs;
        if (auto it = buckets.find(d); it != buckets.end()) cs = std::move(it->second);
        std::vector<std::string> labels;
        labels.reserve(cs.size());
        std::map<Chain, int> idx;
        for (int i = 0; i < static_cast<int>(cs.size()); ++i) {
            labels.push_back(chain_label(a, cs[i]));
            idx[cs[i]] = i;
        }
        h.complex.set_basis(d, std::move(labels));
        h.chains[d] = std::move(cs);
        h.index[d] = std::move(idx);
    }
    for (int d = wlo + 1; d <= whi; ++d) h.complex.set_diff(d, boundary_matrix(h, d));
    return h;
}

int hochschild_top_degree(const Algebra& a, int w) {
    auto buckets = enumerate_chains(a, w);
    int top = 0;
    for (const auto& [d, v] : buckets)
        if (!v.empty()) top = std::max(top, d);
    return top;
}

SparseMatrix hochschild_t(const HochschildData& h, int d) {
    const Algebra& a = *h.alg;
    const auto& cs = chains_at(h, d);
    SparseMatrix m(static_cast<int>(cs.size()), static_cast<int>(cs.size()));
    for (int col = 0; col < static_cast<int>(cs.size()); ++col) {
        const Chain& c = cs[col];
        const int n = c.n();
        if (n == 0) {
            m.add(col, col, rat(1));
            continue;
        }
        if (a.is_identity(c.slots[0])) continue;
        Chain r;
        r.slots.reserve(n + 1);
        r.slots.push_back(c.slots[n]);
        r.slots.insert(r.slots.end(), c.slots.begin(), c.slots.begin() + n);
        long presum = 0;
        for (int j = 0; j < n; ++j) presum += a.info(c.slots[j]).deg;
        long s = n + static_cast<long>(a.info(c.slots[n]).deg) * presum;
        m.add(index_of(h, d, r), col, s % 2 == 0 ? rat(1) : rat(-1));
    }
    return m;
}

SparseMatrix hochschild_B(const HochschildData& h, int d) {
    const Algebra& a = *h.alg;
    const auto& cs = chains_at(h, d);
    SparseMatrix m(h.complex.dim(d + 1), static_cast<int>(cs.size()));
    for (int col = 0; col < static_cast<int>(cs.size()); ++col) {
        const Chain& c = cs[col];
        const int n = c.n();
        if (a.is_identity(c.slots[0])) continue;
        std::vector<long> degs(n + 1);
        long total = 0;
        for (int i = 0; i <= n; ++i) {
            degs[i] = a.info(c.slots[i]).deg;
            total += degs[i];
        }
        long suffix = 0;
        for (int i = 0; i <= n; ++i) {
            /* t^i moves the last i slots to the front, then an identity
             * at the target of the new first slot closes the chain. */
            Chain r;
            r.slots.reserve(n + 2);
            const Handle& lead = c.slots[(n - i + 1) % (n + 1)];
            r.slots.push_back(a.identity(a.info(lead).tgt));
            r.slots.insert(r.slots.end(), c.slots.begin() + (n - i + 1), c.slots.end());
            r.slots.insert(r.slots.end(), c.slots.begin(), c.slots.begin() + (n - i + 1));
            long s = static_cast<long>(n) * i + suffix * (total - suffix);
            m.add(index_of(h, d + 1, r), col, s % 2 == 0 ? rat(1) : rat(-1));
            suffix += degs[n - i];
        }
    }
    return m;
}

ConnesData build_connes(const Algebra& a, int w, int lo, int hi) {
    ConnesData cd;
    cd.base = build_hochschild(a, w, lo, hi);
    const int wlo = cd.base.complex.lo(), whi = cd.base.complex.hi();
    cd.complex = Complex("Clambda(" + a.name() + ")", w, wlo, whi);
    for (int d = wlo; d <= whi; ++d) {
        const int dim = cd.base.complex.dim(d);
        SparseMatrix rel = SparseMatrix::identity(dim).add_matrix(hochschild_t(cd.base, d).scale(rat(-1)));
        QuotientSpace q(rel);
        std::vector<std::string> labels;
        labels.reserve(q.dim());
        for (int r : q.surviving_rows()) labels.push_back(cd.base.complex.labels(d)[r]);
        cd.complex.set_basis(d, std::move(labels));
        cd.quot.emplace(d, std::move(q));
    }
    for (int d = wlo + 1; d <= whi; ++d) {
        const QuotientSpace& qd = cd.quot.at(d);
        const QuotientSpace& qt = cd.quot.at(d - 1);
        SparseMatrix m(qt.dim(), qd.dim());
        for (int i = 0; i < qd.dim(); ++i) {
            const Chain& rep = cd.base.chains.at(d)[qd.surviving_rows()[i]];
            std::map<Chain, Rational> terms;
            accumulate_b(a, rep, terms);
            std::vector<Rational> v(cd.base.complex.dim(d - 1), rat(0));
            for (const auto& [ch, coef] : terms)
                if (!is_zero(coef)) v[index_of(cd.base, d - 1, ch)] = coef;
            std::vector<Rational> red = qt.reduce(v);
            for (int r = 0; r < qt.dim(); ++r)
                if (!is_zero(red[r])) m.add(r, i, red[r]);
        }
        cd.complex.set_diff(d, m);
    }
    return cd;
}

bool connes_b_descends(const ConnesData& c, std::string* why) {
    const Complex& ch = c.base.complex;
    for (int d = ch.lo() + 1; d <= ch.hi(); ++d) {
        const int dim = ch.dim(d);
        SparseMatrix rel = SparseMatrix::identity(dim).add_matrix(hochschild_t(c.base, d).scale(rat(-1)));
        SparseMatrix img = ch.diff(d).multiply(rel);
        for (int col = 0; col < dim; ++col) {
            std::vector<Rational> v(ch.dim(d - 1), rat(0));
            for (const auto& [r, val] : img.column(col)) v[r] = val;
            if (!c.quot.at(d - 1).is_in_subspace(v)) {
                if (why)
                    *why = ch.name() + ": b(1-t) at " + ch.labels(d)[col] + " (degree " +
                           std::to_string(d) + ") leaves im(1-t)";
                return false;
            }
        }
    }
    return true;
}

Tower build_tower(const Algebra& a, TowerKind kind, int w, int lo, int hi) {
    Tower t;
    t.kind = kind;
    const int top = hochschild_top_degree(a, w);
    t.base = build_hochschild(a, w, 0, top);
    const int wlo = lo - 1, whi = hi + 1;
    const char* nm = kind == TowerKind::Cyclic ? "CC" : kind == TowerKind::Negative ? "CN" : "CP";
    t.complex = Complex(std::string(nm) + "(" + a.name() + ")", w, wlo, whi);

    for (int D = wlo; D <= whi; ++D) {
        std::vector<TowerBlock> bl;
        std::vector<std::string> labels;
        int emin = -floordiv2(D);
        int emax = floordiv2(top - D);
        if (kind == TowerKind::Cyclic) emax = std::min(emax, 0);
        if (kind == TowerKind::Negative) emin = std::max(emin, 0);
        int off = 0;
        for (int e = emin; e <= emax; ++e) {
            const int chd = D + 2 * e;
            const int size = t.base.complex.dim(chd);
            if (size == 0) continue;
            bl.push_back(TowerBlock{e, chd, off, size});
            const auto& base_labels = t.base.complex.labels(chd);
            for (int i = 0; i < size; ++i)
                labels.push_back(e == 0 ? base_labels[i]
                                        : "u^" + std::to_string(e) + "*" + base_labels[i]);
            off += size;
        }
        t.complex.set_basis(D, std::move(labels));
        t.blocks[D] = std::move(bl);
    }

    std::map<int, SparseMatrix> bmats;
    for (int D = wlo + 1; D <= whi; ++D) {
        SparseMatrix m(t.complex.dim(D - 1), t.complex.dim(D));
        auto block_at = [&](int degree, int e) -> const TowerBlock* {
            for (const TowerBlock& b : t.blocks.at(degree))
                if (b.j == e) return &b;
            return nullptr;
        };
        for (const TowerBlock& sb : t.blocks.at(D)) {
            if (sb.ch_degree - 1 >= 0)
                if (const TowerBlock* tb = block_at(D - 1, sb.j))
                    copy_block(m, t.base.complex.diff(sb.ch_degree), tb->offset, sb.offset);
            const bool next_e_ok = kind != TowerKind::Cyclic || sb.j + 1 <= 0;
            if (next_e_ok && sb.ch_degree + 1 <= top)
                if (const TowerBlock* tb = block_at(D - 1, sb.j + 1)) {
                    auto it = bmats.find(sb.ch_degree);
                    if (it == bmats.end())
                        it = bmats.emplace(sb.ch_degree, hochschild_B(t.base, sb.ch_degree)).first;
                    copy_block(m, it->second, tb->offset, sb.offset);
                }
        }
        t.complex.set_diff(D, m);
    }
    return t;
}

SparseMatrix tower_u(const Tower& t, int d) {
    SparseMatrix m(t.complex.dim(d - 2), t.complex.dim(d));
    auto src_it = t.blocks.find(d);
    auto dst_it = t.blocks.find(d - 2);
    if (src_it == t.blocks.end() || dst_it == t.blocks.end())
        throw WindowTooSmall(t.complex.name() + ": u-action needs degrees " + std::to_string(d) +
                             " and " + std::to_string(d - 2));
    for (const TowerBlock& sb : src_it->second) {
        if (t.kind == TowerKind::Cyclic && sb.j + 1 > 0) continue;
        for (const TowerBlock& db : dst_it->second)
            if (db.j == sb.j + 1 && db.ch_degree == sb.ch_degree)
                for (int i = 0; i < sb.size; ++i) m.add(db.offset + i, sb.offset + i, rat(1));
    }
    return m;
}

} // namespace cychom
