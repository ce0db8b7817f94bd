#include "cychom/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace cychom {

void add_to(Elem& target, const Elem& e, const Rational& coeff) {
    if (is_zero(coeff)) return;
    for (const auto& [h, v] : e) {
        auto it = target.find(h);
        if (it == target.end()) {
            target.emplace(h, coeff * v);
        } else {
            it->second += coeff * v;
            if (is_zero(it->second)) target.erase(it);
        }
    }
}

int Algebra::max_deg_in_weight(int w) const {
    int best = 0;
    for (int v = 1; v <= w; ++v)
        for (int i = 0; i < weight_count(v); ++i)
            best = std::max(best, info(Handle{v, i}).deg);
    return best;
}

Elem Algebra::mul_elems(const Elem& a, const Elem& b) const {
    Elem out;
    for (const auto& [ha, ca] : a)
        for (const auto& [hb, cb] : b) add_to(out, mul(ha, hb), ca * cb);
    return out;
}

Elem Algebra::diff_elem(const Elem& e) const {
    Elem out;
    for (const auto& [h, c] : e) add_to(out, diff(h), c);
    return out;
}

namespace {

bool length_lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

std::string join_word(const std::vector<int>& word, const std::vector<Generator>& gens) {
    std::ostringstream os;
    for (size_t i = 0; i < word.size(); ++i) {
        if (i) os << "*";
        os << gens[word[i]].name;
    }
    return os.str();
}

} // namespace

SemiFreeAlgebra::SemiFreeAlgebra(SemiFreePresentation p) : pres_(std::move(p)) {
    for (size_t i = 0; i < pres_.objects.size(); ++i)
        identity_infos_.push_back(
            BasisInfo{"1_" + pres_.objects[i], 0, static_cast<int>(i), static_cast<int>(i)});
}

const SemiFreeAlgebra::WeightLevel& SemiFreeAlgebra::level(int w) const {
    auto it = levels_.find(w);
    if (it != levels_.end()) return it->second;

    WeightLevel lvl;
    if (w >= 1) {
        for (const auto& g : pres_.gens)
            if (g.wt < 1)
                throw PresentationError("weight enumeration requires every generator weight >= 1");
        std::vector<int> cur;
        std::vector<std::vector<int>> acc;
        /* Depth-first over letters; next letter must end where the
         * previous one starts. */
        auto dfs = [&](auto&& self, int wt_left) -> void {
            for (int g = 0; g < static_cast<int>(pres_.gens.size()); ++g) {
                const auto& gen = pres_.gens[g];
                if (gen.wt > wt_left) continue;
                if (!cur.empty() && pres_.gens[cur.back()].src != gen.tgt) continue;
                cur.push_back(g);
                if (gen.wt == wt_left)
                    acc.push_back(cur);
                else
                    self(self, wt_left - gen.wt);
                cur.pop_back();
            }
        };
        dfs(dfs, w);
        std::sort(acc.begin(), acc.end(), length_lex_less);
        for (auto& word : acc) {
            int deg = 0;
            for (int g : word) deg += pres_.gens[g].deg;
            BasisInfo bi{join_word(word, pres_.gens), deg, pres_.gens[word.back()].src,
                         pres_.gens[word.front()].tgt};
            lvl.index[word] = static_cast<int>(lvl.words.size());
            lvl.infos.push_back(std::move(bi));
            lvl.words.push_back(std::move(word));
        }
    }
    return levels_.emplace(w, std::move(lvl)).first->second;
}

int SemiFreeAlgebra::weight_count(int w) const { return static_cast<int>(level(w).words.size()); }

const BasisInfo& SemiFreeAlgebra::info(const Handle& h) const {
    if (h.wt == 0) return identity_infos_[h.idx];
    return level(h.wt).infos[h.idx];
}

const std::vector<int>& SemiFreeAlgebra::word_of(const Handle& h) const {
    return level(h.wt).words[h.idx];
}

Handle SemiFreeAlgebra::handle_of_word(const std::vector<int>& word) const {
    int w = 0;
    for (int g : word) w += pres_.gens[g].wt;
    const auto& lvl = level(w);
    auto it = lvl.index.find(word);
    if (it == lvl.index.end()) throw PresentationError("word is not composable");
    return Handle{w, it->second};
}

Elem SemiFreeAlgebra::expr_to_elem(const WordExpr& e) const {
    Elem out;
    for (const auto& [word, c] : e) add_to(out, Elem{{handle_of_word(word), rat(1)}}, c);
    return out;
}

Elem SemiFreeAlgebra::mul(const Handle& a, const Handle& b) const {
    const BasisInfo& ia = info(a);
    const BasisInfo& ib = info(b);
    if (ia.src != ib.tgt) return {};
    if (a.wt == 0) return {{b, rat(1)}};
    if (b.wt == 0) return {{a, rat(1)}};
    std::vector<int> word = word_of(a);
    const auto& wb = word_of(b);
    word.insert(word.end(), wb.begin(), wb.end());
    return {{handle_of_word(word), rat(1)}};
}

Elem SemiFreeAlgebra::diff(const Handle& h) const {
    if (h.wt == 0) return {};
    const auto& word = word_of(h);
    Elem out;
    int sign_deg = 0;
    for (size_t i = 0; i < word.size(); ++i) {
        const auto& dg = pres_.diff[word[i]];
        Rational sign = rat(sign_deg % 2 == 0 ? 1 : -1);
        for (const auto& [repl, c] : dg) {
            std::vector<int> w;
            w.insert(w.end(), word.begin(), word.begin() + static_cast<long>(i));
            w.insert(w.end(), repl.begin(), repl.end());
            w.insert(w.end(), word.begin() + static_cast<long>(i) + 1, word.end());
            add_to(out, Elem{{handle_of_word(w), rat(1)}}, sign * c);
        }
        sign_deg += pres_.gens[word[i]].deg;
    }
    return out;
}

FiniteDimAlgebra::FiniteDimAlgebra(FiniteDimPresentation p) : pres_(std::move(p)) {
    identity_infos_.resize(pres_.objects.size());
    handle_by_index_.resize(pres_.basis.size());
    for (size_t i = 0; i < pres_.basis.size(); ++i) {
        const auto& b = pres_.basis[i];
        infos_.push_back(BasisInfo{b.name, b.deg, b.src, b.tgt});
        if (b.identity) {
            identity_infos_[b.src] = infos_.back();
            handle_by_index_[i] = Handle{0, b.src};
        } else {
            auto& lst = by_weight_[b.wt];
            handle_by_index_[i] = Handle{b.wt, static_cast<int>(lst.size())};
            lst.push_back(static_cast<int>(i));
        }
    }
}

int FiniteDimAlgebra::weight_count(int w) const {
    auto it = by_weight_.find(w);
    return it == by_weight_.end() ? 0 : static_cast<int>(it->second.size());
}

int FiniteDimAlgebra::pres_index(const Handle& h) const { return by_weight_.at(h.wt)[h.idx]; }

Handle FiniteDimAlgebra::handle_of_pres_index(int i) const { return handle_by_index_[i]; }

const BasisInfo& FiniteDimAlgebra::info(const Handle& h) const {
    if (h.wt == 0) return identity_infos_[h.idx];
    return infos_[pres_index(h)];
}

Elem FiniteDimAlgebra::mul(const Handle& a, const Handle& b) const {
    const BasisInfo& ia = info(a);
    const BasisInfo& ib = info(b);
    if (ia.src != ib.tgt) return {};
    if (a.wt == 0) return {{b, rat(1)}};
    if (b.wt == 0) return {{a, rat(1)}};
    auto it = pres_.mult.find({pres_index(a), pres_index(b)});
    if (it == pres_.mult.end()) return {};
    Elem out;
    for (const auto& [k, c] : it->second) out[handle_of_pres_index(k)] = c;
    return out;
}

Elem FiniteDimAlgebra::diff(const Handle& h) const {
    if (h.wt == 0) return {};
    Elem out;
    for (const auto& [k, c] : pres_.diff[pres_index(h)]) out[handle_of_pres_index(k)] = c;
    return out;
}

} // namespace cychom
