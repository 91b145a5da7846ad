// Weighted multivariate polynomial kernel over Gaussian rationals.
//
// A VariableTable fixes the ambient coordinates of one model: z, zb, the
// w_j / wb_j graph variables and the real parts u_j, each with its weight.
// Conjugation swaps z<->zb and w_j<->wb_j and fixes u_j.
//
// WPoly is a sparse exponent-vector -> coefficient map.  All arithmetic is
// exact; no coefficient is ever stored as zero.
#pragma once

#include "tncr/rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tncr {

enum class VarKind { Z, Zb, W, Wb, U };

struct VarEntry {
    std::string name;
    VarKind kind;
    int index;   // 1-based for w/wb/u, 0 for z/zb
    int weight;
};

class VariableTable {
public:
    // weights_w[j] is the weight of w_{j+1}; z and zb always get weight 1.
    explicit VariableTable(const std::vector<int>& weights_w) {
        entries_.push_back({"z", VarKind::Z, 0, 1});
        entries_.push_back({"zb", VarKind::Zb, 0, 1});
        int k = static_cast<int>(weights_w.size());
        for (int j = 1; j <= k; ++j) {
            entries_.push_back({"w" + std::to_string(j), VarKind::W, j, weights_w[j - 1]});
            entries_.push_back({"wb" + std::to_string(j), VarKind::Wb, j, weights_w[j - 1]});
        }
        for (int j = 1; j <= k; ++j)
            entries_.push_back({"u" + std::to_string(j), VarKind::U, j, weights_w[j - 1]});
        conj_.resize(entries_.size());
        for (size_t i = 0; i < entries_.size(); ++i) {
            const VarEntry& e = entries_[i];
            switch (e.kind) {
                case VarKind::Z:  conj_[i] = var_index(VarKind::Zb, 0); break;
                case VarKind::Zb: conj_[i] = var_index(VarKind::Z, 0); break;
                case VarKind::W:  conj_[i] = var_index(VarKind::Wb, e.index); break;
                case VarKind::Wb: conj_[i] = var_index(VarKind::W, e.index); break;
                case VarKind::U:  conj_[i] = static_cast<int>(i); break;
            }
        }
    }

    int size() const { return static_cast<int>(entries_.size()); }
    const VarEntry& entry(int i) const { return entries_[i]; }
    int weight(int i) const { return entries_[i].weight; }
    int conj_index(int i) const { return conj_[i]; }

    int codim() const { return (static_cast<int>(entries_.size()) - 2) / 3; }

    int var_index(VarKind kind, int index) const {
        for (size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].kind == kind && entries_[i].index == index)
                return static_cast<int>(i);
        throw std::out_of_range("VariableTable: no such variable");
    }

    int z() const { return 0; }
    int zb() const { return 1; }
    int w(int j) const { return 2 + 2 * (j - 1); }
    int wb(int j) const { return 3 + 2 * (j - 1); }
    int u(int j) const { return 2 + 2 * codim() + (j - 1); }

private:
    std::vector<VarEntry> entries_;
    std::vector<int> conj_;
};

using VarTablePtr = std::shared_ptr<const VariableTable>;
using Monomial = std::vector<int>;

inline int monomial_weight(const VariableTable& tab, const Monomial& m) {
    int w = 0;
    for (size_t i = 0; i < m.size(); ++i) w += m[i] * tab.weight(static_cast<int>(i));
    return w;
}

// Graded-lex: total weight first, then lexicographic on the exponent vector
// in table order.  Returns true when a > b.
inline bool graded_lex_greater(const VariableTable& tab, const Monomial& a, const Monomial& b) {
    int wa = monomial_weight(tab, a), wb = monomial_weight(tab, b);
    if (wa != wb) return wa > wb;
    return a > b;
}

class WPoly {
public:
    WPoly() = default;
    explicit WPoly(VarTablePtr tab) : tab_(std::move(tab)) {}

    static WPoly constant(VarTablePtr tab, GaussRat c) {
        WPoly p(std::move(tab));
        if (!c.is_zero()) p.terms_[Monomial(p.tab_->size(), 0)] = std::move(c);
        return p;
    }
    static WPoly variable(VarTablePtr tab, int var, int exp = 1) {
        WPoly p(std::move(tab));
        Monomial m(p.tab_->size(), 0);
        m[var] = exp;
        p.terms_[std::move(m)] = GaussRat(1);
        return p;
    }

    const VarTablePtr& table() const { return tab_; }
    const std::map<Monomial, GaussRat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& m, const GaussRat& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    WPoly operator-() const {
        WPoly r(tab_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    WPoly& operator+=(const WPoly& o) {
        check_table(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    WPoly& operator-=(const WPoly& o) {
        check_table(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend WPoly operator+(WPoly a, const WPoly& b) { a += b; return a; }
    friend WPoly operator-(WPoly a, const WPoly& b) { a -= b; return a; }

    friend WPoly operator*(const WPoly& a, const WPoly& b) {
        a.check_table(b);
        WPoly r(a.tab_ ? a.tab_ : b.tab_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma);
                for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    WPoly& operator*=(const WPoly& o) { *this = *this * o; return *this; }

    WPoly scaled(const GaussRat& c) const {
        WPoly r(tab_);
        if (c.is_zero()) return r;
        for (const auto& [m, co] : terms_) r.terms_.emplace(m, co * c);
        return r;
    }

    friend bool operator==(const WPoly& a, const WPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const WPoly& a, const WPoly& b) { return !(a == b); }

    // Common weight of all monomials; nullopt marks an inhomogeneous value.
    // The zero polynomial is homogeneous of every weight; it reports 0 here
    // and is_homogeneous_of(w) accepts it for every w.
    std::optional<int> weight() const {
        if (terms_.empty()) return 0;
        int w = monomial_weight(*tab_, terms_.begin()->first);
        for (const auto& [m, c] : terms_)
            if (monomial_weight(*tab_, m) != w) return std::nullopt;
        return w;
    }
    bool is_homogeneous() const { return terms_.empty() || weight().has_value(); }
    bool is_homogeneous_of(int w) const {
        if (terms_.empty()) return true;
        auto ww = weight();
        return ww && *ww == w;
    }

    WPoly conjugate() const {
        WPoly r(tab_);
        for (const auto& [m, c] : terms_) {
            Monomial mc(m.size(), 0);
            for (size_t i = 0; i < m.size(); ++i) mc[tab_->conj_index(static_cast<int>(i))] += m[i];
            r.add_term(mc, c.conj());
        }
        return r;
    }
    bool is_real_valued() const { return *this == conjugate(); }

    WPoly derivative(int var) const {
        WPoly r(tab_);
        for (const auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Monomial d(m);
            d[var] -= 1;
            r.add_term(d, c * GaussRat(Rat(m[var])));
        }
        return r;
    }

    // Simultaneous substitution.  Variables absent from the map stay put.
    WPoly substitute(const std::map<int, WPoly>& bindings) const {
        WPoly r(tab_);
        for (const auto& [m, c] : terms_) {
            WPoly t = WPoly::constant(tab_, c);
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                auto it = bindings.find(static_cast<int>(i));
                if (it == bindings.end()) {
                    t *= WPoly::variable(tab_, static_cast<int>(i), m[i]);
                } else {
                    for (int e = 0; e < m[i]; ++e) t *= it->second;
                }
            }
            r += t;
        }
        return r;
    }

    // Exact quotient; throws if the division leaves a remainder.
    WPoly divexact(const WPoly& d) const {
        if (d.is_zero()) throw std::domain_error("WPoly: division by zero");
        WPoly rem(*this), q(tab_);
        const auto& dlead = *d.terms_.rbegin();  // lex-largest term
        while (!rem.is_zero()) {
            const auto& rlead = *rem.terms_.rbegin();
            Monomial qm(rlead.first);
            bool ok = true;
            for (size_t i = 0; i < qm.size(); ++i) {
                qm[i] -= dlead.first[i];
                if (qm[i] < 0) { ok = false; break; }
            }
            if (!ok) throw std::domain_error("WPoly: inexact division");
            GaussRat qc = rlead.second / dlead.second;
            WPoly qt(tab_);
            qt.terms_[qm] = qc;
            q += qt;
            rem -= qt * d;
        }
        return q;
    }

    std::string str() const;

private:
    void check_table(const WPoly& o) const {
        if (tab_ && o.tab_ && tab_.get() != o.tab_.get())
            throw std::invalid_argument("WPoly: mixed variable tables");
    }

    VarTablePtr tab_;
    std::map<Monomial, GaussRat> terms_;
};

inline std::string monomial_str(const VariableTable& tab, const Monomial& m) {
    std::string s;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += tab.entry(static_cast<int>(i)).name;
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

inline std::string WPoly::str() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const Monomial, GaussRat>*> ts;
    for (const auto& t : terms_) ts.push_back(&t);
    std::sort(ts.begin(), ts.end(), [&](auto* a, auto* b) {
        return graded_lex_greater(*tab_, a->first, b->first);
    });
    std::string out;
    for (auto* t : ts) {
        std::string cs = gr_str(t->second);
        std::string ms = monomial_str(*tab_, t->first);
        std::string piece;
        if (ms == "1") piece = "(" + cs + ")";
        else if (cs == "1") piece = ms;
        else if (cs == "-1") piece = "-" + ms;
        else piece = "(" + cs + ")*" + ms;
        if (!out.empty() && piece[0] != '-') out += "+";
        out += piece;
    }
    return out;
}

} // namespace tncr
