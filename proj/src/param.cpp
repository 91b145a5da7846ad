#include "tncr/param.hpp"

#include <algorithm>

namespace tncr {

// ---------------------------------------------------------------- layer 1

void ParamFraction::add_term(PFKey k, const GaussRat& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(std::move(k), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ParamFraction ParamFraction::scaled(const GaussRat& c) const {
    ParamFraction r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
}

ParamFraction& ParamFraction::operator+=(const ParamFraction& o) {
    for (const auto& [k, v] : o.terms_) add_term(k, v);
    return *this;
}

ParamFraction operator*(const ParamFraction& a, const ParamFraction& b) {
    ParamFraction r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            PFKey k;
            k.e1 = ka.e1 + kb.e1;
            k.e1b = ka.e1b + kb.e1b;
            k.syms = ka.syms;
            k.syms.insert(k.syms.end(), kb.syms.begin(), kb.syms.end());
            std::sort(k.syms.begin(), k.syms.end());
            r.add_term(std::move(k), ca * cb);
        }
    return r;
}

ParamFraction ParamFraction::conj() const {
    ParamFraction r;
    for (const auto& [k, c] : terms_) {
        PFKey kc;
        kc.e1 = k.e1b;
        kc.e1b = k.e1;
        for (const auto& s : k.syms) kc.syms.push_back(s.conj());
        std::sort(kc.syms.begin(), kc.syms.end());
        r.add_term(std::move(kc), c.conj());
    }
    return r;
}

ParamFraction ParamFraction::derive(int t) const {
    ParamFraction r;
    for (const auto& [k, c] : terms_) {
        if (k.e1 != 0) {
            PFKey nk(k);
            nk.e1 -= 1;
            nk.syms.push_back(DerivSymbol{false, {t}});
            std::sort(nk.syms.begin(), nk.syms.end());
            r.add_term(std::move(nk), c * GaussRat(Rat(k.e1)));
        }
        if (k.e1b != 0) {
            PFKey nk(k);
            nk.e1b -= 1;
            nk.syms.push_back(DerivSymbol{true, {t}});
            std::sort(nk.syms.begin(), nk.syms.end());
            r.add_term(std::move(nk), c * GaussRat(Rat(k.e1b)));
        }
        for (size_t i = 0; i < k.syms.size(); ++i) {
            PFKey nk(k);
            nk.syms[i].word.push_back(t);
            std::sort(nk.syms.begin(), nk.syms.end());
            r.add_term(std::move(nk), c);
        }
    }
    return r;
}

ParamFraction ParamFraction::vanish_derivatives() const {
    ParamFraction r;
    for (const auto& [k, c] : terms_) {
        bool has_derivative = false;
        for (const auto& s : k.syms)
            if (!s.word.empty()) { has_derivative = true; break; }
        if (!has_derivative) r.add_term(k, c);
    }
    return r;
}

std::string ParamFraction::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
        std::string piece = "(" + gr_str(c) + ")";
        if (k.e1 != 0) piece += "*a1" + (k.e1 == 1 ? std::string() : "^" + std::to_string(k.e1));
        if (k.e1b != 0) piece += "*a1b" + (k.e1b == 1 ? std::string() : "^" + std::to_string(k.e1b));
        for (const auto& s : k.syms) piece += "*" + s.str();
        if (!out.empty()) out += " + ";
        out += piece;
    }
    return out;
}

// ---------------------------------------------------------------- units

GaussRat normal_unit(const GaussRat& c) {
    if (c.is_zero()) throw InternalError("normal_unit of zero");
    const GaussRat units[4] = {GaussRat(1), GaussRat(-1), GaussRat::i_unit(), -GaussRat::i_unit()};
    for (const GaussRat& u : units) {
        GaussRat v = u * c;
        if (v.re > 0 && v.im >= 0) return u;
    }
    throw InternalError("normal_unit: no quadrant representative");
}

// ---------------------------------------------------------------- table

namespace {

// (u, u*expr) with the leading coefficient of u*expr in the half-open
// first quadrant; expr = u^{-1} * (u*expr).
std::pair<GaussRat, ParamFraction> normalize(const ParamFraction& e) {
    const auto& lead = *e.terms().begin();
    GaussRat u = normal_unit(lead.second);
    return {u, e.scaled(u)};
}

} // namespace

std::pair<GaussRat, GAtomRef> AtomTable::classify(const ParamFraction& expr, int birth) {
    if (expr.is_zero()) throw InternalError("AtomTable: classify zero expression");
    auto [u, n] = normalize(expr);
    auto it = lookup_.find(n);
    if (it != lookup_.end()) {
        GaussRat inv_u = GaussRat(1) / u;
        return {inv_u, GAtomRef{it->second.first, it->second.second}};
    }
    GroupAtom a;
    a.rep = n;
    a.weight = birth;
    int id = static_cast<int>(atoms_.size());
    a.name = "a" + std::to_string(names_issued_ + 2);  // a1 is the Laurent part
    ++names_issued_;
    auto [uc, nc] = normalize(n.conj());
    a.conj_self = (nc == n);
    a.conj_unit = GaussRat(1) / uc;  // conj(n) = uc^{-1} * nc
    atoms_.push_back(a);
    lookup_.emplace(n, std::make_pair(id, false));
    if (!a.conj_self) lookup_.emplace(nc, std::make_pair(id, true));
    GaussRat inv_u = GaussRat(1) / u;
    return {inv_u, GAtomRef{id, false}};
}

GAtomRef AtomTable::t_atom(int n) {
    auto it = t_ids_.find(n);
    if (it != t_ids_.end()) return GAtomRef{it->second, false};
    GroupAtom a;
    a.name = "t" + std::to_string(n);
    a.weight = 0;
    a.is_t = true;
    int id = static_cast<int>(atoms_.size());
    atoms_.push_back(a);
    t_ids_[n] = id;
    return GAtomRef{id, false};
}

std::pair<GaussRat, GAtomRef> AtomTable::conj_ref(const GAtomRef& r) const {
    const GroupAtom& a = atoms_[r.id];
    if (a.is_t) return {GaussRat(1), GAtomRef{r.id, !r.barred}};
    if (a.conj_self)
        return {r.barred ? GaussRat(1) / a.conj_unit : a.conj_unit, GAtomRef{r.id, false}};
    return {a.conj_unit, GAtomRef{r.id, !r.barred}};
}

std::vector<int> AtomTable::named_ids() const {
    std::vector<int> ids;
    for (int i = 0; i < size(); ++i)
        if (!atoms_[i].is_t) ids.push_back(i);
    return ids;
}

// ---------------------------------------------------------------- GExpr

void GExpr::add_term(GKey k, const GaussRat& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(std::move(k), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GExpr GExpr::scaled(const GaussRat& c) const {
    GExpr r;
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
}

GExpr& GExpr::operator+=(const GExpr& o) {
    for (const auto& [k, v] : o.terms_) add_term(k, v);
    return *this;
}

GExpr operator*(const GExpr& a, const GExpr& b) {
    GExpr r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            GKey k;
            k.e1 = ka.e1 + kb.e1;
            k.e1b = ka.e1b + kb.e1b;
            k.atoms = ka.atoms;
            k.atoms.insert(k.atoms.end(), kb.atoms.begin(), kb.atoms.end());
            std::sort(k.atoms.begin(), k.atoms.end());
            r.add_term(std::move(k), ca * cb);
        }
    return r;
}

GExpr GExpr::shifted(int e1, int e1b) const {
    GExpr r;
    for (const auto& [k, c] : terms_) {
        GKey nk(k);
        nk.e1 += e1;
        nk.e1b += e1b;
        r.terms_.emplace(std::move(nk), c);
    }
    return r;
}

GExpr GExpr::conj(const AtomTable& tab) const {
    GExpr r;
    for (const auto& [k, c] : terms_) {
        GKey nk;
        nk.e1 = k.e1b;
        nk.e1b = k.e1;
        GaussRat coef = c.conj();
        for (const auto& a : k.atoms) {
            auto [u, ref] = tab.conj_ref(a);
            coef *= u;
            nk.atoms.push_back(ref);
        }
        std::sort(nk.atoms.begin(), nk.atoms.end());
        r.add_term(std::move(nk), coef);
    }
    return r;
}

bool GExpr::homogeneous_weight(const AtomTable& tab, int* weight_out) const {
    if (terms_.empty()) {
        if (weight_out) *weight_out = 0;
        return true;
    }
    bool first = true;
    int w = 0;
    for (const auto& [k, c] : terms_) {
        int tw = k.e1 + k.e1b;
        for (const auto& a : k.atoms) tw += tab.atom(a.id).weight;
        if (first) { w = tw; first = false; }
        else if (tw != w) return false;
    }
    if (weight_out) *weight_out = w;
    return true;
}

GExpr GExpr::named_to_zero(const AtomTable& tab) const {
    GExpr r;
    for (const auto& [k, c] : terms_) {
        bool named = false;
        for (const auto& a : k.atoms)
            if (!tab.atom(a.id).is_t) { named = true; break; }
        if (!named) r.add_term(k, c);
    }
    return r;
}

GExpr GExpr::dehomogenized() const {
    GExpr r;
    for (const auto& [k, c] : terms_) {
        GKey nk(k);
        nk.e1 = 0;
        nk.e1b = 0;
        r.add_term(std::move(nk), c);
    }
    return r;
}

bool GExpr::is_a1_ratio(GaussRat* c_out, int* d_out) const {
    if (terms_.empty()) {
        if (c_out) *c_out = GaussRat(0);
        if (d_out) *d_out = 0;
        return true;
    }
    if (terms_.size() != 1) return false;
    const auto& [k, c] = *terms_.begin();
    if (!k.atoms.empty()) return false;
    if (k.e1 + k.e1b != 0) return false;
    if (c_out) *c_out = c;
    if (d_out) *d_out = k.e1;
    return true;
}

std::string GExpr::str(const AtomTable& tab) const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
        std::string m;
        if (k.e1 != 0) m += "*a1" + (k.e1 == 1 ? std::string() : "^" + std::to_string(k.e1));
        if (k.e1b != 0) m += "*a1b" + (k.e1b == 1 ? std::string() : "^" + std::to_string(k.e1b));
        for (const auto& a : k.atoms) m += "*" + tab.ref_name(a);
        std::string piece;
        if (m.empty()) piece = "(" + gr_str(c) + ")";
        else if (c == GaussRat(1)) piece = m.substr(1);
        else if (c == GaussRat(-1)) piece = "-" + m.substr(1);
        else piece = "(" + gr_str(c) + ")*" + m.substr(1);
        if (!out.empty()) out += " + ";
        out += piece;
    }
    return out;
}

} // namespace tncr
