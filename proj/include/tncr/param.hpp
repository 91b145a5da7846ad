// Group-parameter arithmetic, in two layers.
//
// Layer 1 (ParamFraction): Laurent monomials in a1, a1b times multisets of
// opaque derivative symbols D_t(...D_s(a1)...).  This is the free
// differential algebra in which the pushforward of the frame is computed;
// the derivations D_1, D_2 are the two lifted generators.
//
// Layer 2 (GExpr): Laurent monomials in a1, a1b times multisets of *named*
// parameter atoms (a2, a3, ...; also the absorption unknowns t_n).  Every
// named atom is backed by a canonicalized ParamFraction from layer 1; the
// whole Cartan phase (inverse matrix, torsions, system S) runs in GExpr.
#pragma once

#include "tncr/errors.hpp"
#include "tncr/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace tncr {

// ---------------------------------------------------------------- layer 1

struct DerivSymbol {
    bool barred = false;        // base a1 (false) or a1b (true)
    std::vector<int> word;      // derivations in order of application

    auto operator<=>(const DerivSymbol&) const = default;

    DerivSymbol conj() const {
        DerivSymbol s;
        s.barred = !barred;
        for (int t : word) s.word.push_back(3 - t);
        return s;
    }
    std::string str() const {
        std::string inner = barred ? "a1b" : "a1";
        for (int t : word) inner = "D" + std::to_string(t) + "(" + inner + ")";
        return inner;
    }
};

struct PFKey {
    int e1 = 0, e1b = 0;              // Laurent exponents of a1, a1b
    std::vector<DerivSymbol> syms;    // sorted multiset

    auto operator<=>(const PFKey&) const = default;
};

class ParamFraction {
public:
    ParamFraction() = default;

    static ParamFraction scalar(GaussRat c) {
        ParamFraction p;
        if (!c.is_zero()) p.terms_[PFKey{}] = std::move(c);
        return p;
    }
    static ParamFraction a1_monomial(int e1, int e1b, GaussRat c = GaussRat(1)) {
        ParamFraction p;
        if (!c.is_zero()) p.terms_[PFKey{e1, e1b, {}}] = std::move(c);
        return p;
    }
    static ParamFraction symbol(DerivSymbol s) {
        ParamFraction p;
        p.terms_[PFKey{0, 0, {std::move(s)}}] = GaussRat(1);
        return p;
    }

    const std::map<PFKey, GaussRat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(PFKey k, const GaussRat& c);

    ParamFraction operator-() const { return scaled(GaussRat(-1)); }
    ParamFraction scaled(const GaussRat& c) const;
    ParamFraction& operator+=(const ParamFraction& o);
    friend ParamFraction operator+(ParamFraction a, const ParamFraction& b) { a += b; return a; }
    friend ParamFraction operator-(ParamFraction a, const ParamFraction& b) {
        a += b.scaled(GaussRat(-1));
        return a;
    }
    friend ParamFraction operator*(const ParamFraction& a, const ParamFraction& b);

    ParamFraction conj() const;

    // The derivation D_t (t = 1 or 2) by the Leibniz rule.
    ParamFraction derive(int t) const;

    // Sets every derivative symbol with nonempty word to zero.
    ParamFraction vanish_derivatives() const;

    friend bool operator==(const ParamFraction& a, const ParamFraction& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator<(const ParamFraction& a, const ParamFraction& b) {
        return a.terms_ < b.terms_;
    }

    std::string str() const;

private:
    std::map<PFKey, GaussRat> terms_;
};

// ---------------------------------------------------------------- layer 2

struct GAtomRef {
    int id = 0;
    bool barred = false;
    auto operator<=>(const GAtomRef&) const = default;
};

struct GroupAtom {
    std::string name;       // "a2", ..., "t1", ...
    int weight = 0;         // birth length; 0 for absorption unknowns
    bool is_t = false;
    ParamFraction rep;      // canonical representative (empty for t atoms)
    bool conj_self = false; // conj(rep) is a unit multiple of rep itself
    GaussRat conj_unit{1};  // conj(plain) = conj_unit * (conj_self ? plain : barred)
};

class AtomTable {
public:
    int size() const { return static_cast<int>(atoms_.size()); }
    const GroupAtom& atom(int id) const { return atoms_[id]; }

    // Classifies an expression: returns (unit, ref) with expr = unit * value(ref),
    // creating a fresh named class when no existing one matches; `birth` is
    // the frame length used for the weight of a fresh class.
    std::pair<GaussRat, GAtomRef> classify(const ParamFraction& expr, int birth);

    // Abstract absorption unknown t_n (weight 0).
    GAtomRef t_atom(int n);

    // conj of a single reference, as (unit, ref).
    std::pair<GaussRat, GAtomRef> conj_ref(const GAtomRef& r) const;

    std::string ref_name(const GAtomRef& r) const {
        return r.barred ? atoms_[r.id].name + "b" : atoms_[r.id].name;
    }

    std::vector<int> named_ids() const;  // non-t classes in creation order

private:
    std::vector<GroupAtom> atoms_;
    std::map<ParamFraction, std::pair<int, bool>> lookup_;  // normalized expr -> (id, barred)
    std::map<int, int> t_ids_;                              // n -> atom id
    int names_issued_ = 0;
};

struct GKey {
    int e1 = 0, e1b = 0;
    std::vector<GAtomRef> atoms;  // sorted multiset
    auto operator<=>(const GKey&) const = default;
};

class GExpr {
public:
    GExpr() = default;

    static GExpr scalar(GaussRat c) {
        GExpr p;
        if (!c.is_zero()) p.terms_[GKey{}] = std::move(c);
        return p;
    }
    static GExpr a1_monomial(int e1, int e1b, GaussRat c = GaussRat(1)) {
        GExpr p;
        if (!c.is_zero()) p.terms_[GKey{e1, e1b, {}}] = std::move(c);
        return p;
    }
    static GExpr atom(GAtomRef r, GaussRat c = GaussRat(1)) {
        GExpr p;
        if (!c.is_zero()) p.terms_[GKey{0, 0, {std::move(r)}}] = std::move(c);
        return p;
    }

    const std::map<GKey, GaussRat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(GKey k, const GaussRat& c);

    GExpr operator-() const { return scaled(GaussRat(-1)); }
    GExpr scaled(const GaussRat& c) const;
    GExpr& operator+=(const GExpr& o);
    friend GExpr operator+(GExpr a, const GExpr& b) { a += b; return a; }
    friend GExpr operator-(GExpr a, const GExpr& b) { a += b.scaled(GaussRat(-1)); return a; }
    friend GExpr operator*(const GExpr& a, const GExpr& b);

    // Multiplies by a1^e1 a1b^e1b (negative exponents allowed).
    GExpr shifted(int e1, int e1b) const;

    GExpr conj(const AtomTable& tab) const;

    // Weight of every term must agree (a1, a1b weigh 1; atoms their birth
    // weight); returns false when inhomogeneous.  Zero is homogeneous.
    bool homogeneous_weight(const AtomTable& tab, int* weight_out = nullptr) const;

    // All named (non-t) atoms set to zero: only pure a1-monomial and t terms
    // survive.
    GExpr named_to_zero(const AtomTable& tab) const;

    // a1 = a1b = 1.
    GExpr dehomogenized() const;

    // True when the expression is c * (a1/a1b)^d; outputs c and d.
    bool is_a1_ratio(GaussRat* c_out, int* d_out) const;

    // a1b = a1 followed by a1 = 1 (used after normalizing a1 real).
    GExpr a1_real_normalized() const { return dehomogenized(); }

    friend bool operator==(const GExpr& a, const GExpr& b) { return a.terms_ == b.terms_; }
    friend bool operator<(const GExpr& a, const GExpr& b) { return a.terms_ < b.terms_; }

    std::string str(const AtomTable& tab) const;

private:
    std::map<GKey, GaussRat> terms_;
};

// Unit normalization shared by the canonical forms: the unique unit
// u in {1,-1,i,-i} with (u*c).re > 0 and (u*c).im >= 0.
GaussRat normal_unit(const GaussRat& c);

} // namespace tncr
