// The initial frame on the complexified tangent bundle of a model: the CR
// generator and its conjugate, iterated brackets up to the model length,
// exact constant bracket structure, and the dual coframe's Darboux-Cartan
// table.  All fields are explicit polynomial vector fields; ranks are
// symbolic over the fraction field.
#pragma once

#include "tncr/model.hpp"

#include <map>
#include <utility>
#include <vector>

namespace tncr {

struct VectorField {
    std::map<int, WPoly> comp;  // variable index -> coefficient

    bool is_zero() const {
        for (const auto& [v, c] : comp)
            if (!c.is_zero()) return false;
        return true;
    }
    WPoly coeff(int v, const VarTablePtr& tab) const {
        auto it = comp.find(v);
        return it == comp.end() ? WPoly(tab) : it->second;
    }
    void set(int v, WPoly p) {
        if (p.is_zero()) comp.erase(v);
        else comp[v] = std::move(p);
    }

    // X(f) = sum_v X^v df/dv
    WPoly apply(const WPoly& f) const {
        WPoly r(f.table());
        for (const auto& [v, c] : comp) r += c * f.derivative(v);
        return r;
    }

    VectorField scaled(const GaussRat& c) const {
        VectorField r;
        for (const auto& [v, p] : comp) r.set(v, p.scaled(c));
        return r;
    }
    VectorField operator+(const VectorField& o) const {
        VectorField r(*this);
        for (const auto& [v, p] : o.comp) r.set(v, r.coeff(v, p.table()) + p);
        return r;
    }
    VectorField operator-(const VectorField& o) const { return *this + o.scaled(GaussRat(-1)); }
    bool operator==(const VectorField& o) const { return (*this - o).is_zero(); }

    VectorField conjugate(const VariableTable& tab) const {
        VectorField r;
        for (const auto& [v, p] : comp) r.set(tab.conj_index(v), p.conjugate());
        return r;
    }
};

VectorField lie_bracket(const VectorField& x, const VectorField& y);

struct FrameLabel {
    int length = 0;
    int index = 0;  // global 1..2+k, construction order
    friend bool operator==(const FrameLabel& a, const FrameLabel& b) {
        return a.length == b.length && a.index == b.index;
    }
    std::string str() const {
        return "(" + std::to_string(length) + "," + std::to_string(index) + ")";
    }
};

struct FrameField {
    FrameLabel label;
    VectorField field;       // ambient coordinates
    VectorField intrinsic;   // z, zb, u coordinates
    GaussRat phase{1};       // field = phase * [L_{1,gen}, parent]
    int gen = 0;             // 1 or 2; 0 for the two generators
    int parent = 0;          // global index of the parent field; 0 for length 1
    int conj_partner = 0;    // global index; equals own index when self-conjugate
    int p = 0, q = 0;        // leading exponents, p + q = length
    std::vector<int> word;   // construction word over {1,2}
};

using WedgeKey = std::pair<int, int>;  // (display position a, b), a < b

struct Frame {
    const Model* model = nullptr;
    std::vector<FrameField> fields;  // position = global index - 1

    // [F_a, F_b] = sum_c bracket[{a,b}][c] F_c for a < b (global indices).
    std::map<std::pair<int, int>, std::map<int, GaussRat>> brackets;

    // Display order of the coframe: weight blocks descending; within a
    // block self-conjugate fields first, then conjugate pairs.
    std::vector<int> display;            // display position -> global index
    std::vector<int> display_pos;        // global index - 1 -> display position

    // dsigma_c = sum K[{i,j}] sigma_i ^ sigma_j over display positions i < j.
    std::vector<std::map<WedgeKey, GaussRat>> darboux;  // indexed by display position of c

    int size() const { return static_cast<int>(fields.size()); }
    const FrameField& by_index(int global_index) const { return fields[global_index - 1]; }
    const FrameField& by_display(int pos) const { return fields[display[pos] - 1]; }

    GaussRat bracket_coeff(int a, int b, int c) const;  // coefficient of F_c in [F_a, F_b]
};

VectorField generator_field(const Model& m);
VectorField intrinsicize(const VectorField& x, const Model& m);

Frame build_initial_frame(const Model& m);

// Fills Frame::darboux from the bracket table (negated constants) and
// verifies the unique-predecessor property of every non-generator label.
void darboux_structure(Frame& f);

} // namespace tncr
