#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tncr/cartan.hpp"

using namespace tncr;

namespace {

struct Setup {
    Model model;
    Frame frame;
    Ambiguity am;
    StructureEquations se;
    AbsorptionSystem sys;
    explicit Setup(int k)
        : model(build_model(k)), frame(build_initial_frame(model)), am(build_ambiguity(frame)) {
        frame.model = &model;
        am.frame = &frame;
        se = compute_structure_equations(frame, am);
        sys = extract_system_S(frame, am, se);
    }
};

std::set<int> atom_ids(const AbsorptionSystem& sys, const AtomTable& atoms, bool named_only) {
    std::set<int> ids;
    for (const auto& eq : sys.eqs)
        for (const auto& [k, c] : eq.lhs.terms())
            for (const auto& ref : k.atoms)
                if (!named_only || !atoms.atom(ref.id).is_t) ids.insert(ref.id);
    return ids;
}

} // namespace

TEST_CASE("torsion coefficients all have weight zero (k=2..6)") {
    for (int k = 2; k <= 6; ++k) {
        CAPTURE(k);
        Setup s(k);
        CHECK(audit_torsion_weight_zero(s.am, s.se));
    }
}

TEST_CASE("the designated low-weight equations solve to the boxed t-expressions") {
    for (int k = 2; k <= 6; ++k) {
        CAPTURE(k);
        Setup s(k);
        CHECK(audit_t_expressions(s.frame, s.am, s.se));
    }
}

TEST_CASE("system S is weighted homogeneous and linear") {
    for (int k = 2; k <= 6; ++k) {
        CAPTURE(k);
        Setup s(k);
        CHECK(audit_S_homogeneous(s.am, s.sys));
        CHECK(audit_S_linear(s.am, s.sys));
        // no delta slot covers an extracted wedge
        for (const auto& eq : s.sys.eqs) {
            CHECK_FALSE(s.se.delta_cols[eq.row].count(eq.wedge.first));
            CHECK_FALSE(s.se.delta_cols[eq.row].count(eq.wedge.second));
        }
        // Lemma-style uniqueness: each part-I target wedge receives its
        // diagonal contribution from exactly one differential (checked in
        // darboux_structure); here: extracted lhs have no constant part
        for (const auto& eq : s.sys.eqs)
            for (const auto& [key, c] : eq.lhs.terms()) CHECK_FALSE(key.atoms.empty());
    }
}

TEST_CASE("k=6: S has the same solution set as the reference system") {
    Setup s(6);
    const Frame& f = s.frame;
    auto pos = [&](int idx) { return f.display_pos[idx - 1]; };
    int nu = pos(8), mu = pos(6), sg = pos(4), rh = pos(3), ze = pos(1);

    // positional entries, exactly the symbols of the printed matrix
    GExpr a2p = s.am.g[ze][rh];
    GExpr a3p = s.am.g[rh][sg];
    GExpr a6p = s.am.g[sg][mu];
    GExpr a13p = s.am.g[sg][nu];
    const AtomTable& atoms = s.am.atoms;
    auto I = [&](int re, int im) { return GaussRat(Rat(re), Rat(im)); };
    auto mono = [&](int e1, int e1b, GaussRat c) { return GExpr::a1_monomial(e1, e1b, c); };

    AbsorptionSystem fixture;
    auto add = [&](GExpr e) {
        AbsorbedEquation eq;
        eq.lhs = std::move(e);
        fixture.eqs.push_back(std::move(eq));
    };
    // the five reference equations
    add(a13p.conj(atoms) + mono(0, 1, I(2, 0)) * a3p + mono(1, 1, I(0, 2)) * a2p.conj(atoms));
    add(a6p + mono(1, 0, I(3, 0)) * a3p + mono(2, 0, I(0, 5)) * a2p.conj(atoms));
    add(a3p.conj(atoms) + mono(0, 1, I(0, 1)) * a2p);
    add(a6p + mono(1, 0, I(-3, 0)) * a3p + mono(2, 0, I(0, -3)) * a2p.conj(atoms));
    add(a13p.conj(atoms) - mono(1, 0, I(1, 0)) * a3p.conj(atoms));
    // the two equations defining t1 and t2
    GExpr t1 = GExpr::atom(s.am.atoms.t_atom(1)), t2 = GExpr::atom(s.am.atoms.t_atom(2));
    add(t2 * mono(1, 1, I(1, 0)) - a2p.scaled(GaussRat::i_unit()));
    add(t1 * mono(2, 1, I(1, 0)) - a3p - mono(1, 0, I(0, 2)) * a2p.conj(atoms));

    // both systems live on the same named atoms and both pin exactly zero
    CHECK(atom_ids(fixture, atoms, true) == atom_ids(s.sys, atoms, true));
    Solution ours = solve_system(s.am, s.sys);
    Solution theirs = solve_system(s.am, fixture);
    CHECK(ours.unique);
    CHECK(theirs.unique);
    CHECK(ours.named_all_zero);
    CHECK(theirs.named_all_zero);
    CHECK(ours.ts_all_zero);
    CHECK(theirs.ts_all_zero);
}

TEST_CASE("solution pipeline: all parameters vanish, fixtures for reduction") {
    for (int k = 2; k <= 6; ++k) {
        CAPTURE(k);
        Setup s(k);
        Solution sol = solve_with_fallback(s.frame, s.am, s.se, s.sys);
        CHECK(sol.named_all_zero);
        CHECK(sol.ts_all_zero);
        CHECK(audit_solution_satisfies_S(s.am, s.sys, sol));
        CHECK(audit_fundamental_vanishing(s.frame, s.am));
        // only the degenerate k=2 needs the essential extension
        CHECK(sol.used_essential_extension == (k == 2));

        ReducedStructure red = reduce_structure(s.frame, s.am, s.se, sol);
        CHECK(audit_idempotent_extraction(s.frame, s.am, red));
        CHECK(full_torsion_crosscheck(s.frame, s.am, s.se));
        if (k == 2 || k == 4) {
            CHECK(red.normalizable);
            CHECK(red.group_dim == 1);
        }
        if (k == 3 || k == 5 || k == 6) {
            CHECK_FALSE(red.normalizable);
            CHECK(red.group_dim == 2);
        }
        CHECK(red.coframe_size == 2 + k + red.group_dim);
    }
}

TEST_CASE("k=6 reduced equations match the reference constants") {
    Setup s(6);
    Solution sol = solve_with_fallback(s.frame, s.am, s.se, s.sys);
    ReducedStructure red = reduce_structure(s.frame, s.am, s.se, sol);
    const Frame& f = s.frame;
    auto pos = [&](int idx) { return f.display_pos[idx - 1]; };
    int nu = pos(8), mu = pos(6), sg = pos(4), rh = pos(3), ze = pos(1), zb = pos(2);
    auto sgb = pos(5);

    // d nu = (2a+2ab)^nu + sgb^z + sg^zb
    CHECK(red.mc[nu] == std::make_pair(2, 2));
    CHECK(red.constants[nu].at({std::min(sgb, ze), std::max(sgb, ze)}) == GaussRat(1));
    CHECK(red.constants[nu].at({std::min(sg, zb), std::max(sg, zb)}) == GaussRat(1));
    CHECK(red.constants[nu].size() == 2);
    // d mu = (3a+ab)^mu + sg^z
    CHECK(red.mc[mu] == std::make_pair(3, 1));
    CHECK(red.constants[mu].at({std::min(sg, ze), std::max(sg, ze)}) == GaussRat(1));
    CHECK(red.constants[mu].size() == 1);
    // d sg = (2a+ab)^sg + rh^z
    CHECK(red.constants[sg].at({std::min(rh, ze), std::max(rh, ze)}) == GaussRat(1));
    // d rh = (a+ab)^rh + i z^zb
    CHECK(red.constants[rh].at({std::min(ze, zb), std::max(ze, zb)}) == GaussRat::i_unit());
    // d z = a^z: no wedge constants
    CHECK(red.constants[ze].empty());
    CHECK(red.constants[zb].empty());
}

TEST_CASE("solver rejects nonlinear and inhomogeneous systems") {
    Setup s(3);
    GAtomRef t1 = s.am.atoms.t_atom(1);
    {
        AbsorptionSystem bad;
        AbsorbedEquation eq;
        eq.lhs = GExpr::atom(t1) * GExpr::atom(t1);  // quadratic
        bad.eqs.push_back(eq);
        CHECK_THROWS_AS(solve_system(s.am, bad), InternalError);
    }
    {
        AbsorptionSystem bad;
        AbsorbedEquation eq;
        eq.lhs = GExpr::atom(t1) + GExpr::scalar(GaussRat(1));  // constant term
        bad.eqs.push_back(eq);
        CHECK_THROWS_AS(solve_system(s.am, bad), InternalError);
    }
}

TEST_CASE("clearing denominators") {
    GExpr e = GExpr::a1_monomial(-2, 1) + GExpr::a1_monomial(0, -3);
    GExpr c = cleared(e);
    for (const auto& [k, v] : c.terms()) {
        CHECK(k.e1 >= 0);
        CHECK(k.e1b >= 0);
    }
    CHECK(cleared(GExpr()) == GExpr());
}
