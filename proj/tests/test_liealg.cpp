#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tncr/liealg.hpp"
#include "tncr/report.hpp"

using namespace tncr;

namespace {

// bracket as a single basis element with coefficient, for fixture checks
bool bracket_is(const LieAlgebraTable& t, int i, int j, int target, GaussRat c) {
    auto b = t.bracket(i, j);
    if (c.is_zero()) return b.empty();
    return b.size() == 1 && b.count(target) && b.at(target) == c;
}

} // namespace

TEST_CASE("k=6 bracket table matches the reference fixture") {
    auto a = analyze(6);
    const LieAlgebraTable& t = a->algebra;
    const Frame& f = a->frame;
    REQUIRE(t.dim() == 10);
    auto pos = [&](int idx) { return f.display_pos[idx - 1]; };
    int nu = pos(8), mu = pos(6), mub = pos(7), sg = pos(4), sgb = pos(5), rh = pos(3),
        ze = pos(1), zb = pos(2);
    int va = t.n_gamma, vab = t.n_gamma + 1;
    GaussRat one(1), mi = -GaussRat::i_unit();

    // negative part
    CHECK(bracket_is(t, ze, zb, rh, mi));          // [vz, vzb] = -i vrho
    CHECK(bracket_is(t, rh, ze, sg, -one));        // [vrho, vz] = -vsigma
    CHECK(bracket_is(t, rh, zb, sgb, -one));
    CHECK(bracket_is(t, sg, ze, mu, -one));        // [vsigma, vz] = -vmu
    CHECK(bracket_is(t, sg, zb, nu, -one));        // [vsigma, vzb] = -vnu
    CHECK(bracket_is(t, sgb, ze, nu, -one));
    CHECK(bracket_is(t, sgb, zb, mub, -one));
    // zero brackets inside the top block
    CHECK(t.bracket(nu, mu).empty());
    CHECK(t.bracket(mu, mub).empty());
    CHECK(t.bracket(sg, sgb).empty());

    // grading operators
    CHECK(bracket_is(t, nu, va, nu, GaussRat(2)));
    CHECK(bracket_is(t, nu, vab, nu, GaussRat(2)));
    CHECK(bracket_is(t, mu, va, mu, GaussRat(3)));
    CHECK(bracket_is(t, mu, vab, mu, one));
    CHECK(bracket_is(t, sg, va, sg, GaussRat(2)));
    CHECK(bracket_is(t, sg, vab, sg, one));
    CHECK(bracket_is(t, rh, va, rh, one));
    CHECK(bracket_is(t, rh, vab, rh, one));
    CHECK(bracket_is(t, ze, va, ze, one));
    CHECK(t.bracket(ze, vab).empty());             // [vz, v0b] = 0
    CHECK(bracket_is(t, zb, vab, zb, one));
    CHECK(t.bracket(va, vab).empty());             // abelian g0
}

TEST_CASE("grading reports") {
    {
        auto a = analyze(6);
        GradingReport g = verify_grading(a->algebra, 6);
        CHECK(g.total == 10);
        CHECK(g.dims.at(-4) == 3);
        CHECK(g.dims.at(-3) == 2);
        CHECK(g.dims.at(-2) == 1);
        CHECK(g.dims.at(-1) == 2);
        CHECK(g.dims.at(0) == 2);
        CHECK(g.minus_dim_ok);
        CHECK(g.g0_dim_ok);
        CHECK(g.closure_ok);
        CHECK(g.no_positive);
    }
    {
        auto a = analyze(3);
        GradingReport g = verify_grading(a->algebra, 3);
        CHECK(g.total == 7);
        CHECK(g.dims.at(-3) == 2);
        CHECK(g.dims.at(-2) == 1);
        CHECK(g.dims.at(-1) == 2);
        CHECK(g.dims.at(0) == 2);
    }
    {
        auto a = analyze(4);
        GradingReport g = verify_grading(a->algebra, 4);
        CHECK(g.total == 7);  // 3 + 4
        CHECK(g.dims.at(0) == 1);
    }
}

TEST_CASE("verdicts") {
    for (int k = 2; k <= 8; ++k) {
        CAPTURE(k);
        auto a = analyze(k);
        Verdict v = rigidity_verdict(a->algebra, k);
        CHECK(v.rigid);
        CHECK((v.dim == 3 + k || v.dim == 4 + k));
        CHECK(v.dim == a->algebra.dim());
    }
}

TEST_CASE("nilpotent minus part") {
    for (int k : {3, 6}) {
        CAPTURE(k);
        auto a = analyze(k);
        MinusPartReport mp = nilpotent_minus_part(a->algebra, a->model.profile);
        CHECK(mp.generated_by_g1);
        CHECK(mp.nilpotent_step_rho);
        CHECK(mp.dims_match_profile);
    }
}

TEST_CASE("minus part round-trips the frame bracket constants") {
    // [v_d, v_e] on the negative part carries exactly the frame's bracket
    // constants (the Darboux table negated twice).
    for (int k : {3, 4, 6}) {
        CAPTURE(k);
        auto a = analyze(k);
        const Frame& f = a->frame;
        const LieAlgebraTable& t = a->algebra;
        for (int d = 0; d < t.n_gamma; ++d)
            for (int e = 0; e < t.n_gamma; ++e) {
                auto combo = t.bracket(d, e);
                for (int m = 0; m < t.n_gamma; ++m) {
                    GaussRat expect = f.bracket_coeff(f.display[d], f.display[e], f.display[m]);
                    GaussRat got = combo.count(m) ? combo.at(m) : GaussRat(0);
                    CHECK(got == expect);
                }
            }
    }
}

TEST_CASE("algebra axioms") {
    for (int k = 2; k <= 7; ++k) {
        CAPTURE(k);
        auto a = analyze(k);
        CHECK(audit_jacobi(a->algebra));
        CHECK(audit_antisymmetry(a->algebra));
        CHECK(audit_g0_abelian(a->algebra));
    }
}
