#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tncr/linalg.hpp"
#include "tncr/rational.hpp"
#include "tncr/wpoly.hpp"

#include <random>

using namespace tncr;

namespace {

VarTablePtr small_table() {
    // z, zb plus one graph variable of weight 2 and one of weight 3.
    return std::make_shared<VariableTable>(std::vector<int>{2, 3});
}

// Deterministic random polynomials for property tests.
WPoly random_poly(const VarTablePtr& tab, std::mt19937& rng, int max_terms = 4) {
    std::uniform_int_distribution<int> nterms(1, max_terms), expo(0, 2), coef(-3, 3);
    WPoly p(tab);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Monomial m(tab->size(), 0);
        for (int v = 0; v < tab->size(); ++v) m[v] = expo(rng);
        p.add_term(m, GaussRat(Rat(coef(rng)), Rat(coef(rng))));
    }
    return p;
}

// Brute-force distribution oracle: multiply by expanding every term pair
// into a flat list, then re-accumulate.  Independent of WPoly::operator*.
WPoly mul_oracle(const WPoly& a, const WPoly& b) {
    WPoly r(a.table());
    std::vector<std::pair<Monomial, GaussRat>> raw;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            Monomial m(ma);
            for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
            raw.emplace_back(std::move(m), ca * cb);
        }
    for (const auto& [m, c] : raw) r.add_term(m, c);
    return r;
}

} // namespace

TEST_CASE("gaussian rational field operations") {
    GaussRat a(Rat(1, 2), Rat(-3));
    GaussRat b(Rat(2), Rat(1, 5));
    CHECK((a * b) / b == a);
    CHECK((a + b) - b == a);
    CHECK(a.conj().conj() == a);
    CHECK((a * a.conj()).im == 0);
    CHECK((a * a.conj()).re == a.norm2());
    CHECK_THROWS_AS(a / GaussRat(0), std::domain_error);
    CHECK(gr_str(GaussRat(Rat(3, 2), Rat(-1))) == "3/2-i");
    CHECK(gr_str(GaussRat(Rat(0), Rat(1))) == "i");
    CHECK(gr_str(GaussRat(0)) == "0");
}

TEST_CASE("monomial product and weights") {
    auto tab = small_table();
    WPoly z = WPoly::variable(tab, tab->z());
    WPoly zb = WPoly::variable(tab, tab->zb());
    WPoly p = (z * zb) * z;  // z^2 zb
    CHECK(p.weight() == 3);
    CHECK(p.is_homogeneous());

    // p + 0 = p
    CHECK(p + WPoly(tab) == p);

    // z*zb has weight 2, z^2 zb - z zb^2 has weight 3, z + z*zb is mixed
    CHECK((z * zb).weight() == 2);
    CHECK((z * z * zb - z * zb * zb).weight() == 3);
    CHECK_FALSE((z + z * zb).is_homogeneous());
}

TEST_CASE("multiplication matches distribution oracle") {
    auto tab = small_table();
    WPoly z = WPoly::variable(tab, tab->z());
    WPoly zb = WPoly::variable(tab, tab->zb());
    WPoly p = z * z * zb + z * zb * zb;
    CHECK(p * p.conjugate() == mul_oracle(p, p.conjugate()));

    std::mt19937 rng(7);
    for (int it = 0; it < 50; ++it) {
        WPoly a = random_poly(tab, rng), b = random_poly(tab, rng);
        CHECK(a * b == mul_oracle(a, b));
    }
}

TEST_CASE("ring axioms on random triples") {
    auto tab = small_table();
    std::mt19937 rng(11);
    for (int it = 0; it < 40; ++it) {
        WPoly a = random_poly(tab, rng), b = random_poly(tab, rng), c = random_poly(tab, rng);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("homogeneous weights add under multiplication") {
    auto tab = small_table();
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> wdist(1, 4);
    for (int it = 0; it < 30; ++it) {
        WPoly a(tab), b(tab);
        int wa = wdist(rng), wb = wdist(rng);
        for (int t = 0; t < 6; ++t) {
            WPoly r = random_poly(tab, rng, 1);
            if (!r.is_zero() && r.weight() == wa) a += r;
            r = random_poly(tab, rng, 1);
            if (!r.is_zero() && r.weight() == wb) b += r;
        }
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(a.is_homogeneous_of(wa));
        CHECK((a * b).is_homogeneous_of(wa + wb));
    }
}

TEST_CASE("conjugation is an involution and swaps variables") {
    auto tab = small_table();
    WPoly z = WPoly::variable(tab, tab->z());
    WPoly zb = WPoly::variable(tab, tab->zb());

    // i z^2 zb -> -i z zb^2
    WPoly p = (z * z * zb).scaled(GaussRat::i_unit());
    WPoly q = (z * zb * zb).scaled(-GaussRat::i_unit());
    CHECK(p.conjugate() == q);

    // real-valued fixed point
    WPoly r = z * zb + (z * z * zb + z * zb * zb);
    CHECK(r.is_real_valued());
    CHECK(r.conjugate() == r);

    std::mt19937 rng(17);
    for (int it = 0; it < 100; ++it) {
        WPoly a = random_poly(tab, rng);
        CHECK(a.conjugate().conjugate() == a);
    }
}

TEST_CASE("substitution") {
    auto tab = small_table();
    const VariableTable& T = *tab;
    WPoly z = WPoly::variable(tab, T.z());
    WPoly zb = WPoly::variable(tab, T.zb());

    // z -> 0 in z*zb
    std::map<int, WPoly> kill_z{{T.z(), WPoly(tab)}};
    CHECK((z * zb).substitute(kill_z).is_zero());

    // w1 -> u1 + i z zb, wb1 -> u1 - i z zb in (w1 - wb1) -> 2i z zb
    WPoly u1 = WPoly::variable(tab, T.u(1));
    WPoly izz = (z * zb).scaled(GaussRat::i_unit());
    std::map<int, WPoly> graph{{T.w(1), u1 + izz}, {T.wb(1), u1 - izz}};
    WPoly lhs = WPoly::variable(tab, T.w(1)) - WPoly::variable(tab, T.wb(1));
    CHECK(lhs.substitute(graph) == (z * zb).scaled(GaussRat(Rat(0), Rat(2))));

    // identity bindings
    std::mt19937 rng(19);
    for (int it = 0; it < 20; ++it) {
        WPoly a = random_poly(tab, rng);
        CHECK(a.substitute({}) == a);
    }
}

TEST_CASE("substitute commutes with conjugation") {
    auto tab = small_table();
    const VariableTable& T = *tab;
    std::mt19937 rng(23);
    for (int it = 0; it < 30; ++it) {
        WPoly a = random_poly(tab, rng);
        WPoly val = random_poly(tab, rng, 2);
        std::map<int, WPoly> bind{{T.w(1), val}};
        std::map<int, WPoly> bind_conj{{T.wb(1), val.conjugate()}};
        CHECK(a.substitute(bind).conjugate() == a.conjugate().substitute(bind_conj));
    }
}

TEST_CASE("exact division and Bareiss rank") {
    auto tab = small_table();
    WPoly z = WPoly::variable(tab, tab->z());
    WPoly zb = WPoly::variable(tab, tab->zb());
    WPoly a = z * z * zb + zb;
    WPoly b = z * zb - WPoly::constant(tab, GaussRat(2));
    CHECK((a * b).divexact(b) == a);
    CHECK_THROWS_AS((a * b + z).divexact(b), std::domain_error);

    // symbolic rank over the fraction field
    std::vector<std::vector<WPoly>> m = {{z, zb}, {z * z, z * zb}};
    CHECK(wpoly_matrix_rank(m) == 1);  // second row = z * first row
    std::vector<std::vector<WPoly>> m2 = {{z, zb}, {zb, z}};
    CHECK(wpoly_matrix_rank(m2) == 2);
}

TEST_CASE("rational linear algebra") {
    std::vector<std::vector<Rat>> A = {{Rat(1), Rat(2)}, {Rat(3), Rat(4)}};
    CHECK(rank(A) == 2);
    bool unique = false;
    auto x = solve_linear(A, std::vector<Rat>{Rat(5), Rat(6)}, &unique);
    REQUIRE(x.has_value());
    CHECK(unique);
    CHECK((*x)[0] == Rat(-4));
    CHECK((*x)[1] == Rat(9, 2));

    RowSpan<Rat> span(3);
    CHECK(span.add({Rat(1), Rat(0), Rat(1)}));
    CHECK(span.add({Rat(0), Rat(1), Rat(1)}));
    CHECK_FALSE(span.add({Rat(1), Rat(1), Rat(2)}));
    CHECK(span.rank() == 2);
    CHECK(span.contains({Rat(2), Rat(-1), Rat(1)}));
}
