#include "tncr/model.hpp"
#include "tncr/linalg.hpp"

#include <algorithm>
#include <map>

namespace tncr {

namespace {

// All monomials of the given weight over the listed variables.
void enumerate_monomials_rec(const VariableTable& tab, const std::vector<int>& vars,
                             size_t pos, int remaining, Monomial& cur,
                             std::vector<Monomial>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    if (pos == vars.size()) return;
    int v = vars[pos];
    int w = tab.weight(v);
    for (int e = remaining / w; e >= 0; --e) {
        cur[v] = e;
        enumerate_monomials_rec(tab, vars, pos + 1, remaining - e * w, cur, out);
    }
    cur[v] = 0;
}

std::vector<Monomial> enumerate_monomials(const VariableTable& tab,
                                          const std::vector<int>& vars, int weight) {
    std::vector<Monomial> out;
    Monomial cur(tab.size(), 0);
    enumerate_monomials_rec(tab, vars, 0, weight, cur, out);
    return out;
}

WPoly monomial_poly(const VarTablePtr& tab, const Monomial& m) {
    WPoly p(tab);
    p.add_term(m, GaussRat(1));
    return p;
}

WPoly re_part(const WPoly& p) {
    return (p + p.conjugate()).scaled(GaussRat(Rat(1, 2)));
}
WPoly im_part(const WPoly& p) {
    // (p - conj p) / (2i)
    return (p - p.conjugate()).scaled(GaussRat(Rat(0), Rat(-1, 2)));
}

// Real coordinates of a weight-homogeneous real-valued polynomial relative
// to a fixed monomial list: (Re c, Im c) per monomial.
std::vector<Rat> coords(const WPoly& p, const std::map<Monomial, int>& index) {
    std::vector<Rat> v(2 * index.size(), Rat(0));
    for (const auto& [m, c] : p.terms()) {
        auto it = index.find(m);
        if (it == index.end()) throw InternalError("enumerate_Nj: monomial outside basis");
        v[2 * it->second] = c.re;
        v[2 * it->second + 1] = c.im;
    }
    return v;
}

} // namespace

std::vector<WPoly> enumerate_Nj(int j, const Model& partial, std::vector<int>* scales) {
    const VarTablePtr& tab = partial.vars;
    const VariableTable& T = *tab;
    int k = T.codim();

    std::vector<int> lower_u, lower_w;
    for (int i = 1; i <= k; ++i) {
        if (partial.weight_w[i - 1] < j) {
            lower_u.push_back(T.u(i));
            lower_w.push_back(i);
        }
    }

    // Coordinate basis: every weight-j monomial in z, zb and lower-weight u.
    std::vector<int> real_vars = {T.z(), T.zb()};
    real_vars.insert(real_vars.end(), lower_u.begin(), lower_u.end());
    std::vector<Monomial> monos = enumerate_monomials(T, real_vars, j);
    std::map<Monomial, int> index;
    for (const auto& m : monos) index.emplace(m, static_cast<int>(index.size()));

    RowSpan<Rat> span(2 * monos.size());

    // Restrictions of pluriharmonic polynomials: Re(c * z^a * w^beta) with
    // w_i = u_i + i Phi_i, for c = 1 and c = i.
    std::vector<int> holo_vars = {T.z()};
    for (int i : lower_w) holo_vars.push_back(T.w(i));
    std::map<int, WPoly> graph_subst;
    for (int i : lower_w) {
        graph_subst[T.w(i)] =
            WPoly::variable(tab, T.u(i)) + partial.Phi[i - 1].scaled(GaussRat::i_unit());
    }
    for (const Monomial& h : enumerate_monomials(T, holo_vars, j)) {
        WPoly restricted = monomial_poly(tab, h).substitute(graph_subst);
        span.add(coords(re_part(restricted), index));
        span.add(coords(re_part(restricted.scaled(GaussRat::i_unit())), index));
    }

    // Candidates in descending graded-lex order; Re before Im per monomial.
    std::vector<Monomial> cand(monos);
    std::sort(cand.begin(), cand.end(), [&](const Monomial& a, const Monomial& b) {
        return graded_lex_greater(T, a, b);
    });
    std::vector<WPoly> basis;
    if (scales) scales->clear();
    for (const Monomial& m : cand) {
        int a = m[T.z()], b = m[T.zb()];
        if (a < b) continue;  // conjugate duplicate
        if (a == b) {
            WPoly p = monomial_poly(tab, m);
            if (span.add(coords(p, index))) {
                basis.push_back(p);
                if (scales) scales->push_back(1);
            }
        } else {
            WPoly p = monomial_poly(tab, m);
            for (const WPoly& cand_poly : {re_part(p), im_part(p)}) {
                if (span.add(coords(cand_poly, index))) {
                    basis.push_back(cand_poly);
                    if (scales) scales->push_back(2);
                }
            }
        }
    }
    return basis;
}

RatMatrix default_A(const Model& partial, int level, int k) {
    const auto& scales = partial.N_scale[level];
    size_t n = scales.size();
    RatMatrix A(n, std::vector<Rat>(n, Rat(0)));
    for (size_t i = 0; i < n; ++i) A[i][i] = Rat(scales[i]);
    if (k == 3 && level == 3 && n == 2) A[1][1] = Rat(-2);  // 5-cubic sign
    if (level == partial.rho) {
        size_t rows = static_cast<size_t>(partial.profile.mults.back());
        A.resize(rows);
    }
    return A;
}

Model build_model(int k, const std::optional<std::vector<RatMatrix>>& A_override) {
    if (k < 2)
        throw OutOfScopeError("codimension must be >= 2 (length rho >= 3); k=" +
                              std::to_string(k) + " is out of scope");

    Model m;
    m.k = k;
    m.profile = free_lie_profile(k);
    m.rho = m.profile.rho;
    for (int level = 2; level <= m.rho; ++level) {
        std::int64_t count = m.profile.mults[level - 2];
        for (std::int64_t c = 0; c < count; ++c) m.weight_w.push_back(level);
    }
    if (static_cast<int>(m.weight_w.size()) != k)
        throw InternalError("build_model: weight bookkeeping mismatch");
    m.vars = std::make_shared<VariableTable>(m.weight_w);
    m.N.resize(m.rho + 1);
    m.N_scale.resize(m.rho + 1);
    m.A.resize(m.rho + 1);
    m.Phi.resize(k, WPoly(m.vars));

    if (A_override && static_cast<int>(A_override->size()) != m.rho - 1)
        throw OutOfScopeError("A_override: expected " + std::to_string(m.rho - 1) +
                              " matrices (weights 2.." + std::to_string(m.rho) + ")");

    int next_w = 1;  // 1-based index of the next w variable to receive a Phi
    for (int level = 2; level <= m.rho; ++level) {
        std::vector<int> scales;
        m.N[level] = enumerate_Nj(level, m, &scales);
        m.N_scale[level] = scales;

        // The basis count must reproduce the free Lie homogeneous dimension.
        if (static_cast<std::int64_t>(m.N[level].size()) != m.profile.m[level - 1])
            throw InternalError("enumerate_Nj: cardinality at weight " + std::to_string(level) +
                                " is " + std::to_string(m.N[level].size()) + ", expected " +
                                std::to_string(m.profile.m[level - 1]));

        size_t rows = static_cast<size_t>(level == m.rho ? m.profile.mults.back()
                                                         : m.profile.m[level - 1]);
        RatMatrix A;
        if (A_override) {
            A = (*A_override)[level - 2];
            if (A.size() != rows)
                throw OutOfScopeError("A_override: weight " + std::to_string(level) +
                                      " matrix must have " + std::to_string(rows) + " rows");
            for (const auto& row : A)
                if (row.size() != m.N[level].size())
                    throw OutOfScopeError("A_override: weight " + std::to_string(level) +
                                          " matrix must have " + std::to_string(m.N[level].size()) +
                                          " columns");
            if (rank(A) != static_cast<int>(rows))
                throw OutOfScopeError("A_override: weight " + std::to_string(level) +
                                      " matrix is rank deficient");
        } else {
            A = default_A(m, level, k);
        }
        m.A[level] = A;

        for (size_t r = 0; r < rows; ++r) {
            WPoly phi(m.vars);
            for (size_t c = 0; c < m.N[level].size(); ++c)
                phi += m.N[level][c].scaled(GaussRat(A[r][c]));
            if (!phi.is_real_valued())
                throw InternalError("build_model: Phi is not real-valued");
            if (!phi.is_homogeneous_of(level))
                throw InternalError("build_model: Phi has wrong weight");
            std::map<int, WPoly> z_zero{{m.vars->z(), WPoly(m.vars)}};
            std::map<int, WPoly> zb_zero{{m.vars->zb(), WPoly(m.vars)}};
            if (!phi.substitute(z_zero).is_zero() || !phi.substitute(zb_zero).is_zero())
                throw InternalError("build_model: Phi does not vanish on the z=0 / zb=0 slices");
            m.Phi[next_w - 1] = phi;
            ++next_w;
        }
    }

    solve_graph(m);
    return m;
}

std::vector<WPoly> solve_graph(Model& m) {
    const VarTablePtr& tab = m.vars;
    const VariableTable& T = *tab;
    m.Theta.assign(m.k, WPoly(tab));
    // Increasing weight order; w indices are already weight-sorted.
    for (int j = 1; j <= m.k; ++j) {
        std::map<int, WPoly> re_w;
        for (int i = 1; i < j; ++i)
            re_w[T.u(i)] = (m.Theta[i - 1] + WPoly::variable(tab, T.wb(i))).scaled(GaussRat(Rat(1, 2)));
        WPoly theta = WPoly::variable(tab, T.wb(j)) +
                      m.Phi[j - 1].substitute(re_w).scaled(GaussRat(Rat(0), Rat(2)));
        if (!theta.is_homogeneous_of(m.weight_of_w(j)))
            throw InternalError("solve_graph: Theta has wrong weight");
        m.Theta[j - 1] = theta;
    }
    // Residual: w_j - Theta_j must vanish identically on the graph.
    std::map<int, WPoly> on_graph;
    for (int i = 1; i <= m.k; ++i) {
        WPoly u = WPoly::variable(tab, T.u(i));
        WPoly iphi = m.Phi[i - 1].scaled(GaussRat::i_unit());
        on_graph[T.w(i)] = u + iphi;
        on_graph[T.wb(i)] = u - iphi;
    }
    for (int j = 1; j <= m.k; ++j) {
        WPoly res = (WPoly::variable(tab, T.w(j)) - m.Theta[j - 1]).substitute(on_graph);
        if (!res.is_zero())
            throw InternalError("solve_graph: nonzero residual for w" + std::to_string(j));
    }
    return m.Theta;
}

std::vector<std::int64_t> hormander_data(const Model& m) {
    std::vector<std::int64_t> mult;
    for (int level = 2; level <= m.rho; ++level)
        mult.push_back(std::count(m.weight_w.begin(), m.weight_w.end(), level));
    return mult;
}

std::string Model::real_equation_str(int j) const {
    return "Im w" + std::to_string(j) + " = " + Phi[j - 1].str();
}

std::string Model::complex_equation_str(int j) const {
    return "w" + std::to_string(j) + " - wb" + std::to_string(j) + " = " +
           Phi[j - 1].scaled(GaussRat(Rat(0), Rat(2))).str();
}

} // namespace tncr
