#include "tncr/liealg.hpp"
#include "tncr/linalg.hpp"

namespace tncr {

std::map<int, GaussRat> LieAlgebraTable::bracket(int i, int j) const {
    std::map<int, GaussRat> out;
    if (i == j) return out;
    GaussRat sign(1);
    if (i > j) { std::swap(i, j); sign = GaussRat(-1); }
    auto it = brackets.find({i, j});
    if (it == brackets.end()) return out;
    for (const auto& [c, v] : it->second) out[c] = sign * v;
    return out;
}

LieAlgebraTable lie_algebra_from_equations(const Frame& f, const ReducedStructure& red) {
    LieAlgebraTable t;
    t.n_gamma = f.size();
    t.group_dim = red.group_dim;
    for (int r = 0; r < f.size(); ++r) {
        const FrameField& ff = f.by_display(r);
        t.names.push_back("v" + ff.label.str());
        t.weights.push_back(-ff.label.length);
    }
    t.names.push_back("v0");
    t.weights.push_back(0);
    if (t.group_dim == 2) {
        t.names.push_back("v0b");
        t.weights.push_back(0);
    }

    // d gamma^m = sum_{i<j} C^m_{ij} gamma^i ^ gamma^j  =>
    // [v_i, v_j] = -sum_m C^m_{ij} v_m
    int ia = t.n_gamma, iab = t.n_gamma + 1;
    auto add = [&](int i, int j, int m, const GaussRat& C) {
        if (C.is_zero()) return;
        GaussRat v = -C;
        auto& slot = t.brackets[{i, j}][m];
        slot += v;
        if (slot.is_zero()) t.brackets[{i, j}].erase(m);
    };
    for (int m = 0; m < t.n_gamma; ++m) {
        auto [p, q] = red.mc[m];
        if (t.group_dim == 2) {
            // p alpha ^ Gamma_m = -p Gamma_m ^ alpha
            add(m, ia, m, GaussRat(Rat(-p)));
            add(m, iab, m, GaussRat(Rat(-q)));
        } else {
            add(m, ia, m, GaussRat(Rat(-(p + q))));
        }
        for (const auto& [w, c] : red.constants[m]) add(w.first, w.second, m, c);
    }
    // d alpha = 0 (and d alphabar = 0): no further constants.

    // Jacobi is a hard invariant here: failure signals an upstream bug.
    if (!audit_jacobi(t)) throw InternalError("lie algebra: Jacobi identity failed");
    return t;
}

GradingReport verify_grading(const LieAlgebraTable& t, int k) {
    GradingReport g;
    for (int i = 0; i < t.dim(); ++i) g.dims[t.weights[i]] += 1;
    g.total = t.dim();
    int minus = 0;
    bool positive = false;
    for (const auto& [w, d] : g.dims) {
        if (w < 0) minus += d;
        if (w > 0 && d > 0) positive = true;
    }
    g.minus_dim_ok = (minus == 2 + k);
    g.g0_dim_ok = (g.dims.count(0) && (g.dims.at(0) == 1 || g.dims.at(0) == 2));
    g.no_positive = !positive;

    g.closure_ok = true;
    for (int i = 0; i < t.dim() && g.closure_ok; ++i)
        for (int j = i + 1; j < t.dim() && g.closure_ok; ++j)
            for (const auto& [c, v] : t.bracket(i, j))
                if (t.weights[c] != t.weights[i] + t.weights[j]) { g.closure_ok = false; break; }
    return g;
}

Verdict rigidity_verdict(const LieAlgebraTable& t, int k) {
    Verdict v;
    GradingReport g = verify_grading(t, k);
    v.dim = t.dim();
    v.rigid = g.no_positive && g.g0_dim_ok && audit_g0_abelian(t);
    v.statement = "dim = " + std::to_string(v.dim) + " = " +
                  (t.group_dim == 1 ? "3+k" : "4+k");
    return v;
}

MinusPartReport nilpotent_minus_part(const LieAlgebraTable& t, const FreeLieProfile& profile) {
    MinusPartReport r;
    for (int i = 0; i < t.n_gamma; ++i) r.dims[t.weights[i]] += 1;

    // generation by g_{-1}: iterated brackets of weight -1 elements span g_-
    std::vector<int> span;  // indices reached, by weight level
    std::map<int, std::vector<int>> by_weight;
    for (int i = 0; i < t.n_gamma; ++i) by_weight[t.weights[i]].push_back(i);
    // exact span bookkeeping over coordinates of the n_gamma-dim space
    std::vector<std::vector<GaussRat>> rows;
    auto add_vec = [&](const std::map<int, GaussRat>& combo) {
        std::vector<GaussRat> v(t.n_gamma, GaussRat(0));
        for (const auto& [c, val] : combo) {
            if (c >= t.n_gamma) return;  // leaves g_-
            v[c] = val;
        }
        rows.push_back(std::move(v));
    };
    for (int i : by_weight[-1]) add_vec({{i, GaussRat(1)}});
    // close under brackets with g_{-1} generators
    for (int w = -1; w >= -profile.rho + 1; --w) {
        for (int i : by_weight[w])
            for (int j : by_weight[-1]) add_vec(t.bracket(i, j));
    }
    r.generated_by_g1 = (rank(rows) == t.n_gamma);

    // nilpotency of step rho: any bracket chain of length rho+1 vanishes;
    // with the strict grading it suffices that no weight below -rho exists.
    r.nilpotent_step_rho = true;
    for (const auto& [w, d] : r.dims)
        if (w < -profile.rho) r.nilpotent_step_rho = false;

    r.dims_match_profile = true;
    for (int l = 1; l <= profile.rho; ++l) {
        std::int64_t expect = (l == 1) ? 2 : (l < profile.rho ? profile.m[l - 1]
                                                              : profile.mults.back());
        auto it = r.dims.find(-l);
        std::int64_t got = (it == r.dims.end()) ? 0 : it->second;
        if (got != expect) r.dims_match_profile = false;
    }
    return r;
}

bool audit_jacobi(const LieAlgebraTable& t) {
    int n = t.dim();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                std::map<int, GaussRat> acc;
                auto accumulate = [&](int x, const std::map<int, GaussRat>& inner) {
                    for (const auto& [m, v] : inner)
                        for (const auto& [f, vv] : t.bracket(x, m)) {
                            acc[f] += v * vv;
                        }
                };
                accumulate(a, t.bracket(b, c));
                accumulate(c, t.bracket(a, b));
                accumulate(b, t.bracket(c, a));
                for (const auto& [m, v] : acc)
                    if (!v.is_zero()) return false;
            }
    return true;
}

bool audit_antisymmetry(const LieAlgebraTable& t) {
    for (int i = 0; i < t.dim(); ++i)
        for (int j = 0; j < t.dim(); ++j) {
            auto ij = t.bracket(i, j);
            auto ji = t.bracket(j, i);
            for (const auto& [c, v] : ij) {
                auto it = ji.find(c);
                if (it == ji.end() || !(it->second + v).is_zero()) return false;
            }
            if (ij.size() != ji.size()) return false;
        }
    return true;
}

bool audit_g0_abelian(const LieAlgebraTable& t) {
    if (t.group_dim == 1) return true;
    return t.bracket(t.n_gamma, t.n_gamma + 1).empty();
}

} // namespace tncr
