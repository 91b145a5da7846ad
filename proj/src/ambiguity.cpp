#include "tncr/ambiguity.hpp"

namespace tncr {

ParamFraction field_derive(const Frame& f, int r, const ParamFraction& x) {
    if (r == 1) return x.derive(1);
    if (r == 2) return x.derive(2);
    const FrameField& ff = f.by_index(r);
    // field = phase * [L_{1,gen}, parent] as a derivation commutator
    ParamFraction inner = field_derive(f, ff.parent, x).derive(ff.gen) -
                          field_derive(f, ff.parent, x.derive(ff.gen));
    return inner.scaled(ff.phase);
}

namespace {

// [a L_{1,t}, sum_r g_r L_r] with a = a1 (t=1) or a1b (t=2).
std::map<int, ParamFraction> bracket_with_generator(const Frame& f, int t,
                                                    const std::map<int, ParamFraction>& img) {
    ParamFraction a = (t == 1) ? ParamFraction::a1_monomial(1, 0)
                               : ParamFraction::a1_monomial(0, 1);
    std::map<int, ParamFraction> out;
    auto add = [&out](int target, const ParamFraction& p) {
        if (p.is_zero()) return;
        auto it = out.find(target);
        if (it == out.end()) out.emplace(target, p);
        else it->second += p;
    };
    for (const auto& [r, gr] : img) {
        add(r, a * gr.derive(t));                       // a L_{1,t}(g_r) L_r
        for (int c = 1; c <= f.size(); ++c) {           // a g_r [L_{1,t}, L_r]
            GaussRat K = f.bracket_coeff(t, r, c);
            if (!K.is_zero()) add(c, (a * gr).scaled(K));
        }
        add(t, field_derive(f, r, a).scaled(GaussRat(-1)) * gr);  // -g_r L_r(a) L_{1,t}
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

} // namespace

Ambiguity build_ambiguity(const Frame& f) {
    Ambiguity am;
    am.frame = &f;
    int n = f.size();
    am.images.resize(n);
    am.images[0] = {{1, ParamFraction::a1_monomial(1, 0)}};
    am.images[1] = {{2, ParamFraction::a1_monomial(0, 1)}};

    for (int idx = 3; idx <= n; ++idx) {
        const FrameField& ff = f.by_index(idx);
        auto raw = bracket_with_generator(f, ff.gen, am.images[ff.parent - 1]);
        std::map<int, ParamFraction> img;
        for (auto& [r, p] : raw) {
            ParamFraction s = p.scaled(ff.phase);
            if (!s.is_zero()) img.emplace(r, std::move(s));
        }
        // leading term and support pattern of the push-forward
        auto lead = img.find(idx);
        if (lead == img.end() ||
            !(lead->second == ParamFraction::a1_monomial(ff.p, ff.q)))
            throw InternalError("ambiguity: leading coefficient of " + ff.label.str() +
                                " is not a1^p a1b^q");
        for (const auto& [r, p] : img) {
            int rl = f.by_index(r).label.length;
            if (r != idx && rl >= ff.label.length)
                throw InternalError("ambiguity: image of " + ff.label.str() +
                                    " hits a same-or-higher length field");
        }
        am.images[idx - 1] = std::move(img);
    }

    // Naming pass: construction order of the source, display order of the
    // target row; fresh classes get weights equal to the source length.
    std::map<std::pair<int, int>, GExpr> entry;  // (source idx, target idx) -> named entry
    for (int idx = 1; idx <= n; ++idx) {
        const FrameField& ff = f.by_index(idx);
        for (int rpos = 0; rpos < n; ++rpos) {
            int target = f.display[rpos];
            if (target == idx) continue;
            auto it = am.images[idx - 1].find(target);
            if (it == am.images[idx - 1].end()) continue;
            auto [unit, ref] = am.atoms.classify(it->second, ff.label.length);
            entry[{idx, target}] = GExpr::atom(ref, unit);
        }
    }

    am.g.assign(n, std::vector<GExpr>(n));
    for (int c = 0; c < n; ++c) {
        int src = f.display[c];
        const FrameField& ff = f.by_index(src);
        for (int r = 0; r < n; ++r) {
            int target = f.display[r];
            if (target == src) am.g[r][c] = GExpr::a1_monomial(ff.p, ff.q);
            else if (auto it = entry.find({src, target}); it != entry.end())
                am.g[r][c] = it->second;
        }
    }
    for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c)
            if (!am.g[r][c].is_zero())
                throw InternalError("ambiguity: matrix not lower triangular");

    // Exact inverse by forward substitution; divisions only by the diagonal
    // Laurent monomials.
    am.ginv.assign(n, std::vector<GExpr>(n));
    for (int r = 0; r < n; ++r) {
        auto [p, q] = am.diag(r);
        am.ginv[r][r] = GExpr::a1_monomial(-p, -q);
        for (int c = r - 1; c >= 0; --c) {
            GExpr s;
            for (int j = c; j < r; ++j) {
                if (am.g[r][j].is_zero() || am.ginv[j][c].is_zero()) continue;
                s += am.g[r][j] * am.ginv[j][c];
            }
            if (!s.is_zero()) am.ginv[r][c] = s.scaled(GaussRat(-1)).shifted(-p, -q);
        }
    }
    return am;
}

bool audit_column_weights(const Ambiguity& am) {
    const Frame& f = *am.frame;
    for (int c = 0; c < am.size(); ++c) {
        int lw = f.by_display(c).label.length;
        for (int r = 0; r < am.size(); ++r) {
            if (am.g[r][c].is_zero()) continue;
            int w = 0;
            if (!am.g[r][c].homogeneous_weight(am.atoms, &w) || w != lw) return false;
        }
    }
    return true;
}

bool audit_ginv_row_weights(const Ambiguity& am) {
    const Frame& f = *am.frame;
    for (int r = 0; r < am.size(); ++r) {
        int lw = f.by_display(r).label.length;
        for (int c = 0; c < am.size(); ++c) {
            if (am.ginv[r][c].is_zero()) continue;
            int w = 0;
            if (!am.ginv[r][c].homogeneous_weight(am.atoms, &w) || w != -lw) return false;
        }
    }
    return true;
}

bool audit_g_times_ginv(const Ambiguity& am) {
    int n = am.size();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            GExpr s;
            for (int j = 0; j < n; ++j) {
                if (am.g[r][j].is_zero() || am.ginv[j][c].is_zero()) continue;
                s += am.g[r][j] * am.ginv[j][c];
            }
            GExpr expect = (r == c) ? GExpr::scalar(GaussRat(1)) : GExpr();
            if (!(s == expect)) return false;
        }
    return true;
}

bool audit_sigma_expansion(const Ambiguity& am) {
    // Row r of ginv expands sigma_r over the lifted forms: the only column
    // of weight <= weight(r) with a nonzero entry is r itself, carrying
    // exactly 1/(a1^p a1b^q).
    const Frame& f = *am.frame;
    for (int r = 0; r < am.size(); ++r) {
        int lw = f.by_display(r).label.length;
        auto [p, q] = am.diag(r);
        for (int c = 0; c < am.size(); ++c) {
            int cw = f.by_display(c).label.length;
            if (cw > lw) continue;
            GExpr expect = (c == r) ? GExpr::a1_monomial(-p, -q) : GExpr();
            if (!(am.ginv[r][c] == expect)) return false;
        }
    }
    return true;
}

bool audit_vanish_substitution(const Ambiguity& am) {
    for (int id : am.atoms.named_ids())
        if (!am.atoms.atom(id).rep.vanish_derivatives().is_zero()) return false;
    return true;
}

} // namespace tncr
