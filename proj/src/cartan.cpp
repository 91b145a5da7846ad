#include "tncr/cartan.hpp"
#include "tncr/linalg.hpp"

#include <algorithm>

namespace tncr {

GExpr cleared(const GExpr& e) {
    int m1 = 0, m1b = 0;
    for (const auto& [k, c] : e.terms()) {
        m1 = std::min(m1, k.e1);
        m1b = std::min(m1b, k.e1b);
    }
    return e.shifted(-m1, -m1b);
}

StructureEquations compute_structure_equations(const Frame& f, const Ambiguity& am) {
    int n = am.size();
    StructureEquations se;
    se.torsion.assign(n, {});
    se.delta_cols.assign(n, {});

    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (am.g[r][c].is_zero()) continue;
            if (c != r) se.delta_cols[r].insert(c);
            // g[r][c] * dsigma_c expanded over lifted wedges
            for (const auto& [pair, K] : f.darboux[c]) {
                auto [pa, pb] = pair;
                GExpr base = am.g[r][c].scaled(K);
                for (int d = 0; d < n; ++d) {
                    if (am.ginv[pa][d].is_zero()) continue;
                    for (int e = 0; e < n; ++e) {
                        if (e == d || am.ginv[pb][e].is_zero()) continue;
                        GExpr contrib = base * am.ginv[pa][d] * am.ginv[pb][e];
                        if (d < e) {
                            auto& slot = se.torsion[r][{d, e}];
                            slot += contrib;
                            if (slot.is_zero()) se.torsion[r].erase({d, e});
                        } else {
                            auto& slot = se.torsion[r][{e, d}];
                            slot += contrib.scaled(GaussRat(-1));
                            if (slot.is_zero()) se.torsion[r].erase({e, d});
                        }
                    }
                }
            }
        }
    }
    return se;
}

namespace {

// Absorption contribution of the Maurer-Cartan diagonal to the coefficient
// of Gamma_d ^ Gamma_e (display positions) in the equation of row m:
//   alpha -> alpha + sum_n t_n Gamma_n,  alphabar likewise conjugated.
GExpr mc_contribution(const Frame& f, Ambiguity& am, int m, int d, int e) {
    auto term = [&](int other) -> GExpr {
        auto [p, q] = am.diag(m);
        int label = f.display[other];
        int label_conj = f.by_index(label).conj_partner;
        GExpr s = GExpr::atom(am.atoms.t_atom(label), GaussRat(Rat(p)));
        GExpr tc = GExpr::atom(am.atoms.t_atom(label_conj)).conj(am.atoms);
        s += tc.scaled(GaussRat(Rat(q)));
        return s;
    };
    if (d == m) return term(e).scaled(GaussRat(-1));
    if (e == m) return term(d);
    return GExpr();
}

GExpr wedge_coefficient(const StructureEquations& se, int row, const WedgeKey& w) {
    auto it = se.torsion[row].find(w);
    return it == se.torsion[row].end() ? GExpr() : it->second;
}

// Canonical key for conjugate deduplication: min of the unit-normalized
// equation and its conjugate.
GExpr dedup_key(const AtomTable& atoms, const GExpr& e) {
    if (e.is_zero()) return e;
    auto normal = [&](const GExpr& x) {
        return x.scaled(normal_unit(x.terms().begin()->second));
    };
    GExpr a = normal(e);
    GExpr b = normal(e.conj(atoms));
    return b < a ? b : a;
}

} // namespace

AbsorptionSystem extract_system_S(const Frame& f, Ambiguity& am, const StructureEquations& se) {
    AbsorptionSystem sys;
    int n = am.size();
    int rho = f.model->rho;

    // Part I: weight -l rows, l < rho; one equation per named weight-(l+1)
    // entry of the row, at the unique predecessor wedge of that column.
    for (int r = 0; r < n; ++r) {
        int lr = f.by_display(r).label.length;
        if (lr >= rho) continue;
        for (int c = 0; c < n; ++c) {
            if (c == r || am.g[r][c].is_zero()) continue;
            const FrameField& src = f.by_display(c);
            if (src.label.length != lr + 1) continue;
            int pd = f.display_pos[src.parent - 1];
            int pt = f.display_pos[src.gen - 1];
            WedgeKey w = pd < pt ? WedgeKey{pd, pt} : WedgeKey{pt, pd};
            AbsorbedEquation eq;
            eq.row = r;
            eq.wedge = w;
            eq.lhs = wedge_coefficient(se, r, w) + mc_contribution(f, am, r, w.first, w.second);
            eq.provenance = "I:" + f.by_display(r).label.str() + "<-" + src.label.str();
            sys.raw.push_back(std::move(eq));
        }
    }
    // Part II: weight -rho rows; wedges with each generator form.
    for (int r = 0; r < n; ++r) {
        if (f.by_display(r).label.length != rho) continue;
        for (int gen = 1; gen <= 2; ++gen) {
            int pt = f.display_pos[gen - 1];
            WedgeKey w{std::min(r, pt), std::max(r, pt)};
            AbsorbedEquation eq;
            eq.row = r;
            eq.wedge = w;
            eq.lhs = wedge_coefficient(se, r, w) + mc_contribution(f, am, r, w.first, w.second);
            eq.provenance = "II:" + f.by_display(r).label.str() + "^(1," + std::to_string(gen) + ")";
            sys.raw.push_back(std::move(eq));
        }
    }

    std::set<GExpr> seen;
    for (const auto& eq : sys.raw) {
        if (eq.lhs.is_zero()) continue;
        GExpr key = dedup_key(am.atoms, eq.lhs);
        if (seen.insert(key).second) sys.eqs.push_back(eq);
    }
    return sys;
}

namespace {

// Real unknown layout for the exact solve: every atom id maps to one or two
// real variables through a complex direction basis.
struct RealSplit {
    // per atom id: list of (variable index, complex direction)
    std::map<int, std::vector<std::pair<int, GaussRat>>> basis;
    int nvars = 0;

    explicit RealSplit(const AtomTable& atoms, const std::set<int>& ids) {
        for (int id : ids) {
            const GroupAtom& a = atoms.atom(id);
            std::vector<std::pair<int, GaussRat>> b;
            if (!a.is_t && a.conj_self) {
                // conj(X) = cu * X pins the complex direction of X:
                // cu=1 -> real, cu=-1 -> imaginary, cu=+-i -> (1 -+ i) ray
                GaussRat cu = a.conj_unit;
                GaussRat dir(1);
                if (cu == GaussRat(-1)) dir = GaussRat::i_unit();
                else if (cu == GaussRat::i_unit()) dir = GaussRat(Rat(1), Rat(-1));
                else if (cu == -GaussRat::i_unit()) dir = GaussRat(Rat(1), Rat(1));
                b.emplace_back(nvars++, dir);
            } else {
                b.emplace_back(nvars++, GaussRat(1));
                b.emplace_back(nvars++, GaussRat::i_unit());
            }
            basis[id] = std::move(b);
        }
    }

    // value of a reference in terms of the real variables
    std::vector<std::pair<int, GaussRat>> ref_value(const AtomTable&,
                                                    const GAtomRef& ref) const {
        std::vector<std::pair<int, GaussRat>> out;
        for (auto [var, dir] : basis.at(ref.id))
            out.emplace_back(var, ref.barred ? dir.conj() : dir);
        return out;
    }
};

} // namespace

Solution solve_system(const Ambiguity& am, const AbsorptionSystem& sys) {
    const AtomTable& atoms = am.atoms;
    std::set<int> ids;
    for (const auto& eq : sys.eqs)
        for (const auto& [k, c] : eq.lhs.terms())
            for (const auto& ref : k.atoms) ids.insert(ref.id);

    RealSplit split(atoms, ids);
    std::vector<std::vector<Rat>> A;
    for (const auto& eq : sys.eqs) {
        GExpr deh = eq.lhs.dehomogenized();
        std::vector<GaussRat> row(split.nvars, GaussRat(0));
        for (const auto& [k, c] : deh.terms()) {
            if (k.atoms.empty())
                throw InternalError("solve_system: inhomogeneous absorption equation");
            if (k.atoms.size() > 1)
                throw InternalError("solve_system: non-linear system (degree >= 2 term)");
            for (auto [var, dir] : split.ref_value(atoms, k.atoms[0])) row[var] += c * dir;
        }
        // split into real and imaginary equations over the rationals
        std::vector<Rat> re(split.nvars), im(split.nvars);
        for (int v = 0; v < split.nvars; ++v) {
            re[v] = row[v].re;
            im[v] = row[v].im;
        }
        A.push_back(std::move(re));
        A.push_back(std::move(im));
    }

    // Homogeneous system: the zero vector solves it; the questions are
    // whether the nullspace is trivial and which named parameters vanish
    // on all of it (free directions among the t's are absorbed
    // Maurer-Cartan freedom, not normalization failures).
    std::vector<int> piv = rref(A);
    Solution sol;
    sol.unique = (static_cast<int>(piv.size()) == split.nvars);
    std::set<int> pivot_cols(piv.begin(), piv.end());
    std::set<int> free_vars;  // variables with a nonzero kernel coordinate
    for (int fc = 0; fc < split.nvars; ++fc) {
        if (pivot_cols.count(fc)) continue;
        free_vars.insert(fc);
        for (size_t i = 0; i < A.size() && i < piv.size(); ++i)
            if (A[i][fc] != 0) free_vars.insert(piv[i]);
    }
    sol.named_pinned = true;
    for (int id : ids) {
        if (atoms.atom(id).is_t) continue;
        bool pinned = true;
        for (auto [var, dir] : split.basis.at(id))
            if (free_vars.count(var)) pinned = false;
        if (pinned) sol.pinned_atoms.insert(id);
        else sol.named_pinned = false;
    }

    // canonical solution: free directions set to zero
    sol.named_all_zero = sol.named_pinned;
    sol.ts_all_zero = true;
    for (int id : ids) sol.values[id] = GaussRat(0);
    return sol;
}

std::vector<AbsorbedEquation> essential_coefficients(const Frame& f, Ambiguity& am,
                                                     const StructureEquations& se) {
    std::vector<AbsorbedEquation> out;
    int n = am.size();
    for (int m = 0; m < n; ++m) {
        for (int d = 0; d < n; ++d) {
            for (int e = d + 1; e < n; ++e) {
                if (se.delta_cols[m].count(d) || se.delta_cols[m].count(e)) continue;
                GExpr c = wedge_coefficient(se, m, {d, e}) + mc_contribution(f, am, m, d, e);
                // strip the pure a1-monomial part (normalized later through
                // a1 itself) and any terms of atom degree >= 2
                GExpr lin;
                for (const auto& [k, coef] : c.terms())
                    if (k.atoms.size() == 1) lin.add_term(k, coef);
                if (lin.is_zero()) continue;
                AbsorbedEquation eq;
                eq.row = m;
                eq.wedge = {d, e};
                eq.lhs = std::move(lin);
                eq.provenance = "ess:" + f.by_display(m).label.str();
                out.push_back(std::move(eq));
            }
        }
    }
    return out;
}

std::pair<int, int> fundamental_atoms(const Frame& f, const Ambiguity& am) {
    int pz = f.display_pos[0];
    int prho = f.display_pos[2];
    const GExpr& a2e = am.g[pz][prho];
    int sigma_idx = 0;
    for (int idx = 1; idx <= f.size(); ++idx) {
        const FrameField& ff = f.by_index(idx);
        if (ff.label.length == 3 && ff.gen == 1 && ff.parent == 3) { sigma_idx = idx; break; }
    }
    if (a2e.is_zero() || sigma_idx == 0)
        throw InternalError("cartan: fundamental parameter entries missing");
    const GExpr& a3e = am.g[prho][f.display_pos[sigma_idx - 1]];
    if (a3e.is_zero() || a2e.terms().begin()->first.atoms.size() != 1 ||
        a3e.terms().begin()->first.atoms.size() != 1)
        throw InternalError("cartan: fundamental entries are not single parameters");
    return {a2e.terms().begin()->first.atoms[0].id, a3e.terms().begin()->first.atoms[0].id};
}

bool audit_fundamental_vanishing(const Frame& f, const Ambiguity& am) {
    auto [a2id, a3id] = fundamental_atoms(f, am);
    std::vector<DerivSymbol> dead;
    auto term_is_dead = [&](const PFKey& k) {
        for (const auto& s : k.syms)
            for (const auto& d : dead)
                if (s.barred == d.barred && s.word.size() >= d.word.size() &&
                    std::equal(d.word.begin(), d.word.end(), s.word.begin()))
                    return true;
        return false;
    };
    auto filtered = [&](const ParamFraction& p) {
        ParamFraction r;
        for (const auto& [k, c] : p.terms())
            if (!term_is_dead(k)) r.add_term(k, c);
        return r;
    };
    std::vector<ParamFraction> known_zero = {
        am.atoms.atom(a2id).rep, am.atoms.atom(a2id).rep.conj(),
        am.atoms.atom(a3id).rep, am.atoms.atom(a3id).rep.conj()};
    // fixpoint: a vanishing expression of the shape (monomial * symbol)
    // forces that symbol (and its conjugate, and all its derivatives) to
    // vanish, since a1 never vanishes
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& expr : known_zero) {
            ParamFraction r = filtered(expr);
            if (r.is_zero() || r.terms().size() != 1) continue;
            const PFKey& k = r.terms().begin()->first;
            if (k.syms.size() != 1) continue;
            const DerivSymbol& s = k.syms[0];
            bool fresh = true;
            for (const auto& d : dead)
                if (d == s) fresh = false;
            if (fresh) {
                dead.push_back(s);
                dead.push_back(s.conj());
                progress = true;
            }
        }
    }
    for (bool barred : {false, true})
        for (int t : {1, 2}) {
            DerivSymbol first{barred, {t}};
            bool covered = false;
            for (const auto& d : dead)
                if (d.barred == first.barred && d.word.size() <= 1 &&
                    (d.word.empty() || d.word[0] == t))
                    covered = (d.word.size() == 1);
            if (!covered) return false;
        }
    // with all first derivatives dead, every named parameter must vanish
    for (int id : am.atoms.named_ids())
        if (!filtered(am.atoms.atom(id).rep).is_zero()) return false;
    return true;
}

Solution solve_with_fallback(const Frame& f, Ambiguity& am, const StructureEquations& se,
                             const AbsorptionSystem& sys) {
    auto [a2id, a3id] = fundamental_atoms(f, am);
    auto finish = [&](Solution sol) {
        bool fundamentals = sol.pinned_atoms.count(a2id) && sol.pinned_atoms.count(a3id);
        if (!fundamentals) return std::optional<Solution>();
        if (!audit_fundamental_vanishing(f, am))
            throw InternalError("cartan: fundamental vanishing chain failed");
        // a2 = a3 = 0 kills all derivative symbols, hence all parameters
        sol.named_all_zero = true;
        for (int id : am.atoms.named_ids()) sol.values[id] = GaussRat(0);
        return std::optional<Solution>(std::move(sol));
    };
    if (auto done = finish(solve_system(am, sys))) return *done;
    // The subsystem left a fundamental direction free (it happens for the
    // degenerate self-conjugate top level of k = 2): normalize against the
    // full set of essential coefficients as well.
    AbsorptionSystem extended = sys;
    for (auto& eq : essential_coefficients(f, am, se)) extended.eqs.push_back(std::move(eq));
    if (auto done = finish(solve_system(am, extended))) {
        done->used_essential_extension = true;
        return *done;
    }
    throw InternalError("solve_system: Noether-position violated (solution not unique)");
}

ReducedStructure reduce_structure(const Frame&, const Ambiguity& am,
                                  const StructureEquations& se, const Solution& sol) {
    if (!sol.named_all_zero)
        throw InternalError("reduce_structure: parameters did not vanish");
    if (!audit_vanish_substitution(am))
        throw InternalError("reduce_structure: derivative-vanishing check failed");

    int n = am.size();
    ReducedStructure red;
    red.constants.assign(n, {});
    bool ratio_seen = false;

    for (int r = 0; r < n; ++r) {
        red.mc.push_back(am.diag(r));
        for (const auto& [w, coef] : se.torsion[r]) {
            GExpr base = coef.named_to_zero(am.atoms);
            if (base.is_zero()) continue;
            GaussRat c;
            int d = 0;
            if (!base.is_a1_ratio(&c, &d))
                throw InternalError("reduce_structure: nonconstant torsion survives the solution");
            if (d != 0) ratio_seen = true;
            red.constants[r][w] = c;  // after a1 real the ratio becomes 1
        }
    }
    red.normalizable = ratio_seen;
    red.group_dim = ratio_seen ? 1 : 2;
    red.coframe_size = n + red.group_dim;
    return red;
}

bool audit_torsion_weight_zero(const Ambiguity& am, const StructureEquations& se) {
    for (const auto& row : se.torsion)
        for (const auto& [w, coef] : row) {
            int wt = 0;
            if (!coef.homogeneous_weight(am.atoms, &wt)) return false;
            if (!coef.is_zero() && wt != 0) return false;
        }
    return true;
}

bool audit_S_homogeneous(const Ambiguity& am, const AbsorptionSystem& sys) {
    for (const auto& eq : sys.eqs) {
        if (!cleared(eq.lhs).homogeneous_weight(am.atoms, nullptr)) return false;
    }
    return true;
}

bool audit_S_linear(const Ambiguity&, const AbsorptionSystem& sys) {
    for (const auto& eq : sys.eqs)
        for (const auto& [k, c] : eq.lhs.terms())
            if (k.atoms.size() > 1) return false;
    return true;
}

bool audit_solution_satisfies_S(const Ambiguity&, const AbsorptionSystem& sys,
                                const Solution& sol) {
    for (const auto& eq : sys.eqs) {
        GExpr residue;
        for (const auto& [k, c] : eq.lhs.terms()) {
            GaussRat v = c;
            for (const auto& ref : k.atoms) {
                auto it = sol.values.find(ref.id);
                if (it == sol.values.end()) return false;
                v *= ref.barred ? it->second.conj() : it->second;
            }
            GKey nk;
            nk.e1 = k.e1;
            nk.e1b = k.e1b;
            residue.add_term(std::move(nk), v);
        }
        if (!residue.is_zero()) return false;
    }
    return true;
}

bool audit_t_expressions(const Frame& f, Ambiguity& am, const StructureEquations& se) {
    // Designated weight -1 equation: the coefficient of the zeta ^ zetab
    // wedge in the dGamma_{1,1} row equals i * a2entry / (a1 a1b), so
    // absorption solves it to t_2 = i a2 / (a1 a1b).
    int n = am.size();
    int pz = f.display_pos[0], pzb = f.display_pos[1];
    int prho = f.display_pos[2];  // the single length-2 field
    GExpr c1 = wedge_coefficient(se, pz, {std::min(pz, pzb), std::max(pz, pzb)});
    GExpr t2_value = am.g[pz][prho].shifted(-1, -1).scaled(GaussRat::i_unit());
    if (!(c1 == t2_value)) return false;

    // Designated weight -2 equation: row dGamma_{2,3}, wedge (rho, zeta);
    // its coefficient is a3/(a1^2 a1b) + i conj(a2)/(a1 a1b), so with t2 as
    // above the solved t_1 is a3/(a1^2 a1b) + 2i conj(a2)/(a1 a1b).
    GExpr c2 = wedge_coefficient(se, prho, {std::min(prho, pz), std::max(prho, pz)});
    int sigma_idx = 0;  // the weight-3 field [L, T]
    for (int idx = 1; idx <= n; ++idx) {
        const FrameField& ff = f.by_index(idx);
        if (ff.label.length == 3 && ff.gen == 1 && ff.parent == 3) { sigma_idx = idx; break; }
    }
    if (sigma_idx == 0) return false;
    int psigma = f.display_pos[sigma_idx - 1];
    GExpr t1_value = am.g[prho][psigma].shifted(-2, -1) +
                     am.g[pz][prho].conj(am.atoms).shifted(-1, -1)
                         .scaled(GaussRat(Rat(0), Rat(2)));
    return c2 == t1_value + t2_value.conj(am.atoms);
}

bool audit_idempotent_extraction(const Frame& f, const Ambiguity& am,
                                 const ReducedStructure& red) {
    // After reduction no named column entries remain, so part I is empty;
    // part II coefficients must carry no torsion (pure t absorption).
    int rho = f.model->rho;
    for (int r = 0; r < am.size(); ++r) {
        if (f.by_display(r).label.length != rho) continue;
        for (int gen = 1; gen <= 2; ++gen) {
            int pt = f.display_pos[gen - 1];
            WedgeKey w{std::min(r, pt), std::max(r, pt)};
            auto it = red.constants[r].find(w);
            if (it != red.constants[r].end() && !it->second.is_zero()) return false;
        }
    }
    return true;
}

bool full_torsion_crosscheck(const Frame& f, Ambiguity& am, const StructureEquations& se) {
    // Zeroing every non-absorbable coefficient (not just the subsystem S)
    // must pin the same all-zero solution.
    AbsorptionSystem full = extract_system_S(f, am, se);
    for (auto& eq : essential_coefficients(f, am, se)) full.eqs.push_back(std::move(eq));
    Solution sol = solve_system(am, full);
    auto [a2id, a3id] = fundamental_atoms(f, am);
    return sol.pinned_atoms.count(a2id) && sol.pinned_atoms.count(a3id) &&
           audit_fundamental_vanishing(f, am);
}

} // namespace tncr
