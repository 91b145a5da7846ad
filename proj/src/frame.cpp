#include "tncr/frame.hpp"
#include "tncr/linalg.hpp"

#include <algorithm>

namespace tncr {

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
    VectorField r;
    VarTablePtr tab;
    for (const auto& [v, c] : x.comp) { tab = c.table(); break; }
    if (!tab)
        for (const auto& [v, c] : y.comp) { tab = c.table(); break; }
    if (!tab) return r;
    std::vector<int> targets;
    for (const auto& [v, c] : x.comp) targets.push_back(v);
    for (const auto& [v, c] : y.comp) targets.push_back(v);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    for (int v : targets) {
        WPoly c = x.apply(y.coeff(v, tab)) - y.apply(x.coeff(v, tab));
        r.set(v, std::move(c));
    }
    return r;
}

VectorField generator_field(const Model& m) {
    const VariableTable& T = *m.vars;
    VectorField L;
    L.set(T.z(), WPoly::constant(m.vars, GaussRat(1)));
    for (int j = 1; j <= m.k; ++j)
        L.set(T.w(j), m.Theta[j - 1].derivative(T.z()));
    return L;
}

VectorField intrinsicize(const VectorField& x, const Model& m) {
    const VariableTable& T = *m.vars;
    std::map<int, WPoly> on_graph;
    for (int i = 1; i <= m.k; ++i) {
        WPoly u = WPoly::variable(m.vars, T.u(i));
        WPoly iphi = m.Phi[i - 1].scaled(GaussRat::i_unit());
        on_graph[T.w(i)] = u + iphi;
        on_graph[T.wb(i)] = u - iphi;
    }
    VectorField r;
    r.set(T.z(), x.coeff(T.z(), m.vars).substitute(on_graph));
    r.set(T.zb(), x.coeff(T.zb(), m.vars).substitute(on_graph));
    for (int j = 1; j <= m.k; ++j) {
        WPoly half = (x.coeff(T.w(j), m.vars) + x.coeff(T.wb(j), m.vars))
                         .scaled(GaussRat(Rat(1, 2)));
        r.set(T.u(j), half.substitute(on_graph));
    }
    return r;
}

namespace {

// Row of intrinsic coefficients in the fixed column order z, zb, u_1..u_k.
std::vector<WPoly> intrinsic_row(const VectorField& x, const Model& m) {
    const VariableTable& T = *m.vars;
    std::vector<WPoly> row;
    row.push_back(x.coeff(T.z(), m.vars));
    row.push_back(x.coeff(T.zb(), m.vars));
    for (int j = 1; j <= m.k; ++j) row.push_back(x.coeff(T.u(j), m.vars));
    return row;
}

bool is_independent(const std::vector<std::vector<WPoly>>& rows,
                    const std::vector<WPoly>& cand) {
    std::vector<std::vector<WPoly>> all(rows);
    all.push_back(cand);
    return wpoly_matrix_rank(all) == static_cast<int>(all.size());
}

// Lemma "homogeneous": a length-l field has every ambient coefficient of
// d/dx homogeneous of weight [x] - l.
void check_field_weight(const VectorField& x, const Model& m, int length) {
    const VariableTable& T = *m.vars;
    for (const auto& [v, c] : x.comp) {
        if (c.is_zero()) continue;
        if (!c.is_homogeneous_of(T.weight(v) - length))
            throw InternalError("frame: field coefficient violates weight -" +
                                std::to_string(length) + " homogeneity");
    }
}

} // namespace

GaussRat Frame::bracket_coeff(int a, int b, int c) const {
    GaussRat sign(1);
    if (a == b) return GaussRat(0);
    if (a > b) { std::swap(a, b); sign = GaussRat(-1); }
    auto it = brackets.find({a, b});
    if (it == brackets.end()) return GaussRat(0);
    auto jt = it->second.find(c);
    if (jt == it->second.end()) return GaussRat(0);
    return sign * jt->second;
}

Frame build_initial_frame(const Model& m) {
    Frame f;
    f.model = &m;
    const VariableTable& T = *m.vars;

    VectorField L = generator_field(m);
    VectorField Lb = L.conjugate(T);

    auto push_field = [&](VectorField ambient, int length, GaussRat phase, int gen, int parent,
                          std::vector<int> word) -> int {
        FrameField ff;
        ff.label = {length, static_cast<int>(f.fields.size()) + 1};
        ff.field = std::move(ambient);
        ff.intrinsic = intrinsicize(ff.field, m);
        ff.phase = phase;
        ff.gen = gen;
        ff.parent = parent;
        ff.word = std::move(word);
        if (length == 1) {
            ff.p = (ff.label.index == 1) ? 1 : 0;
            ff.q = 1 - ff.p;
        } else {
            const FrameField& par = f.fields[parent - 1];
            ff.p = par.p + (gen == 1 ? 1 : 0);
            ff.q = par.q + (gen == 2 ? 1 : 0);
        }
        check_field_weight(ff.field, m, length);
        f.fields.push_back(std::move(ff));
        return static_cast<int>(f.fields.size());
    };

    int iL = push_field(L, 1, GaussRat(1), 0, 0, {1});
    int iLb = push_field(Lb, 1, GaussRat(1), 0, 0, {2});
    f.fields[iL - 1].conj_partner = iLb;
    f.fields[iLb - 1].conj_partner = iL;

    std::vector<std::vector<WPoly>> rows = {intrinsic_row(f.fields[0].intrinsic, m),
                                            intrinsic_row(f.fields[1].intrinsic, m)};
    if (wpoly_matrix_rank(rows) != 2)
        throw InternalError("frame: generators are dependent");

    for (int length = 2; length <= m.rho; ++length) {
        std::int64_t needed = m.profile.mults[length - 2];
        std::int64_t got = 0;
        std::vector<int> parents;
        for (int idx = 1; idx <= f.size(); ++idx)
            if (f.fields[idx - 1].label.length == length - 1) parents.push_back(idx);

        for (int gen = 1; gen <= 2 && got < needed; ++gen) {
            for (int parent : parents) {
                if (got >= needed) break;
                VectorField braw = lie_bracket(f.fields[gen - 1].field, f.fields[parent - 1].field);
                if (braw.is_zero()) continue;
                VectorField bint = intrinsicize(braw, m);
                if (!is_independent(rows, intrinsic_row(bint, m))) continue;

                VectorField bconj = braw.conjugate(T);
                GaussRat unit;
                bool proportional = false;
                for (const GaussRat& u :
                     {GaussRat(1), GaussRat(-1), GaussRat::i_unit(), -GaussRat::i_unit()}) {
                    if (bconj == braw.scaled(u)) { unit = u; proportional = true; break; }
                }
                std::vector<int> word = f.fields[parent - 1].word;
                word.insert(word.begin(), gen);

                if (proportional) {
                    // phase making the stored field self-conjugate:
                    // conj((1+u)B) = (1+u)B; for u = -1 use iB instead
                    GaussRat phase(1);
                    if (unit == GaussRat(-1)) phase = GaussRat::i_unit();
                    else if (unit != GaussRat(1)) phase = GaussRat(1) + unit;
                    VectorField stored = braw.scaled(phase);
                    int idx = push_field(std::move(stored), length, phase, gen, parent, word);
                    f.fields[idx - 1].conj_partner = idx;
                    if (!(f.fields[idx - 1].field.conjugate(T) == f.fields[idx - 1].field))
                        throw InternalError("frame: self-conjugate phase fix failed");
                    rows.push_back(intrinsic_row(f.fields[idx - 1].intrinsic, m));
                    ++got;
                } else {
                    int idx = push_field(braw, length, GaussRat(1), gen, parent, word);
                    rows.push_back(intrinsic_row(f.fields[idx - 1].intrinsic, m));
                    ++got;
                    if (got >= needed)
                        throw InternalError("frame: conjugation pairing failed at length " +
                                            std::to_string(length) +
                                            " (no slot for the conjugate partner)");
                    if (!is_independent(rows, intrinsic_row(intrinsicize(bconj, m), m)))
                        throw InternalError("frame: conjugation pairing failed at length " +
                                            std::to_string(length));
                    int parent_conj = f.fields[parent - 1].conj_partner;
                    std::vector<int> cword = f.fields[parent_conj - 1].word;
                    cword.insert(cword.begin(), 3 - gen);
                    if (!(lie_bracket(f.fields[2 - gen].field, f.fields[parent_conj - 1].field) ==
                          bconj))
                        throw InternalError("frame: conjugate route mismatch");
                    int cidx = push_field(bconj, length, GaussRat(1), 3 - gen, parent_conj, cword);
                    f.fields[idx - 1].conj_partner = cidx;
                    f.fields[cidx - 1].conj_partner = idx;
                    rows.push_back(intrinsic_row(f.fields[cidx - 1].intrinsic, m));
                    ++got;
                }
            }
        }
        if (got < needed)
            throw OutOfScopeError("model not totally nondegenerate: frame rank stalls at length " +
                                  std::to_string(length));
        // rank filtration: min(n_l, 2+k) independent fields through length l
        std::int64_t expect = std::min<std::int64_t>(m.profile.n[length - 1], 2 + m.k);
        if (wpoly_matrix_rank(rows) != static_cast<int>(rows.size()) ||
            static_cast<std::int64_t>(rows.size()) != expect)
            throw InternalError("frame: rank filtration violated at length " +
                                std::to_string(length));
    }

    // Bracket table.  Pairs with length sum > rho vanish identically in the
    // ambient coordinates already (negative-weight coefficients).
    for (int a = 1; a <= f.size(); ++a) {
        for (int b = a + 1; b <= f.size(); ++b) {
            const FrameField& fa = f.fields[a - 1];
            const FrameField& fb = f.fields[b - 1];
            VectorField br = lie_bracket(fa.field, fb.field);
            int lsum = fa.label.length + fb.label.length;
            if (lsum > m.rho) {
                if (!br.is_zero())
                    throw InternalError("frame: bracket of length " + std::to_string(lsum) +
                                        " > rho does not vanish");
                continue;
            }
            VectorField bri = intrinsicize(br, m);
            std::vector<int> targets;
            for (int t = 1; t <= f.size(); ++t)
                if (f.fields[t - 1].label.length == lsum) targets.push_back(t);
            std::map<std::pair<int, Monomial>, int> coords;
            auto note = [&](const VectorField& v) {
                for (const auto& [var, poly] : v.comp)
                    for (const auto& [mono, c] : poly.terms())
                        coords.emplace(std::make_pair(var, mono), 0);
            };
            note(bri);
            for (int t : targets) note(f.fields[t - 1].intrinsic);
            int nc = 0;
            for (auto& [key, id] : coords) id = nc++;
            std::vector<std::vector<GaussRat>> A(nc, std::vector<GaussRat>(targets.size(), GaussRat(0)));
            std::vector<GaussRat> rhs(nc, GaussRat(0));
            for (size_t tc = 0; tc < targets.size(); ++tc)
                for (const auto& [var, poly] : f.fields[targets[tc] - 1].intrinsic.comp)
                    for (const auto& [mono, c] : poly.terms())
                        A[coords.at({var, mono})][tc] = c;
            for (const auto& [var, poly] : bri.comp)
                for (const auto& [mono, c] : poly.terms())
                    rhs[coords.at({var, mono})] = c;
            bool unique = false;
            auto sol = solve_linear(A, rhs, &unique);
            if (!sol || !unique)
                throw InternalError("frame: bracket closure failed for pair " + fa.label.str() +
                                    "," + fb.label.str());
            VectorField recomposed;
            std::map<int, GaussRat> entry;
            for (size_t tc = 0; tc < targets.size(); ++tc) {
                if ((*sol)[tc].is_zero()) continue;
                entry[targets[tc]] = (*sol)[tc];
                recomposed = recomposed + f.fields[targets[tc] - 1].intrinsic.scaled((*sol)[tc]);
            }
            if (!(recomposed == bri))
                throw InternalError("frame: bracket residual nonzero");
            if (!entry.empty()) f.brackets[{a, b}] = std::move(entry);
        }
    }

    // Display order: weight blocks descending; self-conjugate labels first,
    // then conjugate pairs in construction order.
    for (int length = m.rho; length >= 1; --length) {
        std::vector<int> selfs, pairs;
        for (int idx = 1; idx <= f.size(); ++idx) {
            const FrameField& ff = f.fields[idx - 1];
            if (ff.label.length != length) continue;
            if (ff.conj_partner == idx) selfs.push_back(idx);
            else if (ff.conj_partner > idx) pairs.push_back(idx);
        }
        for (int idx : selfs) f.display.push_back(idx);
        for (int idx : pairs) {
            f.display.push_back(idx);
            f.display.push_back(f.fields[idx - 1].conj_partner);
        }
    }
    f.display_pos.resize(f.size());
    for (int pos = 0; pos < f.size(); ++pos) f.display_pos[f.display[pos] - 1] = pos;

    darboux_structure(f);
    return f;
}

void darboux_structure(Frame& f) {
    int n = f.size();
    f.darboux.assign(n, {});
    for (const auto& [pair, combo] : f.brackets) {
        auto [a, b] = pair;
        int pa = f.display_pos[a - 1], pb = f.display_pos[b - 1];
        for (const auto& [c, coef] : combo) {
            int pc = f.display_pos[c - 1];
            if (pa < pb) f.darboux[pc][{pa, pb}] += -coef;
            else f.darboux[pc][{pb, pa}] += coef;
        }
    }
    for (auto& table : f.darboux)
        for (auto it = table.begin(); it != table.end();)
            it = it->second.is_zero() ? table.erase(it) : std::next(it);

    // Unique predecessor: the construction wedge of label c appears in no
    // other differential of the same weight.
    for (int c = 1; c <= n; ++c) {
        const FrameField& fc = f.fields[c - 1];
        if (fc.label.length < 2) continue;
        int a = (fc.gen == 1) ? 1 : 2;
        for (int other = 1; other <= n; ++other) {
            if (other == c || f.fields[other - 1].label.length != fc.label.length) continue;
            if (!f.bracket_coeff(a, fc.parent, other).is_zero())
                throw InternalError("frame: predecessor wedge of " + fc.label.str() +
                                    " is not unique");
        }
        if (f.bracket_coeff(a, fc.parent, c).is_zero())
            throw InternalError("frame: predecessor wedge of " + fc.label.str() + " missing");
    }
}

} // namespace tncr
