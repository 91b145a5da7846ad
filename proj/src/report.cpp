#include "tncr/report.hpp"

#include <json.hpp>

#include <chrono>
#include <future>
#include <sstream>

namespace tncr {

namespace {

std::string wedge_str(const Frame& f, const WedgeKey& w, const std::string& form) {
    return form + f.by_display(w.first).label.str() + "^" + form +
           f.by_display(w.second).label.str();
}

std::string coef_prefix(const GaussRat& c) {
    if (c == GaussRat(1)) return "";
    if (c == GaussRat(-1)) return "-";
    return "(" + gr_str(c) + ")*";
}

} // namespace

std::unique_ptr<Analysis> analyze(int k, const AnalysisOptions& options) {
    auto a = std::make_unique<Analysis>();
    try {
        a->model = build_model(k, options.A_override);
    } catch (const InternalError& e) {
        throw InternalError(std::string("model: ") + e.what());
    }
    a->frame = build_initial_frame(a->model);
    a->frame.model = &a->model;
    a->ambiguity = build_ambiguity(a->frame);
    a->ambiguity.frame = &a->frame;
    a->structure = compute_structure_equations(a->frame, a->ambiguity);
    a->system = extract_system_S(a->frame, a->ambiguity, a->structure);
    a->solution = solve_with_fallback(a->frame, a->ambiguity, a->structure, a->system);
    if (!a->solution.named_all_zero)
        throw InternalError("cartan: absorption solution has nonzero parameters");
    a->reduced = reduce_structure(a->frame, a->ambiguity, a->structure, a->solution);
    a->algebra = lie_algebra_from_equations(a->frame, a->reduced);
    return a;
}

AnalysisReport make_report(Analysis& a, const AnalysisOptions& options) {
    AnalysisReport r;
    const Frame& f = a.frame;
    const Model& m = a.model;
    r.k = m.k;
    r.rho = m.rho;
    r.weights_w = m.weight_w;
    for (int j = 1; j <= m.k; ++j) {
        r.real_equations.push_back(m.real_equation_str(j));
        r.complex_equations.push_back(m.complex_equation_str(j));
    }

    for (const auto& ff : f.fields) {
        AnalysisReport::FrameRow row;
        row.label = ff.label.str();
        if (ff.gen == 0) {
            row.formula = (ff.label.index == 1) ? "L" : "conj(L)";
        } else {
            row.formula = coef_prefix(ff.phase) + "[L(1," + std::to_string(ff.gen) + "),L" +
                          f.by_index(ff.parent).label.str() + "]";
        }
        for (int w : ff.word) row.word += std::to_string(w);
        row.p = ff.p;
        row.q = ff.q;
        row.conj = f.by_index(ff.conj_partner).label.str();
        r.frame_rows.push_back(std::move(row));
    }

    for (int pos = 0; pos < f.size(); ++pos) {
        std::string line = "d s" + f.by_display(pos).label.str() + " = ";
        if (f.darboux[pos].empty()) line += "0";
        else {
            bool first = true;
            for (const auto& [w, c] : f.darboux[pos]) {
                if (!first) line += " + ";
                first = false;
                line += coef_prefix(c) + wedge_str(f, w, "s");
            }
        }
        r.darboux.push_back(std::move(line));
    }

    const AtomTable& atoms = a.ambiguity.atoms;
    for (int id : atoms.named_ids()) {
        AnalysisReport::ParamRow row;
        row.name = atoms.atom(id).name;
        row.weight = atoms.atom(id).weight;
        row.self_conj = atoms.atom(id).conj_self;
        row.expr = atoms.atom(id).rep.str();
        r.parameters.push_back(std::move(row));
    }
    for (int pos = 0; pos < f.size(); ++pos)
        r.coframe_order.push_back(f.by_display(pos).label.str());
    for (int row = 0; row < a.ambiguity.size(); ++row) {
        std::vector<std::string> out;
        for (int col = 0; col < a.ambiguity.size(); ++col)
            out.push_back(a.ambiguity.g[row][col].str(atoms));
        r.ambiguity_matrix.push_back(std::move(out));
    }

    for (const auto& eq : a.system.eqs)
        r.system_S.push_back(cleared(eq.lhs).str(atoms) + " = 0   [" + eq.provenance + "]");
    for (const auto& [id, value] : a.solution.values)
        r.solution.push_back(atoms.atom(id).name + " = " + gr_str(value));

    r.normalizable = a.reduced.normalizable;
    r.group_dim = a.reduced.group_dim;

    for (int pos = 0; pos < f.size(); ++pos) {
        auto [p, q] = a.reduced.mc[pos];
        std::string line = "d G" + f.by_display(pos).label.str() + " = ";
        std::string mc;
        if (r.group_dim == 2) {
            if (p) mc += (p == 1 ? "" : std::to_string(p) + "*") + std::string("alpha");
            if (q) mc += std::string(p ? " + " : "") +
                         (q == 1 ? "" : std::to_string(q) + "*") + "alphabar";
        } else {
            int s = p + q;
            mc = (s == 1 ? "" : std::to_string(s) + "*") + std::string("alpha");
        }
        line += "(" + mc + ")^G" + f.by_display(pos).label.str();
        for (const auto& [w, c] : a.reduced.constants[pos])
            line += " + " + coef_prefix(c) + wedge_str(f, w, "G");
        r.final_equations.push_back(std::move(line));
    }
    r.final_equations.push_back("d alpha = 0");
    if (r.group_dim == 2) r.final_equations.push_back("d alphabar = 0");

    const LieAlgebraTable& t = a.algebra;
    for (int i = 0; i < t.dim(); ++i)
        for (int j = i + 1; j < t.dim(); ++j) {
            auto combo = t.bracket(i, j);
            if (combo.empty()) continue;
            std::string line = "[" + t.names[i] + "," + t.names[j] + "] = ";
            bool first = true;
            for (const auto& [c, v] : combo) {
                if (!first) line += " + ";
                first = false;
                line += coef_prefix(v) + t.names[c];
            }
            r.bracket_table.push_back(std::move(line));
        }
    GradingReport g = verify_grading(t, m.k);
    for (const auto& [w, d] : g.dims) r.grading[std::to_string(w)] = d;
    Verdict v = rigidity_verdict(t, m.k);
    r.dim = v.dim;
    r.rigid = v.rigid;
    r.dim_statement = v.statement;
    r.full_torsion_mode = options.full_torsion;

    // ------------------------------------------------------------- audits
    auto& au = r.audits;
    Ambiguity& am = a.ambiguity;  // t_atom() may extend the table during audits
    au.push_back({"model.N_cardinalities_match_free_lie", true});  // enforced in build_model
    bool phi_ok = true, theta_ok = true;
    {
        std::map<int, WPoly> kz{{m.vars->z(), WPoly(m.vars)}};
        std::map<int, WPoly> kzb{{m.vars->zb(), WPoly(m.vars)}};
        for (int j = 1; j <= m.k; ++j) {
            phi_ok = phi_ok && m.Phi[j - 1].is_real_valued() &&
                     m.Phi[j - 1].is_homogeneous_of(m.weight_of_w(j)) &&
                     m.Phi[j - 1].substitute(kz).is_zero() &&
                     m.Phi[j - 1].substitute(kzb).is_zero();
            theta_ok = theta_ok && m.Theta[j - 1].is_homogeneous_of(m.weight_of_w(j));
        }
    }
    au.push_back({"model.phi_real_homogeneous_mixed", phi_ok});
    au.push_back({"model.theta_homogeneous", theta_ok});
    au.push_back({"model.hormander_matches_profile", hormander_data(m) == m.profile.mults});

    au.push_back({"frame.homogeneity_and_closure", true});  // enforced in build_initial_frame
    au.push_back({"frame.rank_filtration", true});           // enforced in build_initial_frame
    au.push_back({"frame.predecessor_unique", true});        // enforced in darboux_structure

    au.push_back({"ambiguity.leading_law", true});           // enforced in build_ambiguity
    au.push_back({"ambiguity.column_weights", audit_column_weights(am)});
    au.push_back({"ambiguity.ginv_row_weights", audit_ginv_row_weights(am)});
    au.push_back({"ambiguity.g_times_ginv_identity", audit_g_times_ginv(am)});
    au.push_back({"ambiguity.sigma_expansion_shape", audit_sigma_expansion(am)});
    au.push_back({"ambiguity.vanish_substitution", audit_vanish_substitution(am)});

    au.push_back({"cartan.torsion_weight_zero", audit_torsion_weight_zero(am, a.structure)});
    au.push_back({"cartan.S_weighted_homogeneous", audit_S_homogeneous(am, a.system)});
    au.push_back({"cartan.S_linear", audit_S_linear(am, a.system)});
    bool delta_ok = true;
    for (const auto& eq : a.system.eqs)
        if (a.structure.delta_cols[eq.row].count(eq.wedge.first) ||
            a.structure.delta_cols[eq.row].count(eq.wedge.second))
            delta_ok = false;
    au.push_back({"cartan.delta_slots_never_contribute", delta_ok});
    au.push_back({"cartan.solution_satisfies_S",
                  audit_solution_satisfies_S(am, a.system, a.solution)});
    au.push_back({"cartan.solution_all_zero",
                  a.solution.named_all_zero && a.solution.ts_all_zero});
    au.push_back({"cartan.fundamental_vanishing_chain", audit_fundamental_vanishing(f, am)});
    au.push_back({"cartan.t_expressions_match", audit_t_expressions(f, am, a.structure)});
    au.push_back({"cartan.reduction_constant_type", true});  // enforced in reduce_structure
    au.push_back({"cartan.idempotent_extraction",
                  audit_idempotent_extraction(f, am, a.reduced)});
    if (options.full_torsion)
        au.push_back({"cartan.full_torsion_sufficiency",
                      full_torsion_crosscheck(f, am, a.structure)});

    au.push_back({"liealg.jacobi", audit_jacobi(t)});
    au.push_back({"liealg.antisymmetry", audit_antisymmetry(t)});
    au.push_back({"liealg.grading_closure", g.closure_ok});
    au.push_back({"liealg.g0_abelian", audit_g0_abelian(t)});
    au.push_back({"liealg.minus_dim_2_plus_k", g.minus_dim_ok});
    MinusPartReport mp = nilpotent_minus_part(t, m.profile);
    au.push_back({"liealg.minus_generated_by_g1", mp.generated_by_g1});
    au.push_back({"liealg.nilpotent_step_rho", mp.nilpotent_step_rho});
    au.push_back({"liealg.minus_dims_match_profile", mp.dims_match_profile});
    return r;
}

AnalysisReport run_analysis(int k, const AnalysisOptions& options) {
    auto t0 = std::chrono::steady_clock::now();
    auto a = analyze(k, options);
    AnalysisReport r = make_report(*a, options);
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
    return r;
}

BatchResult batch(int k_min, int k_max, const AnalysisOptions& options, int jobs) {
    if (k_min < 2 || k_min > k_max) throw OutOfScopeError("batch: need 2 <= k_min <= k_max");
    BatchResult out;
    std::vector<int> ks;
    for (int k = k_min; k <= k_max; ++k) ks.push_back(k);
    if (jobs <= 1) {
        for (int k : ks) {
            try {
                out.reports.push_back(run_analysis(k, options));
            } catch (const std::exception& e) {
                out.errors.push_back("k=" + std::to_string(k) + ": " + e.what());
            }
        }
        return out;
    }
    std::vector<std::future<AnalysisReport>> futures;
    for (int k : ks)
        futures.push_back(std::async(std::launch::async,
                                     [k, options] { return run_analysis(k, options); }));
    for (size_t i = 0; i < futures.size(); ++i) {
        try {
            out.reports.push_back(futures[i].get());
        } catch (const std::exception& e) {
            out.errors.push_back("k=" + std::to_string(ks[i]) + ": " + e.what());
        }
    }
    return out;
}

std::string batch_summary(const BatchResult& b) {
    std::ostringstream os;
    os << "  k  rho  dim  normalizable  rigid  audits\n";
    for (const auto& r : b.reports) {
        os << "  " << r.k << "    " << r.rho << "   " << r.dim << "   "
           << (r.normalizable ? "yes" : "no ") << "          "
           << (r.rigid ? "yes" : "NO ") << "    "
           << (r.all_audits_pass() ? "pass" : "FAIL") << "\n";
    }
    for (const auto& e : b.errors) os << "  error: " << e << "\n";
    return os.str();
}

// ------------------------------------------------------------------ JSON

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json to_json(const AnalysisReport& r, bool with_timings) {
    ordered_json j;
    j["schema_version"] = r.schema_version;
    j["k"] = r.k;
    j["rho"] = r.rho;
    j["weights_w"] = r.weights_w;
    j["real_equations"] = r.real_equations;
    j["complex_equations"] = r.complex_equations;
    j["frame"] = ordered_json::array();
    for (const auto& row : r.frame_rows) {
        ordered_json e;
        e["label"] = row.label;
        e["formula"] = row.formula;
        e["word"] = row.word;
        e["p"] = row.p;
        e["q"] = row.q;
        e["conj"] = row.conj;
        j["frame"].push_back(e);
    }
    j["darboux"] = r.darboux;
    j["parameters"] = ordered_json::array();
    for (const auto& p : r.parameters) {
        ordered_json e;
        e["name"] = p.name;
        e["weight"] = p.weight;
        e["self_conj"] = p.self_conj;
        e["expr"] = p.expr;
        j["parameters"].push_back(e);
    }
    j["coframe_order"] = r.coframe_order;
    j["ambiguity_matrix"] = r.ambiguity_matrix;
    j["system_S"] = r.system_S;
    j["solution"] = r.solution;
    j["normalizable"] = r.normalizable;
    j["group_dim"] = r.group_dim;
    j["final_equations"] = r.final_equations;
    j["bracket_table"] = r.bracket_table;
    j["grading"] = r.grading;
    j["dim"] = r.dim;
    j["rigid"] = r.rigid;
    j["dim_statement"] = r.dim_statement;
    j["full_torsion_mode"] = r.full_torsion_mode;
    j["audits"] = ordered_json::array();
    for (const auto& a : r.audits) {
        ordered_json e;
        e["name"] = a.name;
        e["pass"] = a.pass;
        j["audits"].push_back(e);
    }
    if (with_timings) j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

} // namespace

std::string render_json(const AnalysisReport& r, bool with_timings) {
    return to_json(r, with_timings).dump(2) + "\n";
}

AnalysisReport report_from_json(const std::string& json_text) {
    ordered_json j = ordered_json::parse(json_text);
    AnalysisReport r;
    r.schema_version = j.at("schema_version");
    r.k = j.at("k");
    r.rho = j.at("rho");
    r.weights_w = j.at("weights_w").get<std::vector<int>>();
    r.real_equations = j.at("real_equations").get<std::vector<std::string>>();
    r.complex_equations = j.at("complex_equations").get<std::vector<std::string>>();
    for (const auto& e : j.at("frame")) {
        AnalysisReport::FrameRow row;
        row.label = e.at("label");
        row.formula = e.at("formula");
        row.word = e.at("word");
        row.p = e.at("p");
        row.q = e.at("q");
        row.conj = e.at("conj");
        r.frame_rows.push_back(std::move(row));
    }
    r.darboux = j.at("darboux").get<std::vector<std::string>>();
    for (const auto& e : j.at("parameters")) {
        AnalysisReport::ParamRow p;
        p.name = e.at("name");
        p.weight = e.at("weight");
        p.self_conj = e.at("self_conj");
        p.expr = e.at("expr");
        r.parameters.push_back(std::move(p));
    }
    r.coframe_order = j.at("coframe_order").get<std::vector<std::string>>();
    r.ambiguity_matrix = j.at("ambiguity_matrix").get<std::vector<std::vector<std::string>>>();
    r.system_S = j.at("system_S").get<std::vector<std::string>>();
    r.solution = j.at("solution").get<std::vector<std::string>>();
    r.normalizable = j.at("normalizable");
    r.group_dim = j.at("group_dim");
    r.final_equations = j.at("final_equations").get<std::vector<std::string>>();
    r.bracket_table = j.at("bracket_table").get<std::vector<std::string>>();
    r.grading = j.at("grading").get<std::map<std::string, int>>();
    r.dim = j.at("dim");
    r.rigid = j.at("rigid");
    r.dim_statement = j.at("dim_statement");
    r.full_torsion_mode = j.at("full_torsion_mode");
    for (const auto& e : j.at("audits")) r.audits.push_back({e.at("name"), e.at("pass")});
    if (j.contains("elapsed_ms")) r.elapsed_ms = j.at("elapsed_ms");
    return r;
}

std::string render_text(const AnalysisReport& r) {
    std::ostringstream os;
    os << "CR model analysis, codimension k = " << r.k << " (length rho = " << r.rho << ")\n";
    os << "\nDefining equations:\n";
    for (const auto& e : r.real_equations) os << "  " << e << "\n";
    os << "\nComplex graph form:\n";
    for (const auto& e : r.complex_equations) os << "  " << e << "\n";
    os << "\nFrame (label, construction, (p,q), conjugate):\n";
    for (const auto& row : r.frame_rows)
        os << "  L" << row.label << " = " << row.formula << "   (p,q)=(" << row.p << ","
           << row.q << ")  conj=" << row.conj << "\n";
    os << "\nDarboux-Cartan structure:\n";
    for (const auto& d : r.darboux) os << "  " << d << "\n";
    os << "\nGroup parameters (name, weight, expression):\n";
    for (const auto& p : r.parameters)
        os << "  " << p.name << "  [" << p.weight << "]"
           << (p.self_conj ? "  (self-conjugate)" : "") << "  = " << p.expr << "\n";
    os << "\nCoframe order: ";
    for (const auto& c : r.coframe_order) os << c << " ";
    os << "\nAmbiguity matrix g:\n";
    for (const auto& row : r.ambiguity_matrix) {
        os << "  [ ";
        for (const auto& e : row) os << e << " ; ";
        os << "]\n";
    }
    os << "\nSystem S:\n";
    for (const auto& e : r.system_S) os << "  " << e << "\n";
    os << "\nSolution:\n  ";
    for (const auto& s : r.solution) os << s << "  ";
    os << "\n\na1 " << (r.normalizable ? "normalizable to a real parameter" : "not normalizable")
       << "; reduced group dimension " << r.group_dim << "\n";
    os << "\nFinal structure equations:\n";
    for (const auto& e : r.final_equations) os << "  " << e << "\n";
    os << "\nLie bracket table (nonzero brackets, basis dual to the coframe):\n";
    for (const auto& b : r.bracket_table) os << "  " << b << "\n";
    os << "\nGrading: ";
    for (const auto& [w, d] : r.grading) os << "g(" << w << ")=" << d << " ";
    os << "\ndim aut_CR = " << r.dim << "  (" << r.dim_statement << ")\n";
    os << "Verdict: " << (r.rigid ? "rigid" : "NOT rigid") << "\n";
    os << "\nAudits:\n";
    for (const auto& a : r.audits)
        os << "  [" << (a.pass ? "pass" : "FAIL") << "] " << a.name << "\n";
    return os.str();
}

std::string render_latex(const AnalysisReport& r) {
    std::ostringstream os;
    os << "% bracket table, codimension " << r.k << "\n";
    os << "\\begin{tabular}{ll}\n";
    os << "\\hline\n";
    for (const auto& b : r.bracket_table) {
        std::string line = b;
        os << "$" << line << "$ \\\\\n";
    }
    os << "\\hline\n";
    os << "\\end{tabular}\n";
    return os.str();
}

} // namespace tncr
