// Command-line driver: builds totally nondegenerate CR models, runs the
// equivalence-method pipeline, and emits reports.
//
//   tncr build   --codim K [--a-matrices FILE]
//   tncr analyze --codim K [--full-torsion] [--format json|text|latex]
//                [--out PATH] [--a-matrices FILE] [--timings]
//   tncr batch   --from A --to B [--jobs N] [--full-torsion]
//   tncr audit   --codim K
//
// Exit codes: 0 success, 2 out-of-scope input, 1 internal invariant failure.
#include <CLI11.hpp>
#include <json.hpp>

#include "tncr/report.hpp"

#include <fstream>
#include <iostream>

using namespace tncr;

namespace {

// A-override file: {"matrices": [[["1"]], [["2","0"],["0","-2"]], ...]},
// entries as exact rational strings, one matrix per weight level 2..rho.
std::vector<RatMatrix> load_a_matrices(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw OutOfScopeError("cannot open A-matrices file: " + path);
    nlohmann::json j;
    in >> j;
    std::vector<RatMatrix> out;
    for (const auto& mat : j.at("matrices")) {
        RatMatrix m;
        for (const auto& row : mat) {
            std::vector<Rat> r;
            for (const auto& e : row) {
                Rat q;
                if (q.set_str(e.get<std::string>(), 10) != 0)
                    throw OutOfScopeError("bad rational in A-matrices file: " +
                                          e.get<std::string>());
                q.canonicalize();
                r.push_back(q);
            }
            m.push_back(std::move(r));
        }
        out.push_back(std::move(m));
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw OutOfScopeError("cannot write output file: " + out_path);
        out << text;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Cartan equivalence analysis of totally nondegenerate CR models"};
    app.require_subcommand(1);

    int codim = 0;
    std::string a_file, format = "text", out_path;
    bool full_torsion = false, with_timings = false;
    int from_k = 2, to_k = 6, jobs = 1;

    CLI::App* cmd_build = app.add_subcommand("build", "construct the model and print its equations");
    cmd_build->add_option("--codim", codim, "codimension k (>= 2)")->required();
    cmd_build->add_option("--a-matrices", a_file, "JSON file with the A matrices");

    CLI::App* cmd_analyze = app.add_subcommand("analyze", "full pipeline for one codimension");
    cmd_analyze->add_option("--codim", codim)->required();
    cmd_analyze->add_option("--a-matrices", a_file);
    cmd_analyze->add_flag("--full-torsion", full_torsion, "also run the full-torsion cross-check");
    cmd_analyze->add_option("--format", format)->check(CLI::IsMember({"json", "text", "latex"}));
    cmd_analyze->add_option("--out", out_path, "write the report to a file");
    cmd_analyze->add_flag("--timings", with_timings, "include wall-clock timings in JSON");

    CLI::App* cmd_batch = app.add_subcommand("batch", "run a codimension range");
    cmd_batch->add_option("--from", from_k)->required();
    cmd_batch->add_option("--to", to_k)->required();
    cmd_batch->add_option("--jobs", jobs, "parallel analyses");
    cmd_batch->add_flag("--full-torsion", full_torsion);

    CLI::App* cmd_audit = app.add_subcommand("audit", "run the invariant audits only");
    cmd_audit->add_option("--codim", codim)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        AnalysisOptions opt;
        opt.full_torsion = full_torsion;
        if (!a_file.empty()) opt.A_override = load_a_matrices(a_file);

        if (cmd_build->parsed()) {
            Model m = build_model(codim, opt.A_override);
            std::cout << "codimension " << m.k << ", length rho = " << m.rho << "\n";
            std::cout << "weights of w: ";
            for (int w : m.weight_w) std::cout << w << " ";
            std::cout << "\n";
            for (int j = 1; j <= m.k; ++j) std::cout << "  " << m.real_equation_str(j) << "\n";
            for (int j = 1; j <= m.k; ++j) std::cout << "  " << m.complex_equation_str(j) << "\n";
        } else if (cmd_analyze->parsed()) {
            AnalysisReport r = run_analysis(codim, opt);
            if (format == "json") emit(render_json(r, with_timings), out_path);
            else if (format == "latex") emit(render_latex(r), out_path);
            else emit(render_text(r), out_path);
            if (!r.all_audits_pass()) return 1;
        } else if (cmd_batch->parsed()) {
            opt.full_torsion = true;
            BatchResult b = batch(from_k, to_k, opt, jobs);
            std::cout << batch_summary(b);
            for (const auto& r : b.reports)
                if (!r.rigid || !r.all_audits_pass()) return 1;
            if (!b.errors.empty()) return 1;
        } else if (cmd_audit->parsed()) {
            opt.full_torsion = true;
            AnalysisReport r = run_analysis(codim, opt);
            for (const auto& a : r.audits)
                std::cout << "[" << (a.pass ? "pass" : "FAIL") << "] " << a.name << "\n";
            if (!r.all_audits_pass()) return 1;
        }
        return 0;
    } catch (const OutOfScopeError& e) {
        std::cerr << "out of scope: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal invariant failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
