// Pipeline driver and serialization: runs model -> frame -> ambiguity ->
// structure equations -> absorption -> reduction -> Lie algebra with the
// full invariant audit set, and renders the result as JSON, plain text or
// a LaTeX bracket table.
#pragma once

#include "tncr/liealg.hpp"

#include <memory>
#include <optional>

namespace tncr {

struct AnalysisOptions {
    bool full_torsion = false;
    std::optional<std::vector<RatMatrix>> A_override;
};

// All intermediate stages, for programmatic access and the test suites.
struct Analysis {
    Model model;
    Frame frame;
    Ambiguity ambiguity;
    StructureEquations structure;
    AbsorptionSystem system;
    Solution solution;
    ReducedStructure reduced;
    LieAlgebraTable algebra;
};

// Runs the pipeline; the returned object owns every stage.  Errors are
// thrown as OutOfScopeError / InternalError with stage-tagged messages.
std::unique_ptr<Analysis> analyze(int k, const AnalysisOptions& options = {});

struct AuditEntry {
    std::string name;
    bool pass = false;
};

struct AnalysisReport {
    int schema_version = 1;
    int k = 0;
    int rho = 0;
    std::vector<int> weights_w;
    std::vector<std::string> real_equations;
    std::vector<std::string> complex_equations;

    struct FrameRow {
        std::string label;    // "(2,3)"
        std::string formula;  // "(i)*[L(1,1),L(1,2)]"
        std::string word;     // "12"
        int p = 0, q = 0;
        std::string conj;     // label of the conjugate partner
    };
    std::vector<FrameRow> frame_rows;
    std::vector<std::string> darboux;          // one line per coframe form

    struct ParamRow {
        std::string name;
        int weight = 0;
        bool self_conj = false;
        std::string expr;  // derivative-symbol expression
    };
    std::vector<ParamRow> parameters;
    std::vector<std::string> coframe_order;    // display labels, heaviest first
    std::vector<std::vector<std::string>> ambiguity_matrix;
    std::vector<std::string> system_S;         // cleared polynomial equations
    std::vector<std::string> solution;
    bool normalizable = false;
    int group_dim = 0;
    std::vector<std::string> final_equations;
    std::vector<std::string> bracket_table;    // "[vA, vB] = ..."
    std::map<std::string, int> grading;        // "-3" -> 2, "0" -> 2, ...
    int dim = 0;
    bool rigid = false;
    std::string dim_statement;
    std::vector<AuditEntry> audits;
    bool full_torsion_mode = false;
    std::int64_t elapsed_ms = 0;

    bool all_audits_pass() const {
        for (const auto& a : audits)
            if (!a.pass) return false;
        return true;
    }
};

AnalysisReport run_analysis(int k, const AnalysisOptions& options = {});
AnalysisReport make_report(Analysis& a, const AnalysisOptions& options);

// Batch over a codimension range; per-k errors are collected, not fatal.
struct BatchResult {
    std::vector<AnalysisReport> reports;
    std::vector<std::string> errors;  // "k=5: message"
};
BatchResult batch(int k_min, int k_max, const AnalysisOptions& options = {}, int jobs = 1);
std::string batch_summary(const BatchResult& b);

// Renderers.  JSON is deterministic (stable key order); timings are only
// included on request since they vary run to run.
std::string render_json(const AnalysisReport& r, bool with_timings = false);
std::string render_text(const AnalysisReport& r);
std::string render_latex(const AnalysisReport& r);

// Lossless JSON round trip.
AnalysisReport report_from_json(const std::string& json_text);

} // namespace tncr
