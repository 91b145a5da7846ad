#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tncr/report.hpp"

#include <json.hpp>

using namespace tncr;

TEST_CASE("json rendering is deterministic and round trips") {
    AnalysisOptions opt;
    opt.full_torsion = true;
    AnalysisReport r1 = run_analysis(3, opt);
    AnalysisReport r2 = run_analysis(3, opt);
    std::string j1 = render_json(r1), j2 = render_json(r2);
    CHECK(j1 == j2);  // byte identical without timings

    AnalysisReport parsed = report_from_json(j1);
    CHECK(render_json(parsed) == j1);

    // schema sanity
    auto doc = nlohmann::json::parse(j1);
    CHECK(doc.at("schema_version") == 1);
    CHECK(doc.at("k") == 3);
    CHECK(doc.at("rho") == 3);
    CHECK(doc.at("dim") == 7);
    CHECK(doc.at("rigid") == true);
    CHECK(doc.at("normalizable") == false);
}

TEST_CASE("text and latex renderers") {
    AnalysisReport r = run_analysis(3);
    std::string text = render_text(r);
    CHECK(text.find("codimension k = 3") != std::string::npos);
    CHECK(text.find("Verdict: rigid") != std::string::npos);
    CHECK(text.find("dim aut_CR = 7") != std::string::npos);

    std::string latex = render_latex(r);
    CHECK(latex.find("\\begin{tabular}") != std::string::npos);
    CHECK(latex.find("\\end{tabular}") != std::string::npos);
    // balanced math delimiters
    CHECK(std::count(latex.begin(), latex.end(), '$') % 2 == 0);
    size_t begins = 0, ends = 0, p = 0;
    while ((p = latex.find("\\begin{", p)) != std::string::npos) { ++begins; ++p; }
    p = 0;
    while ((p = latex.find("\\end{", p)) != std::string::npos) { ++ends; ++p; }
    CHECK(begins == ends);
}

TEST_CASE("analysis report content for k=6") {
    AnalysisReport r = run_analysis(6);
    CHECK(r.k == 6);
    CHECK(r.rho == 4);
    CHECK(r.weights_w == std::vector<int>{2, 3, 3, 4, 4, 4});
    CHECK(r.dim == 10);
    CHECK(r.rigid);
    CHECK(r.grading.at("-4") == 3);
    CHECK(r.grading.at("0") == 2);
    CHECK(r.all_audits_pass());
}

TEST_CASE("out of scope propagates") {
    CHECK_THROWS_AS(run_analysis(1), OutOfScopeError);
    CHECK_THROWS_AS(batch(1, 3), OutOfScopeError);
    CHECK_THROWS_AS(batch(4, 3), OutOfScopeError);
}

TEST_CASE("batch collects per-k results") {
    BatchResult b = batch(2, 4);
    REQUIRE(b.reports.size() == 3);
    CHECK(b.errors.empty());
    for (const auto& r : b.reports) {
        CHECK(r.rigid);
        CHECK((r.dim == 3 + r.k || r.dim == 4 + r.k));
    }
    std::string summary = batch_summary(b);
    CHECK(summary.find("rigid") != std::string::npos);

    // parallel run produces the same reports in order
    BatchResult p = batch(2, 4, AnalysisOptions{}, 3);
    REQUIRE(p.reports.size() == 3);
    for (size_t i = 0; i < 3; ++i)
        CHECK(render_json(p.reports[i]) == render_json(b.reports[i]));
}

TEST_CASE("A-matrix override flows through the pipeline") {
    // swap the two weight-3 basis rows for k=3; the analysis outcome is a
    // biholomorphically equivalent model, so the verdict is unchanged
    AnalysisOptions opt;
    opt.A_override = std::vector<RatMatrix>{
        {{Rat(1)}},
        {{Rat(0), Rat(2)}, {Rat(-2), Rat(0)}},
    };
    AnalysisReport r = run_analysis(3, opt);
    CHECK(r.dim == 7);
    CHECK(r.rigid);
    CHECK_FALSE(r.normalizable);
}
