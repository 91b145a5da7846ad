// Conversion of the final constant structure equations into a graded Lie
// algebra with exact structure constants, plus the grading, Jacobi and
// rigidity checks.
#pragma once

#include "tncr/cartan.hpp"

namespace tncr {

struct LieAlgebraTable {
    int n_gamma = 0;    // basis elements dual to the lifted coframe
    int group_dim = 0;  // 1 (alpha real) or 2 (alpha, alphabar)
    std::vector<std::string> names;
    std::vector<int> weights;  // -length for coframe duals, 0 for v0/v0b
    // brackets for i < j; [v_i, v_j] = sum_c table[{i,j}][c] v_c
    std::map<std::pair<int, int>, std::map<int, GaussRat>> brackets;

    int dim() const { return n_gamma + group_dim; }
    std::map<int, GaussRat> bracket(int i, int j) const;  // signed lookup
};

LieAlgebraTable lie_algebra_from_equations(const Frame& f, const ReducedStructure& red);

struct GradingReport {
    std::map<int, int> dims;  // weight -> dimension (0 entry = g_0)
    int total = 0;
    bool minus_dim_ok = false;   // dim g_- = 2+k
    bool g0_dim_ok = false;      // dim g_0 in {1,2}
    bool closure_ok = false;     // [g_a, g_b] in g_{a+b}
    bool no_positive = false;
};
GradingReport verify_grading(const LieAlgebraTable& t, int k);

struct Verdict {
    bool rigid = false;
    int dim = 0;
    std::string statement;  // "dim = 3+k" or "dim = 4+k"
};
Verdict rigidity_verdict(const LieAlgebraTable& t, int k);

struct MinusPartReport {
    std::map<int, int> dims;       // weight -> dimension, negative weights only
    bool generated_by_g1 = false;  // g_{-1} generates all of g_-
    bool nilpotent_step_rho = false;
    bool dims_match_profile = false;
};
MinusPartReport nilpotent_minus_part(const LieAlgebraTable& t, const FreeLieProfile& profile);

bool audit_jacobi(const LieAlgebraTable& t);
bool audit_antisymmetry(const LieAlgebraTable& t);
bool audit_g0_abelian(const LieAlgebraTable& t);

} // namespace tncr
