// Construction of the totally nondegenerate CR model of codimension k:
// weight assignment, the bases N_j of non-pluriharmonic real polynomials,
// the real defining equations Im w = A * (N-basis) and the equivalent
// complex graph form w_j = Theta_j(z, zb, wb).
#pragma once

#include "tncr/errors.hpp"
#include "tncr/freelie.hpp"
#include "tncr/wpoly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tncr {

using RatMatrix = std::vector<std::vector<Rat>>;

struct Model {
    int k = 0;
    int rho = 0;
    FreeLieProfile profile;
    VarTablePtr vars;
    std::vector<int> weight_w;                 // weight of w_j, j = 1..k

    // N[j] is the echelon basis of weight j, j = 2..rho (lower slots empty).
    std::vector<std::vector<WPoly>> N;
    // Scale 2 for Re/Im-type representatives, 1 for real monomials; used by
    // the default A matrices so the printed equations carry integer terms.
    std::vector<std::vector<int>> N_scale;

    std::vector<RatMatrix> A;                  // A[j] for j = 2..rho
    std::vector<WPoly> Phi;                    // Phi[j-1] for w_j, in z, zb, u
    std::vector<WPoly> Theta;                  // Theta[j-1], in z, zb, wb

    int weight_of_w(int j) const { return weight_w[j - 1]; }
    std::string real_equation_str(int j) const;     // "Im w_j = ..."
    std::string complex_equation_str(int j) const;  // "w_j - wb_j = 2i*(...)"
};

// Canonical basis of the quotient of real-valued weight-j polynomials in
// z, zb, u by restrictions of pluriharmonic polynomials; echelon
// representatives under graded-lex candidate order.  `scales` receives the
// matching Re/Im-vs-real marker when non-null.
std::vector<WPoly> enumerate_Nj(int j, const Model& partial, std::vector<int>* scales = nullptr);

// Default A matrix of a weight level (diag of N-scales); k = 3 flips the
// sign of the Im-type weight-3 entry so the printed cubic model comes out.
RatMatrix default_A(const Model& partial, int level, int k);

Model build_model(int k, const std::optional<std::vector<RatMatrix>>& A_override = std::nullopt);

// Theta_j in increasing weight order; build_model calls this and verifies
// the residual w_j - Theta_j vanishes on the graph.
std::vector<WPoly> solve_graph(Model& m);

// (m_2, ..., m_{rho-1}, m'_rho) read back from the constructed model.
std::vector<std::int64_t> hormander_data(const Model& m);

} // namespace tncr
