// Symbolic pushforward of the frame under a general equivalence map: the
// image of each frame field over the lifted frame with coefficients in the
// free differential algebra, the canonical naming of the sub-leading
// coefficients (the group parameters), the lower-triangular ambiguity
// matrix g in display order, and its exact inverse.
#pragma once

#include "tncr/frame.hpp"
#include "tncr/param.hpp"

namespace tncr {

struct Ambiguity {
    const Frame* frame = nullptr;
    AtomTable atoms;

    // images[idx-1]: h(L_idx) as target global index -> coefficient.
    std::vector<std::map<int, ParamFraction>> images;

    // Display-ordered (2+k) x (2+k) matrices; g lower triangular with
    // a1^p a1b^q diagonal, ginv its exact inverse.
    std::vector<std::vector<GExpr>> g, ginv;

    int size() const { return static_cast<int>(g.size()); }

    // diag exponents of display row r
    std::pair<int, int> diag(int r) const {
        const FrameField& ff = frame->by_display(r);
        return {ff.p, ff.q};
    }
};

// Derivation action of the lifted field with global index r (route-expanded
// into iterated D_1/D_2 applications).
ParamFraction field_derive(const Frame& f, int r, const ParamFraction& x);

Ambiguity build_ambiguity(const Frame& f);

// Audits (true = pass).
bool audit_column_weights(const Ambiguity& am);
bool audit_ginv_row_weights(const Ambiguity& am);
bool audit_g_times_ginv(const Ambiguity& am);
bool audit_sigma_expansion(const Ambiguity& am);
bool audit_vanish_substitution(const Ambiguity& am);

} // namespace tncr
