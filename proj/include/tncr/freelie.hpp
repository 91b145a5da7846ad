// Rank-2 free Lie algebra combinatorics: homogeneous dimensions via the
// Mobius/necklace formula, the model length determined by the cumulative
// dimensions, and a brute-force Hall-word basis used as an independent
// oracle for the dimension counts.
#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace tncr {

// m_l = (1/l) sum_{d | l} mu(d) 2^{l/d}
std::vector<std::int64_t> free_lie_dims(int l_max);

struct ModelLength {
    int rho;
    bool strict;  // 2+k < n_rho (strict) rather than equality
};
ModelLength model_length(int k);

struct FreeLieProfile {
    int k = 0;
    int rho = 0;
    std::vector<std::int64_t> m;      // m[l-1] = m_l, l = 1..rho
    std::vector<std::int64_t> n;      // n[l-1] = n_l cumulative
    std::vector<std::int64_t> mults;  // (m_2, ..., m_{rho-1}, m'_rho)
};
FreeLieProfile free_lie_profile(int k);

// A Hall word over generators h1 < h2, stored as a bracket tree.
struct HallWord {
    int generator = 0;  // 1 or 2 when leaf
    std::shared_ptr<const HallWord> left, right;
    int length = 1;
    int serial = 0;  // creation order; total order is (length, serial)

    bool is_leaf() const { return !left; }
    std::string str() const {
        if (is_leaf()) return "h" + std::to_string(generator);
        return "[" + left->str() + "," + right->str() + "]";
    }
};

// Explicit Hall basis of the length-l homogeneous component (classic
// M. Hall construction, [u,v] with u > v and, for u = [x,y], y <= v).
std::vector<HallWord> hall_word_oracle(int l);

} // namespace tncr
