#include "tncr/freelie.hpp"

#include <algorithm>

namespace tncr {

namespace {

int mobius(int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

} // namespace

std::vector<std::int64_t> free_lie_dims(int l_max) {
    if (l_max < 1) throw std::invalid_argument("free_lie_dims: l_max must be >= 1");
    std::vector<std::int64_t> dims;
    dims.reserve(l_max);
    for (int l = 1; l <= l_max; ++l) {
        std::int64_t s = 0;
        for (int d = 1; d <= l; ++d) {
            if (l % d) continue;
            s += static_cast<std::int64_t>(mobius(d)) * (std::int64_t(1) << (l / d));
        }
        dims.push_back(s / l);
    }
    return dims;
}

ModelLength model_length(int k) {
    if (k < 1) throw std::invalid_argument("model_length: k must be >= 1");
    std::int64_t n = 0;
    int l = 0;
    std::vector<std::int64_t> dims = free_lie_dims(1);
    while (true) {
        ++l;
        if (static_cast<int>(dims.size()) < l) dims = free_lie_dims(l);
        n += dims[l - 1];
        if (n >= 2 + k) return {l, n > 2 + k};
    }
}

FreeLieProfile free_lie_profile(int k) {
    FreeLieProfile p;
    p.k = k;
    p.rho = model_length(k).rho;
    p.m = free_lie_dims(p.rho);
    p.n.resize(p.rho);
    std::int64_t acc = 0;
    for (int l = 1; l <= p.rho; ++l) {
        acc += p.m[l - 1];
        p.n[l - 1] = acc;
    }
    std::int64_t used = 0;
    for (int l = 2; l < p.rho; ++l) {
        p.mults.push_back(p.m[l - 1]);
        used += p.m[l - 1];
    }
    p.mults.push_back(k - used);  // m'_rho
    return p;
}

std::vector<HallWord> hall_word_oracle(int l) {
    if (l < 1 || l > 10) throw std::invalid_argument("hall_word_oracle: 1 <= l <= 10");
    // Build the Hall set by increasing length.  Order within the set is
    // (length, serial); serial is assignment order.
    std::vector<std::vector<HallWord>> by_len(l + 1);
    int serial = 0;
    for (int g = 1; g <= 2; ++g) {
        HallWord w;
        w.generator = g;
        w.length = 1;
        w.serial = serial++;
        by_len[1].push_back(w);
    }
    auto less = [](const HallWord& a, const HallWord& b) {
        if (a.length != b.length) return a.length < b.length;
        return a.serial < b.serial;
    };
    for (int n = 2; n <= l; ++n) {
        for (int p = 1; p < n; ++p) {
            int q = n - p;
            for (const HallWord& u : by_len[p]) {
                for (const HallWord& v : by_len[q]) {
                    if (!less(v, u)) continue;                    // u > v
                    if (!u.is_leaf() && less(v, *u.right)) continue;  // y <= v
                    HallWord w;
                    w.left = std::make_shared<HallWord>(u);
                    w.right = std::make_shared<HallWord>(v);
                    w.length = n;
                    w.serial = serial++;
                    by_len[n].push_back(w);
                }
            }
        }
    }
    return by_len[l];
}

} // namespace tncr
