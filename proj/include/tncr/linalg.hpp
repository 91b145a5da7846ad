// Exact linear algebra helpers: reduced row echelon form and linear solving
// over any exact field (Rat or GaussRat), an incremental row-span for greedy
// independence tests, and fraction-free (Bareiss) rank for matrices with
// WPoly entries, used for symbolic rank over the polynomial fraction field.
#pragma once

#include "tncr/rational.hpp"
#include "tncr/wpoly.hpp"

#include <optional>
#include <vector>

namespace tncr {

template <class F> inline bool field_is_zero(const F& x) { return x.is_zero(); }
template <> inline bool field_is_zero<Rat>(const Rat& x) { return x == 0; }

// In-place RREF; returns the pivot column of each nonzero row.
template <class F>
std::vector<int> rref(std::vector<std::vector<F>>& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    size_t rows = a.size(), cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && field_is_zero(a[sel][c])) ++sel;
        if (sel == rows) continue;
        std::swap(a[r], a[sel]);
        F inv = a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] = a[r][j] / inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || field_is_zero(a[i][c])) continue;
            F f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    a.resize(r);  // drop zero rows
    return pivots;
}

template <class F>
int rank(std::vector<std::vector<F>> a) {
    return static_cast<int>(rref(a).size());
}

// Solves A x = b.  Returns nullopt if inconsistent; sets *unique to whether
// the solution is unique (no free columns).  Free coordinates are set to 0.
template <class F>
std::optional<std::vector<F>> solve_linear(std::vector<std::vector<F>> a,
                                           std::vector<F> b,
                                           bool* unique = nullptr) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    std::vector<int> piv = rref(a);
    for (const auto& row : a) {
        bool all_zero = true;
        for (size_t j = 0; j + 1 < row.size(); ++j)
            if (!field_is_zero(row[j])) { all_zero = false; break; }
        if (all_zero && !field_is_zero(row.back())) return std::nullopt;
    }
    std::vector<F> x(cols, F(0));
    size_t npiv = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        if (i >= piv.size()) break;
        if (piv[i] == static_cast<int>(cols)) continue;  // pivot in RHS: inconsistent, caught above
        x[piv[i]] = a[i].back();
        ++npiv;
    }
    if (unique) *unique = (npiv == cols);
    return x;
}

// Incremental reduced row span over an exact field.
template <class F>
class RowSpan {
public:
    explicit RowSpan(size_t cols) : cols_(cols) {}

    int rank() const { return static_cast<int>(rows_.size()); }

    bool contains(std::vector<F> v) const {
        reduce(v);
        for (const auto& x : v)
            if (!field_is_zero(x)) return false;
        return true;
    }

    // Adds v to the span; returns false when v was already contained.
    bool add(std::vector<F> v) {
        reduce(v);
        size_t lead = cols_;
        for (size_t j = 0; j < cols_; ++j)
            if (!field_is_zero(v[j])) { lead = j; break; }
        if (lead == cols_) return false;
        F inv = v[lead];
        for (size_t j = lead; j < cols_; ++j) v[j] = v[j] / inv;
        for (auto& row : rows_) {
            if (field_is_zero(row[lead])) continue;
            F f = row[lead];
            for (size_t j = 0; j < cols_; ++j) row[j] = row[j] - f * v[j];
        }
        rows_.push_back(std::move(v));
        leads_.push_back(static_cast<int>(lead));
        return true;
    }

private:
    void reduce(std::vector<F>& v) const {
        for (size_t i = 0; i < rows_.size(); ++i) {
            int lead = leads_[i];
            if (field_is_zero(v[lead])) continue;
            F f = v[lead];
            for (size_t j = 0; j < cols_; ++j) v[j] = v[j] - f * rows_[i][j];
        }
    }

    size_t cols_;
    std::vector<std::vector<F>> rows_;
    std::vector<int> leads_;
};

// Rank of a WPoly matrix over the fraction field of the polynomial ring,
// computed fraction-free (Bareiss).  No point evaluation is involved.
inline int wpoly_matrix_rank(std::vector<std::vector<WPoly>> a) {
    size_t rows = a.size();
    if (rows == 0) return 0;
    size_t cols = a[0].size();
    WPoly prev_pivot;  // empty flags "first step"
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = rows;
        for (size_t i = r; i < rows; ++i)
            if (!a[i][c].is_zero()) { sel = i; break; }
        if (sel == rows) continue;
        std::swap(a[r], a[sel]);
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j) {
                WPoly num = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                a[i][j] = prev_pivot.is_zero() ? num : num.divexact(prev_pivot);
            }
            a[i][c] = WPoly(a[i][c].table());
        }
        prev_pivot = a[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

} // namespace tncr
