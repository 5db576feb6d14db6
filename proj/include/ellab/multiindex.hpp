#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellab {

/// Multiindex alpha = (alpha_1, ..., alpha_n) with non-negative entries.
class Multiindex {
public:
    Multiindex() = default;

    explicit Multiindex(std::vector<int> entries) : entries_(std::move(entries)) {
        for (int e : entries_)
            if (e < 0) throw std::invalid_argument("Multiindex: negative entry");
    }

    static Multiindex zero(int n) { return Multiindex(std::vector<int>(n, 0)); }

    /// Unit multiindex k * e_axis.
    static Multiindex unit(int n, int axis, int k = 1) {
        std::vector<int> e(n, 0);
        e.at(axis) = k;
        return Multiindex(std::move(e));
    }

    int dim() const { return static_cast<int>(entries_.size()); }
    int order() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }
    int operator[](int i) const { return entries_[i]; }

    Multiindex plus(int axis, int k = 1) const {
        auto e = entries_;
        e[axis] += k;
        return Multiindex(std::move(e));
    }

    /// beta^s = alpha - e_s; requires alpha_s >= 1.
    Multiindex minus(int axis) const {
        if (entries_[axis] < 1) throw std::invalid_argument("Multiindex::minus: zero entry");
        auto e = entries_;
        e[axis] -= 1;
        return Multiindex(std::move(e));
    }

    const std::vector<int>& entries() const { return entries_; }

    bool operator==(const Multiindex& o) const { return entries_ == o.entries_; }
    bool operator<(const Multiindex& o) const { return entries_ < o.entries_; }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < dim(); ++i) s += (i ? "," : "") + std::to_string(entries_[i]);
        return s + ")";
    }

private:
    std::vector<int> entries_;
};

/// All multiindices of dimension n with |alpha| = k, lexicographic order.
/// Count is C(k+n-1, n-1).
inline std::vector<Multiindex> multiindices_of_length(int n, int k) {
    if (n < 1 || k < 0) throw std::invalid_argument("multiindices_of_length: n >= 1, k >= 0 required");
    std::vector<Multiindex> out;
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    // Recursion over positions; lexicographically descending first entry gives
    // (k,0,..), (k-1,1,..), ... which is descending lexicographic in the usual
    // sense; we emit in the order where larger leading entries come first.
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == n - 1) {
            cur[pos] = rem;
            out.emplace_back(cur);
            return;
        }
        for (int v = rem; v >= 0; --v) {
            cur[pos] = v;
            self(self, pos + 1, rem - v);
        }
    };
    rec(rec, 0, k);
    return out;
}

inline std::uint64_t binomial(int top, int bottom) {
    if (bottom < 0 || bottom > top) return 0;
    bottom = std::min(bottom, top - bottom);
    std::uint64_t r = 1;
    for (int i = 1; i <= bottom; ++i) r = r * static_cast<std::uint64_t>(top - bottom + i) / i;
    return r;
}

}  // namespace ellab
