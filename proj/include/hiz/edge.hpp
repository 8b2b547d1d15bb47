#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hiz {

// One pair variable tau_{ab} = (lambda_a - lambda_b)(x_a - x_b), 1 <= a < b <= k.
struct EdgeIndex {
    int a = 0;
    int b = 0;

    EdgeIndex() = default;
    EdgeIndex(int a_, int b_) : a(a_), b(b_) {
        if (!(1 <= a && a < b)) throw std::invalid_argument("EdgeIndex requires 1 <= a < b");
    }
    auto operator<=>(const EdgeIndex&) const = default;

    std::string str() const { return std::to_string(a) + "-" + std::to_string(b); }
};

// All k(k-1)/2 edges of the complete graph on 1..k, lexicographic by (a,b).
inline std::vector<EdgeIndex> edges_of(int k) {
    std::vector<EdgeIndex> out;
    out.reserve(k * (k - 1) / 2);
    for (int a = 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b) out.emplace_back(a, b);
    return out;
}

inline int edge_rank(const EdgeIndex& e, int k) {
    // position of e in edges_of(k)
    return (e.a - 1) * k - (e.a - 1) * e.a / 2 + (e.b - e.a - 1);
}

// Exponent vector over edge variables 1/tau_{ab}; absent edge means exponent 0.
// Canonical: sorted by edge, no zero entries.
class EdgeMonomial {
public:
    EdgeMonomial() = default;
    explicit EdgeMonomial(std::map<EdgeIndex, int> exps) {
        for (auto& [e, n] : exps) {
            if (n < 0) throw std::invalid_argument("negative edge exponent");
            if (n > 0) exps_.emplace_back(e, n);
        }
    }

    static EdgeMonomial single(EdgeIndex e, int n = 1) {
        EdgeMonomial m;
        if (n < 0) throw std::invalid_argument("negative edge exponent");
        if (n > 0) m.exps_.emplace_back(e, n);
        return m;
    }

    const std::vector<std::pair<EdgeIndex, int>>& exponents() const { return exps_; }
    bool empty() const { return exps_.empty(); }

    int exponent(const EdgeIndex& e) const {
        for (const auto& [f, n] : exps_)
            if (f == e) return n;
        return 0;
    }
    int total_degree() const {
        int d = 0;
        for (const auto& [e, n] : exps_) d += n;
        return d;
    }
    int max_edge_exponent() const {
        int m = 0;
        for (const auto& [e, n] : exps_) m = std::max(m, n);
        return m;
    }
    int max_vertex() const {
        int m = 0;
        for (const auto& [e, n] : exps_) m = std::max(m, e.b);
        return m;
    }

    EdgeMonomial operator*(const EdgeMonomial& o) const {
        EdgeMonomial r;
        auto i = exps_.begin();
        auto j = o.exps_.begin();
        while (i != exps_.end() || j != o.exps_.end()) {
            if (j == o.exps_.end() || (i != exps_.end() && i->first < j->first))
                r.exps_.push_back(*i++);
            else if (i == exps_.end() || j->first < i->first)
                r.exps_.push_back(*j++);
            else {
                r.exps_.emplace_back(i->first, i->second + j->second);
                ++i, ++j;
            }
        }
        return r;
    }

    // relabel vertices by perm (1-based, perm[v-1] = image of v)
    EdgeMonomial relabeled(const std::vector<int>& perm) const {
        std::map<EdgeIndex, int> m;
        for (const auto& [e, n] : exps_) {
            int a = perm[e.a - 1], b = perm[e.b - 1];
            if (a > b) std::swap(a, b);
            m[EdgeIndex(a, b)] += n;
        }
        return EdgeMonomial(std::move(m));
    }

    bool operator==(const EdgeMonomial& o) const = default;

    // Graded order: total degree first, then lexicographic on the dense
    // exponent vector (earliest differing edge, larger exponent = larger).
    bool operator<(const EdgeMonomial& o) const {
        int da = total_degree(), db = o.total_degree();
        if (da != db) return da < db;
        return lex_less(o);
    }
    bool lex_less(const EdgeMonomial& o) const {
        auto i = exps_.begin();
        auto j = o.exps_.begin();
        while (i != exps_.end() && j != o.exps_.end()) {
            if (i->first < j->first) return false;  // we have a positive exp at an earlier edge
            if (j->first < i->first) return true;
            if (i->second != j->second) return i->second < j->second;
            ++i, ++j;
        }
        return i == exps_.end() && j != o.exps_.end();
    }

    std::string str() const {
        if (exps_.empty()) return "1";
        std::string s;
        for (const auto& [e, n] : exps_) {
            if (!s.empty()) s += "*";
            s += "tau" + std::to_string(e.a) + std::to_string(e.b);
            if (n > 1) s += "^" + std::to_string(n);
        }
        return s;
    }

private:
    std::vector<std::pair<EdgeIndex, int>> exps_;
};

// All monomials with total degree `total` and per-edge exponent <= cap over
// edges_of(k), in ascending dense-lex order.
inline std::vector<EdgeMonomial> monomials_of_degree(int k, int total, int cap) {
    auto es = edges_of(k);
    std::vector<EdgeMonomial> out;
    std::vector<int> cur(es.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i == es.size()) {
            if (left == 0) {
                std::map<EdgeIndex, int> m;
                for (std::size_t t = 0; t < es.size(); ++t)
                    if (cur[t]) m[es[t]] = cur[t];
                out.push_back(EdgeMonomial(std::move(m)));
            }
            return;
        }
        for (int e = 0; e <= std::min(left, cap); ++e) {
            cur[i] = e;
            self(self, i + 1, left - e);
        }
        cur[i] = 0;
    };
    rec(rec, 0, total);
    return out;
}

// Paper-style v_1..v_E aliases for the edge variables. The printed k=3 and
// k=4 assignments differ; both are reproduced here.
inline std::vector<EdgeIndex> v_label_order(int k) {
    if (k == 3) return {EdgeIndex(2, 3), EdgeIndex(1, 3), EdgeIndex(1, 2)};  // v1, v2, v3
    if (k == 4)
        return {EdgeIndex(1, 2), EdgeIndex(2, 3), EdgeIndex(1, 3),
                EdgeIndex(1, 4), EdgeIndex(2, 4), EdgeIndex(3, 4)};  // v1..v6
    throw std::invalid_argument("v labels are defined for k = 3 and k = 4 only");
}

} // namespace hiz
