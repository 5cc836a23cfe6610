#ifndef KATZ_TEST_ORACLE_HPP
#define KATZ_TEST_ORACLE_HPP

// Explicit-matrix oracle: Jordan forms computed from ranks of (A - mu)^k over
// GF(P), P = 10^9 + 9. The symbolic eigenvalues are sent to numbers whose
// products stay distinct in the ranges the tests use.

#include "katz/jordan.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
constexpr u64 P = 1000000009;

inline u64 mulm(u64 a, u64 b) { return a * b % P; }
inline u64 addm(u64 a, u64 b) { return (a + b) % P; }
inline u64 subm(u64 a, u64 b) { return (a + P - b) % P; }
inline u64 powm(u64 a, u64 e) {
    u64 r = 1;
    a %= P;
    while (e) {
        if (e & 1) r = mulm(r, a);
        a = mulm(a, a);
        e >>= 1;
    }
    return r;
}
inline u64 invm(u64 a) { return powm(a, P - 2); }

// element of multiplicative order exactly 24 (P - 1 is divisible by 24)
inline u64 zeta24() {
    static const u64 z = [] {
        for (u64 g = 2;; ++g) {
            u64 h = powm(g, (P - 1) / 24);
            if (powm(h, 12) != 1 && powm(h, 8) != 1) return h;
        }
    }();
    return z;
}

// symbol values: l -> 4, x -> 9, y -> 25, z -> 49, mu -> 121 (squares, so half exponents work)
inline u64 symbol_root(const std::string& s) {
    if (s == "l") return 2;
    if (s == "x") return 3;
    if (s == "y") return 5;
    if (s == "z") return 7;
    if (s == "mu") return 11;
    throw std::runtime_error("oracle has no value for symbol " + s);
}

inline u64 value_of(const katz::Eigenvalue& e) {
    u64 v = 1;
    const katz::Q& t = e.torsion();
    if (t != 0) {
        long den = t.get_den().get_si(), num = t.get_num().get_si();
        if (24 % den != 0) throw std::runtime_error("oracle: torsion order not dividing 24");
        v = powm(zeta24(), static_cast<u64>(num * (24 / den)));
    }
    for (const auto& [k, ex] : e.word()) {
        u64 base = k[0] == '~' ? static_cast<u64>(std::stoul(k.substr(1))) : symbol_root(k);
        // a symbol stands for base^2, so half-integer exponents are allowed
        katz::Q scaled = k[0] == '~' ? ex : katz::Q(ex * 2);
        if (scaled.get_den() != 1) throw std::runtime_error("oracle: exponent out of range");
        long n = scaled.get_num().get_si();
        u64 f = powm(base, static_cast<u64>(n < 0 ? -n : n));
        v = mulm(v, n < 0 ? invm(f) : f);
    }
    return v;
}

using Mat = std::vector<std::vector<u64>>;

inline Mat zeros(size_t n) { return Mat(n, std::vector<u64>(n, 0)); }

inline Mat matrix_of(const katz::JordanData& j) {
    Mat m = zeros(static_cast<size_t>(j.rank()));
    size_t at = 0;
    for (const auto& b : j.blocks()) {
        u64 v = value_of(b.eig);
        for (int i = 0; i < b.size; ++i) {
            m[at + i][at + i] = v;
            if (i + 1 < b.size) m[at + i][at + i + 1] = 1;
        }
        at += static_cast<size_t>(b.size);
    }
    return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
    size_t n = a.size(), m = b.size();
    Mat k = zeros(n * m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (a[i][j])
                for (size_t r = 0; r < m; ++r)
                    for (size_t s = 0; s < m; ++s) k[i * m + r][j * m + s] = mulm(a[i][j], b[r][s]);
    return k;
}

inline Mat mul(const Mat& a, const Mat& b) {
    size_t n = a.size();
    Mat c = zeros(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            if (a[i][k])
                for (size_t j = 0; j < n; ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % P;
    return c;
}

inline size_t rank(Mat m) {
    size_t n = m.size(), r = 0;
    if (!n) return 0;
    size_t cols = m[0].size();
    for (size_t c = 0; c < cols && r < n; ++c) {
        size_t piv = r;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) continue;
        std::swap(m[piv], m[r]);
        u64 inv = invm(m[r][c]);
        for (size_t i = r + 1; i < n; ++i)
            if (m[i][c]) {
                u64 f = mulm(m[i][c], inv);
                for (size_t j = c; j < cols; ++j) m[i][j] = subm(m[i][j], mulm(f, m[r][j]));
            }
        ++r;
    }
    return r;
}

inline u64 det(Mat m) {
    size_t n = m.size();
    u64 d = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = subm(0, d);
        }
        d = mulm(d, m[c][c]);
        u64 inv = invm(m[c][c]);
        for (size_t i = c + 1; i < n; ++i)
            if (m[i][c]) {
                u64 f = mulm(m[i][c], inv);
                for (size_t j = c; j < n; ++j) m[i][j] = subm(m[i][j], mulm(f, m[c][j]));
            }
    }
    return d;
}

inline void subsets(size_t n, size_t k, size_t start, std::vector<size_t>& cur, std::vector<std::vector<size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

// k-th exterior power by k x k minors
inline Mat exterior(const Mat& a, size_t k) {
    std::vector<std::vector<size_t>> idx;
    std::vector<size_t> cur;
    subsets(a.size(), k, 0, cur, idx);
    Mat e = zeros(idx.size());
    Mat sub(k, std::vector<u64>(k));
    for (size_t r = 0; r < idx.size(); ++r)
        for (size_t c = 0; c < idx.size(); ++c) {
            for (size_t i = 0; i < k; ++i)
                for (size_t j = 0; j < k; ++j) sub[i][j] = a[idx[r][i]][idx[c][j]];
            e[r][c] = det(sub);
        }
    return e;
}

// Jordan form; every eigenvalue of a must be among the candidates
inline katz::JordanData jordan_form(const Mat& a, const std::vector<katz::Eigenvalue>& candidates) {
    size_t n = a.size();
    std::vector<katz::Block> blocks;
    std::vector<u64> seen;
    size_t total = 0;
    for (const auto& cand : candidates) {
        u64 mu = value_of(cand);
        bool dup = false;
        for (u64 s : seen) dup = dup || s == mu;
        if (dup) continue;
        seen.push_back(mu);
        Mat b = a;
        for (size_t i = 0; i < n; ++i) b[i][i] = subm(b[i][i], mu);
        std::vector<size_t> r{n};
        Mat pw = b;
        for (;;) {
            r.push_back(rank(pw));
            if (r.back() == r[r.size() - 2]) break;
            pw = mul(pw, b);
        }
        // blocks of size >= k: r[k-1] - r[k]
        for (size_t k = 1; k + 1 < r.size(); ++k) {
            size_t ge_k = r[k - 1] - r[k];
            size_t ge_k1 = k + 1 < r.size() ? r[k] - r[k + 1] : 0;
            for (size_t c = 0; c < ge_k - ge_k1; ++c) blocks.push_back({cand, static_cast<int>(k)});
            total += (ge_k - ge_k1) * k;
        }
    }
    if (total != n) throw std::runtime_error("oracle: candidate eigenvalues do not cover the spectrum");
    return katz::JordanData(std::move(blocks));
}

} // namespace oracle

#endif
