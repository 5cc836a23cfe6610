#include "katz/jordan.hpp"
#include "katz/error.hpp"
#include "katz/lexer.hpp"

#include <algorithm>
#include <map>

namespace katz {

namespace {

bool block_less(const Block& a, const Block& b) {
    if (a.eig != b.eig) return a.eig < b.eig;
    return a.size > b.size;
}

} // namespace

JordanData::JordanData(std::vector<Block> blocks) {
    for (auto& b : blocks) {
        if (b.size < 0) fail(ErrorKind::Malformed, "negative Jordan block size");
        if (b.size > 0) b_.push_back(std::move(b));
    }
    std::sort(b_.begin(), b_.end(), block_less);
}

JordanData JordanData::scalar(const Eigenvalue& e, int n) {
    return JordanData(std::vector<Block>(static_cast<size_t>(std::max(n, 0)), Block{e, 1}));
}

int JordanData::rank() const {
    int r = 0;
    for (const auto& b : b_) r += b.size;
    return r;
}

JordanData JordanData::operator+(const JordanData& o) const {
    std::vector<Block> v = b_;
    v.insert(v.end(), o.b_.begin(), o.b_.end());
    return JordanData(std::move(v));
}

JordanData JordanData::twisted(const Eigenvalue& e) const {
    std::vector<Block> v = b_;
    for (auto& b : v) b.eig = b.eig * e;
    return JordanData(std::move(v));
}

JordanData JordanData::unipotent_part() const {
    std::vector<Block> v;
    for (const auto& b : b_)
        if (b.eig.is_one()) v.push_back(b);
    return JordanData(std::move(v));
}

JordanData JordanData::without_unipotent() const {
    std::vector<Block> v;
    for (const auto& b : b_)
        if (!b.eig.is_one()) v.push_back(b);
    return JordanData(std::move(v));
}

bool operator<(const JordanData& a, const JordanData& b) {
    return std::lexicographical_compare(a.b_.begin(), a.b_.end(), b.b_.begin(), b.b_.end(), block_less);
}

std::string JordanData::str() const {
    std::string s;
    for (size_t i = 0; i < b_.size();) {
        const Block& b = b_[i];
        std::string item;
        size_t j = i + 1;
        if (b.size == 1) {
            while (j < b_.size() && b_[j].size == 1 && b_[j].eig == b.eig) ++j;
            if (j - i > 1) item = b.eig.prefix() + "E" + std::to_string(j - i);
            else item = b.eig.pretty();
        } else {
            item = b.eig.prefix() + "J(" + std::to_string(b.size) + ")";
        }
        if (!s.empty()) s += ", ";
        s += item;
        i = j;
    }
    return "(" + s + ")";
}

namespace {

using detail::Cursor;
using detail::Token;

bool next_is_upper(const Cursor& c, size_t k = 0) { return c.peek(k).kind == Token::Upper; }

void parse_item(Cursor& c, std::vector<Block>& out) {
    Eigenvalue e;
    if (next_is_upper(c)) {
    } else if (c.peek().kind == Token::Punct && c.peek().text == "-" && next_is_upper(c, 1)) {
        c.next();
        e = Eigenvalue::zeta(2);
    } else {
        e = Eigenvalue::parse(c);
    }
    if (!next_is_upper(c)) {
        out.push_back({e, 1});
        return;
    }
    std::string u = c.next().text;
    if (u == "J") {
        c.expect("(");
        if (c.peek().kind != Token::Number) c.error("expected block size");
        int n = std::stoi(c.next().text);
        c.expect(")");
        if (n < 1) c.error("block size must be positive");
        out.push_back({e, n});
    } else if (u == "E") {
        if (c.peek().kind != Token::Number) c.error("expected identity size");
        int n = std::stoi(c.next().text);
        if (n < 1) c.error("identity size must be positive");
        for (int i = 0; i < n; ++i) out.push_back({e, 1});
    } else {
        c.error("expected J or E");
    }
}

} // namespace

JordanData JordanData::parse(detail::Cursor& c) {
    std::vector<Block> out;
    if (c.accept("(")) {
        if (!c.accept(")")) {
            do parse_item(c, out);
            while (c.accept(","));
            c.expect(")");
        }
    } else {
        parse_item(c, out);
    }
    return JordanData(std::move(out));
}

JordanData JordanData::parse(const std::string& text) {
    Cursor c(text);
    if (c.at_end()) c.error("empty Jordan data");
    JordanData j = parse(c);
    if (!c.at_end()) c.error("trailing input");
    return j;
}

int centralizer_dim(const JordanData& j) {
    int d = 0;
    for (const auto& a : j.blocks())
        for (const auto& b : j.blocks())
            if (a.eig == b.eig) d += std::min(a.size, b.size);
    return d;
}

JordanData jordan_tensor(const JordanData& a, const JordanData& b) {
    std::vector<Block> v;
    for (const auto& x : a.blocks())
        for (const auto& y : b.blocks()) {
            Eigenvalue e = x.eig * y.eig;
            for (int k = 0; k < std::min(x.size, y.size); ++k) v.push_back({e, x.size + y.size - 1 - 2 * k});
        }
    return JordanData(std::move(v));
}

JordanData jordan_exterior(const JordanData& j, int k) {
    if (k < 0 || k > j.rank())
        fail(ErrorKind::Precondition, "exterior power " + std::to_string(k) + " exceeds rank " + std::to_string(j.rank()));
    // graded character: letters (eigenvalue, q-degree)
    using Letter = std::pair<Eigenvalue, int>;
    struct LetterLess {
        bool operator()(const Letter& a, const Letter& b) const {
            if (a.first != b.first) return a.first < b.first;
            return a.second < b.second;
        }
    };
    using Char = std::map<Letter, long, LetterLess>;
    std::vector<Char> e(static_cast<size_t>(k) + 1);
    e[0][{Eigenvalue(), 0}] = 1;
    for (const auto& b : j.blocks())
        for (int i = 0; i < b.size; ++i) {
            int deg = b.size - 1 - 2 * i;
            for (int m = k; m >= 1; --m)
                for (const auto& [l, c] : e[static_cast<size_t>(m) - 1])
                    e[static_cast<size_t>(m)][{l.first * b.eig, l.second + deg}] += c;
        }
    std::map<Eigenvalue, std::map<int, long>> per;
    for (const auto& [l, c] : e[static_cast<size_t>(k)])
        if (c) per[l.first][l.second] += c;
    std::vector<Block> out;
    for (auto& [eig, degs] : per) {
        for (;;) {
            while (!degs.empty() && degs.rbegin()->second == 0) degs.erase(std::prev(degs.end()));
            if (degs.empty()) break;
            auto [d, m] = *degs.rbegin();
            if (m < 0 || d < 0) fail(ErrorKind::Internal, "exterior power character does not decompose");
            for (long r = 0; r < m; ++r) out.push_back({eig, d + 1});
            for (int x = d; x >= -d; x -= 2) degs[x] -= m;
            for (auto it = degs.begin(); it != degs.end();) {
                if (it->second == 0) it = degs.erase(it);
                else if (it->second < 0) fail(ErrorKind::Internal, "exterior power character does not decompose");
                else ++it;
            }
        }
    }
    return JordanData(std::move(out));
}

JordanData jordan_push(const JordanData& j, int p) {
    if (p < 1) fail(ErrorKind::Precondition, "push degree must be positive");
    std::vector<Block> v;
    for (const auto& b : j.blocks()) {
        Eigenvalue r = b.eig.pow(Q(1, p));
        for (int i = 0; i < p; ++i) v.push_back({r * Eigenvalue::zeta(p, i), b.size});
    }
    return JordanData(std::move(v));
}

JordanData jordan_pull(const JordanData& j, int p) {
    if (p < 1) fail(ErrorKind::Precondition, "pull degree must be positive");
    std::vector<Block> v = j.blocks();
    for (auto& b : v) b.eig = b.eig.pow(static_cast<long>(p));
    return JordanData(std::move(v));
}

JordanData jordan_dual(const JordanData& j) {
    std::vector<Block> v = j.blocks();
    for (auto& b : v) b.eig = b.eig.inverse();
    return JordanData(std::move(v));
}

Eigenvalue jordan_det(const JordanData& j) {
    Eigenvalue d;
    for (const auto& b : j.blocks()) d = d * b.eig.pow(static_cast<long>(b.size));
    return d;
}

int invariants_dim(const JordanData& j) {
    int n = 0;
    for (const auto& b : j.blocks())
        if (b.eig.is_one()) ++n;
    return n;
}

} // namespace katz
