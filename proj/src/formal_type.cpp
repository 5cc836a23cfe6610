#include "katz/formal_type.hpp"

#include "katz/error.hpp"

#include <algorithm>
#include <numeric>

namespace katz {

namespace {

struct PhiKeyLess {
    bool operator()(const std::pair<int, Tail>& a, const std::pair<int, Tail>& b) const {
        if (a.first != b.first) return a.first < b.first;
        return tail_less(a.second, b.second);
    }
};

Tail tail_add(const Tail& a, const Tail& b) { return tail_sub(a, tail_neg(b)); }

Tail tail_scale(const Tail& t, long a) {
    Tail out;
    if (a == 0) return out;
    for (const auto& [k, c] : t) out[k] = c * Scalar(a);
    return out;
}

Elementary unit() { return {Scalar(1), 1, {}, JordanData::scalar(Eigenvalue(), 1)}; }

std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == sep && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\n");
    return s.substr(a, b - a + 1);
}

// rank over Q, rows are modified
int rank_q(std::vector<std::vector<Q>> rows) {
    int rank = 0;
    size_t cols = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == static_cast<size_t>(rank) || rows[r][c] == 0) continue;
            Q f = rows[r][c] / rows[rank][c];
            for (size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

Poly poly_lcm(const Poly& a, const Poly& b) {
    Poly g = poly_gcd(a, b), q;
    if (!poly_divide(a, g, q)) fail(ErrorKind::Internal, "gcd does not divide");
    return q * b;
}

std::vector<Elementary> wedge_piece(const Elementary& x, int a) {
    int r = x.rank();
    if (a == 0) return {unit()};
    if (x.p == 1) return {el_canonical({Scalar(1), 1, tail_scale(x.phi, a), jordan_exterior(x.R, a)})};
    if (a == 1) return {x};
    ElDet d = el_det(x);
    Elementary det{Scalar(1), 1, d.exp, JordanData::block(d.eig, 1)};
    if (a == r) return {el_canonical(det)};
    if (a == r - 1) return el_hom(x, det);
    fail(ErrorKind::Unsupported, "exterior power " + std::to_string(a) + " of " + x.str() + " is not supported");
}

} // namespace

FormalType::FormalType(JordanData regular, std::vector<Elementary> irregular) : reg_(std::move(regular)) {
    std::map<std::pair<int, Tail>, JordanData, PhiKeyLess> merged;
    for (const auto& m : irregular) {
        if (m.R.empty()) continue;
        Elementary c = el_canonical(m);
        if (c.is_regular()) {
            reg_ = reg_ + c.R;
            continue;
        }
        auto key = std::make_pair(c.p, c.phi);
        auto it = merged.find(key);
        if (it == merged.end()) merged.emplace(key, c.R);
        else it->second = it->second + c.R;
    }
    for (auto& [k, r] : merged) irr_.push_back({Scalar(1), k.first, k.second, r});
    std::sort(irr_.begin(), irr_.end());
}

FormalType FormalType::from_pieces(const std::vector<Elementary>& pieces) { return FormalType(JordanData(), pieces); }

std::vector<Elementary> FormalType::pieces() const {
    std::vector<Elementary> out;
    if (!reg_.empty()) out.push_back({Scalar(1), 1, {}, reg_});
    out.insert(out.end(), irr_.begin(), irr_.end());
    return out;
}

int FormalType::rank() const {
    int r = reg_.rank();
    for (const auto& m : irr_) r += m.rank();
    return r;
}

FormalType FormalType::operator+(const FormalType& o) const {
    std::vector<Elementary> all = irr_;
    all.insert(all.end(), o.irr_.begin(), o.irr_.end());
    return FormalType(reg_ + o.reg_, all);
}

std::string el_pretty(const Elementary& e) {
    if (e.c == Scalar(1) && e.phi.size() == 1 && e.phi.begin()->first == 1)
        return "El(" + std::to_string(e.p) + ", " + e.phi.begin()->second.str() + ", " + e.R.str() + ")";
    return e.str();
}

std::string FormalType::str() const {
    std::string out;
    for (const auto& m : irr_) out += (out.empty() ? "" : " + ") + el_pretty(m);
    if (!reg_.empty()) out += (out.empty() ? "" : " + ") + reg_.str();
    return out.empty() ? "()" : out;
}

FormalType FormalType::parse(const std::string& text) {
    JordanData reg;
    std::vector<Elementary> irr;
    std::string t = trim(text);
    if (t == "()" || t.empty()) return {};
    for (const auto& chunk : split_top(t, '+')) {
        std::string c = trim(chunk);
        if (c.empty()) fail(ErrorKind::Malformed, "empty summand in \"" + text + "\"");
        if (c.rfind("El(", 0) == 0) irr.push_back(Elementary::parse(c));
        else reg = reg + JordanData::parse(c);
    }
    return FormalType(reg, irr);
}

FtInvariants ft_invariants(const FormalType& f) {
    FtInvariants v;
    v.rank = f.rank();
    if (!f.regular().empty()) v.slopes[Q(0)] += f.regular().rank();
    for (const auto& m : f.irregular()) {
        Q s(m.q(), m.p);
        s.canonicalize();
        v.slopes[s] += m.rank();
        v.irregularity += m.irregularity();
    }
    return v;
}

FormalType ft_dual(const FormalType& f) {
    std::vector<Elementary> d;
    for (const auto& m : f.irregular()) d.push_back(el_dual(m));
    return FormalType(jordan_dual(f.regular()), d);
}

FormalType ft_end(const FormalType& f) {
    auto ps = f.pieces();
    std::vector<Elementary> out;
    for (const auto& a : ps)
        for (const auto& b : ps) {
            auto h = el_hom(a, b);
            out.insert(out.end(), h.begin(), h.end());
        }
    return FormalType::from_pieces(out);
}

int ft_soln_dim(const FormalType& f) { return invariants_dim(f.regular()); }

FtChecks ft_checks(const FormalType& f) {
    FtChecks c;
    c.self_dual = ft_dual(f) == f;
    Tail exp;
    Eigenvalue eig = jordan_det(f.regular());
    for (const auto& m : f.irregular()) {
        ElDet d = el_det(m);
        exp = tail_add(exp, d.exp);
        eig = eig * d.eig;
    }
    c.det_trivial = exp.empty() && eig.is_one();
    return c;
}

JordanData ft_formal_monodromy(const FormalType& f) {
    JordanData out = f.regular();
    for (const auto& m : f.irregular()) out = out + jordan_push(m.R, m.p);
    return out;
}

int ft_exponential_torus_dim(const FormalType& f) {
    if (f.irregular().empty()) return 0;
    int L = 1;
    for (const auto& m : f.irregular()) L = std::lcm(L, m.p);
    // conjugate tails in s = t^(1/L)
    std::vector<Tail> conj;
    for (const auto& m : f.irregular())
        for (int i = 0; i < m.p; ++i) {
            Tail t;
            for (const auto& [k, a] : m.phi) t[k * (L / m.p)] = a * Scalar::zeta(m.p, (m.p - (i * k) % m.p) % m.p);
            conj.push_back(t);
        }
    Poly den(Cyclotomic(1));
    int order = 1;
    for (const auto& t : conj)
        for (const auto& [k, a] : t) {
            if (a.den() != den) den = poly_lcm(den, a.den());
            for (const auto& [mono, c] : a.num().terms()) order = static_cast<int>(lcm_l(order, c.order()));
        }
    int width = static_cast<int>(totient(order));
    std::map<std::pair<int, std::string>, size_t> cols;
    std::vector<std::map<size_t, Q>> sparse;
    for (const auto& t : conj) {
        std::map<size_t, Q> row;
        for (const auto& [k, a] : t) {
            Poly scale, num;
            if (!poly_divide(den, a.den(), scale)) fail(ErrorKind::Internal, "common denominator");
            num = a.num() * scale;
            for (const auto& [mono, c] : num.terms()) {
                auto key = std::make_pair(k, mono_str(mono));
                auto it = cols.find(key);
                if (it == cols.end()) it = cols.emplace(key, cols.size()).first;
                auto coords = c.coordinates(order);
                for (int j = 0; j < width; ++j)
                    if (coords[j] != 0) row[it->second * width + j] += coords[j];
            }
        }
        sparse.push_back(row);
    }
    std::vector<std::vector<Q>> rows;
    for (const auto& s : sparse) {
        std::vector<Q> r(cols.size() * width, Q(0));
        for (const auto& [i, v] : s) r[i] = v;
        rows.push_back(r);
    }
    return rank_q(rows);
}

FormalType ft_exterior_power(const FormalType& f, int k) {
    std::vector<Elementary> pieces;
    if (!f.regular().empty()) pieces.push_back({Scalar(1), 1, {}, f.regular()});
    for (const auto& m : f.irregular())
        for (const auto& b : m.R.blocks()) pieces.push_back({Scalar(1), m.p, m.phi, JordanData({b})});
    std::vector<Elementary> out;
    std::vector<Elementary> acc{unit()};
    auto rec = [&](auto&& self, size_t i, int left, const std::vector<Elementary>& cur) -> void {
        if (left == 0) {
            out.insert(out.end(), cur.begin(), cur.end());
            return;
        }
        if (i == pieces.size()) return;
        for (int a = 0; a <= std::min(left, pieces[i].rank()); ++a) {
            if (a == 0) {
                self(self, i + 1, left, cur);
                continue;
            }
            std::vector<Elementary> next;
            for (const auto& y : wedge_piece(pieces[i], a))
                for (const auto& x : cur) {
                    auto t = el_tensor(x, y);
                    next.insert(next.end(), t.begin(), t.end());
                }
            self(self, i + 1, left - a, next);
        }
    };
    rec(rec, 0, k, acc);
    return FormalType::from_pieces(out);
}

FormalType ft_exterior_cube(const FormalType& f) { return ft_exterior_power(f, 3); }

bool operator<(const LocalKey& a, const LocalKey& b) {
    if (a.p != b.p) return a.p < b.p;
    if (a.phi != b.phi) return tail_less(a.phi, b.phi);
    if (a.eig != b.eig) return a.eig < b.eig;
    return a.level < b.level;
}

LocalData ft_local_data(const FormalType& f, PointKind kind) {
    LocalData d;
    for (const auto& b : f.regular().blocks()) {
        int level = b.size - 1;
        if (kind == PointKind::Finite && b.eig.is_one()) --level;
        if (level >= 0) d[{1, {}, b.eig, level}] += 1;
    }
    for (const auto& m : f.irregular())
        for (const auto& b : m.R.blocks()) d[{m.p, m.phi, b.eig, b.size - 1}] += m.p;
    return d;
}

FormalType ft_from_local_data(const LocalData& d, PointKind kind, int rank) {
    std::vector<Block> reg;
    std::map<std::pair<int, Tail>, std::vector<Block>, PhiKeyLess> members;
    for (const auto& [k, n] : d) {
        if (n < 0 || k.level < 0) fail(ErrorKind::Malformed, "negative local data count");
        if (n == 0) continue;
        if (k.phi.empty()) {
            if (k.p != 1) fail(ErrorKind::Malformed, "regular local data with ramification");
            int size = k.level + 1 + (kind == PointKind::Finite && k.eig.is_one() ? 1 : 0);
            for (int i = 0; i < n; ++i) reg.push_back({k.eig, size});
        } else {
            if (n % k.p != 0) fail(ErrorKind::Malformed, "local data count not divisible by the ramification");
            auto& v = members[{k.p, k.phi}];
            for (int i = 0; i < n / k.p; ++i) v.push_back({k.eig, k.level + 1});
        }
    }
    std::vector<Elementary> irr;
    for (auto& [k, v] : members) irr.push_back({Scalar(1), k.first, k.second, JordanData(v)});
    FormalType f(JordanData(reg), irr);
    if (kind == PointKind::Finite) {
        int missing = rank - f.rank();
        if (missing < 0)
            fail(ErrorKind::Malformed,
                 "local data needs rank " + std::to_string(f.rank()) + " but the rank is " + std::to_string(rank));
        if (missing > 0) f = FormalType(f.regular() + JordanData::scalar(Eigenvalue(), missing), f.irregular());
    }
    return f;
}

} // namespace katz
