#include "katz/elementary.hpp"

#include "katz/error.hpp"

#include <numeric>

namespace katz {

namespace {

long mod(long a, long n) { return ((a % n) + n) % n; }

bool needs_parens(const std::string& s) {
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || s[i] == '-' || s[i] == '/' || s[i] == '*') return true;
    return false;
}

// exponent of var in m, required to be an integer
long var_exponent(const Mono& m, const std::string& var, const std::string& text) {
    auto it = m.find(var);
    if (it == m.end()) return 0;
    if (it->second.get_den() != 1)
        fail(ErrorKind::Malformed, "fractional power of " + var + " in \"" + text + "\"");
    return it->second.get_num().get_si();
}

std::vector<std::string> split_args(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
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

} // namespace

int tail_pole(const Tail& t) { return t.empty() ? 0 : t.rbegin()->first; }

bool tail_less(const Tail& a, const Tail& b) {
    auto i = a.rbegin();
    auto j = b.rbegin();
    for (; i != a.rend() && j != b.rend(); ++i, ++j) {
        if (i->first != j->first) return i->first > j->first;
        if (i->second != j->second) return i->second < j->second;
    }
    return i == a.rend() && j != b.rend();
}

Tail tail_neg(const Tail& t) {
    Tail out;
    for (const auto& [k, a] : t) out[k] = -a;
    return out;
}

Tail tail_sub(const Tail& a, const Tail& b) {
    Tail out = a;
    for (const auto& [k, v] : b) {
        Scalar s = out.count(k) ? out[k] - v : -v;
        if (s.is_zero()) out.erase(k);
        else out[k] = s;
    }
    return out;
}

Tail tail_subst(const Tail& t, const Scalar& z, int m) {
    Tail out;
    for (const auto& [k, a] : t) out[k * m] = a * z.pow(-k);
    return out;
}

std::string tail_str(const Tail& t, const std::string& var) {
    if (t.empty()) return "0";
    std::string out;
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        std::string c = it->second.str();
        if (needs_parens(c)) c = "(" + c + ")";
        std::string term = c + "/" + var + (it->first == 1 ? "" : "^" + std::to_string(it->first));
        if (out.empty()) out = term;
        else if (term[0] == '-') out += " - " + term.substr(1);
        else out += " + " + term;
    }
    return out;
}

Tail tail_parse(const std::string& text, const std::string& var) {
    Scalar s = Scalar::parse(text);
    Tail out;
    if (s.is_zero()) return out;
    long m = 0;
    bool first = true;
    Poly d;
    for (const auto& [mono, c] : s.den().terms()) {
        long e = var_exponent(mono, var, text);
        if (!first && e != m)
            fail(ErrorKind::Malformed, "not a Laurent polynomial in " + var + ": \"" + text + "\"");
        m = e;
        first = false;
        Mono rest = mono;
        rest.erase(var);
        d.add_term(rest, c);
    }
    bool has_var = m != 0;
    std::map<long, Poly> groups;
    for (const auto& [mono, c] : s.num().terms()) {
        long e = var_exponent(mono, var, text);
        has_var = has_var || e != 0;
        Mono rest = mono;
        rest.erase(var);
        groups[e].add_term(rest, c);
    }
    if (!has_var) {
        out[1] = s;
        return out;
    }
    for (const auto& [e, num] : groups) {
        long k = m - e;
        if (k > 0) out[static_cast<int>(k)] = Scalar::from_fraction(num, d);
    }
    return out;
}

std::string Elementary::str() const {
    std::string r;
    if (c == Scalar(1)) {
        r = std::to_string(p);
    } else {
        std::string cs = c.str();
        if (needs_parens(cs)) cs = "(" + cs + ")";
        r = cs + "*u" + (p == 1 ? "" : "^" + std::to_string(p));
    }
    return "El(" + r + ", " + tail_str(phi) + ", " + R.str() + ")";
}

Elementary Elementary::parse(const std::string& text) {
    std::string t = trim(text);
    if (t.rfind("El(", 0) != 0 || t.back() != ')')
        fail(ErrorKind::Malformed, "expected El(p, phi, R): \"" + text + "\"");
    auto args = split_args(t.substr(3, t.size() - 4));
    if (args.size() != 3) fail(ErrorKind::Malformed, "El takes three arguments: \"" + text + "\"");
    Elementary e;
    std::string r = trim(args[0]);
    if (!r.empty() && r.find_first_not_of("0123456789") == std::string::npos) {
        e.p = std::stoi(r);
    } else {
        Scalar rho = Scalar::parse(r);
        bool ok = rho.num().is_monomial();
        for (const auto& [m, c] : rho.den().terms()) ok = ok && !m.count("u");
        if (!ok)
            fail(ErrorKind::Malformed, "ramification must be c*u^p: \"" + r + "\"");
        Mono mono = rho.num().lead_mono();
        long p = var_exponent(mono, "u", r);
        mono.erase("u");
        e.p = static_cast<int>(p);
        e.c = Scalar::from_fraction(Poly::term(rho.num().lead_coeff(), mono), rho.den());
        if (p < 1) fail(ErrorKind::Malformed, "ramification degree must be positive: \"" + text + "\"");
    }
    if (e.p < 1) fail(ErrorKind::Malformed, "ramification degree must be positive: \"" + text + "\"");
    if (e.c.is_zero()) fail(ErrorKind::Malformed, "ramification coefficient is zero: \"" + text + "\"");
    e.phi = tail_parse(trim(args[1]));
    e.R = JordanData::parse(trim(args[2]));
    if (e.R.empty()) fail(ErrorKind::Malformed, "El needs a nonempty R: \"" + text + "\"");
    return e;
}

bool operator<(const Elementary& a, const Elementary& b) {
    if (a.p != b.p) return a.p < b.p;
    if (a.phi != b.phi) return tail_less(a.phi, b.phi);
    if (a.R != b.R) return a.R < b.R;
    return a.c < b.c;
}

Elementary el_normalize(const Elementary& e) {
    Elementary out = e;
    if (e.c != Scalar(1)) {
        Scalar g = scalar_root(e.c, e.p);
        out.phi = tail_subst(e.phi, g.inverse());
        out.c = Scalar(1);
    }
    Tail best = out.phi;
    for (int j = 1; j < e.p; ++j) {
        Tail cand;
        for (const auto& [k, a] : out.phi) cand[k] = a * Scalar::zeta(e.p, mod(-static_cast<long>(j) * k, e.p));
        if (tail_less(cand, best)) best = cand;
    }
    out.phi = best;
    return out;
}

Elementary el_reduce(const Elementary& e) {
    if (e.phi.empty()) return {Scalar(1), 1, {}, jordan_push(e.R, e.p)};
    int m = e.p;
    for (const auto& [k, a] : e.phi) m = std::gcd(m, k);
    if (m == 1) return e;
    Elementary out{e.c, e.p / m, {}, jordan_push(e.R, m)};
    for (const auto& [k, a] : e.phi) out.phi[k / m] = a;
    return out;
}

Elementary el_canonical(const Elementary& e) { return el_normalize(el_reduce(e)); }

Elementary el_dual(const Elementary& e) {
    return el_canonical({e.c, e.p, tail_neg(e.phi), jordan_dual(e.R)});
}

ElDet el_det(const Elementary& e) {
    Elementary n = el_normalize(e);
    int r = n.R.rank();
    ElDet d;
    for (const auto& [k, a] : n.phi)
        if (k % n.p == 0) d.exp[k / n.p] = a * Scalar(static_cast<long>(r) * n.p);
    d.eig = jordan_det(n.R);
    if ((n.p - 1) * r % 2 != 0) d.eig = d.eig * Eigenvalue::zeta(2);
    return d;
}

bool el_iso_eq(const Elementary& a, const Elementary& b) { return el_canonical(a) == el_canonical(b); }

std::vector<Elementary> el_hom(const Elementary& x, const Elementary& y) {
    Elementary a = el_canonical(x), b = el_canonical(y);
    int d = std::gcd(a.p, b.p);
    int n = a.p * b.p / d;
    int p1 = a.p / d, p2 = b.p / d;
    JordanData r = jordan_tensor(jordan_pull(jordan_dual(a.R), p2), jordan_pull(b.R, p1));
    Tail t2 = tail_subst(b.phi, Scalar(1), p1);
    std::vector<Elementary> out;
    for (int k = 0; k < d; ++k) {
        Tail t1 = tail_subst(a.phi, Scalar::zeta(a.p, k), p2);
        out.push_back(el_canonical({Scalar(1), n, tail_sub(t2, t1), r}));
    }
    return out;
}

std::vector<Elementary> el_tensor(const Elementary& a, const Elementary& b) { return el_hom(el_dual(a), b); }

std::vector<Elementary> el_pullback(const Elementary& x, int k) {
    if (k < 1) fail(ErrorKind::Precondition, "pullback degree must be positive");
    Elementary e = el_normalize(x);
    int g = std::gcd(e.p, k);
    std::vector<Elementary> out;
    for (int j = 0; j < g; ++j)
        out.push_back(el_canonical(
            {Scalar(1), e.p / g, tail_subst(e.phi, Scalar::zeta(e.p, j), k / g), jordan_pull(e.R, k / g)}));
    return out;
}

} // namespace katz
