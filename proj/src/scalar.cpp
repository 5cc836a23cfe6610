#include "katz/scalar.hpp"
#include "katz/error.hpp"
#include "katz/lexer.hpp"

#include <set>
#include <sstream>

namespace katz {

// ---------------------------------------------------------------- monomials

bool mono_less(const Mono& a, const Mono& b) {
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) return ia->second < 0;
        if (ia == a.end() || ib->first < ia->first) return ib->second > 0;
        if (ia->second != ib->second) return ia->second < ib->second;
        ++ia;
        ++ib;
    }
    return false;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r = a;
    for (const auto& [k, e] : b) {
        Q v = r[k] + e;
        if (v == 0) r.erase(k);
        else r[k] = v;
    }
    return r;
}

Mono mono_pow(const Mono& a, const Q& e) {
    Mono r;
    if (e == 0) return r;
    for (const auto& [k, x] : a) r[k] = x * e;
    return r;
}

bool mono_divides(const Mono& a, const Mono& b) {
    for (const auto& [k, e] : a) {
        auto it = b.find(k);
        Q have = it == b.end() ? Q(0) : it->second;
        if (have < e) return false;
    }
    for (const auto& [k, e] : b)
        if (e < 0 && !a.count(k)) return false;
    return true;
}

namespace {

std::string exp_str(const Q& e) {
    if (e.get_den() == 1) return "^" + e.get_str();
    return "^(" + e.get_str() + ")";
}

} // namespace

std::string mono_str(const Mono& m) {
    std::string s;
    for (const auto& [k, e] : m) {
        if (!s.empty()) s += "*";
        s += k[0] == '~' ? k.substr(1) : k;
        if (e != 1) s += exp_str(e);
    }
    return s;
}

// ---------------------------------------------------------------- polynomials

Poly::Poly(const Cyclotomic& c) {
    if (!c.is_zero()) t_.emplace(Mono{}, c);
}

Poly Poly::term(const Cyclotomic& c, const Mono& m) {
    Poly p;
    if (!c.is_zero()) p.t_.emplace(m, c);
    return p;
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }

Cyclotomic Poly::constant() const {
    auto it = t_.find(Mono{});
    return it == t_.end() ? Cyclotomic() : it->second;
}

void Poly::add_term(const Mono& m, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b.t_) r.add_term(m, c);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) r.add_term(mono_mul(ma, mb), ca * cb);
    return r;
}

Poly Poly::scaled(const Cyclotomic& c, const Mono& m) const {
    Poly r;
    if (c.is_zero()) return r;
    for (const auto& [mm, cc] : t_) r.t_.emplace(mono_mul(mm, m), cc * c);
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r(Cyclotomic(1)), base = *this;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

bool operator<(const Poly& a, const Poly& b) {
    auto ia = a.t_.rbegin(), ib = b.t_.rbegin();
    for (; ia != a.t_.rend() && ib != b.t_.rend(); ++ia, ++ib) {
        if (ia->first != ib->first) return mono_less(ia->first, ib->first);
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.t_.rend() && ib != b.t_.rend();
}

namespace {

std::string term_str(const Mono& m, const Cyclotomic& c) {
    if (m.empty()) return c.str();
    std::string ms = mono_str(m);
    if (c.is_one()) return ms;
    if (c == Cyclotomic(-1)) return "-" + ms;
    if (c.needs_parens()) return "(" + c.str() + ")*" + ms;
    return c.str() + "*" + ms;
}

} // namespace

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::string s;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        std::string t = term_str(it->first, it->second);
        if (s.empty()) s = t;
        else if (t[0] == '-') s += " - " + t.substr(1);
        else s += " + " + t;
    }
    return s;
}

// ---------------------------------------------------------------- gcd machinery

namespace {

std::set<std::string> vars_of(const Poly& p) {
    std::set<std::string> v;
    for (const auto& [m, c] : p.terms())
        for (const auto& [k, e] : m) v.insert(k);
    return v;
}

Q degree_in(const Poly& p, const std::string& x) {
    Q d = 0;
    for (const auto& [m, c] : p.terms()) {
        auto it = m.find(x);
        if (it != m.end() && it->second > d) d = it->second;
    }
    return d;
}

// coefficients of p as a polynomial in x
std::map<Q, Poly> split_in(const Poly& p, const std::string& x) {
    std::map<Q, Poly> out;
    for (const auto& [m, c] : p.terms()) {
        Mono rest = m;
        Q d = 0;
        auto it = rest.find(x);
        if (it != rest.end()) {
            d = it->second;
            rest.erase(it);
        }
        out[d].add_term(rest, c);
    }
    return out;
}

Poly monic(const Poly& p) {
    if (p.is_zero()) return p;
    return p.scaled(p.lead_coeff().inverse());
}

Poly gcd_int(const Poly& a, const Poly& b);

Poly content_in(const Poly& p, const std::string& x) {
    Poly g;
    for (const auto& [d, c] : split_in(p, x)) {
        g = g.is_zero() ? monic(c) : gcd_int(g, c);
        if (g.is_constant()) return Poly(Cyclotomic(1));
    }
    return g;
}

Poly exact_div(const Poly& a, const Poly& b) {
    Poly q;
    if (!poly_divide(a, b, q)) fail(ErrorKind::Internal, "inexact division in gcd");
    return q;
}

// pseudo remainder of a by b in x (both have x-degree >= 0, b nonconstant in x)
Poly prem(Poly a, const Poly& b, const std::string& x) {
    Q db = degree_in(b, x);
    auto sb = split_in(b, x);
    Poly lcb = sb.rbegin()->second;
    while (!a.is_zero()) {
        Q da = degree_in(a, x);
        if (da < db) break;
        auto sa = split_in(a, x);
        Poly lca = sa.rbegin()->second;
        Mono shift;
        if (da - db != 0) shift[x] = da - db;
        a = a * lcb - (b * lca).scaled(Cyclotomic(1), shift);
    }
    return a;
}

// gcd for polynomials with nonnegative integer exponents
Poly gcd_int(const Poly& a, const Poly& b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.is_constant() || b.is_constant()) return Poly(Cyclotomic(1));
    auto va = vars_of(a), vb = vars_of(b);
    std::set<std::string> all = va;
    all.insert(vb.begin(), vb.end());
    const std::string x = *all.begin();
    Poly ca = content_in(a, x), cb = content_in(b, x);
    Poly c = gcd_int(ca, cb);
    Poly pa = exact_div(a, ca), pb = exact_div(b, cb);
    if (degree_in(pa, x) < degree_in(pb, x)) std::swap(pa, pb);
    while (!pb.is_zero() && degree_in(pb, x) > 0) {
        Poly r = prem(pa, pb, x);
        pa = pb;
        if (r.is_zero()) {
            pb = Poly();
            break;
        }
        pb = exact_div(r, content_in(r, x));
    }
    Poly g;
    if (pb.is_zero()) g = exact_div(pa, content_in(pa, x));
    else g = Poly(Cyclotomic(1));
    return monic(c * g);
}

Mono content_mono(const Poly& p) {
    Mono out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (first) {
            out = m;
            first = false;
            continue;
        }
        for (auto it = out.begin(); it != out.end();) {
            auto f = m.find(it->first);
            Q e = f == m.end() ? Q(0) : f->second;
            if (e < it->second) it->second = e;
            if (it->second == 0) it = out.erase(it);
            else ++it;
        }
        for (const auto& [k, e] : m)
            if (e < 0 && !out.count(k)) out[k] = e;
    }
    return out;
}

Poly divide_mono(const Poly& p, const Mono& m) {
    if (m.empty()) return p;
    return p.scaled(Cyclotomic(1), mono_pow(m, -1));
}

Z ipow(const Z& b, unsigned long e) {
    Z r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// move integer parts of prime-radical exponents into the coefficient
Poly normalize_radicals(const Poly& p) {
    bool any = false;
    for (const auto& [m, c] : p.terms())
        for (const auto& [k, e] : m)
            if (k[0] == '~' && (e < 0 || e >= 1)) any = true;
    if (!any) return p;
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        Mono mm;
        Q factor = 1;
        for (const auto& [k, e] : m) {
            if (k[0] != '~') {
                mm[k] = e;
                continue;
            }
            Z fl;
            mpz_fdiv_q(fl.get_mpz_t(), e.get_num_mpz_t(), e.get_den_mpz_t());
            Q frac = e - Q(fl);
            Z prime(k.substr(1));
            if (fl >= 0) factor *= Q(ipow(prime, fl.get_ui()));
            else factor /= Q(ipow(prime, Z(-fl).get_ui()));
            if (frac != 0) mm[k] = frac;
        }
        r.add_term(mm, c * Cyclotomic(factor));
    }
    return r;
}

using Scale = std::map<std::string, Z>;

Poly rescale(const Poly& p, const Scale& s, bool forward) {
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        Mono mm;
        for (const auto& [k, e] : m) {
            Q f(s.at(k));
            mm[k] = forward ? Q(e * f) : Q(e / f);
        }
        r.add_term(mm, c);
    }
    return r;
}

} // namespace

bool poly_divide(const Poly& a, const Poly& b, Poly& quotient) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
    Poly q, r = a;
    const Mono& mb = b.lead_mono();
    Cyclotomic cbinv = b.lead_coeff().inverse();
    for (int guard = 0; !r.is_zero(); ++guard) {
        if (guard > 200000) return false;
        const Mono& mr = r.lead_mono();
        if (!mono_divides(mb, mr)) return false;
        Mono t = mono_mul(mr, mono_pow(mb, -1));
        Cyclotomic c = r.lead_coeff() * cbinv;
        q.add_term(t, c);
        r = r - b.scaled(c, t);
    }
    quotient = q;
    return true;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    Scale s;
    for (const Poly* p : {&a, &b})
        for (const auto& [m, c] : p->terms())
            for (const auto& [k, e] : m) {
                Z& d = s[k];
                if (d == 0) d = 1;
                Z den = e.get_den();
                mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), den.get_mpz_t());
            }
    if (s.empty()) return Poly(Cyclotomic(1));
    return rescale(gcd_int(rescale(a, s, true), rescale(b, s, true)), s, false);
}

// ---------------------------------------------------------------- Scalar

Scalar Scalar::symbol(const std::string& name) {
    Scalar s;
    s.num_ = Poly::term(Cyclotomic(1), Mono{{name, Q(1)}});
    return s;
}

Scalar Scalar::from_fraction(const Poly& num, const Poly& den) {
    Scalar s;
    s.num_ = num;
    s.den_ = den;
    s.canonicalize();
    return s;
}

void Scalar::canonicalize() {
    if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
    if (num_.is_zero()) {
        den_ = Poly(Cyclotomic(1));
        return;
    }
    num_ = normalize_radicals(num_);
    den_ = normalize_radicals(den_);
    Mono cn = content_mono(num_), cd = content_mono(den_);
    num_ = divide_mono(num_, cn);
    den_ = divide_mono(den_, cd);
    Mono m = mono_mul(cn, mono_pow(cd, -1));
    if (den_.is_constant()) {
        num_ = num_.scaled(den_.constant().inverse());
        den_ = Poly(Cyclotomic(1));
    } else {
        Poly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        Cyclotomic lc = den_.lead_coeff().inverse();
        num_ = num_.scaled(lc);
        den_ = den_.scaled(lc);
    }
    Mono pos, neg;
    for (const auto& [k, e] : m) {
        if (e > 0 || k[0] == '~') pos[k] = e;
        else neg[k] = -e;
    }
    num_ = normalize_radicals(num_.scaled(Cyclotomic(1), pos));
    if (!neg.empty()) den_ = den_.scaled(Cyclotomic(1), neg);
}

Cyclotomic Scalar::constant() const {
    if (!is_constant()) fail(ErrorKind::Internal, "scalar is not constant: " + str());
    return num_.constant();
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return Scalar::from_fraction(a.num_ + b.num_, a.den_);
    return Scalar::from_fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();
    return Scalar::from_fraction(a.num_ * b.num_, a.den_ * b.den_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
    return from_fraction(den_, num_);
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    return from_fraction(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

bool operator<(const Scalar& a, const Scalar& b) {
    if (a.num_ != b.num_) return a.num_ < b.num_;
    return a.den_ < b.den_;
}

std::string Scalar::str() const {
    if (den_ == Poly(Cyclotomic(1))) return num_.str();
    std::string n = num_.str(), d = den_.str();
    if (num_.terms().size() > 1) n = "(" + n + ")";
    bool bare = den_.is_monomial() && den_.lead_coeff().is_one() && den_.lead_mono().size() == 1 &&
                den_.lead_mono().begin()->second == 1;
    if (!bare) d = "(" + d + ")";
    return n + "/" + d;
}

Scalar scalar_arith(const Scalar& a, const Scalar& b, ArithOp op) {
    switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
    }
    fail(ErrorKind::Internal, "bad arithmetic op");
}

// ---------------------------------------------------------------- roots

namespace {

[[noreturn]] void irrational(const std::string& radicand, int p) {
    fail(ErrorKind::IrrationalRoot,
         "irrational root: (" + radicand + ")^(1/" + std::to_string(p) + ") is not extractable");
}

// p-th root of a positive integer as (integer part, radical monomial)
void int_root(Z n, int p, Z& outer, Mono& rad) {
    outer = 1;
    auto take = [&](const Z& prime, unsigned long k) {
        Q e(static_cast<long>(k), p);
        e.canonicalize();
        Z fl = e.get_num() / e.get_den();
        Q frac = e - Q(fl);
        outer *= ipow(prime, fl.get_ui());
        if (frac != 0) rad["~" + prime.get_str()] += frac;
    };
    for (Z d = 2; d * d <= n && d < 1000000; ++d) {
        unsigned long k = 0;
        while (n % d == 0) {
            n /= d;
            ++k;
        }
        if (k) take(d, k);
    }
    if (n > 1) take(n, 1);
}

// root of a nonzero cyclotomic constant, as coefficient * radical monomial
void const_root(const Cyclotomic& c, int p, Cyclotomic& coeff, Mono& rad, const std::string& what) {
    auto sr = c.as_scaled_root_of_unity();
    if (!sr) irrational(what, p);
    const auto& [q, t] = *sr;
    Z on, od;
    Mono rn, rd;
    int_root(q.get_num(), p, on, rn);
    int_root(q.get_den(), p, od, rd);
    // 1/od^(1/p) radical part: move to numerator as od^((p-1)/p)/od
    Q scale(on, od);
    rad = rn;
    for (const auto& [k, e] : rd) {
        Q ne = Q(1) - e;
        Z prime(k.substr(1));
        scale /= Q(prime);
        rad[k] += ne;
    }
    for (auto it = rad.begin(); it != rad.end();) {
        Z fl;
        mpz_fdiv_q(fl.get_mpz_t(), it->second.get_num_mpz_t(), it->second.get_den_mpz_t());
        if (fl != 0) {
            Z prime(it->first.substr(1));
            scale *= Q(ipow(prime, fl.get_ui()));
            it->second -= Q(fl);
        }
        if (it->second == 0) it = rad.erase(it);
        else ++it;
    }
    scale.canonicalize();
    // smallest nonnegative argument: t/p
    Q tp = t / Q(p);
    tp.canonicalize();
    Cyclotomic z = Cyclotomic::zeta(static_cast<int>(tp.get_den().get_si()), tp.get_num().get_si());
    coeff = z * Cyclotomic(scale);
}

Poly poly_root_monic(const Poly& p, int e, const std::string& what) {
    Mono lead = mono_pow(p.lead_mono(), Q(1, e));
    Poly r = Poly::term(Cyclotomic(1), lead);
    Mono inv_lead_pow = mono_pow(lead, Q(-(e - 1)));
    for (int guard = 0; guard < 400; ++guard) {
        Poly d = p - r.pow(static_cast<unsigned>(e));
        if (d.is_zero()) return r;
        Mono m = mono_mul(d.lead_mono(), inv_lead_pow);
        for (const auto& [k, x] : m)
            if (x < 0) irrational(what, e);
        if (!mono_less(m, r.terms().begin()->first)) irrational(what, e);
        r.add_term(m, d.lead_coeff() * Cyclotomic(Q(1, e)));
    }
    irrational(what, e);
}

Poly poly_root(const Poly& p, int e, const std::string& what) {
    Mono cm = content_mono(p);
    Poly rest = divide_mono(p, cm);
    Cyclotomic lc = rest.lead_coeff();
    Cyclotomic cc;
    Mono rad;
    const_root(lc, e, cc, rad, what);
    Poly body = rest.is_monomial() ? Poly(Cyclotomic(1)) : poly_root_monic(rest.scaled(lc.inverse()), e, what);
    return body.scaled(cc, mono_mul(rad, mono_pow(cm, Q(1, e))));
}

} // namespace

Scalar scalar_root(const Scalar& a, int p) {
    if (p < 1) fail(ErrorKind::Precondition, "root degree must be positive");
    if (p == 1 || a.is_zero()) return a;
    std::string what = a.str();
    Poly n = poly_root(a.num(), p, what);
    Poly d = poly_root(a.den(), p, what);
    return Scalar::from_fraction(n, d);
}

// ---------------------------------------------------------------- parser

namespace {

using detail::Cursor;
using detail::Token;

Scalar parse_expr(Cursor& c);

Q parse_exponent(Cursor& c) {
    bool paren = c.accept("(");
    bool neg = c.accept("-");
    if (c.peek().kind != Token::Number) c.error("expected exponent");
    Q e(Z(c.next().text));
    if (paren && c.accept("/")) {
        if (c.peek().kind != Token::Number) c.error("expected exponent denominator");
        Z d(c.next().text);
        if (d == 0) c.error("zero denominator");
        e /= Q(d);
    }
    if (paren) c.expect(")");
    e.canonicalize();
    return neg ? -e : e;
}

Scalar parse_primary(Cursor& c) {
    const Token& t = c.peek();
    if (t.kind == Token::Number) return Scalar(Q(Z(c.next().text)));
    if (t.kind == Token::Ident) {
        std::string name = c.next().text;
        if (name == "i") return Scalar::zeta(4);
        if (name == "zeta") {
            c.expect("(");
            if (c.peek().kind != Token::Number) c.error("expected zeta order");
            long n = std::stol(c.next().text);
            if (n < 1) c.error("zeta order must be positive");
            c.expect(")");
            return Scalar::zeta(static_cast<int>(n));
        }
        if (name == "inf") c.error("'inf' is not a scalar");
        return Scalar::symbol(name);
    }
    if (c.accept("(")) {
        Scalar s = parse_expr(c);
        c.expect(")");
        return s;
    }
    c.error("expected a number, symbol or '('");
}

Scalar parse_power(Cursor& c) {
    Scalar b = parse_primary(c);
    if (c.accept("^")) {
        Q e = parse_exponent(c);
        long num = e.get_num().get_si();
        long den = e.get_den().get_si();
        Scalar r = b.pow(num);
        if (den != 1) r = scalar_root(r, static_cast<int>(den));
        return r;
    }
    return b;
}

Scalar parse_unary(Cursor& c) {
    if (c.accept("-")) return -parse_unary(c);
    if (c.accept("+")) return parse_unary(c);
    return parse_power(c);
}

Scalar parse_term(Cursor& c) {
    Scalar s = parse_unary(c);
    for (;;) {
        if (c.accept("*")) s = s * parse_unary(c);
        else if (c.accept("/")) s = s / parse_unary(c);
        else return s;
    }
}

Scalar parse_expr(Cursor& c) {
    Scalar s = parse_term(c);
    for (;;) {
        if (c.accept("+")) s = s + parse_term(c);
        else if (c.accept("-")) s = s - parse_term(c);
        else return s;
    }
}

} // namespace

Scalar Scalar::parse(const std::string& text) {
    Cursor c(text);
    if (c.at_end()) c.error("empty scalar");
    Scalar s = parse_expr(c);
    if (!c.at_end()) c.error("trailing input");
    return s;
}

} // namespace katz
