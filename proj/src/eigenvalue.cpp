#include "katz/eigenvalue.hpp"
#include "katz/error.hpp"
#include "katz/lexer.hpp"

namespace katz {

namespace {

Q frac_part(const Q& t) {
    Z fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    Q r = t - Q(fl);
    r.canonicalize();
    return r;
}

void add_exp(Mono& w, const std::string& k, const Q& e) {
    Q v = w[k] + e;
    if (v == 0) w.erase(k);
    else w[k] = v;
}

std::string exp_suffix(const Q& e) {
    if (e == 1) return "";
    if (e.get_den() == 1) return "^" + e.get_str();
    return "^(" + e.get_str() + ")";
}

std::string word_str(const Mono& w) {
    std::string s;
    for (const auto& [k, e] : w) {
        if (!s.empty()) s += "*";
        s += (k[0] == '~' ? k.substr(1) : k) + exp_suffix(e);
    }
    return s;
}

std::string torsion_str(const Q& t) {
    if (t == Q(1, 2)) return "-1";
    std::string z = "zeta(" + t.get_den().get_str() + ")";
    if (t.get_num() != 1) z += "^" + t.get_num().get_str();
    return z;
}

} // namespace

Eigenvalue Eigenvalue::root_of_unity(const Q& t) {
    Eigenvalue e;
    e.t_ = frac_part(t);
    return e;
}

Eigenvalue Eigenvalue::symbol(const std::string& name) {
    Eigenvalue e;
    e.w_[name] = 1;
    return e;
}

Eigenvalue Eigenvalue::positive_rational(const Q& q) {
    if (q <= 0) fail(ErrorKind::Precondition, "positive rational expected");
    Eigenvalue e;
    for (int side = 0; side < 2; ++side) {
        Z n = side == 0 ? Z(q.get_num()) : Z(q.get_den());
        long sign = side == 0 ? 1 : -1;
        for (Z d = 2; d * d <= n; ++d)
            while (n % d == 0) {
                n /= d;
                add_exp(e.w_, "~" + d.get_str(), Q(sign));
            }
        if (n > 1) add_exp(e.w_, "~" + n.get_str(), Q(sign));
    }
    return e;
}

long Eigenvalue::order() const {
    if (!w_.empty()) return 0;
    return t_.get_den().get_si();
}

Eigenvalue Eigenvalue::operator*(const Eigenvalue& b) const {
    Eigenvalue r = *this;
    r.t_ = frac_part(t_ + b.t_);
    for (const auto& [k, e] : b.w_) add_exp(r.w_, k, e);
    return r;
}

Eigenvalue Eigenvalue::inverse() const {
    Eigenvalue r;
    r.t_ = frac_part(-t_);
    for (const auto& [k, e] : w_) r.w_[k] = -e;
    return r;
}

Eigenvalue Eigenvalue::pow(const Q& p) const {
    Eigenvalue r;
    if (p == 0) return r;
    r.t_ = frac_part(t_ * p);
    for (const auto& [k, e] : w_) r.w_[k] = e * p;
    return r;
}

bool operator<(const Eigenvalue& a, const Eigenvalue& b) {
    if (a.w_ != b.w_) return mono_less(a.w_, b.w_);
    return a.t_ < b.t_;
}

std::string Eigenvalue::str() const {
    if (is_one()) return "1";
    std::string s;
    if (t_ != 0) s = torsion_str(t_);
    std::string w = word_str(w_);
    if (!w.empty()) s += (s.empty() ? "" : "*") + w;
    return s;
}

std::string Eigenvalue::pretty() const {
    if (is_one()) return "1";
    std::string w = word_str(w_);
    if (t_ == 0) return w;
    if (t_ == Q(1, 2)) return w.empty() ? "-1" : "-" + w;
    std::string z;
    if (t_ == Q(1, 4)) z = "i";
    else if (t_ == Q(3, 4)) z = "-i";
    else z = torsion_str(t_);
    if (w.empty()) return z;
    if (z == "-i") return "-i*" + w;
    return z + "*" + w;
}

std::string Eigenvalue::prefix() const {
    if (is_one()) return "";
    if (*this == root_of_unity(Q(1, 2))) return "-";
    std::string p = pretty();
    bool simple = p.find('*') == std::string::npos && p.find('(') == std::string::npos;
    return simple ? p : "(" + p + ")";
}

namespace {

using detail::Cursor;
using detail::Token;

Q parse_exp(Cursor& c) {
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

Eigenvalue parse_product(Cursor& c);

Eigenvalue parse_atom(Cursor& c) {
    const Token& t = c.peek();
    if (t.kind == Token::Number) {
        Z n(c.next().text);
        if (n == 0) c.error("eigenvalues are nonzero");
        return Eigenvalue::positive_rational(Q(n));
    }
    if (t.kind == Token::Ident) {
        std::string name = c.next().text;
        if (name == "i") return Eigenvalue::zeta(4);
        if (name == "zeta") {
            c.expect("(");
            if (c.peek().kind != Token::Number) c.error("expected zeta order");
            long n = std::stol(c.next().text);
            if (n < 1) c.error("zeta order must be positive");
            c.expect(")");
            return Eigenvalue::zeta(n);
        }
        return Eigenvalue::symbol(name);
    }
    if (c.accept("(")) {
        Eigenvalue e = parse_product(c);
        c.expect(")");
        return e;
    }
    c.error("expected an eigenvalue");
}

Eigenvalue parse_power(Cursor& c) {
    Eigenvalue a = parse_atom(c);
    if (c.accept("^")) return a.pow(parse_exp(c));
    return a;
}

Eigenvalue parse_product(Cursor& c) {
    Eigenvalue sign;
    while (c.accept("-")) sign = sign * Eigenvalue::zeta(2);
    Eigenvalue e = parse_power(c);
    for (;;) {
        if (c.accept("*")) e = e * parse_power(c);
        else if (c.accept("/")) e = e / parse_power(c);
        else break;
    }
    return sign * e;
}

} // namespace

Eigenvalue Eigenvalue::parse(detail::Cursor& c) { return parse_product(c); }

Eigenvalue Eigenvalue::parse(const std::string& text) {
    Cursor c(text);
    if (c.at_end()) c.error("empty eigenvalue");
    Eigenvalue e = parse_product(c);
    if (!c.at_end()) c.error("trailing input");
    return e;
}

} // namespace katz
