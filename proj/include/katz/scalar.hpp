#ifndef KATZ_SCALAR_HPP
#define KATZ_SCALAR_HPP

#include "katz/cyclotomic.hpp"

#include <map>
#include <string>

namespace katz {

// Monomial: symbol -> rational exponent. Keys starting with '~' are prime
// radicals, e.g. "~2" with exponent 1/3 is the real cube root of 2.
using Mono = std::map<std::string, Q>;

// lexicographic order, variables ordered by name
bool mono_less(const Mono& a, const Mono& b);
struct MonoLess {
    bool operator()(const Mono& a, const Mono& b) const { return mono_less(a, b); }
};

Mono mono_mul(const Mono& a, const Mono& b);
Mono mono_pow(const Mono& a, const Q& e);
bool mono_divides(const Mono& a, const Mono& b);  // b / a has no negative exponent
std::string mono_str(const Mono& m);

// Sparse polynomial with cyclotomic coefficients; greatest key is the leading term.
class Poly {
public:
    using Terms = std::map<Mono, Cyclotomic, MonoLess>;

    Poly() = default;
    Poly(const Cyclotomic& c);
    static Poly term(const Cyclotomic& c, const Mono& m);

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return t_.size() == 1; }
    Cyclotomic constant() const;  // coefficient of the empty monomial
    const Mono& lead_mono() const { return t_.rbegin()->first; }
    const Cyclotomic& lead_coeff() const { return t_.rbegin()->second; }

    void add_term(const Mono& m, const Cyclotomic& c);

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Cyclotomic& c, const Mono& m = {}) const;
    Poly pow(unsigned e) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    friend bool operator<(const Poly& a, const Poly& b);

    std::string str() const;

private:
    Terms t_;
};

// Element of the coefficient field: a reduced fraction num/den of polynomials
// in formal symbols. Canonical form: no common factor, the denominator has
// leading coefficient 1, radicals of primes live in the numerator.
class Scalar {
public:
    Scalar() : num_(), den_(Cyclotomic(1)) {}
    Scalar(long v) : Scalar(Cyclotomic(v)) {}
    Scalar(const Q& v) : Scalar(Cyclotomic(v)) {}
    Scalar(const Cyclotomic& c) : num_(c), den_(Cyclotomic(1)) {}
    static Scalar symbol(const std::string& name);
    static Scalar from_fraction(const Poly& num, const Poly& den);
    static Scalar zeta(int n, long k = 1) { return Scalar(Cyclotomic::zeta(n, k)); }
    static Scalar parse(const std::string& text);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Cyclotomic constant() const;  // requires is_constant()

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar inverse() const;
    Scalar pow(long e) const;

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b);

    std::string str() const;

private:
    Poly num_, den_;
    void canonicalize();
};

enum class ArithOp { Add, Sub, Mul, Div };
Scalar scalar_arith(const Scalar& a, const Scalar& b, ArithOp op);

// Canonical p-th root: positive real root of positive rationals, smallest
// nonnegative argument for roots of unity. Throws IrrationalRoot otherwise.
Scalar scalar_root(const Scalar& a, int p);

// gcd of polynomials with nonnegative exponents, leading coefficient 1
Poly poly_gcd(const Poly& a, const Poly& b);
// exact quotient a / b, or false if b does not divide a
bool poly_divide(const Poly& a, const Poly& b, Poly& quotient);

} // namespace katz

#endif
