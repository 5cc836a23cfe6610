#ifndef KATZ_CYCLOTOMIC_HPP
#define KATZ_CYCLOTOMIC_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace katz {

using Q = mpq_class;
using Z = mpz_class;

// Element of Q(zeta_n) in the power basis 1, z, ..., z^(phi(n)-1), reduced
// modulo the n-th cyclotomic polynomial. Always stored at the smallest n
// whose field contains the value; zero is n = 1 with no coefficients.
class Cyclotomic {
public:
    Cyclotomic() = default;
    Cyclotomic(long v);
    Cyclotomic(const Q& v);

    static Cyclotomic zeta(int n, long k = 1);
    // built from coefficients on z^0..z^(n-1) (not yet reduced)
    static Cyclotomic from_powers(int n, const std::vector<Q>& c);

    int order() const { return n_; }
    const std::vector<Q>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return n_ == 1; }
    Q rational() const;  // requires is_rational()
    bool is_one() const;

    Cyclotomic operator-() const;
    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b);
    Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
    Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
    Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }
    Cyclotomic inverse() const;
    Cyclotomic pow(long e) const;

    // Galois conjugate z -> z^a, gcd(a, n) = 1
    Cyclotomic galois(long a) const;

    // If the value is q * zeta(m)^k with q a positive rational, returns (q, k/m mod 1).
    std::optional<std::pair<Q, Q>> as_scaled_root_of_unity() const;

    // Rational coordinates in the basis of Q(zeta_m), m a multiple of order().
    std::vector<Q> coordinates(int m) const;

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }
    friend bool operator<(const Cyclotomic& a, const Cyclotomic& b);

    std::string str() const;
    bool needs_parens() const;  // more than one term when rendered

private:
    int n_ = 1;
    std::vector<Q> c_;
    void canonicalize();
    Cyclotomic lift(int m) const;  // same value expressed at order m (unreduced order)
};

long totient(long n);
long lcm_l(long a, long b);
long gcd_l(long a, long b);

} // namespace katz

#endif
