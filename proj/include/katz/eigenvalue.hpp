#ifndef KATZ_EIGENVALUE_HPP
#define KATZ_EIGENVALUE_HPP

#include "katz/scalar.hpp"

#include <string>

namespace katz {

namespace detail {
class Cursor;
}

// Element of the multiplicative group: exp(2 pi i t) times a word in formal
// symbols with rational exponents. Positive rational factors are kept as
// prime keys "~p" in the word, so 2x is representable.
class Eigenvalue {
public:
    Eigenvalue() = default;
    static Eigenvalue root_of_unity(const Q& t);  // exp(2 pi i t)
    static Eigenvalue zeta(long n, long k = 1) { return root_of_unity(Q(k, n)); }
    static Eigenvalue symbol(const std::string& name);
    static Eigenvalue positive_rational(const Q& q);
    static Eigenvalue parse(const std::string& text);
    static Eigenvalue parse(detail::Cursor& c);

    const Q& torsion() const { return t_; }
    const Mono& word() const { return w_; }
    bool is_one() const { return t_ == 0 && w_.empty(); }
    bool is_torsion() const { return w_.empty(); }
    // order of a torsion element, 0 when of infinite order
    long order() const;

    Eigenvalue operator*(const Eigenvalue& b) const;
    Eigenvalue operator/(const Eigenvalue& b) const { return *this * b.inverse(); }
    Eigenvalue inverse() const;
    Eigenvalue pow(const Q& r) const;
    Eigenvalue pow(long k) const { return pow(Q(k)); }

    friend bool operator==(const Eigenvalue& a, const Eigenvalue& b) { return a.t_ == b.t_ && a.w_ == b.w_; }
    friend bool operator!=(const Eigenvalue& a, const Eigenvalue& b) { return !(a == b); }
    friend bool operator<(const Eigenvalue& a, const Eigenvalue& b);

    std::string str() const;     // "-1*l^-2"
    std::string pretty() const;  // "-l^-2"
    // rendering as a prefix in Jordan notation ("", "-", "x^-1", "(zeta(3)*x)")
    std::string prefix() const;

private:
    Q t_;
    Mono w_;
};

} // namespace katz

#endif
