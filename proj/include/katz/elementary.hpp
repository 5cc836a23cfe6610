#ifndef KATZ_ELEMENTARY_HPP
#define KATZ_ELEMENTARY_HPP

#include "katz/jordan.hpp"
#include "katz/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace katz {

// phi modulo regular terms: pole order k >= 1 -> coefficient of u^-k
using Tail = std::map<int, Scalar>;

int tail_pole(const Tail& t);  // 0 for the empty tail
// lexicographic from the deepest pole; shorter tails first on a common prefix
bool tail_less(const Tail& a, const Tail& b);
Tail tail_neg(const Tail& t);
Tail tail_sub(const Tail& a, const Tail& b);
// phi(z * u^m) for a scalar z
Tail tail_subst(const Tail& t, const Scalar& z, int m = 1);
std::string tail_str(const Tail& t, const std::string& var = "u");
// Laurent expression in u, regular terms dropped. A u-free value a is read as a/u.
Tail tail_parse(const std::string& text, const std::string& var = "u");

// El(c*u^p, phi, R) = rho_+(E^phi (x) R)
struct Elementary {
    Scalar c = Scalar(1);
    int p = 1;
    Tail phi;
    JordanData R;

    int q() const { return tail_pole(phi); }
    int rank() const { return p * R.rank(); }
    int irregularity() const { return R.rank() * q(); }
    bool is_regular() const { return phi.empty(); }

    std::string str() const;  // "El(2, a1/u, (l, l^-1))"
    static Elementary parse(const std::string& text);

    friend bool operator==(const Elementary& a, const Elementary& b) {
        return a.p == b.p && a.c == b.c && a.phi == b.phi && a.R == b.R;
    }
    friend bool operator!=(const Elementary& a, const Elementary& b) { return !(a == b); }
    friend bool operator<(const Elementary& a, const Elementary& b);
};

// det El = E^{r Tr phi} (x) (eig); tail in the downstairs coordinate
struct ElDet {
    Tail exp;
    Eigenvalue eig;
};

Elementary el_normalize(const Elementary& e);
Elementary el_reduce(const Elementary& e);
Elementary el_canonical(const Elementary& e);  // reduce then normalize
Elementary el_dual(const Elementary& e);
ElDet el_det(const Elementary& e);
bool el_iso_eq(const Elementary& a, const Elementary& b);
std::vector<Elementary> el_hom(const Elementary& a, const Elementary& b);
std::vector<Elementary> el_tensor(const Elementary& a, const Elementary& b);
std::vector<Elementary> el_pullback(const Elementary& e, int k);

} // namespace katz

#endif
