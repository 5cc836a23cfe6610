#include "katz/cyclotomic.hpp"
#include "katz/error.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace katz {

long gcd_l(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long lcm_l(long a, long b) { return a / gcd_l(a, b) * b; }

long totient(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

namespace {

using Poly = std::vector<Q>;  // dense, index = degree

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// exact division by a monic polynomial
Poly poly_div_monic(Poly a, const Poly& b) {
    size_t db = b.size() - 1;
    Poly q(a.size() - db);
    for (size_t i = a.size(); i-- > db;) {
        Q c = a[i];
        q[i - db] = c;
        if (c != 0)
            for (size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
    }
    return q;
}

struct FieldData {
    int n = 1;
    int phi = 1;
    Poly cyc;                      // n-th cyclotomic polynomial, monic
    std::vector<std::vector<Q>> red;  // reduced coordinates of z^k, k < n
};

struct Projection {
    bool ok = false;
    std::vector<int> pivots;        // rows of the basis matrix used for the solve
    std::vector<std::vector<Q>> inv;  // phi(m) x phi(m) inverse on those rows
};

std::mutex g_mu;
std::map<int, FieldData> g_fields;
std::map<std::pair<int, int>, Projection> g_proj;

Poly cyclotomic_poly(int n) {
    Poly num(n + 1);
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d) continue;
        num = poly_div_monic(num, cyclotomic_poly(d));
    }
    return num;
}

const FieldData& field(int n) {
    std::lock_guard<std::mutex> lk(g_mu);
    auto it = g_fields.find(n);
    if (it != g_fields.end()) return it->second;
    FieldData f;
    f.n = n;
    f.cyc = cyclotomic_poly(n);
    f.phi = static_cast<int>(f.cyc.size()) - 1;
    f.red.resize(n);
    for (int k = 0; k < n; ++k) {
        std::vector<Q> v(f.phi);
        if (k < f.phi) {
            v[k] = 1;
        } else {
            const auto& prev = f.red[k - 1];
            // multiply by z: shift up, replace z^phi using the monic relation
            Q top = prev[f.phi - 1];
            for (int i = f.phi - 1; i > 0; --i) v[i] = prev[i - 1];
            v[0] = 0;
            if (top != 0)
                for (int i = 0; i < f.phi; ++i) v[i] -= top * f.cyc[i];
        }
        f.red[k] = std::move(v);
    }
    return g_fields.emplace(n, std::move(f)).first->second;
}

// Left inverse for embedding Q(zeta_m) into Q(zeta_n).
const Projection& projection(int n, int m) {
    const FieldData& fn = field(n);
    const FieldData& fm = field(m);
    std::lock_guard<std::mutex> lk(g_mu);
    auto key = std::make_pair(n, m);
    auto it = g_proj.find(key);
    if (it != g_proj.end()) return it->second;
    int rows = fn.phi, cols = fm.phi, step = n / m;
    std::vector<std::vector<Q>> a(rows, std::vector<Q>(cols));
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) a[i][j] = fn.red[(step * j) % n][i];
    // pick pivot rows greedily by elimination on a copy
    Projection pr;
    std::vector<std::vector<Q>> work;
    std::vector<int> chosen;
    for (int i = 0; i < rows && (int)chosen.size() < cols; ++i) {
        std::vector<Q> r = a[i];
        for (size_t k = 0; k < work.size(); ++k) {
            int pc = 0;
            while (work[k][pc] == 0) ++pc;
            if (r[pc] != 0) {
                Q f = r[pc] / work[k][pc];
                for (int c = 0; c < cols; ++c) r[c] -= f * work[k][c];
            }
        }
        bool nz = false;
        for (auto& x : r) nz = nz || x != 0;
        if (nz) {
            work.push_back(r);
            chosen.push_back(i);
        }
    }
    if ((int)chosen.size() == cols) {
        // invert the square submatrix
        std::vector<std::vector<Q>> s(cols, std::vector<Q>(2 * cols));
        for (int i = 0; i < cols; ++i) {
            for (int j = 0; j < cols; ++j) s[i][j] = a[chosen[i]][j];
            s[i][cols + i] = 1;
        }
        for (int c = 0; c < cols; ++c) {
            int p = c;
            while (s[p][c] == 0) ++p;
            std::swap(s[p], s[c]);
            Q d = s[c][c];
            for (auto& x : s[c]) x /= d;
            for (int r = 0; r < cols; ++r) {
                if (r == c || s[r][c] == 0) continue;
                Q f = s[r][c];
                for (int k = 0; k < 2 * cols; ++k) s[r][k] -= f * s[c][k];
            }
        }
        pr.ok = true;
        pr.pivots = chosen;
        pr.inv.assign(cols, std::vector<Q>(cols));
        for (int i = 0; i < cols; ++i)
            for (int j = 0; j < cols; ++j) pr.inv[i][j] = s[i][cols + j];
    }
    return g_proj.emplace(key, std::move(pr)).first->second;
}

} // namespace

Cyclotomic::Cyclotomic(long v) : n_(1) {
    if (v != 0) c_.push_back(Q(v));
}

Cyclotomic::Cyclotomic(const Q& v) : n_(1) {
    if (v != 0) c_.push_back(v);
}

Cyclotomic Cyclotomic::from_powers(int n, const std::vector<Q>& c) {
    if (n < 1) fail(ErrorKind::Malformed, "cyclotomic order must be positive");
    const FieldData& f = field(n);
    Cyclotomic r;
    r.n_ = n;
    r.c_.assign(f.phi, Q(0));
    for (size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        const auto& v = f.red[k % n];
        for (int i = 0; i < f.phi; ++i)
            if (v[i] != 0) r.c_[i] += c[k] * v[i];
    }
    r.canonicalize();
    return r;
}

Cyclotomic Cyclotomic::zeta(int n, long k) {
    if (n < 1) fail(ErrorKind::Malformed, "zeta order must be positive");
    long kk = ((k % n) + n) % n;
    std::vector<Q> c(kk + 1);
    c[kk] = 1;
    return from_powers(n, c);
}

Q Cyclotomic::rational() const {
    if (n_ != 1) fail(ErrorKind::Internal, "not a rational cyclotomic");
    return c_.empty() ? Q(0) : c_[0];
}

bool Cyclotomic::is_one() const { return n_ == 1 && c_.size() == 1 && c_[0] == 1; }

void Cyclotomic::canonicalize() {
    bool allzero = true;
    for (auto& x : c_) allzero = allzero && x == 0;
    if (allzero) {
        n_ = 1;
        c_.clear();
        return;
    }
    if (n_ == 1) return;
    bool rat = true;
    for (size_t i = 1; i < c_.size(); ++i) rat = rat && c_[i] == 0;
    if (rat) {
        Q v = c_[0];
        n_ = 1;
        c_ = {v};
        return;
    }
    for (int m = 3; m < n_; ++m) {
        if (n_ % m || m % 4 == 2) continue;
        const Projection& pr = projection(n_, m);
        if (!pr.ok) continue;
        int cols = static_cast<int>(pr.pivots.size());
        std::vector<Q> x(cols);
        for (int i = 0; i < cols; ++i)
            for (int j = 0; j < cols; ++j) x[i] += pr.inv[i][j] * c_[pr.pivots[j]];
        // verify the full embedding
        const FieldData& fn = field(n_);
        std::vector<Q> back(fn.phi);
        int step = n_ / m;
        for (int j = 0; j < cols; ++j) {
            if (x[j] == 0) continue;
            const auto& v = fn.red[(step * j) % n_];
            for (int i = 0; i < fn.phi; ++i) back[i] += x[j] * v[i];
        }
        if (back == c_) {
            n_ = m;
            c_ = std::move(x);
            return;
        }
    }
}

Cyclotomic Cyclotomic::lift(int m) const {
    Cyclotomic r;
    const FieldData& fm = field(m);
    r.n_ = m;
    r.c_.assign(fm.phi, Q(0));
    if (c_.empty()) return r;
    int step = m / n_;
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        const auto& v = fm.red[(step * j) % m];
        for (int i = 0; i < fm.phi; ++i)
            if (v[i] != 0) r.c_[i] += c_[j] * v[i];
    }
    return r;
}

std::vector<Q> Cyclotomic::coordinates(int m) const {
    if (m % n_) fail(ErrorKind::Internal, "coordinates: order does not divide target");
    return lift(m).c_;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.n_ == 1 && b.n_ == 1) return Cyclotomic(a.c_[0] + b.c_[0]);
    int m = static_cast<int>(lcm_l(a.n_, b.n_));
    Cyclotomic x = a.n_ == m ? a : a.lift(m);
    Cyclotomic y = b.n_ == m ? b : b.lift(m);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    x.canonicalize();
    return x;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.is_zero() || b.is_zero()) return Cyclotomic();
    if (a.n_ == 1 && b.n_ == 1) return Cyclotomic(a.c_[0] * b.c_[0]);
    if (a.n_ == 1 || b.n_ == 1) {
        const Cyclotomic& s = a.n_ == 1 ? a : b;
        Cyclotomic r = a.n_ == 1 ? b : a;
        for (auto& x : r.c_) x *= s.c_[0];
        return r;
    }
    int m = static_cast<int>(lcm_l(a.n_, b.n_));
    Cyclotomic x = a.n_ == m ? a : a.lift(m);
    Cyclotomic y = b.n_ == m ? b : b.lift(m);
    std::vector<Q> prod(x.c_.size() + y.c_.size() - 1);
    for (size_t i = 0; i < x.c_.size(); ++i) {
        if (x.c_[i] == 0) continue;
        for (size_t j = 0; j < y.c_.size(); ++j)
            if (y.c_[j] != 0) prod[i + j] += x.c_[i] * y.c_[j];
    }
    return Cyclotomic::from_powers(m, prod);
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
    if (n_ == 1) return Cyclotomic(1 / c_[0]);
    // product of the nontrivial Galois conjugates is rational times the inverse
    Cyclotomic prod(1);
    for (long a = 2; a < n_; ++a)
        if (gcd_l(a, n_) == 1) prod *= galois(a);
    Cyclotomic norm = prod * *this;
    return prod * Cyclotomic(1 / norm.rational());
}

Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

Cyclotomic Cyclotomic::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyclotomic r(1), base = *this;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Cyclotomic Cyclotomic::galois(long a) const {
    if (n_ == 1) return *this;
    std::vector<Q> p(n_);
    for (size_t j = 0; j < c_.size(); ++j) p[(a * static_cast<long>(j)) % n_] += c_[j];
    return from_powers(n_, p);
}

std::optional<std::pair<Q, Q>> Cyclotomic::as_scaled_root_of_unity() const {
    if (is_zero()) return std::nullopt;
    int m = n_ % 2 ? 2 * n_ : n_;
    for (int k = 0; k < m; ++k) {
        Cyclotomic t = *this * zeta(m, -k);
        if (t.is_rational() && t.rational() > 0) {
            Q frac(k, m);
            frac.canonicalize();
            return std::make_pair(t.rational(), frac);
        }
    }
    return std::nullopt;
}

bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

namespace {

std::string zeta_str(const Q& t) {
    // t in [0,1), exp(2 pi i t)
    Z num = t.get_num(), den = t.get_den();
    if (den == 2) return "-1";
    std::string s = "zeta(" + den.get_str() + ")";
    if (num != 1) s += "^" + num.get_str();
    return s;
}

} // namespace

bool Cyclotomic::needs_parens() const {
    if (n_ == 1) return false;
    return !as_scaled_root_of_unity().has_value();
}

std::string Cyclotomic::str() const {
    if (is_zero()) return "0";
    if (n_ == 1) return c_[0].get_str();
    if (auto sr = as_scaled_root_of_unity()) {
        const auto& [q, t] = *sr;
        std::string z = zeta_str(t);
        if (z == "-1") return Q(-q).get_str();
        if (q == 1) return z;
        return q.get_str() + "*" + z;
    }
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        Q v = c_[i];
        if (!first) {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        } else if (v < 0 && i > 0) {
            os << "-";
            v = -v;
        }
        first = false;
        if (i == 0) {
            os << v.get_str();
            continue;
        }
        if (v != 1) os << v.get_str() << "*";
        os << "zeta(" << n_ << ")";
        if (i > 1) os << "^" << i;
    }
    return os.str();
}

} // namespace katz
