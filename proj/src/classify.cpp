#include "katz/classify.hpp"

#include "katz/engine.hpp"
#include "katz/error.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

namespace katz {

namespace {

using Matrix = std::vector<std::vector<Q>>;

Eigenvalue E(const char* s) { return Eigenvalue::parse(s); }

// all Jordan data of rank n with eigenvalues from the pool
std::vector<JordanData> all_jordan(int n, const std::vector<Eigenvalue>& pool) {
    std::vector<JordanData> out;
    std::vector<Block> cur;
    std::function<void(int, size_t, int)> rec = [&](int left, size_t ei, int maxsz) {
        if (left == 0) {
            out.push_back(JordanData(cur));
            return;
        }
        for (size_t e = ei; e < pool.size(); ++e)
            for (int s = (e == ei ? std::min(maxsz, left) : left); s >= 1; --s) {
                cur.push_back({pool[e], s});
                rec(left - s, e, s);
                cur.pop_back();
            }
    };
    rec(n, 0, n);
    return out;
}

// reduced row echelon form in place, returns pivot columns
std::vector<size_t> rref(Matrix& rows, size_t cols) {
    std::vector<size_t> pivots;
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        Q inv = 1 / rows[rank][c];
        for (size_t k = c; k < cols; ++k) rows[rank][k] *= inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            Q f = rows[r][c];
            for (size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
        }
        pivots.push_back(c);
        ++rank;
    }
    return pivots;
}

int rank_of(Matrix rows, size_t cols) { return static_cast<int>(rref(rows, cols).size()); }

Matrix nullspace(Matrix rows, size_t cols) {
    auto pivots = rref(rows, cols);
    std::vector<bool> is_piv(cols, false);
    for (size_t p : pivots) is_piv[p] = true;
    Matrix out;
    for (size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<Q> v(cols, Q(0));
        v[f] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][f];
        out.push_back(std::move(v));
    }
    return out;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    size_t n = a.size();
    Matrix c(n, std::vector<Q>(n, Q(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

// ---- explicit g2 inside gl7 ----
//
// Weight basis e0 (weight 0), e1..e3 (eps1..eps3), e4..e6 (-eps1..-eps3) with
// eps3 = -eps1 - eps2, weights written in the (eps1, eps2) lattice. g2 is the
// stabiliser of w = e123 + e456 + c (e014 + e025 + e036).

constexpr int kDim = 7;
const int kWeight[kDim][2] = {{0, 0}, {1, 0}, {0, 1}, {-1, -1}, {-1, 0}, {0, -1}, {1, 1}};

struct Root {
    int m = 0, n = 0;
    Matrix vec;  // root vector
    bool positive() const { return 3 * m + n > 0; }
};

struct G2Algebra {
    std::vector<Root> roots;
    Matrix basis_flat;  // 14 flattened basis matrices
};

int triple_index(std::array<int, 3> t, int& sign) {
    sign = 1;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j + 1 < 3 - i; ++j)
            if (t[j] > t[j + 1]) {
                std::swap(t[j], t[j + 1]);
                sign = -sign;
            }
    if (t[0] == t[1] || t[1] == t[2]) return -1;
    return t[0] * 49 + t[1] * 7 + t[2];
}

// equations X.w = 0 restricted to the variables X[m][i] accepted by keep
Matrix stabiliser_equations(const Q& c, const std::function<bool(int, int)>& keep, std::vector<std::pair<int, int>>& vars) {
    std::vector<std::pair<std::array<int, 3>, Q>> form{{{1, 2, 3}, Q(1)}, {{4, 5, 6}, Q(1)},
                                                       {{0, 1, 4}, c}, {{0, 2, 5}, c}, {{0, 3, 6}, c}};
    vars.clear();
    std::map<std::pair<int, int>, size_t> col;
    for (int m = 0; m < kDim; ++m)
        for (int i = 0; i < kDim; ++i)
            if (keep(m, i)) {
                col[{m, i}] = vars.size();
                vars.push_back({m, i});
            }
    std::map<int, std::vector<Q>> eqs;
    for (const auto& [t, w] : form)
        for (int slot = 0; slot < 3; ++slot)
            for (int m = 0; m < kDim; ++m) {
                auto it = col.find({m, t[slot]});
                if (it == col.end()) continue;
                auto nt = t;
                nt[slot] = m;
                int sign = 0;
                int idx = triple_index(nt, sign);
                if (idx < 0) continue;
                auto& row = eqs[idx];
                if (row.empty()) row.assign(vars.size(), Q(0));
                row[it->second] += w * sign;
            }
    Matrix rows;
    for (auto& [k, r] : eqs) rows.push_back(std::move(r));
    return rows;
}

Matrix from_vars(const std::vector<Q>& v, const std::vector<std::pair<int, int>>& vars) {
    Matrix x(kDim, std::vector<Q>(kDim, Q(0)));
    for (size_t k = 0; k < vars.size(); ++k) x[vars[k].first][vars[k].second] = v[k];
    return x;
}

G2Algebra build_g2() {
    for (Q c : {Q(1), Q(-1), Q(2), Q(-2), Q(1, 2)}) {
        G2Algebra g;
        std::vector<std::pair<int, int>> vars;
        Matrix eqs = stabiliser_equations(c, [](int, int) { return true; }, vars);
        auto all = nullspace(eqs, vars.size());
        if (all.size() != 14) continue;
        std::map<std::pair<int, int>, int> weights;
        for (int m = 0; m < kDim; ++m)
            for (int i = 0; i < kDim; ++i)
                if (m != i) weights[{kWeight[m][0] - kWeight[i][0], kWeight[m][1] - kWeight[i][1]}]++;
        bool ok = true;
        for (const auto& [w, cnt] : weights) {
            if (w.first == 0 && w.second == 0) continue;
            Matrix sub = stabiliser_equations(
                c,
                [&](int m, int i) {
                    return kWeight[m][0] - kWeight[i][0] == w.first && kWeight[m][1] - kWeight[i][1] == w.second;
                },
                vars);
            auto ker = nullspace(sub, vars.size());
            if (ker.empty()) continue;
            if (ker.size() != 1) ok = false;
            g.roots.push_back({w.first, w.second, from_vars(ker[0], vars)});
        }
        if (!ok || g.roots.size() != 12) continue;
        g.basis_flat = all;  // variables are X[m][i] in row-major order
        return g;
    }
    fail(ErrorKind::Internal, "no 3-form coefficient gives a 14-dimensional stabiliser");
}

const G2Algebra& g2_algebra() {
    static const G2Algebra g = build_g2();
    return g;
}

JordanData jordan_of(const std::vector<Eigenvalue>& s, const Matrix& n) {
    std::map<Eigenvalue, std::vector<int>> spaces;
    for (int i = 0; i < kDim; ++i) spaces[s[i]].push_back(i);
    std::vector<Block> blocks;
    for (const auto& [eig, idx] : spaces) {
        size_t d = idx.size();
        Matrix sub(d, std::vector<Q>(d, Q(0)));
        for (size_t a = 0; a < d; ++a)
            for (size_t b = 0; b < d; ++b) sub[a][b] = n[idx[a]][idx[b]];
        std::vector<int> ranks{static_cast<int>(d)};
        Matrix pw = sub;
        while (ranks.back() > 0) {
            ranks.push_back(rank_of(pw, d));
            pw = mat_mul(pw, sub);
        }
        // blocks of size >= k: ranks[k-1] - ranks[k]
        for (size_t k = 1; k < ranks.size(); ++k) {
            int at_least = ranks[k - 1] - ranks[k];
            int larger = k + 1 < ranks.size() ? ranks[k] - ranks[k + 1] : 0;
            for (int c = 0; c < at_least - larger; ++c) blocks.push_back({eig, static_cast<int>(k)});
        }
    }
    return JordanData(std::move(blocks));
}

// dimension of the G2 centraliser of s exp(n)
int ad_invariants(const std::vector<Eigenvalue>& s, const Matrix& n) {
    const auto& g = g2_algebra();
    size_t nb = g.basis_flat.size();
    Matrix rows;
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) {
            if (s[i] != s[j]) {
                std::vector<Q> r(nb);
                for (size_t k = 0; k < nb; ++k) r[k] = g.basis_flat[k][i * kDim + j];
                rows.push_back(std::move(r));
            }
            // [n, X]_{ij}
            std::vector<Q> r(nb, Q(0));
            for (size_t k = 0; k < nb; ++k)
                for (int l = 0; l < kDim; ++l)
                    r[k] += n[i][l] * g.basis_flat[k][l * kDim + j] - g.basis_flat[k][i * kDim + l] * n[l][j];
            rows.push_back(std::move(r));
        }
    return static_cast<int>(nb) - rank_of(rows, nb);
}

std::vector<G2Class> build_g2_classes() {
    const auto& g = g2_algebra();
    std::vector<Eigenvalue> as, bs;
    for (int k = 0; k < 12; ++k) {
        Eigenvalue z = Eigenvalue::zeta(12, k);
        as.push_back(z);
        as.push_back(z * E("x"));
        for (int j = -2; j <= 2; ++j) bs.push_back(z * E("x").pow(static_cast<long>(j)));
    }
    bs.push_back(E("y"));
    std::map<JordanData, G2Class> found;
    for (const auto& a : as)
        for (const auto& b : bs) {
            std::vector<Eigenvalue> s;
            for (int i = 0; i < kDim; ++i)
                s.push_back(a.pow(static_cast<long>(kWeight[i][0])) * b.pow(static_cast<long>(kWeight[i][1])));
            std::vector<const Root*> cent;
            for (const auto& r : g.roots)
                if (r.positive() && (a.pow(static_cast<long>(r.m)) * b.pow(static_cast<long>(r.n))).is_one())
                    cent.push_back(&r);
            for (unsigned mask = 0; mask < (1u << cent.size()); ++mask) {
                Matrix n(kDim, std::vector<Q>(kDim, Q(0)));
                for (size_t k = 0; k < cent.size(); ++k)
                    if (mask & (1u << k))
                        for (int i = 0; i < kDim; ++i)
                            for (int j = 0; j < kDim; ++j) n[i][j] += cent[k]->vec[i][j];
                JordanData j = jordan_of(s, n);
                if (found.count(j)) continue;
                found[j] = {j, centralizer_dim(j), ad_invariants(s, n)};
            }
        }
    std::vector<G2Class> out;
    for (auto& [j, c] : found) out.push_back(c);
    return out;
}

// ---- shapes ----

struct PieceKind {
    int p, q;
    bool paired;   // (phi, R) + (-phi, R*)
    int dim_per_rank;
};

std::vector<PieceKind> kinds_for(const Q& slope) {
    if (slope == 1) return {{1, 1, true, 2}, {2, 2, true, 4}};
    int k = static_cast<int>(slope.get_den().get_si());
    if (k % 2 == 0) return {{k, 1, false, k}};
    return {{k, 1, true, 2 * k}};
}

// member lists for one slope part; symbols are numbered from sym
std::vector<std::pair<std::vector<Elementary>, bool>> part_choices(const SlopePart& part, int& sym, bool specialise) {
    static const std::vector<Eigenvalue> rpool{E("1"), E("-1"), E("y"), E("w")};
    static const std::vector<Eigenvalue> sdpool{E("1"), E("-1"), E("y"), E("y^-1"), E("i"), E("-i")};
    auto kinds = kinds_for(part.slope);
    std::vector<std::pair<std::vector<Elementary>, bool>> out;
    std::vector<Elementary> cur;
    int base = sym;
    int max_pieces = 0;
    // pieces ordered by (kind, rank) non-increasing so each multiset is visited once
    std::function<void(int, size_t, int, int, bool)> rec = [&](int left, size_t ki, int maxr, int idx, bool special) {
        max_pieces = std::max(max_pieces, idx);
        if (left == 0) {
            out.push_back({cur, special});
            return;
        }
        for (size_t k = ki; k < kinds.size(); ++k) {
            const auto& kd = kinds[k];
            int top = left / kd.dim_per_rank;
            if (k == ki) top = std::min(top, maxr);
            for (int r = top; r >= 1; --r) {
                auto pool = kd.paired ? all_jordan(r, rpool) : all_jordan(r, sdpool);
                for (const auto& R : pool) {
                    if (!kd.paired && jordan_dual(R) != R) continue;
                  for (int spec = 0; spec < (idx > 0 && kd.q == 1 && specialise ? 2 : 1); ++spec) {
                    // specialisation: a_j = 2 a_0 inside one part
                    Scalar a = spec ? Scalar(2) * Scalar::symbol("a" + std::to_string(base))
                                    : Scalar::symbol("a" + std::to_string(base + idx));
                    Elementary e;
                    e.p = kd.p;
                    e.R = R;
                    e.phi[kd.q] = a;
                    if (kd.q == 2) e.phi[1] = Scalar::symbol("b" + std::to_string(base + idx));
                    size_t n = cur.size();
                    cur.push_back(e);
                    if (kd.paired) {
                        Elementary f = e;
                        f.phi = tail_neg(e.phi);
                        f.R = jordan_dual(R);
                        cur.push_back(f);
                    }
                    rec(left - r * kd.dim_per_rank, k, r, idx + 1, special || kd.q == 2);
                    cur.resize(n);
                  }
                }
            }
        }
    };
    rec(part.dim, 0, part.dim, 0, false);
    sym += max_pieces + 1;
    return out;
}

} // namespace

std::string profile_str(const SlopeProfile& p) {
    std::ostringstream os;
    for (size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i].slope.get_str();
    os << " |";
    for (size_t i = 0; i < p.size(); ++i) os << (i ? ", " : " ") << p[i].dim;
    return os.str();
}

SlopeProfile profile_of(const FormalType& f) {
    SlopeProfile out;
    for (const auto& [s, d] : ft_invariants(f).slopes)
        if (s > 0) out.push_back({s, d});
    return out;
}

std::vector<SlopeProfile> enumerate_slope_profiles() {
    // slope 1/k parts: dimension a multiple of k, of 2k for odd k (dual pairs)
    std::vector<std::pair<int, std::vector<int>>> parts;
    for (int k : {1, 2, 3, 4, 6}) {
        std::vector<int> dims;
        int step = k % 2 ? 2 * k : k;
        for (int d = step; d <= 6; d += step) dims.push_back(d);
        parts.push_back({k, dims});
    }
    std::vector<SlopeProfile> out;
    SlopeProfile cur;
    std::function<void(size_t, int)> rec = [&](size_t i, int total) {
        if (i == parts.size()) {
            // the regular part has rank 1 or 3
            if (total != 4 && total != 6) return;
            // top slope 1/b of multiplicity b forces b = 6
            const auto& top = cur.front();  // parts are pushed by increasing k
            int b = static_cast<int>(top.slope.get_den().get_si());
            if (top.dim == b && b != 6) return;
            SlopeProfile p = cur;
            std::sort(p.begin(), p.end(), [](const SlopePart& x, const SlopePart& y) { return x.slope < y.slope; });
            out.push_back(p);
            return;
        }
        rec(i + 1, total);
        for (int d : parts[i].second) {
            if (total + d > 6) break;
            cur.push_back({Q(1, parts[i].first), d});
            rec(i + 1, total + d);
            cur.pop_back();
        }
    };
    rec(0, 0);
    // table order: lowest slope descending, mixed profiles first, then dimensions
    std::sort(out.begin(), out.end(), [](const SlopeProfile& a, const SlopeProfile& b) {
        auto key = [](const SlopeProfile& p) {
            std::vector<int> dims;
            for (const auto& x : p) dims.push_back(x.dim);
            return std::make_tuple(Q(-p.front().slope), -static_cast<int>(p.size()), dims);
        };
        return key(a) < key(b);
    });
    return out;
}

std::vector<CandidateShape> enumerate_shapes(const SlopeProfile& prof, bool specialise) {
    static const std::vector<Eigenvalue> regpool{E("1"), E("-1"), E("x"), E("x^-1"), E("i"), E("-i")};
    int dirr = 0;
    for (const auto& p : prof) dirr += p.dim;
    if (dirr > 7) fail(ErrorKind::Precondition, "slope profile exceeds rank 7");
    int sym = 1;
    std::vector<std::vector<std::pair<std::vector<Elementary>, bool>>> choices;
    for (const auto& p : prof) choices.push_back(part_choices(p, sym, specialise));
    auto regs = all_jordan(7 - dirr, regpool);
    std::vector<CandidateShape> out;
    std::vector<Elementary> cur;
    std::function<void(size_t, bool)> rec = [&](size_t i, bool special) {
        if (i == choices.size()) {
            for (const auto& reg : regs) {
                if (jordan_dual(reg) != reg) continue;
                FormalType f(reg, cur);
                auto c = ft_checks(f);
                if (c.self_dual && c.det_trivial) out.push_back({f, special});
            }
            return;
        }
        for (const auto& [members, sp] : choices[i]) {
            size_t n = cur.size();
            cur.insert(cur.end(), members.begin(), members.end());
            rec(i + 1, special || sp);
            cur.resize(n);
        }
    };
    rec(0, false);
    return out;
}

std::set<int> LocalInvariantRow::soln() const {
    std::set<int> s;
    for (const auto& [i, z] : pairs) s.insert(z);
    for (const auto& [i, z] : special_pairs) s.insert(z);
    return s;
}

std::set<int> LocalInvariantRow::irr() const {
    std::set<int> s;
    for (const auto& [i, z] : pairs) s.insert(i);
    for (const auto& [i, z] : special_pairs) s.insert(i);
    return s;
}

std::vector<LocalInvariantRow> enumerate_local_invariants(bool specialise) {
    std::vector<LocalInvariantRow> out;
    for (const auto& prof : enumerate_slope_profiles()) {
        LocalInvariantRow row{prof, {}, {}};
        for (const auto& sh : enumerate_shapes(prof, specialise)) {
            FormalType e = ft_end(sh.type);
            std::pair<int, int> v{ft_invariants(e).irregularity, ft_soln_dim(e)};
            (sh.special ? row.special_pairs : row.pairs).insert(v);
        }
        out.push_back(std::move(row));
    }
    return out;
}

const std::vector<G2Class>& g2_classes() {
    static const std::vector<G2Class> c = build_g2_classes();
    return c;
}

const G2Class* find_g2_class(const JordanData& j) {
    for (const auto& c : g2_classes())
        if (c.monodromy == j) return &c;
    return nullptr;
}

std::set<int> regular_soln_values() {
    std::set<int> out;
    for (const auto& c : g2_classes())
        if (c.monodromy != JordanData::scalar(Eigenvalue(), 7)) out.insert(c.z);
    return out;
}

int RigidityTuple::rig() const {
    int v = (2 - r()) * 49;
    for (int x : s) v -= x;
    for (int x : z) v += x;
    return v;
}

std::string RigidityTuple::str() const {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (const auto* v : {&s, &z})
        for (int x : *v) {
            os << (first ? "" : ", ") << x;
            first = false;
        }
    os << ")";
    return os.str();
}

std::vector<RigidityTuple> solve_rigidity_tuples(int r, const std::vector<LocalInvariantRow>& table,
                                                 const std::set<int>& regular) {
    if (r < 2) fail(ErrorKind::Precondition, "need at least two singular points");
    std::set<RigidityTuple> out;
    std::vector<int> zs(regular.begin(), regular.end());
    for (const auto& row : table)
        for (const auto& [irr, soln] : row.pairs) {
            int need = 2 + (r - 2) * 49 + irr - soln;  // sum of the regular z
            std::vector<int> cur;
            std::function<void(size_t, int)> rec = [&](size_t from, int left) {
                if (static_cast<int>(cur.size()) == r - 1) {
                    if (left != 0) return;
                    RigidityTuple t;
                    t.s.assign(r - 1, 0);
                    t.s.push_back(irr);
                    t.z = cur;
                    t.z.push_back(soln);
                    out.insert(t);
                    return;
                }
                for (size_t i = from; i < zs.size() && zs[i] <= left; ++i) {
                    cur.push_back(zs[i]);
                    rec(i, left - zs[i]);
                    cur.pop_back();
                }
            };
            rec(0, need);
        }
    return {out.begin(), out.end()};
}

RigidityTuple rigidity_tuple(const Descriptor& d) {
    RigidityData rd = rigidity_data(d);
    std::vector<std::pair<int, int>> reg, irr;
    for (size_t i = 0; i < rd.irr.size(); ++i) (rd.irr[i] ? irr : reg).push_back({rd.irr[i], rd.soln[i]});
    std::sort(reg.begin(), reg.end(), [](auto& a, auto& b) { return a.second < b.second; });
    RigidityTuple t;
    for (const auto* v : {&reg, &irr})
        for (const auto& [i, z] : *v) {
            t.s.push_back(i);
            t.z.push_back(z);
        }
    return t;
}

std::vector<Eigenvalue> eigen_multiset(const JordanData& j) {
    std::vector<Eigenvalue> out;
    for (const auto& b : j.blocks())
        for (int i = 0; i < b.size; ++i) out.push_back(b.eig);
    std::sort(out.begin(), out.end());
    return out;
}

bool g2_pattern_check(const std::vector<Eigenvalue>& eigs) {
    if (eigs.size() != 7) return false;
    std::vector<Eigenvalue> rest = eigs;
    auto one = std::find_if(rest.begin(), rest.end(), [](const Eigenvalue& e) { return e.is_one(); });
    if (one == rest.end()) return false;
    rest.erase(one);
    std::sort(rest.begin(), rest.end());
    for (const auto& a : rest)
        for (const auto& b : rest) {
            std::vector<Eigenvalue> t{a, b, a * b, a.inverse(), b.inverse(), (a * b).inverse()};
            std::sort(t.begin(), t.end());
            if (t == rest) return true;
        }
    return false;
}

bool RowReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckItem& c) { return c.ok; });
}

RowReport verify_row(const std::string& name, const Descriptor& d, bool lambda3, const Descriptor* reference) {
    RowReport rep{name, {}};
    std::vector<std::pair<std::string, const FormalType*>> pts;
    for (const auto& p : d.finite()) pts.push_back({p.at.str(), &p.type});
    pts.push_back({"inf", &d.infinity()});

    int rig = rigidity_index(d);
    rep.checks.push_back({"rigid", rig == 2, "rig = " + std::to_string(rig)});

    bool sd = true;
    std::string bad;
    for (const auto& [loc, f] : pts) {
        auto c = ft_checks(*f);
        if (!c.self_dual || !c.det_trivial) {
            sd = false;
            bad += " " + loc;
        }
    }
    rep.checks.push_back({"self-dual, det 1", sd, sd ? "all points" : "fails at" + bad});

    int torus = 0;
    for (const auto& [loc, f] : pts) torus = std::max(torus, ft_exponential_torus_dim(*f));
    rep.checks.push_back({"torus", torus <= 2, "max dim " + std::to_string(torus)});

    bool pat = true;
    bad.clear();
    for (const auto& [loc, f] : pts) {
        if (!g2_pattern_check(eigen_multiset(ft_formal_monodromy(*f)))) {
            pat = false;
            bad += " " + loc;
        }
    }
    rep.checks.push_back({"G2 pattern", pat, pat ? "all points" : "fails at" + bad});

    if (lambda3) {
        std::vector<FormalType> cubes;
        for (const auto& [loc, f] : pts) cubes.push_back(ft_exterior_power(*f, 3));
        int chi = euler_char_middle(cubes);
        rep.checks.push_back({"Lambda3 invariant", chi >= 1, "chi = " + std::to_string(chi)});
    }

    if (reference) {
        auto at0 = [](const Descriptor& x) -> const FormalType* {
            const Point* p = x.find(Scalar(0));
            return p ? &p->type : nullptr;
        };
        const FormalType* mine = at0(d);
        const FormalType* theirs = at0(*reference);
        const G2Class* a = mine ? find_g2_class(mine->regular()) : nullptr;
        const G2Class* b = theirs ? find_g2_class(theirs->regular()) : nullptr;
        if (!a || !b) {
            rep.checks.push_back({"adjoint invariants", false, "monodromy at 0 is not a G2 class"});
        } else {
            rep.checks.push_back({"adjoint invariants", a->ad_invariants == b->ad_invariants,
                                  std::to_string(a->ad_invariants) + " vs " + std::to_string(b->ad_invariants)});
        }
    }
    return rep;
}

std::vector<RowReport> verify_classification() {
    std::vector<RowReport> out;
    Descriptor ref = Descriptor::load(golden_path("rows/row04.json"));
    for (int i = 1; i <= 11; ++i) {
        std::string name = i <= 10 ? (i < 10 ? "row0" : "row") + std::to_string(i) : "excluded";
        Descriptor d = Descriptor::load(golden_path("rows/" + name + ".json"));
        bool shares = d.infinity() == ref.infinity();
        out.push_back(verify_row(name, d, i <= 5, shares ? &ref : nullptr));
    }
    return out;
}

namespace {

FormalType pull_type(const FormalType& f, int k) {
    std::vector<Elementary> members;
    for (const auto& m : f.irregular())
        for (const auto& e : el_pullback(m, k)) members.push_back(e);
    return FormalType(jordan_pull(f.regular(), k), members);
}

Elementary el(int p, const Scalar& a, const char* R) {
    Elementary e;
    e.p = p;
    e.phi[1] = a;
    e.R = JordanData::parse(R);
    return e;
}

// leading coefficients of the members of f
std::vector<Scalar> coefficients(const FormalType& f) {
    std::vector<Scalar> out;
    for (const auto& m : f.irregular())
        if (m.phi.count(1)) out.push_back(m.phi.at(1));
    return out;
}

JordanData from_eigs(const std::vector<Eigenvalue>& v) {
    std::vector<Block> b;
    for (const auto& e : v) b.push_back({e, 1});
    return JordanData(std::move(b));
}

} // namespace

Descriptor pullback_descriptor(const Descriptor& d, int k) {
    if (k < 1) fail(ErrorKind::Precondition, "pullback degree must be positive");
    std::vector<Point> pts;
    for (const auto& p : d.finite()) {
        if (p.at != Scalar(0)) fail(ErrorKind::Unsupported, "pullback only handles singular points at 0 and infinity");
        pts.push_back({Scalar(0), pull_type(p.type, k)});
    }
    return Descriptor(d.rank(), pts, pull_type(d.infinity(), k));
}

std::vector<PullbackReport> pullback_identities() {
    std::vector<PullbackReport> out;
    auto row = [](const char* n) { return Descriptor::load(golden_path(std::string("rows/") + n + ".json")); };

    // [2]: row10 with x = zeta8, y = zeta8^2 becomes row05
    {
        Eigenvalue x = Eigenvalue::zeta(8), y = Eigenvalue::zeta(8, 2);
        Descriptor r10 = row("row10");
        Descriptor s(7, {{Scalar(0), FormalType(from_eigs({x, y, x * y, (x * y).inverse(), y.inverse(), x.inverse(), Eigenvalue()}))}},
                     r10.infinity());
        Descriptor p = pullback_descriptor(s, 2);
        const Point* z = p.find(Scalar(0));
        bool ok0 = z && z->type == FormalType::parse("(iE2, -iE2, -E2, 1)");
        bool okinf = false;
        for (const auto& a : coefficients(p.infinity())) {
            FormalType want(JordanData::parse("(1)"), {el(3, a, "(1)"), el(3, -a, "(1)")});
            okinf = okinf || p.infinity() == want;
        }
        out.push_back({"[2] row10 -> row05", ok0 && okinf,
                       "0: " + (z ? z->type.str() : std::string("-")) + "  inf: " + p.infinity().str()});
    }
    // [3]: row09 with x = zeta3 becomes row04
    {
        Eigenvalue x = Eigenvalue::zeta(3);
        Descriptor r09 = row("row09");
        Descriptor s(7, {{Scalar(0), FormalType(JordanData({{x, 2}, {x.inverse(), 2}, {Eigenvalue(), 3}}))}},
                     r09.infinity());
        Descriptor p = pullback_descriptor(s, 3);
        const Point* z = p.find(Scalar(0));
        bool ok0 = z && z->type == FormalType::parse("(J(3), J(2), J(2))");
        bool okinf = false;
        for (const auto& c : coefficients(p.infinity())) {
            Scalar a = -c;
            FormalType want(JordanData::parse("(-1)"),
                            {el(2, -a, "(1)"), el(2, Scalar::zeta(6, 5) * a, "(1)"), el(2, Scalar::zeta(6, 4) * a, "(1)")});
            okinf = okinf || p.infinity() == want;
        }
        // row04 shape: the three coefficients satisfy a1 + a2 = a3 up to the sign orbit
        bool additive = false;
        auto cs = coefficients(p.infinity());
        if (cs.size() == 3)
            for (int i = 0; i < 3; ++i)
                for (int sg = 0; sg < 4; ++sg) {
                    Scalar u = cs[(i + 1) % 3] * (sg & 1 ? -1 : 1), v = cs[(i + 2) % 3] * (sg & 2 ? -1 : 1);
                    additive = additive || u + v == cs[i] || u + v == -cs[i];
                }
        out.push_back({"[3] row09 -> row04", ok0 && okinf && additive,
                       "0: " + (z ? z->type.str() : std::string("-")) + "  inf: " + p.infinity().str()});
    }
    // [1] is the identity
    {
        bool ok = true;
        for (const char* n : {"row01", "row04", "row05", "row06", "row10"}) {
            Descriptor d = row(n);
            ok = ok && same_descriptor(pullback_descriptor(d, 1), d);
        }
        out.push_back({"[1] identity", ok, "rows 1, 4, 5, 6, 10"});
    }
    return out;
}

} // namespace katz
