#include "doctest.h"
#include "katz/classify.hpp"
#include "katz/engine.hpp"

#include <algorithm>
#include <random>

using namespace katz;

namespace {

Descriptor row(const std::string& name) { return Descriptor::load(golden_path("rows/" + name + ".json")); }

SlopeProfile prof(std::vector<std::pair<Q, int>> parts) {
    SlopeProfile p;
    for (auto& [s, d] : parts) p.push_back({s, d});
    return p;
}

const LocalInvariantRow& row_for(const std::vector<LocalInvariantRow>& t, const SlopeProfile& p) {
    auto it = std::find_if(t.begin(), t.end(), [&](const LocalInvariantRow& r) { return r.profile == p; });
    REQUIRE(it != t.end());
    return *it;
}

const std::vector<LocalInvariantRow>& table() {
    static const auto t = enumerate_local_invariants();
    return t;
}

RigidityTuple tup(std::vector<int> s, std::vector<int> z) { return {std::move(s), std::move(z)}; }

Eigenvalue E(const char* s) { return Eigenvalue::parse(s); }

} // namespace

TEST_CASE("slope profiles") {
    auto ps = enumerate_slope_profiles();
    CHECK(ps.size() == 10);
    auto has = [&](const SlopeProfile& p) { return std::find(ps.begin(), ps.end(), p) != ps.end(); };
    CHECK(has(prof({{Q(1, 6), 6}})));
    CHECK(has(prof({{Q(1, 2), 2}, {Q(1), 4}})));
    CHECK(has(prof({{Q(1, 4), 4}, {Q(1), 2}})));
    // slope 1/4 alone would fill 4 = 4 dimensions with b != 6
    CHECK_FALSE(has(prof({{Q(1, 4), 4}})));
    CHECK_FALSE(has(prof({{Q(1, 4), 4}, {Q(1, 2), 2}})));
    for (const auto& p : ps) {
        int d = 0;
        for (const auto& part : p) {
            CHECK(part.slope.get_num() == 1);
            d += part.dim;
        }
        CHECK((d == 4 || d == 6));
    }
    CHECK(profile_str(prof({{Q(1, 2), 2}, {Q(1), 4}})) == "1/2, 1 | 2, 4");
}

TEST_CASE("shapes are self-dual with trivial determinant") {
    for (const auto& p : enumerate_slope_profiles())
        for (const auto& sh : enumerate_shapes(p, false)) {
            auto c = ft_checks(sh.type);
            CHECK(c.self_dual);
            CHECK(c.det_trivial);
            CHECK(sh.type.rank() == 7);
            CHECK(profile_of(sh.type) == p);
        }
}

TEST_CASE("local invariants") {
    const auto& t = table();
    CHECK(t.size() == 10);
    const auto& r16 = row_for(t, prof({{Q(1, 6), 6}}));
    CHECK(r16.soln() == std::set<int>{2});
    CHECK(r16.irr() == std::set<int>{7});
    const auto& r12 = row_for(t, prof({{Q(1, 2), 6}}));
    CHECK(r12.soln() == std::set<int>{4, 6, 10});
    CHECK(r12.irr() == std::set<int>{15, 19, 21});
    // El(3, a, y) + El(3, -a, 1/y) + (1): End has irr 2 + 2 + 3 + 3 + 4 * 1 = 14 and
    // 3 + 3 + 1 formal solutions; nothing else is admissible for slope 1/3
    const auto& r13 = row_for(t, prof({{Q(1, 3), 6}}));
    CHECK(r13.pairs == std::set<std::pair<int, int>>{{14, 3}});
    // El(6, a, R) with R = (1): End irr = 30 * 1/6 + 2 * 6 * 1/6 = 7, Soln = 1 + 1
    CHECK(r16.pairs == std::set<std::pair<int, int>>{{7, 2}});

    // pole order 2 members occur only on slope 1 parts
    for (const auto& r : t)
        if (!r.special_pairs.empty()) CHECK(r.profile.back().slope == 1);

    // the rows' formal types at infinity are among the enumerated shapes' values
    for (const char* n : {"row01", "row04", "row05", "row06", "row10", "excluded"}) {
        FormalType f = row(n).infinity();
        FormalType e = ft_end(f);
        std::pair<int, int> v{ft_invariants(e).irregularity, ft_soln_dim(e)};
        CHECK_MESSAGE(row_for(t, profile_of(f)).pairs.count(v), n);
    }
}

TEST_CASE("specialising parameters leaves the value sets unchanged") {
    for (const auto& p : {prof({{Q(1), 4}}), prof({{Q(1, 2), 4}}), prof({{Q(1, 2), 2}, {Q(1), 4}})}) {
        std::set<std::pair<int, int>> a, b;
        for (const auto& sh : enumerate_shapes(p, false)) {
            FormalType e = ft_end(sh.type);
            a.insert({ft_invariants(e).irregularity, ft_soln_dim(e)});
        }
        for (const auto& sh : enumerate_shapes(p, true)) {
            FormalType e = ft_end(sh.type);
            b.insert({ft_invariants(e).irregularity, ft_soln_dim(e)});
        }
        CHECK(a == b);
    }
}

TEST_CASE("renaming parameters leaves local invariants unchanged") {
    FormalType f = FormalType::parse("El(1, a1, (1)) + El(1, -a1, (1)) + El(1, a2, (-1)) + El(1, -a2, (-1)) + (1, 1, 1)");
    FormalType g = FormalType::parse("El(1, a2, (1)) + El(1, -a2, (1)) + El(1, a1, (-1)) + El(1, -a1, (-1)) + (1, 1, 1)");
    FormalType ef = ft_end(f), eg = ft_end(g);
    CHECK(ft_invariants(ef).irregularity == ft_invariants(eg).irregularity);
    CHECK(ft_soln_dim(ef) == ft_soln_dim(eg));
}

TEST_CASE("G2 classes") {
    const auto& cs = g2_classes();
    CHECK(cs.size() > 20);
    auto ad = [](const char* j) {
        const G2Class* c = find_g2_class(JordanData::parse(j));
        REQUIRE(c);
        return c->ad_invariants;
    };
    // unipotent classes 1, A1, A1~, G2(a1), G2 have centralisers of dimension 14, 8, 6, 4, 2
    CHECK(ad("(E7)") == 14);
    CHECK(ad("(J(2), J(2), E3)") == 8);
    CHECK(ad("(J(3), J(2), J(2))") == 6);
    CHECK(ad("(J(3), J(3), 1)") == 4);
    CHECK(ad("(J(7))") == 2);
    // semisimple: centralisers SL3 and SO4
    CHECK(ad("(zeta(3)E3, zeta(3)^-1E3, 1)") == 8);
    CHECK(ad("(-E4, E3)") == 6);
    CHECK(find_g2_class(JordanData::parse("(J(4), J(3))")) == nullptr);
    CHECK(find_g2_class(JordanData::parse("(J(2), E5)")) == nullptr);

    for (const auto& c : cs) {
        CHECK(c.monodromy.rank() == 7);
        CHECK(jordan_dual(c.monodromy) == c.monodromy);
        CHECK(jordan_det(c.monodromy).is_one());
        CHECK(g2_pattern_check(eigen_multiset(c.monodromy)));
        CHECK(c.z == centralizer_dim(c.monodromy));
        CHECK(c.ad_invariants <= c.z);
        CHECK(c.ad_invariants % 2 == 0);  // rank 2 plus root spaces in pairs
    }
    CHECK(regular_soln_values() == std::set<int>{7, 9, 11, 13, 17, 19, 25, 29});
}

TEST_CASE("rigidity tuples") {
    auto zreg = regular_soln_values();
    auto t3 = solve_rigidity_tuples(3, table(), zreg);
    std::vector<RigidityTuple> want3{tup({0, 0, 16}, {25, 29, 13}), tup({0, 0, 16}, {29, 29, 9}),
                                     tup({0, 0, 18}, {29, 29, 11})};
    CHECK(t3 == want3);
    CHECK(solve_rigidity_tuples(4, table(), zreg).empty());
    CHECK_THROWS_AS(solve_rigidity_tuples(1, table(), zreg), Error);

    auto t2 = solve_rigidity_tuples(2, table(), zreg);
    for (int r = 2; r <= 3; ++r)
        for (const auto& t : solve_rigidity_tuples(r, table(), zreg)) {
            CHECK(t.rig() == 2);
            CHECK(t.r() == r);
        }
    auto has = [&](const RigidityTuple& x) { return std::find(t2.begin(), t2.end(), x) != t2.end(); };
    CHECK(has(tup({0, 7}, {7, 2})));
    CHECK(has(tup({0, 21}, {19, 4})));
    CHECK(tup({0, 7}, {7, 2}).str() == "(0, 7, 7, 2)");

    // every constructed row has a tuple in the list
    for (const char* n : {"row01", "row02", "row03", "row04", "row05", "row06", "row07", "row08", "row09", "row10"})
        CHECK_MESSAGE(has(rigidity_tuple(row(n))), n);
    CHECK(rigidity_tuple(row("row01")) == tup({0, 19}, {17, 4}));
    CHECK(rigidity_tuple(row("row05")) == tup({0, 14}, {13, 3}));
}

TEST_CASE("G2 pattern check") {
    CHECK(g2_pattern_check({E("x"), E("y"), E("x*y"), E("(x*y)^-1"), E("y^-1"), E("x^-1"), E("1")}));
    CHECK_FALSE(g2_pattern_check({E("1"), E("-1"), E("-1"), E("-1"), E("-1"), E("zeta(3)"), E("zeta(3)^2")}));
    // a = m, b = 1 gives {1, 1, m, m, 1/m, 1/m}, not {1, 1, 1, 1, m, 1/m}
    CHECK_FALSE(g2_pattern_check({E("1"), E("1"), E("1"), E("1"), E("1"), E("m"), E("m^-1")}));
    CHECK_FALSE(g2_pattern_check({E("1"), E("1")}));
    CHECK_FALSE(g2_pattern_check({E("-1"), E("-1"), E("-1"), E("-1"), E("i"), E("-i"), E("-1")}));

    std::mt19937 rng(7);
    std::vector<Eigenvalue> pool{E("1"), E("-1"), E("i"), E("x"), E("zeta(3)"), E("x^2"), E("-x")};
    int positives = 0;
    for (int n = 0; n < 300; ++n) {
        std::vector<Eigenvalue> v;
        if (n % 2) {
            Eigenvalue a = pool[rng() % pool.size()], b = pool[rng() % pool.size()];
            v = {E("1"), a, b, a * b, a.inverse(), b.inverse(), (a * b).inverse()};
        } else {
            for (int i = 0; i < 7; ++i) v.push_back(pool[rng() % pool.size()]);
        }
        bool p = g2_pattern_check(v);
        positives += p;
        if (n % 2) CHECK(p);
        std::vector<Eigenvalue> inv, perm = v;
        for (const auto& e : v) inv.push_back(e.inverse());
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(g2_pattern_check(inv) == p);
        CHECK(g2_pattern_check(perm) == p);
    }
    CHECK(positives >= 150);
}

TEST_CASE("verify classification") {
    auto reps = verify_classification();
    REQUIRE(reps.size() == 11);
    for (const auto& r : reps) {
        bool expect = r.name != "excluded";
        CHECK_MESSAGE(r.pass() == expect, r.name);
    }
    const auto& ex = reps.back();
    auto it = std::find_if(ex.checks.begin(), ex.checks.end(), [](const CheckItem& c) { return !c.ok; });
    REQUIRE(it != ex.checks.end());
    CHECK(it->name == "adjoint invariants");
    CHECK(it->detail == "8 vs 6");

    // tampering with row 3
    Descriptor r3 = row("row03");
    for (const char* bad : {"(2*xE2, x^-1E2, E3)", "(x^2E2, x^-1E2, E3)"}) {
        Descriptor t(7, {{Scalar(0), FormalType::parse(bad)}}, r3.infinity());
        RowReport rep = verify_row("tampered", t, true, nullptr);
        bool det_ok = rep.checks[1].ok, pat_ok = rep.checks[3].ok;
        CHECK_FALSE((det_ok && pat_ok));
    }
}

TEST_CASE("pullbacks") {
    for (const auto& p : pullback_identities()) CHECK_MESSAGE(p.ok, p.name << ": " << p.detail);

    Descriptor r06 = row("row06");
    Descriptor p2 = pullback_descriptor(r06, 2);
    CHECK(p2.rank() == 7);
    CHECK(p2.find(Scalar(0))->type == FormalType::parse("(J(7))"));
    // El(6, a, 1) splits into two members of ramification 3
    CHECK(p2.infinity().irregular().size() == 2);
    CHECK(rigidity_index(pullback_descriptor(r06, 1)) == 2);

    Descriptor off = Descriptor::load(golden_path("x16.json"));
    CHECK_THROWS_AS(pullback_descriptor(off, 2), Error);
    CHECK_THROWS_AS(pullback_descriptor(r06, 0), Error);
}
