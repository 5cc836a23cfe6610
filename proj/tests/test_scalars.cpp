#include "doctest.h"
#include "katz/error.hpp"
#include "katz/scalar.hpp"

#include <random>

using namespace katz;

namespace {
Scalar S(const char* s) { return Scalar::parse(s); }
}

TEST_CASE("cyclotomic canonicalizes to the smallest order") {
    Cyclotomic z6 = Cyclotomic::zeta(6);
    CHECK(z6 * z6 == Cyclotomic::zeta(3));
    CHECK((z6 * z6).order() == 3);
    CHECK(Cyclotomic::zeta(4).pow(2) == Cyclotomic(-1));
    CHECK((Cyclotomic::zeta(8) + Cyclotomic::zeta(8).galois(7)).order() == 8);
    CHECK(Cyclotomic::zeta(12, 3) == Cyclotomic::zeta(4));
    CHECK(Cyclotomic().order() == 1);
    CHECK(Cyclotomic().coeffs().empty());
}

TEST_CASE("cyclotomic inverse and mixed orders") {
    Cyclotomic a = Cyclotomic(1) + Cyclotomic::zeta(3);
    CHECK(a * a.inverse() == Cyclotomic(1));
    Cyclotomic b = Cyclotomic::zeta(4) + Cyclotomic::zeta(3);
    CHECK(b.order() == 12);
    CHECK((b - Cyclotomic::zeta(3)) == Cyclotomic::zeta(4));
    auto sr = (Cyclotomic(Q(3, 2)) * Cyclotomic::zeta(6)).as_scaled_root_of_unity();
    REQUIRE(sr);
    CHECK(sr->first == Q(3, 2));
    CHECK(sr->second == Q(1, 6));
}

TEST_CASE("scalar arithmetic examples") {
    CHECK(S("a1^2/4") + S("a1^2/4") == S("a1^2/2"));
    CHECK((S("a1^2") - S("a2^2")) / (S("a1") - S("a2")) == S("a1 + a2"));
    Scalar s = S("(a1+a2)^2/4");
    CHECK(scalar_root(s * 4, 2) == S("a1+a2"));
    CHECK_THROWS_AS(S("a1") / S("a2 - a2"), Error);
}

TEST_CASE("scalar roots") {
    CHECK(scalar_root(S("a1^2/4"), 2) == S("a1/2"));
    CHECK(scalar_root(S("(a1+a2)^2/4"), 2) == S("(a1+a2)/2"));
    CHECK(scalar_root(Scalar(1), 6) == Scalar(1));
    CHECK(scalar_root(Scalar(-1), 2) == Scalar::zeta(4));
    CHECK(scalar_root(Scalar(8), 3) == Scalar(2));
    Scalar r = scalar_root(Scalar(2), 3);
    CHECK(r.pow(3) == Scalar(2));
    CHECK(r.str() == "2^(1/3)");
    CHECK(scalar_root(S("a^6/6^6"), 6) == S("a/6"));
    try {
        scalar_root(S("a1 + a2"), 2);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::IrrationalRoot);
        CHECK(std::string(e.what()).find("a1 + a2") != std::string::npos);
    }
}

TEST_CASE("rational exponents and radicals") {
    Scalar a = S("a^(1/2)");
    CHECK(a * a == S("a"));
    Scalar t = S("2^(1/3)");
    CHECK(t * t * t == Scalar(2));
    CHECK((Scalar(1) / t) * t == Scalar(1));
    CHECK(S("a^(1/3)*2^(2/3)").pow(3) == S("4*a"));
}

TEST_CASE("render and parse round trip") {
    for (const char* text : {"0", "1", "-3/4", "zeta(3)", "a1", "-a1", "a1^2/4", "(a1 + a2)/(a1 - a2)",
                             "a^-2", "i*a1 + 1/2", "(1 + zeta(3))*a1^2 - a2", "2^(1/3)*a", "a1/(a2*b)",
                             "1/(a^2 + 1)", "-a^(1/2)"}) {
        Scalar s = S(text);
        CAPTURE(text);
        CAPTURE(s.str());
        CHECK(S(s.str().c_str()) == s);
    }
}

TEST_CASE("malformed scalar text") {
    CHECK_THROWS_AS(S(""), Error);
    CHECK_THROWS_AS(S("a +"), Error);
    CHECK_THROWS_AS(S("a $ b"), Error);
    CHECK_THROWS_AS(S("(a"), Error);
    CHECK_THROWS_AS(S("zeta(0)"), Error);
}

TEST_CASE("field axioms on random inputs") {
    std::mt19937 rng(7);
    const char* atoms[] = {"a1", "a2", "1", "-2", "zeta(3)", "i", "1/3", "a1+a2", "a1-1"};
    auto pick = [&] {
        Scalar s = S(atoms[rng() % 9]);
        if (rng() % 2) s = s * S(atoms[rng() % 9]);
        if (rng() % 3 == 0) s = s / S(atoms[rng() % 9]);
        return s;
    };
    for (int it = 0; it < 60; ++it) {
        Scalar a = pick(), b = pick(), c = pick();
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!b.is_zero()) CHECK((a / b) * b == a);
        CHECK(S(a.str().c_str()) == a);
    }
}

TEST_CASE("root property") {
    for (const char* text : {"4*a^2", "a^4*b^2/9", "(a+b)^2", "(a+2*b)^3", "-a^3", "zeta(3)*a^3", "a^2+2*a+1"}) {
        Scalar s = S(text);
        for (int p : {2, 3}) {
            try {
                Scalar r = scalar_root(s, p);
                CHECK(r.pow(p) == s);
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::IrrationalRoot);
            }
        }
    }
}
