#ifndef KATZ_CLASSIFY_HPP
#define KATZ_CLASSIFY_HPP

#include "katz/descriptor.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace katz {

struct SlopePart {
    Q slope;
    int dim = 0;
    friend bool operator==(const SlopePart& a, const SlopePart& b) { return a.slope == b.slope && a.dim == b.dim; }
};
using SlopeProfile = std::vector<SlopePart>;  // increasing slopes

std::string profile_str(const SlopeProfile& p);  // "1/2, 1 | 2, 4"
SlopeProfile profile_of(const FormalType& f);

// Slope decompositions of the irregular part of a rank 7 formal type: slopes
// 1/k, odd k in dual pairs, regular part of rank 1, 3 or 7, and b = 6 when the
// top slope 1/b has multiplicity b.
std::vector<SlopeProfile> enumerate_slope_profiles();

struct CandidateShape {
    FormalType type;
    bool special = false;  // contains a pole order 2 member
};
// self-dual, determinant-trivial formal types with the given profile; specialise
// adds copies where a later piece of a part has twice the first piece's parameter
std::vector<CandidateShape> enumerate_shapes(const SlopeProfile& p, bool specialise = true);

struct LocalInvariantRow {
    SlopeProfile profile;
    std::set<std::pair<int, int>> pairs;          // (irr END, dim Soln END), pole order 1 shapes
    std::set<std::pair<int, int>> special_pairs;  // shapes with a pole order 2 member
    std::set<int> soln() const;                   // over both kinds
    std::set<int> irr() const;
};
std::vector<LocalInvariantRow> enumerate_local_invariants(bool specialise = true);

// Conjugacy classes of G2 in its 7-dimensional representation, realised in an
// explicit g2 inside gl7 and enumerated over a grid of torus elements.
struct G2Class {
    JordanData monodromy;
    int z = 0;               // centraliser dimension in GL7
    int ad_invariants = 0;   // centraliser dimension in G2
};
const std::vector<G2Class>& g2_classes();
const G2Class* find_g2_class(const JordanData& j);
std::set<int> regular_soln_values();  // z of the non-trivial classes

struct RigidityTuple {
    std::vector<int> s;  // regular points first
    std::vector<int> z;
    int r() const { return static_cast<int>(s.size()); }
    int rig() const;
    std::string str() const;  // "(0, 7, 7, 2)"
    friend bool operator<(const RigidityTuple& a, const RigidityTuple& b) {
        return std::tie(a.s, a.z) < std::tie(b.s, b.z);
    }
    friend bool operator==(const RigidityTuple& a, const RigidityTuple& b) { return a.s == b.s && a.z == b.z; }
};
// tuples with rig = 2, one irregular point, the others regular
std::vector<RigidityTuple> solve_rigidity_tuples(int r, const std::vector<LocalInvariantRow>& table,
                                                 const std::set<int>& regular);
RigidityTuple rigidity_tuple(const Descriptor& d);

std::vector<Eigenvalue> eigen_multiset(const JordanData& j);
// multiset is {1, a, b, ab, 1/a, 1/b, 1/ab} for some a, b
bool g2_pattern_check(const std::vector<Eigenvalue>& eigs);

struct CheckItem {
    std::string name;
    bool ok = false;
    std::string detail;
};
struct RowReport {
    std::string name;
    std::vector<CheckItem> checks;
    bool pass() const;
};
// reference: the constructed connection whose formal type at infinity the row must share
// an adjoint-invariant count with (nullptr when not applicable)
RowReport verify_row(const std::string& name, const Descriptor& d, bool lambda3, const Descriptor* reference);
std::vector<RowReport> verify_classification();

// pullback along z -> z^k of a descriptor singular only at 0 and infinity
Descriptor pullback_descriptor(const Descriptor& d, int k);
struct PullbackReport {
    std::string name;
    bool ok = false;
    std::string detail;
};
std::vector<PullbackReport> pullback_identities();

} // namespace katz

#endif
