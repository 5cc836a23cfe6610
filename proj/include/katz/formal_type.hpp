#ifndef KATZ_FORMAL_TYPE_HPP
#define KATZ_FORMAL_TYPE_HPP

#include "katz/elementary.hpp"

#include <map>
#include <string>
#include <vector>

namespace katz {

// Regular part plus irregular elementary members. Members are kept canonical,
// merged when they share (p, phi), and sorted.
class FormalType {
public:
    FormalType() = default;
    FormalType(JordanData regular, std::vector<Elementary> irregular = {});
    static FormalType from_pieces(const std::vector<Elementary>& pieces);

    const JordanData& regular() const { return reg_; }
    const std::vector<Elementary>& irregular() const { return irr_; }
    // regular part as El(1, 0, R) (when nonempty) followed by the members
    std::vector<Elementary> pieces() const;

    int rank() const;
    bool is_regular() const { return irr_.empty(); }
    bool empty() const { return rank() == 0; }

    FormalType operator+(const FormalType& o) const;

    friend bool operator==(const FormalType& a, const FormalType& b) {
        return a.reg_ == b.reg_ && a.irr_ == b.irr_;
    }
    friend bool operator!=(const FormalType& a, const FormalType& b) { return !(a == b); }

    // "El(2, a1, (l, l^-1)) + El(2, 2*a1, 1) + (-1)"
    std::string str() const;
    static FormalType parse(const std::string& text);

private:
    JordanData reg_;
    std::vector<Elementary> irr_;
};

// table notation for a single member: the tail a/u is written as a
std::string el_pretty(const Elementary& e);

struct FtInvariants {
    int rank = 0;
    std::map<Q, int> slopes;  // slope -> dimension
    int irregularity = 0;
};

struct FtChecks {
    bool self_dual = false;
    bool det_trivial = false;
};

FtInvariants ft_invariants(const FormalType& f);
FormalType ft_dual(const FormalType& f);
FormalType ft_end(const FormalType& f);
int ft_soln_dim(const FormalType& f);
FtChecks ft_checks(const FormalType& f);
JordanData ft_formal_monodromy(const FormalType& f);
int ft_exponential_torus_dim(const FormalType& f);
FormalType ft_exterior_cube(const FormalType& f);
FormalType ft_exterior_power(const FormalType& f, int k);

// Local data: nu (nearby) or mu (vanishing) counts per (p, phi, eigenvalue, level).
struct LocalKey {
    int p = 1;
    Tail phi;
    Eigenvalue eig;
    int level = 0;
    friend bool operator<(const LocalKey& a, const LocalKey& b);
    friend bool operator==(const LocalKey& a, const LocalKey& b) {
        return a.p == b.p && a.phi == b.phi && a.eig == b.eig && a.level == b.level;
    }
};
using LocalData = std::map<LocalKey, int>;
enum class PointKind { Finite, Infinite };

LocalData ft_local_data(const FormalType& f, PointKind kind);
// inverse; at finite points identity blocks are restored up to the given rank
FormalType ft_from_local_data(const LocalData& d, PointKind kind, int rank);

} // namespace katz

#endif
