#ifndef KATZ_JORDAN_HPP
#define KATZ_JORDAN_HPP

#include "katz/eigenvalue.hpp"

#include <string>
#include <vector>

namespace katz {

namespace detail {
class Cursor;
}

struct Block {
    Eigenvalue eig;
    int size = 1;
    friend bool operator==(const Block& a, const Block& b) { return a.eig == b.eig && a.size == b.size; }
};

// Multiset of Jordan blocks, kept sorted by eigenvalue then size descending.
class JordanData {
public:
    JordanData() = default;
    explicit JordanData(std::vector<Block> blocks);
    static JordanData scalar(const Eigenvalue& e, int n);  // e * identity of size n
    static JordanData block(const Eigenvalue& e, int size) { return JordanData({{e, size}}); }
    static JordanData parse(const std::string& text);
    static JordanData parse(detail::Cursor& c);

    const std::vector<Block>& blocks() const { return b_; }
    int rank() const;
    bool empty() const { return b_.empty(); }

    JordanData operator+(const JordanData& o) const;  // direct sum
    JordanData twisted(const Eigenvalue& e) const;    // tensor with a rank one e
    JordanData unipotent_part() const;                // blocks with eigenvalue 1
    JordanData without_unipotent() const;

    friend bool operator==(const JordanData& a, const JordanData& b) { return a.b_ == b.b_; }
    friend bool operator!=(const JordanData& a, const JordanData& b) { return !(a == b); }
    friend bool operator<(const JordanData& a, const JordanData& b);

    std::string str() const;  // "(xJ(2), x^-1J(2), J(3))"

private:
    std::vector<Block> b_;
};

int centralizer_dim(const JordanData& j);
JordanData jordan_tensor(const JordanData& a, const JordanData& b);
JordanData jordan_exterior(const JordanData& j, int k);
JordanData jordan_push(const JordanData& j, int p);
JordanData jordan_pull(const JordanData& j, int p);
JordanData jordan_dual(const JordanData& j);
Eigenvalue jordan_det(const JordanData& j);
int invariants_dim(const JordanData& j);

} // namespace katz

#endif
