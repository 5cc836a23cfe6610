#ifndef KATZ_DESCRIPTOR_HPP
#define KATZ_DESCRIPTOR_HPP

#include "katz/formal_type.hpp"

#include <string>
#include <vector>

namespace katz {

// A finite singular point: location plus its full local formal type of rank h.
struct Point {
    Scalar at;
    FormalType type;
};

// Connection on an open subset of P^1 given by its rank and formal types.
// Finite points with trivial type are dropped; infinity is always present.
class Descriptor {
public:
    Descriptor() = default;
    Descriptor(int rank, std::vector<Point> finite, FormalType infinity);

    int rank() const { return rank_; }
    const std::vector<Point>& finite() const { return finite_; }
    const FormalType& infinity() const { return inf_; }
    int singular_points() const { return static_cast<int>(finite_.size()) + 1; }
    const Point* find(const Scalar& at) const;

    static Descriptor from_json_text(const std::string& text);
    static Descriptor load(const std::string& path);
    std::string to_json_text() const;

    // same rank and formal types, ignoring point order
    friend bool same_descriptor(const Descriptor& a, const Descriptor& b);

private:
    int rank_ = 0;
    std::vector<Point> finite_;
    FormalType inf_;
};

// identity of rank n, the formal type of a nonsingular point
FormalType trivial_type(int n);

} // namespace katz

#endif
