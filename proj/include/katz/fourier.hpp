#ifndef KATZ_FOURIER_HPP
#define KATZ_FOURIER_HPP

#include "katz/descriptor.hpp"

#include <string>
#include <vector>

namespace katz {

// Vanishing-cycle data is encoded as JordanData whose block of size l+1
// stands for level l. Unipotent blocks lose one level, J(1) drops out.
JordanData vanishing_of(const JordanData& monodromy);
// Full local type at a finite point from vanishing data and irregular members,
// filled with identity up to rank h. Throws Contradiction when h is too small.
FormalType rebuild_finite(const JordanData& vanishing, const std::vector<Elementary>& members, int h,
                          const std::string& where);
// contribution of a finite point to the rank of the transform
int vanishing_rank(const FormalType& f);

Elementary lft_zero_to_inf(const Elementary& e);
JordanData lft_regular_to_inf(const JordanData& monodromy);
// F^(s,inf): the shifted transform of an irregular member, or of regular local monodromy (s != 0)
Elementary lft_shifted(const Elementary& e, const Scalar& s);
Elementary lft_shifted(const JordanData& monodromy, const Scalar& s);

// F^(inf,s) of a piece at infinity: the location and what lands there
struct InfSlot {
    Scalar at;
    JordanData vanishing;
    std::vector<Elementary> members;
};
InfSlot lft_inf_to_s(const Elementary& e);

// formal type at infinity of the transform
FormalType stationary_phase(const Descriptor& c);
// rank of the transform from finite local data
int fourier_rank(const Descriptor& c);

} // namespace katz

#endif
