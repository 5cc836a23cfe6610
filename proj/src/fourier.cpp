#include "katz/fourier.hpp"

#include "katz/error.hpp"

namespace katz {

namespace {

JordanData sign_twist(const JordanData& r, int q) { return q % 2 ? r.twisted(Eigenvalue::zeta(2)) : r; }

void require_single_term(const Elementary& e, const std::string& where) {
    if (e.phi.size() != 1)
        fail(ErrorKind::Unsupported, "local Fourier transform of a multi-term tail " + e.str() + where);
}

void require_slope_at_most_one(const Elementary& e) {
    if (e.q() > e.p)
        fail(ErrorKind::OutOfScope, "slope " + Q(e.q(), e.p).get_str() + " > 1 at infinity: " +
                                        e.str());
}

} // namespace

JordanData vanishing_of(const JordanData& monodromy) {
    std::vector<Block> out;
    for (const auto& b : monodromy.blocks()) {
        if (!b.eig.is_one()) out.push_back(b);
        else if (b.size > 1) out.push_back({b.eig, b.size - 1});
    }
    return JordanData(out);
}

FormalType rebuild_finite(const JordanData& vanishing, const std::vector<Elementary>& members, int h,
                          const std::string& where) {
    std::vector<Block> reg;
    for (const auto& b : vanishing.blocks()) reg.push_back({b.eig, b.eig.is_one() ? b.size + 1 : b.size});
    FormalType f(JordanData(reg), members);
    if (f.rank() > h) {
        int big = 0;
        for (const auto& b : f.regular().blocks()) big = std::max(big, b.size);
        if (h == 1 && big > 1)
            fail(ErrorKind::Contradiction, "rank 1 system with a J(" + std::to_string(big) + ") block at " + where);
        fail(ErrorKind::Contradiction, "rank mismatch at " + where + ": local data " + f.str() + " needs rank " +
                                           std::to_string(f.rank()) + " but the rank is " + std::to_string(h));
    }
    if (f.rank() < h) f = f + trivial_type(h - f.rank());
    return f;
}

int vanishing_rank(const FormalType& f) {
    int r = vanishing_of(f.regular()).rank();
    for (const auto& m : f.irregular()) r += (m.p + m.q()) * m.R.rank();
    return r;
}

Elementary lft_zero_to_inf(const Elementary& e) {
    if (e.is_regular()) fail(ErrorKind::Precondition, "regular input goes through the vanishing-cycle path");
    return lft_shifted(e, Scalar(0));
}

JordanData lft_regular_to_inf(const JordanData& monodromy) { return vanishing_of(monodromy); }

Elementary lft_shifted(const Elementary& e, const Scalar& s) {
    if (e.is_regular()) return lft_shifted(e.R, s);
    require_single_term(e, "");
    int p = e.p, q = e.q();
    const Scalar& a = e.phi.at(q);
    // rho^ = -rho'/phi', phi^ = phi - (rho/rho') phi'
    Scalar c_hat = Scalar(p) * e.c / (Scalar(q) * a);
    Scalar a_hat = Scalar(p + q) / Scalar(p) * a;
    Elementary out{c_hat, p + q, {{q, a_hat}}, sign_twist(e.R, q)};
    if (!s.is_zero()) out.phi[p + q] = s / c_hat;
    return el_canonical(out);
}

Elementary lft_shifted(const JordanData& monodromy, const Scalar& s) {
    if (s.is_zero()) fail(ErrorKind::Precondition, "the unshifted regular transform lands in the regular part");
    return {Scalar(1), 1, {{1, s}}, vanishing_of(monodromy)};
}

InfSlot lft_inf_to_s(const Elementary& x) {
    Elementary e = el_canonical(x);
    require_slope_at_most_one(e);
    InfSlot slot;
    if (e.is_regular()) {
        slot.at = Scalar(0);
        slot.vanishing = e.R;
        return slot;
    }
    int P = e.p;
    Tail rest = e.phi;
    Scalar s(0);
    if (rest.count(P)) {
        s = rest.at(P);
        rest.erase(P);
    }
    slot.at = -s;
    if (rest.empty()) {
        if (P != 1) fail(ErrorKind::Internal, "non-minimal piece at infinity " + e.str());
        slot.vanishing = e.R;
        return slot;
    }
    if (rest.size() != 1) fail(ErrorKind::Unsupported, "inverse local Fourier transform of a multi-term tail " + e.str());
    int q = rest.begin()->first;
    int p = P - q;
    Scalar a = Scalar(p) * rest.begin()->second / Scalar(P);
    Scalar c = Scalar(q) * a / Scalar(p);
    // F o F is the pullback by z -> -z, which negates the local coordinate
    slot.members.push_back({-c, p, {{q, a}}, sign_twist(e.R, q)});
    return slot;
}

FormalType stationary_phase(const Descriptor& c) {
    for (const auto& m : c.infinity().irregular()) require_slope_at_most_one(m);
    JordanData reg;
    std::vector<Elementary> members;
    for (const auto& pt : c.finite()) {
        JordanData v = vanishing_of(pt.type.regular());
        if (!v.empty()) {
            if (pt.at.is_zero()) reg = reg + v;
            else members.push_back(lft_shifted(pt.type.regular(), pt.at));
        }
        for (const auto& m : pt.type.irregular()) {
            require_single_term(m, " at " + pt.at.str());
            members.push_back(lft_shifted(m, pt.at));
        }
    }
    return FormalType(reg, members);
}

int fourier_rank(const Descriptor& c) {
    int h = 0;
    for (const auto& pt : c.finite()) h += vanishing_rank(pt.type);
    return h;
}

} // namespace katz
