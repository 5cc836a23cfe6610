#include "katz/engine.hpp"

#include "katz/fourier.hpp"
#include "katz/lexer.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace katz {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool is_inf(const std::string& s) { return s == "inf" || s == "infinity" || s == "oo"; }

FormalType twist_type(const FormalType& f, const Eigenvalue& l) {
    if (l.is_one()) return f;
    std::vector<Elementary> ms;
    for (auto m : f.irregular()) {
        m.R = m.R.twisted(l.pow(static_cast<long>(m.p)));
        ms.push_back(m);
    }
    return FormalType(f.regular().twisted(l), ms);
}

FormalType rescale_members(const FormalType& f, const Scalar& factor) {
    std::vector<Elementary> ms;
    for (auto m : f.irregular()) {
        m.c = m.c * factor;
        ms.push_back(m);
    }
    return FormalType(f.regular(), ms);
}

} // namespace

std::string Step::label() const {
    switch (kind) {
    case StepKind::Fourier: return "F";
    case StepKind::Inversion: return "inv";
    case StepKind::Affine: return "affine " + a.str() + " " + b.str();
    case StepKind::MiddleConvolution: return "MC_" + chi.pretty();
    case StepKind::Twist: {
        std::string s;
        if (twist.keyed) {
            for (const auto& [at, e] : twist.by_location)
                s += (s.empty() ? "" : ", ") + (at ? at->str() : std::string("inf")) + ":" + e.pretty();
        } else {
            for (const auto& e : twist.positional) s += (s.empty() ? "" : ", ") + e.pretty();
        }
        return "twist (" + s + ")";
    }
    }
    return "?";
}

TwistSpec parse_twist(const std::string& args) {
    TwistSpec t;
    auto items = split_top(args, ',');
    if (items.size() == 1 && items[0].empty()) fail(ErrorKind::Malformed, "twist needs eigenvalues");
    for (const auto& it : items) {
        if (it.empty()) fail(ErrorKind::Malformed, "empty twist entry in \"" + args + "\"");
        size_t colon = it.rfind(':');
        if (colon == std::string::npos) {
            t.positional.push_back(Eigenvalue::parse(it));
            continue;
        }
        t.keyed = true;
        std::string at = trim(it.substr(0, colon));
        Eigenvalue e = Eigenvalue::parse(trim(it.substr(colon + 1)));
        if (is_inf(at)) t.by_location.push_back({std::nullopt, e});
        else t.by_location.push_back({Scalar::parse(at), e});
    }
    if (t.keyed && !t.positional.empty()) fail(ErrorKind::Malformed, "twist mixes keyed and positional entries");
    return t;
}

Step parse_step(const std::string& line) {
    std::string l = trim(line);
    size_t sp = l.find_first_of(" \t");
    std::string cmd = l.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : trim(l.substr(sp));
    Step s;
    if (cmd == "fourier" || cmd == "F") {
        if (!rest.empty()) fail(ErrorKind::Malformed, "fourier takes no arguments");
        s.kind = StepKind::Fourier;
    } else if (cmd == "twist") {
        s.kind = StepKind::Twist;
        s.twist = parse_twist(rest);
    } else if (cmd == "mc") {
        s.kind = StepKind::MiddleConvolution;
        if (rest.empty()) fail(ErrorKind::Malformed, "mc needs a character");
        s.chi = Eigenvalue::parse(rest);
    } else if (cmd == "moebius") {
        std::istringstream in(rest);
        std::string kind;
        in >> kind;
        if (kind == "inv") {
            std::string extra;
            if (in >> extra) fail(ErrorKind::Malformed, "moebius inv takes no arguments");
            s.kind = StepKind::Inversion;
        } else if (kind == "affine") {
            std::string a, b, extra;
            if (!(in >> a >> b) || (in >> extra)) fail(ErrorKind::Malformed, "moebius affine needs a and b");
            s.kind = StepKind::Affine;
            s.a = Scalar::parse(a);
            s.b = Scalar::parse(b);
            if (s.a.is_zero()) fail(ErrorKind::Malformed, "moebius affine needs a != 0");
        } else {
            fail(ErrorKind::Malformed, "unknown moebius map \"" + kind + "\"");
        }
    } else {
        fail(ErrorKind::Malformed, "unknown script step \"" + cmd + "\"");
    }
    return s;
}

Script parse_script(const std::string& text) {
    Script out;
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (trim(line).empty()) continue;
        try {
            out.push_back(parse_step(line));
        } catch (const Error& e) {
            fail(ErrorKind::Malformed, "script line " + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

Script load_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Malformed, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_script(ss.str());
}

RigidityData rigidity_data(const Descriptor& c) {
    RigidityData d;
    d.r = c.singular_points();
    d.rank = c.rank();
    auto add = [&](const FormalType& f) {
        FormalType e = ft_end(f);
        d.irr.push_back(ft_invariants(e).irregularity);
        d.soln.push_back(ft_soln_dim(e));
    };
    for (const auto& p : c.finite()) add(p.type);
    add(c.infinity());
    d.rig = (2 - d.r) * d.rank * d.rank;
    for (int v : d.irr) d.rig -= v;
    for (int v : d.soln) d.rig += v;
    return d;
}

int rigidity_index(const Descriptor& c) { return rigidity_data(c).rig; }

int euler_char_middle(const std::vector<FormalType>& v) {
    if (v.empty()) fail(ErrorKind::Precondition, "no singular points");
    int n = v[0].rank();
    int chi = (2 - static_cast<int>(v.size())) * n;
    for (const auto& f : v) {
        if (f.rank() != n) fail(ErrorKind::Precondition, "ranks differ across points");
        chi += ft_soln_dim(f) - ft_invariants(f).irregularity;
    }
    return chi;
}

Descriptor op_twist(const Descriptor& c, const TwistSpec& t) {
    std::vector<Point> pts = c.finite();
    std::vector<Eigenvalue> eig(pts.size());
    Eigenvalue at_inf;
    if (!t.keyed) {
        if (t.positional.size() != pts.size() + 1)
            fail(ErrorKind::Precondition, "twist needs " + std::to_string(pts.size() + 1) + " eigenvalues, got " +
                                              std::to_string(t.positional.size()));
        std::copy(t.positional.begin(), t.positional.end() - 1, eig.begin());
        at_inf = t.positional.back();
    } else {
        for (const auto& [at, e] : t.by_location) {
            if (!at) {
                at_inf = at_inf * e;
                continue;
            }
            size_t i = 0;
            while (i < pts.size() && pts[i].at != *at) ++i;
            if (i == pts.size()) {
                pts.push_back({*at, trivial_type(c.rank())});
                eig.push_back(Eigenvalue());
            }
            eig[i] = eig[i] * e;
        }
    }
    Eigenvalue prod = at_inf;
    for (const auto& e : eig) prod = prod * e;
    if (!prod.is_one()) fail(ErrorKind::Precondition, "twist eigenvalues multiply to " + prod.pretty() + ", not 1");
    for (size_t i = 0; i < pts.size(); ++i) pts[i].type = twist_type(pts[i].type, eig[i]);
    return Descriptor(c.rank(), pts, twist_type(c.infinity(), at_inf));
}

Descriptor op_inversion(const Descriptor& c) {
    std::vector<Point> pts{{Scalar(0), c.infinity()}};
    FormalType inf = trivial_type(c.rank());
    for (const auto& p : c.finite()) {
        if (p.at.is_zero()) {
            inf = p.type;
            continue;
        }
        // t' = 1/z - 1/s = -t/s^2 + O(t^2); higher terms only add regular parts for slopes <= 1
        pts.push_back({p.at.inverse(), rescale_members(p.type, -(p.at * p.at).inverse())});
    }
    return Descriptor(c.rank(), pts, inf);
}

Descriptor op_affine(const Descriptor& c, const Scalar& a, const Scalar& b) {
    if (a.is_zero()) fail(ErrorKind::Precondition, "affine map needs a != 0");
    std::vector<Point> pts;
    for (const auto& p : c.finite()) pts.push_back({a * p.at + b, rescale_members(p.type, a)});
    return Descriptor(c.rank(), pts, rescale_members(c.infinity(), a.inverse()));
}

Descriptor op_fourier(const Descriptor& c) {
    FormalType inf = stationary_phase(c);
    int h = fourier_rank(c);
    if (h < 1) fail(ErrorKind::Contradiction, "the Fourier transform has rank 0");
    struct Slot {
        Scalar at;
        JordanData v;
        std::vector<Elementary> members;
    };
    std::vector<Slot> slots;
    auto slot = [&](const Scalar& at) -> Slot& {
        for (auto& s : slots)
            if (s.at == at) return s;
        slots.push_back({at, {}, {}});
        return slots.back();
    };
    if (!c.infinity().regular().empty()) slot(Scalar(0)).v = c.infinity().regular();
    for (const auto& m : c.infinity().irregular()) {
        InfSlot s = lft_inf_to_s(m);
        Slot& t = slot(s.at);
        t.v = t.v + s.vanishing;
        t.members.insert(t.members.end(), s.members.begin(), s.members.end());
    }
    std::stable_sort(slots.begin(), slots.end(),
                     [](const Slot& x, const Slot& y) { return x.at.is_zero() && !y.at.is_zero(); });
    std::vector<Point> pts;
    for (const auto& s : slots) pts.push_back({s.at, rebuild_finite(s.v, s.members, h, s.at.str())});
    if (inf.rank() != h) fail(ErrorKind::Internal, "stationary phase rank disagrees with the rank formula");
    return Descriptor(h, pts, inf);
}

Descriptor op_middle_convolution(const Descriptor& c, const Eigenvalue& chi) {
    if (chi.is_one()) fail(ErrorKind::Precondition, "middle convolution needs chi != 1");
    if (c.infinity() != FormalType(JordanData::scalar(chi, c.rank())))
        fail(ErrorKind::Precondition, "MC_" + chi.pretty() + " needs scalar monodromy " + chi.pretty() +
                                          " at infinity, found " + c.infinity().str() + "; twist first");
    int h = fourier_rank(c) - c.rank();
    if (h < 1) fail(ErrorKind::Contradiction, "middle convolution has rank " + std::to_string(h));
    std::vector<Point> pts;
    for (const auto& p : c.finite()) {
        std::vector<Elementary> ms;
        for (auto m : p.type.irregular()) {
            m.R = m.R.twisted(chi.pow(static_cast<long>(m.p + m.q())));
            ms.push_back(m);
        }
        pts.push_back({p.at, rebuild_finite(vanishing_of(p.type.regular()).twisted(chi), ms, h, p.at.str())});
    }
    return Descriptor(h, pts, FormalType(JordanData::scalar(chi.inverse(), h)));
}

Descriptor apply_step(const Descriptor& c, const Step& s) {
    switch (s.kind) {
    case StepKind::Twist: return op_twist(c, s.twist);
    case StepKind::Inversion: return op_inversion(c);
    case StepKind::Affine: return op_affine(c, s.a, s.b);
    case StepKind::Fourier: return op_fourier(c);
    case StepKind::MiddleConvolution: return op_middle_convolution(c, s.chi);
    }
    fail(ErrorKind::Internal, "unknown step");
}

ScriptResult run_script(const Descriptor& c0, const Script& s) {
    ScriptResult r;
    r.trace.push_back(c0);
    for (size_t i = 0; i < s.size(); ++i) {
        try {
            r.trace.push_back(apply_step(r.trace.back(), s[i]));
        } catch (const Error& e) {
            r.failed_step = static_cast<int>(i);
            r.kind = e.kind();
            r.message = e.what();
            break;
        }
    }
    return r;
}

std::string golden_dir() {
    if (const char* env = std::getenv("KATZ_FORGE_GOLDEN_DIR"); env && *env) return env;
    return KATZ_GOLDEN_DIR;
}

std::string golden_path(const std::string& name) { return golden_dir() + "/" + name; }

std::string render_trace(const ScriptResult& r, const Script& s) {
    std::vector<Scalar> cols;
    for (const auto& d : r.trace)
        for (const auto& p : d.finite())
            if (std::find(cols.begin(), cols.end(), p.at) == cols.end()) cols.push_back(p.at);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"", };
    for (const auto& c : cols) head.push_back(c.str());
    head.push_back("inf");
    rows.push_back(head);
    for (size_t i = 0; i < r.trace.size(); ++i) {
        const Descriptor& d = r.trace[i];
        std::vector<std::string> row{i < s.size() ? s[i].label() : ""};
        for (const auto& c : cols) {
            const Point* p = d.find(c);
            row.push_back(p ? p->type.str() : "-");
        }
        row.push_back(d.infinity().str());
        rows.push_back(row);
    }
    std::vector<size_t> w(rows[0].size(), 0);
    for (const auto& row : rows)
        for (size_t j = 0; j < row.size(); ++j) w[j] = std::max(w[j], row[j].size());
    std::string out;
    for (size_t i = 0; i < rows.size(); ++i) {
        std::string line;
        for (size_t j = 0; j < rows[i].size(); ++j) {
            std::string cell = rows[i][j];
            cell.resize(w[j], ' ');
            line += (j == 0 ? "" : j == 1 ? " | " : "   ") + cell;
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
        if (i == 0) out += std::string(line.size(), '-') + "\n";
    }
    if (!r.ok())
        out += "step " + std::to_string(r.failed_step + 1) + " (" + s[r.failed_step].label() + "): " +
               kind_name(r.kind) + ": " + r.message + "\n";
    return out;
}

} // namespace katz
