#include "katz/descriptor.hpp"

#include "katz/error.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace katz {

using nlohmann::json;

namespace {

bool is_inf(const std::string& s) { return s == "inf" || s == "infinity" || s == "oo"; }

std::string as_text(const json& j, const std::string& what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long>());
    fail(ErrorKind::Malformed, what + " must be a string");
}

JordanData jordan_from_json(const json& j) {
    if (j.is_array()) {
        std::string items;
        for (const auto& x : j) items += (items.empty() ? "" : ", ") + as_text(x, "Jordan item");
        return JordanData::parse("(" + items + ")");
    }
    return JordanData::parse(as_text(j, "Jordan data"));
}

Elementary el_from_json(const json& j) {
    if (j.is_string()) return Elementary::parse(j.get<std::string>());
    if (!j.is_object()) fail(ErrorKind::Malformed, "elementary module must be an object or a string");
    Elementary e;
    if (!j.contains("p") || !j["p"].is_number_integer()) fail(ErrorKind::Malformed, "elementary module needs integer p");
    e.p = j["p"].get<int>();
    if (e.p < 1) fail(ErrorKind::Malformed, "ramification degree must be positive");
    if (j.contains("c")) e.c = Scalar::parse(as_text(j["c"], "c"));
    if (e.c.is_zero()) fail(ErrorKind::Malformed, "ramification coefficient is zero");
    if (!j.contains("phi")) fail(ErrorKind::Malformed, "elementary module needs phi");
    const json& phi = j["phi"];
    if (phi.is_object()) {
        for (const auto& [k, v] : phi.items()) {
            int e_k = 0;
            try {
                e_k = std::stoi(k);
            } catch (const std::exception&) {
                fail(ErrorKind::Malformed, "phi key must be an integer exponent: \"" + k + "\"");
            }
            if (e_k >= 0) continue;  // regular terms do not matter
            Scalar a = Scalar::parse(as_text(v, "phi coefficient"));
            if (!a.is_zero()) e.phi[-e_k] = a;
        }
    } else {
        e.phi = tail_parse(as_text(phi, "phi"));
    }
    if (!j.contains("R")) fail(ErrorKind::Malformed, "elementary module needs R");
    e.R = jordan_from_json(j["R"]);
    if (e.R.empty()) fail(ErrorKind::Malformed, "elementary module needs a nonempty R");
    return e;
}

FormalType type_from_json(const json& j) {
    if (j.is_string()) return FormalType::parse(j.get<std::string>());
    if (!j.is_object()) fail(ErrorKind::Malformed, "formal type must be an object or a string");
    JordanData reg;
    std::vector<Elementary> irr;
    if (j.contains("regular")) reg = jordan_from_json(j["regular"]);
    if (j.contains("irregular")) {
        if (!j["irregular"].is_array()) fail(ErrorKind::Malformed, "irregular must be an array");
        for (const auto& x : j["irregular"]) irr.push_back(el_from_json(x));
    }
    return FormalType(reg, irr);
}

json el_to_json(const Elementary& e) {
    json phi = json::object();
    for (const auto& [k, a] : e.phi) phi[std::to_string(-k)] = a.str();
    return {{"p", e.p}, {"c", e.c.str()}, {"phi", phi}, {"R", e.R.str()}};
}

json type_to_json(const FormalType& f) {
    json irr = json::array();
    for (const auto& m : f.irregular()) irr.push_back(el_to_json(m));
    return {{"regular", f.regular().str()}, {"irregular", irr}};
}

} // namespace

FormalType trivial_type(int n) { return FormalType(JordanData::scalar(Eigenvalue(), n)); }

Descriptor::Descriptor(int rank, std::vector<Point> finite, FormalType infinity) : rank_(rank), inf_(std::move(infinity)) {
    if (rank < 1) fail(ErrorKind::Malformed, "rank must be positive");
    if (inf_.rank() != rank)
        fail(ErrorKind::Malformed, "formal type at infinity has rank " + std::to_string(inf_.rank()) +
                                       " but the rank is " + std::to_string(rank));
    FormalType triv = trivial_type(rank);
    for (auto& p : finite) {
        if (p.type.rank() > rank)
            fail(ErrorKind::Malformed, "formal type at " + p.at.str() + " exceeds the rank");
        if (p.type.rank() < rank)
            p.type = p.type + trivial_type(rank - p.type.rank());
        for (const auto& q : finite_)
            if (q.at == p.at) fail(ErrorKind::Malformed, "duplicate point " + p.at.str());
        if (p.type != triv) finite_.push_back(std::move(p));
    }
}

const Point* Descriptor::find(const Scalar& at) const {
    for (const auto& p : finite_)
        if (p.at == at) return &p;
    return nullptr;
}

Descriptor Descriptor::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Malformed, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("rank") || !j["rank"].is_number_integer())
        fail(ErrorKind::Malformed, "descriptor needs an integer rank");
    if (!j.contains("points") || !j["points"].is_array() || j["points"].empty())
        fail(ErrorKind::Malformed, "descriptor needs a nonempty points array");
    int rank = j["rank"].get<int>();
    std::vector<Point> finite;
    FormalType inf;
    bool have_inf = false;
    for (const auto& p : j["points"]) {
        if (!p.is_object() || !p.contains("at") || !p.contains("type"))
            fail(ErrorKind::Malformed, "each point needs \"at\" and \"type\"");
        std::string at = as_text(p["at"], "location");
        FormalType t = type_from_json(p["type"]);
        if (is_inf(at)) {
            if (have_inf) fail(ErrorKind::Malformed, "more than one point at infinity");
            inf = t;
            have_inf = true;
        } else {
            finite.push_back({Scalar::parse(at), t});
        }
    }
    if (!have_inf) inf = trivial_type(rank);
    return Descriptor(rank, finite, inf);
}

Descriptor Descriptor::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Malformed, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string Descriptor::to_json_text() const {
    json pts = json::array();
    for (const auto& p : finite_) pts.push_back({{"at", p.at.str()}, {"type", type_to_json(p.type)}});
    pts.push_back({{"at", "inf"}, {"type", type_to_json(inf_)}});
    json j = {{"rank", rank_}, {"points", pts}};
    return j.dump(2);
}

bool same_descriptor(const Descriptor& a, const Descriptor& b) {
    if (a.rank_ != b.rank_ || a.inf_ != b.inf_ || a.finite_.size() != b.finite_.size()) return false;
    for (const auto& p : a.finite_) {
        const Point* q = b.find(p.at);
        if (!q || q->type != p.type) return false;
    }
    return true;
}

} // namespace katz
