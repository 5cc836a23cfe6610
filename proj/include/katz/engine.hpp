#ifndef KATZ_ENGINE_HPP
#define KATZ_ENGINE_HPP

#include "katz/descriptor.hpp"
#include "katz/error.hpp"

#include <optional>
#include <string>
#include <vector>

namespace katz {

// Twist by a rank one system: one eigenvalue per finite point (in order) and
// infinity last, or keyed by location with unmentioned points left alone.
struct TwistSpec {
    bool keyed = false;
    std::vector<Eigenvalue> positional;
    std::vector<std::pair<std::optional<Scalar>, Eigenvalue>> by_location;  // nullopt = infinity
};

enum class StepKind { Twist, Inversion, Affine, Fourier, MiddleConvolution };

struct Step {
    StepKind kind = StepKind::Fourier;
    TwistSpec twist;
    Scalar a = Scalar(1), b = Scalar(0);
    Eigenvalue chi;
    std::string label() const;
};
using Script = std::vector<Step>;

Script parse_script(const std::string& text);
Script load_script(const std::string& path);
Step parse_step(const std::string& line);
TwistSpec parse_twist(const std::string& args);

struct RigidityData {
    int r = 0;
    int rank = 0;
    std::vector<int> irr;   // End irregularity per point, finite points first, infinity last
    std::vector<int> soln;  // End solution dimension per point
    int rig = 0;
};
RigidityData rigidity_data(const Descriptor& c);
int rigidity_index(const Descriptor& c);
// (2 - r) rank(V) - sum irr(V) + sum invariants(V) for a family V over the singular points
int euler_char_middle(const std::vector<FormalType>& v);

Descriptor op_twist(const Descriptor& c, const TwistSpec& t);
Descriptor op_inversion(const Descriptor& c);
Descriptor op_affine(const Descriptor& c, const Scalar& a, const Scalar& b);
Descriptor op_fourier(const Descriptor& c);
Descriptor op_middle_convolution(const Descriptor& c, const Eigenvalue& chi);
Descriptor apply_step(const Descriptor& c, const Step& s);

struct ScriptResult {
    std::vector<Descriptor> trace;  // initial descriptor, then one per completed step
    int failed_step = -1;           // index into the script, -1 when every step ran
    ErrorKind kind = ErrorKind::Internal;
    std::string message;
    bool ok() const { return failed_step < 0; }
};
ScriptResult run_script(const Descriptor& c0, const Script& s);

// Golden data directory: $KATZ_FORGE_GOLDEN_DIR, else the data/ tree of the source checkout.
std::string golden_dir();
std::string golden_path(const std::string& name);

// one row per descriptor, labelled with the operation applied to it next
std::string render_trace(const ScriptResult& r, const Script& s);

} // namespace katz

#endif
