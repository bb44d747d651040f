#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "spmm/baselines.hpp"
#include "spmm/diagnostics.hpp"
#include "spmm/exact.hpp"
#include "spmm/fields.hpp"
#include "spmm/hodograph.hpp"
#include "spmm/init.hpp"
#include "spmm/nonlinear_solver.hpp"
#include "spmm/sg_dvdm.hpp"

namespace spmm::run {

enum class Method { proposed_avg, proposed_central, norm_preserving, multisymplectic };
enum class Family { breather, loop_antiloop, hump, upright_loop, alternating, csv_curve, csv_profile };

struct RunConfig {
    Method method = Method::proposed_avg;
    Family family = Family::breather;
    double xi = 0.3;
    double v = 1.0;
    double x0 = 0.0;
    int sign = +1;
    int periods = 1;                 // traveling-wave families: periods per window
    double S = 0.0;                  // breather families: computational window (required)
    std::optional<double> s_offset;  // default: centered for breathers, 0 otherwise
    std::string path;                // csv families
    int K = 65;                      // grid points (N on the fixed mesh)
    double delta_t = 0.1;
    double t_end = 10.0;
    std::optional<double> L;         // fixed mesh: window override (else derived)
    int output_stride = 10;
    std::string out_dir;             // optional output root override
    solver::SolverConfig solver;
    std::string note;

    bool moving_mesh() const {
        return method == Method::proposed_avg || method == Method::proposed_central;
    }
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

/// Canonical key=value echo of a config; parses back to the same config.
std::string config_to_text(const RunConfig& cfg);

/// Resolved moving-mesh setup: grid, initial theta, base point, and the
/// exact-solution hooks when the family has a closed form.
struct MovingSetup {
    GridSpec grid;
    ThetaField theta0;
    double base_x0 = 0.0;
    double s_offset = 0.0;
    std::function<exact::PointXU(double, double)> exact;        // (tau, s); may be null
    std::function<double(double, double)> exact_theta;          // (tau, s); may be null
};

/// Resolved fixed-mesh setup (single-valued families only); u0 is de-meaned.
struct FixedSetup {
    UniformField u0;
    double x_lo = 0.0;
    double delta_t = 0.0;
};

MovingSetup make_moving_setup(const RunConfig& cfg);
FixedSetup make_fixed_setup(const RunConfig& cfg);

/// Per-level observation hook for the moving-mesh pipeline.  curve is the
/// level-m reconstruction (consuming theta at m and m+1).
using MovingObserver = std::function<void(int m, const ThetaField& theta,
                                          const CurveState& curve,
                                          const diag::InvariantRecord& record)>;

void simulate_moving(const MovingSetup& setup, sg::Scheme scheme,
                     const solver::SolverConfig& solver_cfg, int steps,
                     const MovingObserver& on_level);

using FixedObserver = std::function<void(int m, const UniformField& u,
                                         const diag::InvariantRecord& record)>;

void simulate_fixed(const FixedSetup& setup, baselines::UniformScheme scheme,
                    const solver::SolverConfig& solver_cfg, int steps,
                    const FixedObserver& on_level);

/// Full run: executes the configured pipeline and writes snapshots_####.csv,
/// invariants.csv, meta.txt and plot.gp into artifact_dir.
void run(const RunConfig& cfg, const std::filesystem::path& artifact_dir);

struct ConvergenceRow {
    int K = 0;
    double delta_t = 0.0;
    double err_phys = 0.0;
    double err_theta = std::numeric_limits<double>::quiet_NaN();
    double gap_naive = 0.0;  // |u_K - u_0| of the naive reconstruction
};

/// Refinement study: (K, dt), (2K, dt/2), ...  Requires an exact family.
std::vector<ConvergenceRow> convergence(const RunConfig& cfg, int levels);

/// Prints drift maxima for a finished run directory and applies the
/// conservation gates (H_d for the proposed schemes, I_d for the
/// norm-preserving scheme).  Returns a process exit code (0 or 3).
int invariants_report(const std::filesystem::path& artifact_dir, std::ostream& out);

}  // namespace spmm::run
