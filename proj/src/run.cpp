#include "spmm/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

namespace spmm::run {
namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const std::map<std::string, Method> kMethodNames = {
    {"proposed_avg", Method::proposed_avg},
    {"proposed_central", Method::proposed_central},
    {"norm_preserving", Method::norm_preserving},
    {"multisymplectic", Method::multisymplectic},
};

const std::map<std::string, Family> kFamilyNames = {
    {"breather", Family::breather},
    {"loop_antiloop", Family::loop_antiloop},
    {"hump", Family::hump},
    {"upright_loop", Family::upright_loop},
    {"alternating", Family::alternating},
    {"csv_curve", Family::csv_curve},
    {"csv_profile", Family::csv_profile},
};

template <class T>
std::string name_of(const std::map<std::string, T>& names, T v) {
    for (const auto& [k, t] : names)
        if (t == v) return k;
    return "?";
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (...) {
        throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
    }
}

int to_int(const std::string& v, const std::string& key) {
    const double x = to_double(v, key);
    const int i = static_cast<int>(std::lround(x));
    if (static_cast<double>(i) != x) throw ConfigError(key + " must be an integer");
    return i;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value: '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        if (key == "method") {
            const auto it = kMethodNames.find(val);
            if (it == kMethodNames.end()) throw ConfigError("unknown method: " + val);
            cfg.method = it->second;
        } else if (key == "initial.family") {
            const auto it = kFamilyNames.find(val);
            if (it == kFamilyNames.end()) throw ConfigError("unknown initial.family: " + val);
            cfg.family = it->second;
        } else if (key == "initial.xi") {
            cfg.xi = to_double(val, key);
        } else if (key == "initial.v") {
            cfg.v = to_double(val, key);
        } else if (key == "initial.x0") {
            cfg.x0 = to_double(val, key);
        } else if (key == "initial.sign") {
            cfg.sign = to_int(val, key);
        } else if (key == "initial.periods") {
            cfg.periods = to_int(val, key);
        } else if (key == "initial.S") {
            cfg.S = to_double(val, key);
        } else if (key == "initial.s_offset") {
            cfg.s_offset = to_double(val, key);
        } else if (key == "initial.path") {
            cfg.path = val;
        } else if (key == "grid.K") {
            cfg.K = to_int(val, key);
        } else if (key == "grid.delta_t") {
            cfg.delta_t = to_double(val, key);
        } else if (key == "grid.t_end") {
            cfg.t_end = to_double(val, key);
        } else if (key == "grid.L") {
            cfg.L = to_double(val, key);
        } else if (key == "output.stride") {
            cfg.output_stride = to_int(val, key);
        } else if (key == "output.dir") {
            cfg.out_dir = val;
        } else if (key == "solver.tol_residual") {
            cfg.solver.tol_residual = to_double(val, key);
        } else if (key == "solver.max_iter") {
            cfg.solver.max_iter = to_int(val, key);
        } else if (key == "solver.jacobian") {
            if (val == "analytic")
                cfg.solver.jacobian_mode = solver::SolverConfig::Jacobian::analytic;
            else if (val == "finite_difference")
                cfg.solver.jacobian_mode = solver::SolverConfig::Jacobian::finite_difference;
            else
                throw ConfigError("solver.jacobian must be analytic or finite_difference");
        } else if (key == "solver.damping") {
            if (val == "none")
                cfg.solver.damping = solver::SolverConfig::Damping::none;
            else if (val == "backtracking")
                cfg.solver.damping = solver::SolverConfig::Damping::backtracking;
            else
                throw ConfigError("solver.damping must be none or backtracking");
        } else if (key == "seed.note") {
            cfg.note = val;
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
    if (cfg.K < 3) throw ConfigError("grid.K must be >= 3");
    if (!(cfg.delta_t > 0.0)) throw ConfigError("grid.delta_t must be positive");
    if (!(cfg.t_end > 0.0)) throw ConfigError("grid.t_end must be positive");
    if (cfg.output_stride < 1) throw ConfigError("output.stride must be >= 1");
    if (cfg.periods < 1) throw ConfigError("initial.periods must be >= 1");
    return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace {

bool is_traveling(Family f) {
    return f == Family::hump || f == Family::upright_loop || f == Family::alternating;
}

exact::WaveFamily wave_family(Family f) {
    switch (f) {
        case Family::hump: return exact::WaveFamily::hump;
        case Family::upright_loop: return exact::WaveFamily::upright_loop;
        default: return exact::WaveFamily::alternating;
    }
}

/// Fill derived fields (S, s_offset) so the echoed config reproduces the run.
RunConfig resolve_config(RunConfig cfg) {
    if (cfg.family == Family::breather || cfg.family == Family::loop_antiloop) {
        if (!(cfg.S > 0.0))
            throw ConfigError("initial.S is required for breather/loop_antiloop families");
        if (!cfg.s_offset) cfg.s_offset = -0.5 * cfg.S;
    } else if (is_traveling(cfg.family)) {
        const exact::TravelingWaveParams p(wave_family(cfg.family), cfg.v, cfg.x0, cfg.xi,
                                           cfg.sign);
        cfg.S = cfg.periods * p.period_s();
        if (!cfg.s_offset) cfg.s_offset = 0.0;
    } else {
        if (cfg.path.empty()) throw ConfigError("initial.path is required for csv families");
        if (!cfg.s_offset) cfg.s_offset = 0.0;
    }
    return cfg;
}

}  // namespace

std::string config_to_text(const RunConfig& cfg_in) {
    const RunConfig cfg = resolve_config(cfg_in);
    std::ostringstream out;
    out << "method = " << name_of(kMethodNames, cfg.method) << "\n";
    out << "initial.family = " << name_of(kFamilyNames, cfg.family) << "\n";
    out << "initial.xi = " << fmt(cfg.xi) << "\n";
    out << "initial.v = " << fmt(cfg.v) << "\n";
    out << "initial.x0 = " << fmt(cfg.x0) << "\n";
    out << "initial.sign = " << cfg.sign << "\n";
    out << "initial.periods = " << cfg.periods << "\n";
    out << "initial.S = " << fmt(cfg.S) << "\n";
    out << "initial.s_offset = " << fmt(*cfg.s_offset) << "\n";
    if (!cfg.path.empty()) out << "initial.path = " << cfg.path << "\n";
    out << "grid.K = " << cfg.K << "\n";
    out << "grid.delta_t = " << fmt(cfg.delta_t) << "\n";
    out << "grid.t_end = " << fmt(cfg.t_end) << "\n";
    if (cfg.L) out << "grid.L = " << fmt(*cfg.L) << "\n";
    out << "output.stride = " << cfg.output_stride << "\n";
    if (!cfg.out_dir.empty()) out << "output.dir = " << cfg.out_dir << "\n";
    out << "solver.tol_residual = " << fmt(cfg.solver.tol_residual) << "\n";
    out << "solver.max_iter = " << cfg.solver.max_iter << "\n";
    out << "solver.jacobian = "
        << (cfg.solver.jacobian_mode == solver::SolverConfig::Jacobian::analytic
                ? "analytic"
                : "finite_difference")
        << "\n";
    out << "solver.damping = "
        << (cfg.solver.damping == solver::SolverConfig::Damping::backtracking ? "backtracking"
                                                                              : "none")
        << "\n";
    if (!cfg.note.empty()) out << "seed.note = " << cfg.note << "\n";
    return out.str();
}

namespace {

struct FamilyHooks {
    init::InitialCurve curve;  // tau = 0, parametrized by window coordinate sigma
    std::function<exact::PointXU(double, double)> exact;   // absolute s
    std::function<double(double, double)> exact_theta;     // absolute s
    double s_offset = 0.0;
};

FamilyHooks make_family_hooks(const RunConfig& cfg) {
    FamilyHooks h;
    h.s_offset = *cfg.s_offset;
    const double off = h.s_offset;
    switch (cfg.family) {
        case Family::breather:
        case Family::loop_antiloop: {
            exact::BreatherParams p(cfg.xi);
            const bool want_pulse = cfg.family == Family::breather;
            if (want_pulse != (p.mode == exact::BreatherParams::Mode::pulse))
                throw ConfigError("initial.xi inconsistent with breather family (xi<1: breather, xi>1: loop_antiloop)");
            h.curve.S = cfg.S;
            h.curve.sampler = [p, off](double sig) { return exact::breather(p, 0.0, sig + off); };
            h.exact = [p](double tau, double s) { return exact::breather(p, tau, s); };
            break;
        }
        case Family::hump:
        case Family::upright_loop:
        case Family::alternating: {
            exact::TravelingWaveParams p(wave_family(cfg.family), cfg.v, cfg.x0, cfg.xi, cfg.sign);
            h.curve.S = cfg.S;
            h.curve.sampler = [p, off](double sig) { return exact::traveling_wave(p, 0.0, sig + off); };
            h.exact = [p](double tau, double s) { return exact::traveling_wave(p, tau, s); };
            if (cfg.family == Family::hump) {
                h.curve.theta_exact = [p, off](double sig) {
                    return exact::periodic_hump_theta(p, 0.0, sig + off);
                };
                h.exact_theta = [p](double tau, double s) {
                    return exact::periodic_hump_theta(p, tau, s);
                };
            }
            break;
        }
        default:
            break;  // csv families carry no analytic hooks
    }
    return h;
}

init::Profile profile_from_csv(const std::string& path, double& L_out, double& x_lo_out) {
    const init::SampledCurve data = init::read_curve_csv(path);
    if (data.x.size() < 4) throw ConfigError("csv_profile needs at least 4 samples");
    auto xs = std::make_shared<std::vector<double>>(data.x);
    auto us = std::make_shared<std::vector<double>>(data.u);
    for (std::size_t i = 1; i < xs->size(); ++i)
        if (!((*xs)[i] > (*xs)[i - 1]))
            throw ConfigError("csv_profile x column must be strictly increasing");
    x_lo_out = xs->front();
    L_out = xs->back() - xs->front();
    const double x_lo = x_lo_out;
    const double L = L_out;
    auto locate = [xs, us, x_lo, L](double x) {
        double xq = x_lo + std::fmod(std::fmod(x - x_lo, L) + L, L);
        auto it = std::upper_bound(xs->begin(), xs->end(), xq);
        std::size_t j = std::min(static_cast<std::size_t>(it - xs->begin()),
                                 xs->size() - 1);
        if (j == 0) j = 1;
        const double xa = (*xs)[j - 1], xb = (*xs)[j];
        const double t = (xq - xa) / (xb - xa);
        const double slope = ((*us)[j] - (*us)[j - 1]) / (xb - xa);
        return std::pair<double, double>((1.0 - t) * (*us)[j - 1] + t * (*us)[j], slope);
    };
    init::Profile prof;
    prof.f = [locate](double x) { return locate(x).first; };
    prof.df = [locate](double x) { return locate(x).second; };
    return prof;
}

}  // namespace

MovingSetup make_moving_setup(const RunConfig& cfg_in) {
    const RunConfig cfg = resolve_config(cfg_in);
    if (cfg.family == Family::csv_curve) {
        const init::SampledCurve data = init::read_curve_csv(cfg.path);
        const int K = static_cast<int>(data.x.size()) - 1;
        if (K < 3) throw ConfigError("csv_curve needs at least 4 samples");
        double chord_sum = 0.0;
        for (int k = 1; k <= K; ++k)
            chord_sum += std::hypot(data.x[static_cast<std::size_t>(k)] - data.x[static_cast<std::size_t>(k) - 1],
                                    data.u[static_cast<std::size_t>(k)] - data.u[static_cast<std::size_t>(k) - 1]);
        const double ds = chord_sum / K;
        const GridSpec grid(K, ds, cfg.delta_t, static_cast<int>(std::lround(cfg.t_end / cfg.delta_t)));
        auto ts = init::theta_from_samples(data.x, data.u);
        MovingSetup setup{grid, ThetaField(grid, std::move(ts.theta), ts.winding), data.x[0],
                          *cfg.s_offset, nullptr, nullptr};
        return setup;
    }

    if (cfg.family == Family::csv_profile) {
        double L = 0.0, x_lo = 0.0;
        const init::Profile prof = profile_from_csv(cfg.path, L, x_lo);
        const auto eq = init::equidistribute(prof, L, cfg.K);
        std::vector<double> x = eq.x;
        for (double& xv : x) xv += x_lo;
        const double S = init::arclength_total(prof, L);
        const GridSpec grid(cfg.K, S / cfg.K, cfg.delta_t,
                            static_cast<int>(std::lround(cfg.t_end / cfg.delta_t)));
        auto ts = init::theta_from_samples(x, eq.u);
        return MovingSetup{grid, ThetaField(grid, std::move(ts.theta), ts.winding), x[0], 0.0,
                           nullptr, nullptr};
    }

    FamilyHooks hooks = make_family_hooks(cfg);
    const GridSpec grid(cfg.K, cfg.S / cfg.K, cfg.delta_t,
                        static_cast<int>(std::lround(cfg.t_end / cfg.delta_t)));

    ThetaField theta0 = [&]() -> ThetaField {
        if (cfg.family == Family::hump ||
            cfg.family == Family::upright_loop ||
            cfg.family == Family::alternating) {
            // Traveling waves: analytic tangent angle (exact for the hump,
            // finite differences on the sampler otherwise).
            return init::theta_from_analytic(hooks.curve, grid);
        }
        // Breather families follow the sampled-chord route.
        const init::SampledCurve data = init::sample_curve(hooks.curve, cfg.K);
        auto ts = init::theta_from_samples(data.x, data.u);
        return ThetaField(grid, std::move(ts.theta), ts.winding);
    }();

    return MovingSetup{grid, std::move(theta0), hooks.curve.sampler(0.0).x, hooks.s_offset,
                       hooks.exact, hooks.exact_theta};
}

FixedSetup make_fixed_setup(const RunConfig& cfg_in) {
    const RunConfig cfg = resolve_config(cfg_in);
    const int N = cfg.K;
    FixedSetup setup;
    setup.delta_t = cfg.delta_t;

    if (cfg.family == Family::csv_profile) {
        double L = 0.0, x_lo = 0.0;
        const init::Profile prof = profile_from_csv(cfg.path, L, x_lo);
        setup.x_lo = x_lo;
        setup.u0.delta_x = cfg.L.value_or(L) / N;
        setup.u0.u.resize(static_cast<std::size_t>(N));
        for (int k = 1; k <= N; ++k)
            setup.u0.u[static_cast<std::size_t>(k - 1)] = prof.f(x_lo + k * setup.u0.delta_x);
    } else if (cfg.family == Family::breather || cfg.family == Family::hump) {
        if (cfg.family == Family::breather && cfg.xi >= exact::BreatherParams::xi_critical)
            throw ConfigError("fixed-mesh methods require single-valued data (xi < sin(pi/8))");
        const FamilyHooks hooks = make_family_hooks(cfg);
        const double s_lo = hooks.s_offset;
        const double s_hi = hooks.s_offset + cfg.S;
        auto x_of = [&](double s) { return hooks.exact(0.0, s).x; };
        const double x_lo = x_of(s_lo);
        const double x_hi = x_of(s_hi);
        if (!(x_hi > x_lo)) throw ConfigError("fixed-mesh window has nonpositive length");
        const double L = cfg.L.value_or(x_hi - x_lo);
        setup.x_lo = x_lo;
        setup.u0.delta_x = L / N;
        setup.u0.u.resize(static_cast<std::size_t>(N));
        for (int k = 1; k <= N; ++k) {
            const double xq = x_lo + k * setup.u0.delta_x;
            // x(0,s) is strictly increasing for single-valued data; bisect.
            double lo = s_lo, hi = s_hi + 1.0;
            for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(hi)); ++it) {
                const double mid = 0.5 * (lo + hi);
                (x_of(mid) < xq ? lo : hi) = mid;
            }
            setup.u0.u[static_cast<std::size_t>(k - 1)] = hooks.exact(0.0, 0.5 * (lo + hi)).u;
        }
    } else {
        throw ConfigError("fixed-mesh methods accept breather, hump or csv_profile initial data");
    }

    double mean = 0.0;
    for (double u : setup.u0.u) mean += u;
    mean /= N;
    for (double& u : setup.u0.u) u -= mean;
    return setup;
}

void simulate_moving(const MovingSetup& setup, sg::Scheme scheme,
                     const solver::SolverConfig& solver_cfg, int steps,
                     const MovingObserver& on_level) {
    sg::Stepper stepper(scheme, solver_cfg);
    ThetaField theta = setup.theta0;
    double x0 = setup.base_x0;
    for (int m = 0; m <= steps; ++m) {
        const ThetaField next = stepper.step(theta);
        const double u0 = hodograph::base_u(theta, next);
        const hodograph::BasePoint base{x0, u0, m};
        const CurveState curve = hodograph::reconstruct_curve(theta, next, base);

        diag::InvariantRecord rec;
        rec.time = m * setup.grid.delta_tau;
        rec.H_d = sg::hamiltonian_d(theta);
        rec.window_L = curve.x.back() - curve.x.front();
        rec.constraint_residual = diag::implicit_constraint_residual(curve);
        rec.norm_I = diag::norm_on_curve(curve);
        const auto energy = diag::energy_on_curve(curve);
        if (energy) rec.energy_E = *energy;
        rec.winding = theta.winding;
        rec.roughness = diag::theta_roughness(theta);
        on_level(m, theta, curve, rec);

        x0 = hodograph::advance_base_x(base, setup.grid.delta_tau);
        theta = next;
    }
}

void simulate_fixed(const FixedSetup& setup, baselines::UniformScheme scheme,
                    const solver::SolverConfig& solver_cfg, int steps,
                    const FixedObserver& on_level) {
    baselines::UniformStepper stepper(scheme, setup.delta_t, solver_cfg);
    UniformField u = setup.u0;
    for (int m = 0; m <= steps; ++m) {
        diag::InvariantRecord rec;
        rec.time = m * setup.delta_t;
        rec.norm_I = baselines::norm_d(u);
        try {
            rec.energy_E = baselines::energy_d(u);
        } catch (const NonZeroMean&) {
            // leave NaN
        }
        const int N = u.N();
        std::vector<double> ext(static_cast<std::size_t>(N) + 2);
        ext[0] = u.u[static_cast<std::size_t>(N - 1)];
        std::copy(u.u.begin(), u.u.end(), ext.begin() + 1);
        ext[static_cast<std::size_t>(N) + 1] = u.u[0];
        rec.roughness = diag::roughness_indicator(ext);
        on_level(m, u, rec);

        if (m < steps) u = stepper.step(u);
    }
}

namespace {

void write_invariants_header(std::ostream& out) {
    out << "time,H_d,window_L,constraint_residual,norm_I,energy_E,winding,roughness\n";
}

void write_invariants_row(std::ostream& out, const diag::InvariantRecord& r) {
    out << fmt(r.time) << ',' << fmt(r.H_d) << ',' << fmt(r.window_L) << ','
        << fmt(r.constraint_residual) << ',' << fmt(r.norm_I) << ',' << fmt(r.energy_E) << ','
        << r.winding << ',' << fmt(r.roughness) << "\n";
}

std::string snapshot_name(int index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshots_%04d.csv", index);
    return buf;
}

void write_plot_script(const std::filesystem::path& dir, int snapshots, bool moving) {
    std::ofstream gp(dir / "plot.gp");
    gp << "# gnuplot profile plots; markers decimated to every 4th sample\n";
    gp << "set xlabel 'x'\nset ylabel 'u'\n";
    gp << "set terminal pngcairo size 900,600\n";
    for (int i = 0; i < snapshots; ++i) {
        gp << "set output 'profile_" << i << ".png'\n";
        gp << "plot '" << snapshot_name(i)
           << "' using 3:4 every ::1 with lines lc 'black' title 't index " << i << "', \\\n";
        gp << "     '' using 3:4 every 4::1 with points pt 7 ps 0.4 lc 'black' notitle\n";
    }
    if (moving) {
        gp << "set xlabel 's'\nset ylabel 'theta'\n";
        for (int i = 0; i < snapshots; ++i) {
            gp << "set output 'theta_" << i << ".png'\n";
            gp << "plot '" << snapshot_name(i)
               << "' using 2:5 every ::1 with lines lc 'black' title 't index " << i << "'\n";
        }
    }
}

}  // namespace

void run(const RunConfig& cfg_in, const std::filesystem::path& artifact_dir) {
    const RunConfig cfg = resolve_config(cfg_in);
    RunConfig cfg_echo = cfg;
    std::filesystem::create_directories(artifact_dir);
    const int steps = static_cast<int>(std::lround(cfg.t_end / cfg.delta_t));
    if (steps < 1) throw ConfigError("t_end shorter than one time step");

    std::ofstream inv(artifact_dir / "invariants.csv");
    write_invariants_header(inv);
    int snapshot_count = 0;

    std::ostringstream derived;

    if (cfg.moving_mesh()) {
        const MovingSetup setup = make_moving_setup(cfg);
        const sg::Scheme scheme = cfg.method == Method::proposed_avg
                                      ? sg::Scheme::average_difference
                                      : sg::Scheme::central_difference;
        simulate_moving(setup, scheme, cfg.solver, steps,
                        [&](int m, const ThetaField& theta, const CurveState& curve,
                            const diag::InvariantRecord& rec) {
                            write_invariants_row(inv, rec);
                            if (m % cfg.output_stride != 0 && m != steps) return;
                            std::ofstream snap(artifact_dir / snapshot_name(snapshot_count++));
                            snap << "k,s,x,u,theta\n";
                            for (int k = 0; k <= theta.grid.K; ++k)
                                snap << k << ',' << fmt(setup.s_offset + k * theta.grid.delta_s)
                                     << ',' << fmt(curve.x[static_cast<std::size_t>(k)]) << ','
                                     << fmt(curve.u[static_cast<std::size_t>(k)]) << ','
                                     << fmt(theta.at(k)) << "\n";
                        });
        derived << "# derived: delta_s = " << fmt(setup.grid.delta_s)
                << ", S = " << fmt(setup.grid.S)
                << ", winding = " << setup.theta0.winding
                << ", L = " << fmt(-sg::hamiltonian_d(setup.theta0))
                << ", base_x0 = " << fmt(setup.base_x0) << "\n";
    } else {
        const FixedSetup setup = make_fixed_setup(cfg);
        const baselines::UniformScheme scheme = cfg.method == Method::norm_preserving
                                                    ? baselines::UniformScheme::norm_preserving
                                                    : baselines::UniformScheme::multisymplectic;
        simulate_fixed(setup, scheme, cfg.solver, steps,
                       [&](int m, const UniformField& u, const diag::InvariantRecord& rec) {
                           write_invariants_row(inv, rec);
                           if (m % cfg.output_stride != 0 && m != steps) return;
                           std::ofstream snap(artifact_dir / snapshot_name(snapshot_count++));
                           snap << "k,s,x,u\n";
                           for (int k = 1; k <= u.N(); ++k) {
                               const double x = setup.x_lo + k * u.delta_x;
                               snap << k << ',' << fmt(x) << ',' << fmt(x) << ','
                                    << fmt(u.u[static_cast<std::size_t>(k - 1)]) << "\n";
                           }
                       });
        derived << "# derived: delta_x = " << fmt(setup.u0.delta_x)
                << ", L = " << fmt(setup.u0.L()) << ", x_lo = " << fmt(setup.x_lo) << "\n";
        cfg_echo.L = setup.u0.L();  // pins delta_x bit-exactly on replay
    }

    std::ofstream meta(artifact_dir / "meta.txt");
    meta << config_to_text(cfg_echo);
    meta << "# steps = " << steps << "\n";
    meta << derived.str();
    write_plot_script(artifact_dir, snapshot_count, cfg.moving_mesh());
}

std::vector<ConvergenceRow> convergence(const RunConfig& cfg_in, int levels) {
    const RunConfig cfg = resolve_config(cfg_in);
    if (!cfg.moving_mesh())
        throw ConfigError("convergence: moving-mesh methods only");
    std::vector<ConvergenceRow> rows;
    for (int lvl = 0; lvl < levels; ++lvl) {
        RunConfig c = cfg;
        c.K = cfg.K << lvl;
        c.delta_t = cfg.delta_t / static_cast<double>(1 << lvl);
        const MovingSetup setup = make_moving_setup(c);
        if (!setup.exact) throw ConfigError("convergence: initial family has no exact solution");
        const int steps = static_cast<int>(std::lround(c.t_end / c.delta_t));
        const sg::Scheme scheme = c.method == Method::proposed_avg
                                      ? sg::Scheme::average_difference
                                      : sg::Scheme::central_difference;

        double branch_offset = 0.0;
        if (setup.exact_theta)
            branch_offset = diag::theta_branch_offset(setup.theta0, setup.exact_theta,
                                                      setup.s_offset);

        ConvergenceRow row;
        row.K = c.K;
        row.delta_t = c.delta_t;
        simulate_moving(setup, scheme, c.solver, steps,
                        [&](int m, const ThetaField& theta, const CurveState& curve,
                            const diag::InvariantRecord&) {
                            if (m != steps) return;
                            const double t = m * setup.grid.delta_tau;
                            double err = 0.0;
                            const double xe0 = setup.exact(t, setup.s_offset).x;
                            for (int k = 0; k <= theta.grid.K; ++k) {
                                const double s = setup.s_offset + k * theta.grid.delta_s;
                                const auto pe = setup.exact(t, s);
                                const double ex =
                                    (curve.x[static_cast<std::size_t>(k)] - curve.x[0]) -
                                    (pe.x - xe0);
                                const double eu = curve.u[static_cast<std::size_t>(k)] - pe.u;
                                err = std::max(err, std::hypot(ex, eu));
                            }
                            row.err_phys = err;
                            if (setup.exact_theta)
                                row.err_theta = diag::error_vs_exact_theta(
                                    theta, setup.exact_theta, t, setup.s_offset, branch_offset);
                            const CurveState naive = hodograph::reconstruct_curve_naive(
                                theta, hodograph::BasePoint{0.0, 0.0, m});
                            row.gap_naive = std::abs(naive.u.back() - naive.u.front());
                        });
        rows.push_back(row);
    }
    return rows;
}

int invariants_report(const std::filesystem::path& artifact_dir, std::ostream& out) {
    const RunConfig cfg = parse_config_file(artifact_dir / "meta.txt");
    std::ifstream inv(artifact_dir / "invariants.csv");
    if (!inv) throw Error("missing invariants.csv in " + artifact_dir.string());

    std::string line;
    std::getline(inv, line);  // header
    std::vector<diag::InvariantRecord> recs;
    while (std::getline(inv, line)) {
        if (line.empty()) continue;
        diag::InvariantRecord r;
        std::stringstream ss(line);
        std::string cell;
        double* slots[] = {&r.time, &r.H_d, &r.window_L, &r.constraint_residual,
                           &r.norm_I, &r.energy_E, nullptr, &r.roughness};
        for (int c = 0; c < 8 && std::getline(ss, cell, ','); ++c) {
            if (c == 6)
                r.winding = std::stol(cell);
            else
                *slots[c] = std::stod(cell);
        }
        recs.push_back(r);
    }
    if (recs.size() < 2) throw Error("invariants.csv has fewer than two rows");

    auto max_step_drift = [&](double diag::InvariantRecord::*field) {
        double d = 0.0;
        for (std::size_t i = 1; i < recs.size(); ++i) {
            const double a = recs[i - 1].*field, b = recs[i].*field;
            if (std::isnan(a) || std::isnan(b)) continue;
            d = std::max(d, std::abs(b - a));
        }
        return d;
    };
    auto max_total_drift = [&](double diag::InvariantRecord::*field) {
        double d = 0.0;
        const double ref = recs.front().*field;
        for (const auto& r : recs)
            if (!std::isnan(r.*field) && !std::isnan(ref)) d = std::max(d, std::abs(r.*field - ref));
        return d;
    };
    auto max_abs = [&](double diag::InvariantRecord::*field) {
        double d = 0.0;
        for (const auto& r : recs)
            if (!std::isnan(r.*field)) d = std::max(d, std::abs(r.*field));
        return d;
    };

    const double hd_drift = max_total_drift(&diag::InvariantRecord::H_d);
    const double norm_drift = max_total_drift(&diag::InvariantRecord::norm_I);
    const double energy_drift = max_total_drift(&diag::InvariantRecord::energy_E);
    const double constraint_max = max_abs(&diag::InvariantRecord::constraint_residual);

    out << "levels: " << recs.size() << "\n";
    out << "max |H_d drift|: " << fmt(hd_drift) << "\n";
    out << "max |norm drift|: " << fmt(norm_drift) << "\n";
    out << "max |energy drift|: " << fmt(energy_drift) << "\n";
    out << "max |constraint residual|: " << fmt(constraint_max) << "\n";

    bool ok = true;
    const double tol = cfg.solver.tol_residual;
    if (cfg.moving_mesh()) {
        const double gate = 10.0 * tol * cfg.S;
        const double step_drift = max_step_drift(&diag::InvariantRecord::H_d);
        out << "gate H_d per-step drift <= " << fmt(gate) << ": " << fmt(step_drift)
            << (step_drift <= gate ? "  [pass]" : "  [FAIL]") << "\n";
        ok = step_drift <= gate;
    } else if (cfg.method == Method::norm_preserving) {
        if (!cfg.L) throw Error("meta.txt lacks grid.L for a fixed-mesh run");
        const double L = *cfg.L;
        const double norm_max = max_abs(&diag::InvariantRecord::norm_I);
        // rms estimate of max|u| (an underestimate, so the gate is stricter
        // than the per-step conservation bound).
        const double u_est = std::sqrt(2.0 * norm_max / L);
        const double gate = 10.0 * tol * u_est * L;
        const double step_drift = max_step_drift(&diag::InvariantRecord::norm_I);
        out << "gate I_d per-step drift <= " << fmt(gate) << ": " << fmt(step_drift)
            << (step_drift <= gate ? "  [pass]" : "  [FAIL]") << "\n";
        ok = step_drift <= gate;
    } else {
        out << "multisymplectic: drift reported only (no hard gate)\n";
    }
    return ok ? 0 : 3;
}

}  // namespace spmm::run
