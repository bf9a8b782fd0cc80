#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "rkb/caustics.hpp"
#include "rkb/errors.hpp"
#include "rkb/io.hpp"
#include "rkb/kernels.hpp"
#include "rkb/orbit.hpp"
#include "rkb/refraction.hpp"

namespace rkb {

namespace {

using json = nlohmann::ordered_json;
using Pts = std::vector<std::pair<double, double>>;

class Csv {
public:
    Csv(const std::string& path, const std::string& header) : f_(path) {
        if (!f_) throw Error("cannot write " + path);
        f_ << header << "\n";
    }
    template <class... T>
    void row(const T&... v) {
        bool first = true;
        ((f_ << (first ? "" : ",") << cell(v), first = false), ...);
        f_ << "\n";
    }

private:
    static std::string cell(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(std::size_t v) { return std::to_string(v); }
    static std::string cell(const char* s) { return s; }
    static std::string cell(const std::string& s) { return s; }
    std::ofstream f_;
};

struct Ctx {
    const RunConfig& cfg;
    const RunOptions& opt;
    std::ostream& log;
    std::filesystem::path out;

    std::string path(const char* name) const { return (out / name).string(); }
    void note(const std::string& s) const {
        if (opt.verbose) log << s << "\n";
    }
};

double wrap_2pi(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

double first_action(const RunConfig& cfg, double fallback) { return cfg.actions.empty() ? fallback : cfg.actions.front(); }

Pts boundary_curve(const PerturbationProfile& prof) {
    Pts b;
    for (int i = 0; i <= 256; ++i) {
        const Vec2 q = boundary(kTwoPi * i / 256, prof).point;
        b.emplace_back(q.x, q.y);
    }
    return b;
}

Pts arc_points(const ArcSegment& a) {
    Pts out;
    for (const Vec2& q : a.sample(64)) out.emplace_back(q.x, q.y);
    return out;
}

int cmd_params_report(const Ctx& c) {
    const PhysParams& p = c.cfg.params;
    const auto th = fixed_point_thresholds(p);
    json j;
    j["energy_E"] = p.energy_E;
    j["offset_h"] = p.offset_h;
    j["mass_mu"] = p.mass_mu;
    j["stiffness_om"] = p.stiffness_om;
    j["omega"] = p.omega();
    j["Omega_sq"] = p.Omega_sq();
    j["action_bound_Ic"] = p.action_bound_Ic;
    j["critical_angle_unit_circle"] = critical_angle(boundary(0.0, PerturbationProfile::circle()), p);
    j["theta_bar_boundary"] = theta_bar_boundary(p);
    j["twist_at_zero"] = twist_at_zero(p);
    j["mu_bar"] = th.mu_bar;
    j["h_bar"] = th.h_bar;
    j["nonhomothetic_hypotheses"] = nonhomothetic_hypotheses(p);
    j["twist_critical_set"] = twist_critical_set(p);
    j["epsilon"] = c.cfg.profile.epsilon;
    const std::string s = j.dump(2);
    std::ofstream(c.path("params.json")) << s << "\n";
    c.log << s << "\n";
    return 0;
}

int cmd_shift_profile(const Ctx& c) {
    const PhysParams& p = c.cfg.params;
    std::vector<double> grid = c.cfg.actions;
    if (grid.empty())
        for (int k = -1000; k <= 1000; ++k)
            if (std::abs(k * 0.01) < p.action_bound_Ic) grid.push_back(k * 0.01);
    Csv csv(c.path("shift_profile.csv"), "I,f,g,theta_bar,f_prime,g_prime,theta_bar_prime");
    Pts pf, pg, pt;
    for (double I : grid) {
        const ShiftProfile s = circular_shift(I, p);
        csv.row(I, s.f_val, s.g_val, s.total, s.f_prime, s.g_prime, s.total_prime);
        pf.emplace_back(I, s.f_val);
        pg.emplace_back(I, s.g_val);
        pt.emplace_back(I, s.total);
    }
    Svg svg(-p.action_bound_Ic, p.action_bound_Ic, -kTwoPi, kTwoPi);
    svg.axes("I", "shift");
    svg.title("f (blue), g (red), f+g (black)");
    svg.polyline(pf, "blue");
    svg.polyline(pg, "red");
    svg.polyline(pt, "black", 1.5);
    svg.save(c.path("shift_profile.svg"));
    c.note("shift-profile: " + std::to_string(grid.size()) + " rows");
    return 0;
}

std::vector<BoundaryState> section_seeds(const RunConfig& cfg) {
    std::vector<BoundaryState> seeds;
    const int S = cfg.seeds;
    const int half = (S + 1) / 2;
    for (int j = 0; j < S; ++j) {
        const double xi = (j % 2) * kPi / 2;
        const double frac = -1.0 + 2.0 * (j / 2 + 0.5) / half;
        const double bound = action_bound(xi, cfg.profile, cfg.params);
        seeds.push_back(make_state(xi, 0.9 * frac * bound, cfg.profile, cfg.params));
    }
    return seeds;
}

int cmd_section(const Ctx& c) {
    const auto seeds = section_seeds(c.cfg);
    const auto traces = section_sweep(seeds, c.cfg.iterations, c.cfg.profile, c.cfg.params, c.opt.workers);
    Csv csv(c.path("section.csv"), "seed_id,k,xi,action_I,status");
    double Imax = 0.0;
    for (const auto& s : seeds) Imax = std::max(Imax, action_bound(s.xi, c.cfg.profile, c.cfg.params));
    Svg svg(0.0, kTwoPi, -Imax, Imax);
    svg.axes("xi", "I");
    svg.title("first return map");
    for (std::size_t i = 0; i < traces.size(); ++i) {
        const auto& t = traces[i];
        Pts pts;
        for (std::size_t k = 0; k < t.states.size(); ++k) {
            const double x = wrap_2pi(t.states[k].xi);
            csv.row(i, k, x, t.states[k].action_I, to_string(t.status));
            pts.emplace_back(x, t.states[k].action_I);
        }
        std::sort(pts.begin(), pts.end());
        svg.polyline(pts, i % 2 ? "steelblue" : "darkred", 0.6);
        if (t.status != OrbitStatus::running) c.note("seed " + std::to_string(i) + ": " + t.message);
    }
    svg.save(c.path("section.svg"));
    c.note("section: " + std::to_string(traces.size()) + " seeds");
    return 0;
}

int cmd_orbit(const Ctx& c) {
    const PhysParams& p = c.cfg.params;
    const OrbitTrace t = iterate(make_state(0.0, first_action(c.cfg, 1.0), c.cfg.profile, p), c.cfg.iterations,
                                 c.cfg.profile, p, true);
    Csv csv(c.path("orbit.csv"), "k,xi,action_I,alpha,status");
    for (std::size_t k = 0; k < t.states.size(); ++k)
        csv.row(k, t.states[k].xi, t.states[k].action_I, t.states[k].alpha, to_string(t.status));
    const double R = std::sqrt(2.0 * p.energy_E / p.stiffness_om) * 1.05;
    Svg svg(-R, R, -R, R, 560, 560);
    svg.axes("x", "y");
    svg.title("trajectory");
    svg.polyline(boundary_curve(c.cfg.profile), "black", 1.5);
    for (const auto& a : t.arcs) svg.polyline(arc_points(a), a.kind == ArcKind::outer ? "blue" : "red", 0.8);
    svg.save(c.path("orbit.svg"));
    c.log << "orbit: " << t.states.size() - 1 << " steps, status " << to_string(t.status) << ", rotation "
          << t.rotation.value << "\n";
    if (t.status != OrbitStatus::running) c.log << "orbit stopped: " << t.message << "\n";
    return 0;
}

int cmd_periodic(const Ctx& c) {
    const auto orbits = find_periodic(c.cfg.m, c.cfg.n, c.cfg.profile, c.cfg.params);
    Csv csv(c.path("periodic.csv"), "orbit_id,kind,k,xi,action_I,residual,gradient_norm,W,stability");
    Svg svg(0.0, kTwoPi, -c.cfg.params.action_bound_Ic, c.cfg.params.action_bound_Ic);
    svg.axes("xi", "I");
    svg.title("periodic orbits");
    for (std::size_t i = 0; i < orbits.size(); ++i) {
        const auto& o = orbits[i];
        std::string stab = "n/a";
        try {
            stab = to_string(linear_stability(o, c.cfg.profile, c.cfg.params).kind);
        } catch (const Error& e) {
            c.note("orbit " + std::to_string(i) + " stability: " + e.what());
        }
        Pts pts;
        for (std::size_t k = 0; k < o.states.size(); ++k) {
            csv.row(i, to_string(o.kind), k, o.states[k].xi, o.states[k].action_I, o.residual, o.gradient_norm,
                    o.action_W, stab);
            pts.emplace_back(wrap_2pi(o.states[k].xi), o.states[k].action_I);
        }
        std::sort(pts.begin(), pts.end());
        svg.polyline(pts, "black");
        c.log << "orbit " << i << ": " << to_string(o.kind) << " I0 = " << o.states.front().action_I << " residual "
              << o.residual << " " << stab << "\n";
    }
    svg.save(c.path("periodic.svg"));
    return 0;
}

int cmd_twist(const Ctx& c) {
    const PhysParams& p = c.cfg.params;
    const auto crit = twist_critical_points(p);
    json j;
    j["twist_at_zero"] = twist_at_zero(p);
    j["critical"] = json::array();
    for (const auto& cp : crit) j["critical"].push_back({{"action", cp.action}, {"tangential", cp.tangential}});
    std::ofstream(c.path("twist.json")) << j.dump(2) << "\n";
    c.log << j.dump(2) << "\n";

    Csv csv(c.path("twist.csv"), "I,theta_bar_prime,sign");
    Pts pts;
    double lo = 0.0, hi = 0.0;
    const int N = 400;
    for (int k = 1; k < N; ++k) {
        const double I = p.action_bound_Ic * (-1.0 + 2.0 * k / N);
        const double d = circular_shift(I, p).total_prime;
        csv.row(I, d, d > 0 ? 1 : (d < 0 ? -1 : 0));
        pts.emplace_back(I, d);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    Svg svg(-p.action_bound_Ic, p.action_bound_Ic, std::max(lo, -20.0) - 1e-3, std::min(hi, 20.0) + 1e-3);
    svg.axes("I", "f'+g'");
    svg.title("twist");
    svg.polyline({{-p.action_bound_Ic, 0.0}, {p.action_bound_Ic, 0.0}}, "gray");
    for (auto& q : pts) q.second = std::clamp(q.second, -20.0, 20.0);
    svg.polyline(pts, "black", 1.5);
    svg.save(c.path("twist.svg"));
    return 0;
}

int cmd_caustics(const Ctx& c) {
    const PhysParams& p = c.cfg.params;
    const double I0 = first_action(c.cfg, 1.0);
    const CausticRadii r = circular_caustic_radii(I0, p);
    std::function<double(double)> out_I, in_I;
    BoundaryState start = make_state(0.0, I0, c.cfg.profile, p);
    CurveProbe probe;
    if (c.cfg.profile.is_circle()) {
        out_I = in_I = [I0](double) { return I0; };
    } else {
        ProbeOptions po;
        po.action_hint = I0;
        po.iterations = std::max(c.cfg.iterations, 200);
        probe = invariant_curve_probe(theta_bar(I0, p), c.cfg.profile, p, po);
        out_I = [&](double z) { return probe.outgoing(z); };
        in_I = [&](double z) { return probe.incoming(z); };
        start = probe.trace.states.front();
        c.note("probe fit residual " + std::to_string(probe.outgoing.max_residual));
    }
    CausticOptions co;
    co.workers = c.opt.workers;
    const CausticCurve ce = perturbed_caustic(out_I, CausticKind::outer, c.cfg.profile, p, co);
    const CausticCurve ci = perturbed_caustic(in_I, CausticKind::inner, c.cfg.profile, p, co);
    const OrbitTrace t = iterate(start, 50, c.cfg.profile, p, true);

    Csv csv(c.path("caustics.csv"), "kind,zeta,x,y");
    for (const auto& s : ce.samples) csv.row("outer", s.zeta, s.x, s.y);
    for (const auto& s : ci.samples) csv.row("inner", s.zeta, s.x, s.y);

    json j;
    j["action_I0"] = I0;
    j["R_E"] = r.outer_R_E;
    j["R_I"] = r.inner_R_I;
    j["outer_envelope_residual"] = ce.max_envelope_residual;
    j["inner_envelope_residual"] = ci.max_envelope_residual;
    j["outer_tangency"] = tangency_check(t, ce);
    j["inner_tangency"] = tangency_check(t, ci);
    c.log << j.dump(2) << "\n";

    const double R = r.outer_R_E * 1.1;
    Svg svg(-R, R, -R, R, 560, 560);
    svg.axes("x", "y");
    svg.title("caustics");
    svg.polyline(boundary_curve(c.cfg.profile), "black", 1.5);
    for (const auto& a : t.arcs) svg.polyline(arc_points(a), "lightgray", 0.5);
    for (const CausticCurve* cc : {&ce, &ci}) {
        Pts pts;
        for (const auto& s : cc->samples) pts.emplace_back(s.x, s.y);
        pts.push_back(pts.front());
        svg.polyline(pts, cc == &ce ? "blue" : "red", 1.5);
    }
    svg.save(c.path("caustics.svg"));
    return 0;
}

int cmd_oracle_check(const Ctx& c) {
    if (!c.cfg.profile.is_circle()) throw ConfigError("oracle-check compares against the circular closed form; set epsilon = 0");
    std::vector<double> alphas;
    const int N = 200;
    const double lo = -kPi / 2 + 0.05, hi = kPi / 2 - 0.05;
    for (int i = 0; i < N; ++i) alphas.push_back(lo + (hi - lo) * i / (N - 1));
    const auto rows = oracle_grid(0.0, alphas, c.cfg.params, c.opt.workers);
    Csv csv(c.path("oracle.csv"), "alpha0,xi_numeric,xi_closed,difference,action_drift");
    double worst = 0.0, drift = 0.0;
    for (const auto& r : rows) {
        csv.row(r.alpha0, r.xi_numeric, r.xi_closed, r.xi_numeric - r.xi_closed, r.action_drift);
        worst = std::max(worst, std::abs(r.xi_numeric - r.xi_closed));
        drift = std::max(drift, r.action_drift);
    }
    const bool ok = worst < c.cfg.tol && drift < 1e-9;
    c.log << "oracle-check: max |dxi| = " << worst << ", max |dI| = " << drift << (ok ? " PASS" : " FAIL") << "\n";
    return ok ? 0 : 4;
}

}  // namespace

std::string usage_text() {
    return "usage: rkb --config PATH [--out DIR] [--workers N] [--verbose]\n"
           "commands ([command] command = ...): params-report, shift-profile, section, orbit,\n"
           "  periodic, twist, caustics, oracle-check\n";
}

int run(const RunConfig& cfg, const RunOptions& opt, std::ostream& log) {
    if (cfg.command == Command::none) {
        log << usage_text();
        return 2;
    }
    std::filesystem::create_directories(opt.out_dir);
    const Ctx c{cfg, opt, log, opt.out_dir};
    c.note(std::string("running ") + to_string(cfg.command));
    switch (cfg.command) {
        case Command::params_report: return cmd_params_report(c);
        case Command::shift_profile: return cmd_shift_profile(c);
        case Command::section: return cmd_section(c);
        case Command::orbit: return cmd_orbit(c);
        case Command::periodic: return cmd_periodic(c);
        case Command::twist: return cmd_twist(c);
        case Command::caustics: return cmd_caustics(c);
        case Command::oracle_check: return cmd_oracle_check(c);
        case Command::none: break;
    }
    return 2;
}

}  // namespace rkb
