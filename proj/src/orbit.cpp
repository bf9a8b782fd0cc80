#include "rkb/orbit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "rkb/errors.hpp"
#include "rkb/variational.hpp"

namespace rkb {

const char* to_string(OrbitStatus s) {
    switch (s) {
        case OrbitStatus::running: return "running";
        case OrbitStatus::total_reflection: return "total_reflection";
        case OrbitStatus::failed: return "failed";
    }
    return "?";
}

const char* to_string(OrbitKind k) {
    switch (k) {
        case OrbitKind::circular: return "circular";
        case OrbitKind::minimizer: return "minimizer";
        case OrbitKind::minimax: return "minimax";
    }
    return "?";
}

const char* to_string(Stability s) {
    switch (s) {
        case Stability::elliptic: return "elliptic";
        case Stability::hyperbolic: return "hyperbolic";
        case Stability::parabolic: return "parabolic";
    }
    return "?";
}

OrbitTrace iterate(const BoundaryState& initial, int n, const PerturbationProfile& profile, const PhysParams& p,
                   bool record_arcs) {
    OrbitTrace t;
    t.states.reserve(static_cast<std::size_t>(n) + 1);
    t.states.push_back(initial);
    BoundaryState s = initial;
    try {
        for (int i = 0; i < n; ++i) {
            if (record_arcs) {
                MapStep st = return_map_step(s, profile, p);
                t.mids.push_back(st.mid);
                t.arcs.push_back(std::move(st.outer));
                t.arcs.push_back(std::move(st.inner));
                s = st.next;
            } else {
                s = return_map(s, profile, p);
            }
            t.states.push_back(s);
        }
    } catch (const TotalReflectionTermination& e) {
        t.status = OrbitStatus::total_reflection;
        t.message = e.what();
    } catch (const Error& e) {
        t.status = OrbitStatus::failed;
        t.message = e.what();
    }
    if (t.states.size() >= 2) t.rotation = rotation_number(t);
    return t;
}

RotationEstimate rotation_number(const OrbitTrace& trace) {
    const auto& s = trace.states;
    if (s.size() < 2) throw InsufficientLength("rotation number needs at least two states");
    const std::size_t N = s.size() - 1;
    const std::size_t K = std::max<std::size_t>(1, N / 2);
    const std::size_t windows = N - K + 1;
    std::vector<double> w(windows);
    for (std::size_t k = 0; k < windows; ++k) w[k] = (s[k + K].xi - s[k].xi) / static_cast<double>(K);
    double sum = 0.0;
    for (double x : w) sum += x;
    RotationEstimate r;
    r.value = sum / static_cast<double>(windows);
    const std::size_t q = windows - std::max<std::size_t>(1, windows / 4);
    const auto [lo, hi] = std::minmax_element(w.begin() + static_cast<long>(q), w.end());
    r.error = *hi - *lo;
    return r;
}

namespace {

BoundaryState iterate_n(BoundaryState s, int n, const PerturbationProfile& profile, const PhysParams& p) {
    for (int i = 0; i < n; ++i) s = return_map(s, profile, p);
    return s;
}

std::vector<BoundaryState> orbit_states(BoundaryState s, int n, const PerturbationProfile& profile,
                                        const PhysParams& p, BoundaryState* closing) {
    std::vector<BoundaryState> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(s);
        s = return_map(s, profile, p);
    }
    if (closing) *closing = s;
    return out;
}

void finish_orbit(PeriodicOrbit& o, const PerturbationProfile& profile, const PhysParams& p, bool evaluate_action) {
    BoundaryState end;
    o.states = orbit_states(o.states.front(), o.n, profile, p, &end);
    o.residual = std::abs(end.xi - o.states.front().xi - kTwoPi * o.m) + std::abs(end.action_I - o.states.front().action_I);
    if (!evaluate_action) return;
    std::vector<double> cyc, hints;
    for (const auto& s : o.states) {
        cyc.push_back(s.xi);
        hints.push_back(s.action_I);
    }
    const auto da = discrete_action(cyc, o.m, o.n, profile, p, hints);
    o.action_W = da.W;
    o.gradient_norm = 0.0;
    for (double g : da.gradient) o.gradient_norm = std::max(o.gradient_norm, std::abs(g));
}

// same orbit up to cyclic relabelling and whole turns of ξ
bool same_orbit(const PeriodicOrbit& a, const PeriodicOrbit& b, double tol) {
    for (const auto& sb : b.states) {
        const double d = std::remainder(sb.xi - a.states.front().xi, kTwoPi);
        if (std::abs(d) < tol && std::abs(sb.action_I - a.states.front().action_I) < tol) return true;
    }
    return false;
}

struct FamilyPoint {
    double c = 0.0;
    double I0 = 0.0;
    double r = 0.0;
    bool ok = false;
};

class ReducedFamily {
public:
    ReducedFamily(int m, int n, const PerturbationProfile& profile, const PhysParams& p, double lo, double hi)
        : m_(m), n_(n), profile_(profile), p_(p), lo_(lo), hi_(hi) {}

    // launch action at ξ0 = c with ξ_n = c + 2πm
    std::optional<double> solve(double c, double hint) const {
        auto F = [&](double I) { return iterate_n(make_state(c, I, profile_, p_), n_, profile_, p_).xi - c - kTwoPi * m_; };
        try {
            const double bound = action_bound(c, profile_, p_) * (1.0 - 1e-9);
            const auto br = detail::expand_bracket(F, hint, 1e-3 * p_.action_bound_Ic, std::max(lo_, -bound),
                                                   std::min(hi_, bound));
            if (!br) return std::nullopt;
            return detail::refine_root(F, br->first, br->second);
        } catch (const Error&) {
            return std::nullopt;
        }
    }

    FamilyPoint eval(double c, double hint) const {
        FamilyPoint fp;
        fp.c = c;
        const auto I = solve(c, hint);
        if (!I) return fp;
        fp.I0 = *I;
        fp.r = iterate_n(make_state(c, *I, profile_, p_), n_, profile_, p_).action_I - *I;
        fp.ok = true;
        return fp;
    }

private:
    int m_, n_;
    const PerturbationProfile& profile_;
    const PhysParams& p_;
    double lo_, hi_;
};

}  // namespace

std::vector<PeriodicOrbit> find_periodic(int m, int n, const PerturbationProfile& profile, const PhysParams& p,
                                         const PeriodicSearch& opt) {
    if (n < 1) throw DomainError("n must be at least 1");
    const double target = kTwoPi * m / n;
    const auto roots = theta_bar_roots(target, p);
    if (roots.empty())
        throw RangeEmpty("rotation 2πm/n = " + std::to_string(target) + " outside the attainable shift range");

    std::vector<PeriodicOrbit> out;
    if (profile.is_circle()) {
        for (double I : roots) {
            PeriodicOrbit o;
            o.m = m;
            o.n = n;
            o.states.push_back(make_state(opt.xi0, I, profile, p));
            finish_orbit(o, profile, p, opt.evaluate_action && I != 0.0);
            out.push_back(std::move(o));
        }
        return out;
    }

    const auto branches = monotone_branches(p);
    for (double Istar : roots) {
        double lo = -p.action_bound_Ic, hi = p.action_bound_Ic;
        for (const auto& br : branches)
            if (Istar >= br[0] && Istar <= br[1]) {
                const double pad = 0.02 * p.action_bound_Ic;
                lo = br[0] - pad;
                hi = br[1] + pad;
            }
        ReducedFamily fam(m, n, profile, p, lo, hi);

        const int G = std::max(8, opt.family_grid);
        std::vector<FamilyPoint> pts;
        double hint = Istar;
        for (int i = 0; i <= G; ++i) {
            const double c = opt.xi0 + kTwoPi * i / G;
            FamilyPoint fp = fam.eval(c, hint);
            if (fp.ok) hint = fp.I0;
            pts.push_back(fp);
        }

        std::vector<PeriodicOrbit> found;
        for (int i = 0; i < G; ++i) {
            const FamilyPoint& a = pts[static_cast<std::size_t>(i)];
            const FamilyPoint& b = pts[static_cast<std::size_t>(i + 1)];
            if (!a.ok || !b.ok) continue;
            if ((a.r < 0.0) == (b.r < 0.0) && a.r != 0.0) continue;
            double Ih = a.I0;
            auto R = [&](double c) {
                FamilyPoint fp = fam.eval(c, Ih);
                if (!fp.ok) throw NoFixedPoint("reduced family lost between grid points");
                Ih = fp.I0;
                return fp.r;
            };
            double c_star;
            try {
                c_star = detail::refine_root(R, a.c, b.c, a.r, b.r);
            } catch (const NoFixedPoint&) {
                continue;
            }
            const auto I0 = fam.solve(c_star, Ih);
            if (!I0) continue;
            PeriodicOrbit o;
            o.m = m;
            o.n = n;
            // dW/dc = I_n − I_0: − → + is a minimum of W
            o.kind = (a.r < 0.0) ? OrbitKind::minimizer : OrbitKind::minimax;
            o.states.push_back(make_state(c_star, *I0, profile, p));
            finish_orbit(o, profile, p, opt.evaluate_action);
            if (o.residual > 1e-8) continue;
            bool dup = false;
            for (const auto& f : found) dup = dup || same_orbit(f, o, 1e-6);
            if (!dup) found.push_back(std::move(o));
        }
        if (found.empty())
            throw DescentStalled("no critical cycle of the discrete action on the branch through I = " +
                                 std::to_string(Istar));
        for (auto& f : found) out.push_back(std::move(f));
    }
    return out;
}

MultiplierReport linear_stability(const PeriodicOrbit& orbit, const PerturbationProfile& profile, const PhysParams& p,
                                  double fd_step) {
    if (orbit.states.empty()) throw DomainError("empty orbit");
    const BoundaryState s0 = orbit.states.front();
    BoundaryState end = iterate_n(s0, orbit.n, profile, p);
    const double res = std::abs(end.xi - s0.xi - kTwoPi * orbit.m) + std::abs(end.action_I - s0.action_I);
    if (res > 1e-8) throw ResidualTooLarge("orbit residual " + std::to_string(res));

    MultiplierReport rep;
    const double h = fd_step;
    for (int j = 0; j < 2; ++j) {
        const double dxi = j == 0 ? h : 0.0, dI = j == 1 ? h : 0.0;
        const auto up = iterate_n(make_state(s0.xi + dxi, s0.action_I + dI, profile, p), orbit.n, profile, p);
        const auto dn = iterate_n(make_state(s0.xi - dxi, s0.action_I - dI, profile, p), orbit.n, profile, p);
        rep.monodromy[0][static_cast<std::size_t>(j)] = (up.xi - dn.xi) / (2 * h);
        rep.monodromy[1][static_cast<std::size_t>(j)] = (up.action_I - dn.action_I) / (2 * h);
    }
    const auto& M = rep.monodromy;
    rep.trace = M[0][0] + M[1][1];
    rep.det = M[0][0] * M[1][1] - M[0][1] * M[1][0];
    const double tol = 1e-7;
    if (std::abs(rep.trace) < 2.0 - tol)
        rep.kind = Stability::elliptic;
    else if (std::abs(rep.trace) > 2.0 + tol)
        rep.kind = Stability::hyperbolic;
    else
        rep.kind = Stability::parabolic;
    return rep;
}

double CurveFit::operator()(double xi) const {
    if (coeffs.empty()) return 0.0;
    double v = coeffs[0];
    const std::size_t H = (coeffs.size() - 1) / 2;
    for (std::size_t k = 1; k <= H; ++k)
        v += coeffs[2 * k - 1] * std::cos(static_cast<double>(k) * xi) + coeffs[2 * k] * std::sin(static_cast<double>(k) * xi);
    return v;
}

CurveFit fit_periodic(const std::vector<double>& xi, const std::vector<double>& val, int harmonics) {
    const long N = static_cast<long>(xi.size());
    const long cols = 2 * harmonics + 1;
    if (N < cols) throw InsufficientLength("not enough samples for the harmonic fit");
    Eigen::MatrixXd A(N, cols);
    Eigen::VectorXd b(N);
    for (long i = 0; i < N; ++i) {
        const double x = xi[static_cast<std::size_t>(i)];
        A(i, 0) = 1.0;
        for (int k = 1; k <= harmonics; ++k) {
            A(i, 2 * k - 1) = std::cos(k * x);
            A(i, 2 * k) = std::sin(k * x);
        }
        b(i) = val[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(b);
    CurveFit f;
    f.coeffs.assign(c.data(), c.data() + c.size());
    const Eigen::VectorXd r = A * c - b;
    f.max_residual = r.cwiseAbs().maxCoeff();
    f.rms_residual = std::sqrt(r.squaredNorm() / static_cast<double>(N));
    return f;
}

CurveProbe invariant_curve_probe(double target_rho, const PerturbationProfile& profile, const PhysParams& p,
                                 const ProbeOptions& opt) {
    CurveProbe pr;
    pr.target_rho = target_rho;
    double I = theta_bar_inverse(target_rho, p, opt.action_hint);

    if (!profile.is_circle()) {
        auto miss = [&](double a) {
            const OrbitTrace t = iterate(make_state(opt.xi0, a, profile, p), opt.refine_iterations, profile, p);
            if (t.status != OrbitStatus::running) throw OrbitTerminated("probe seed orbit stopped: " + t.message);
            return t.rotation.value - target_rho;
        };
        // secant on the measured rotation number, started from the circular slope
        double I0 = I, m0 = miss(I0);
        double I1 = I0 - m0 / circular_shift(I0, p).total_prime;
        for (int it = 0; it < 8 && std::abs(m0) > 1e-7; ++it) {
            const double m1 = miss(I1);
            if (m1 == m0) break;
            const double I2 = I1 - m1 * (I1 - I0) / (m1 - m0);
            I0 = I1;
            m0 = m1;
            I1 = I2;
        }
        I = I0;
    }
    pr.seed_action = I;

    pr.trace = iterate(make_state(opt.xi0, I, profile, p), opt.iterations, profile, p, true);
    if (pr.trace.status != OrbitStatus::running) throw OrbitTerminated("probe orbit stopped: " + pr.trace.message);
    pr.measured_rho = pr.trace.rotation.value;
    pr.rho_error = pr.trace.rotation.error;

    std::vector<double> xs, ys;
    for (const auto& s : pr.trace.states) {
        xs.push_back(s.xi);
        ys.push_back(s.action_I);
    }
    pr.outgoing = fit_periodic(xs, ys, opt.harmonics);
    xs.clear();
    ys.clear();
    for (const auto& s : pr.trace.mids) {
        xs.push_back(s.xi);
        ys.push_back(s.action_I);
    }
    pr.incoming = fit_periodic(xs, ys, opt.harmonics);
    return pr;
}

bool is_diophantine_surrogate(double rho) {
    const double x = rho / kTwoPi;
    for (int q = 1; q <= 50; ++q)
        if (std::abs(x * q - std::round(x * q)) / q < 0.02 / (q * q)) return false;
    return true;
}

}  // namespace rkb
