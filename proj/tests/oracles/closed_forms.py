"""Reference values frozen into the C++ tests.

Everything here is computed with mpmath (50 digits) or with scipy ODE
integration in Cartesian coordinates, independently of the C++ code.
Run: python3 tests/oracles/closed_forms.py
"""
import mpmath as mp
import numpy as np
from scipy.integrate import solve_ivp

mp.mp.dps = 50


def acot(x):
    return mp.atan2(1, x)


def f_shift(E, om, I):
    I = mp.mpf(I)
    return mp.atan2(I * mp.sqrt(4 * E - 2 * om - 4 * I * I), E - 2 * I * I)


def g_shift(E, h, mu, I):
    I = mp.mpf(I)
    s = mp.sign(I)
    return s * (2 * mp.acos((2 * I * I - mu) / mp.sqrt(4 * (E + h) * I * I + mu * mu)) - 2 * mp.pi)


def theta_bar(P, I):
    E, om, h, mu = P
    return f_shift(E, om, I) + g_shift(E, h, mu, I)


def show(name, v):
    print(f"{name:44s} {mp.nstr(v, 17)}")


set_a = (mp.mpf('2.5'), mp.mpf(1), mp.mpf(2), mp.mpf(2))
set_b44 = (mp.mpf(10), mp.mpf(1), mp.mpf(3), mp.mpf(44))
set_b55 = (mp.mpf(10), mp.mpf(1), mp.mpf(3), mp.mpf(55))
set_c = (mp.mpf(7), mp.mpf(3), mp.mpf(2), mp.mpf(15))
pb = (mp.mpf('2.5'), mp.mpf(1), mp.mpf(2), mp.mpf(1))

E, om, h, mu = set_a
show("Ic set_a", mp.sqrt(E - om / 2))
show("Ic set_b", mp.sqrt(set_b44[0] - set_b44[1] / 2))
show("thetaE(pi/4) set_a = atan 4", mp.atan(4))
show("alpha_crit set_a", mp.asin(mp.sqrt(2 / mp.mpf('6.5'))))
show("f(1) set_a", f_shift(E, om, 1))
show("g(1) set_a", g_shift(E, h, mu, 1))
show("thetabar(1) set_a", theta_bar(set_a, 1))
Ic = mp.sqrt(E - om / 2)
show("g(Ic) set_a", g_shift(E, h, mu, Ic))
show("thetab set_a", 2 * mp.pi - 2 * mp.acos((2 * E - om - mu) / mp.sqrt(2 * (E + h) * (2 * E - om) + mu * mu)))
show("beta0 with thetaI=-pi", mp.asin(mp.sqrt(mp.mpf(2) / 13)))


def twist0(P):
    E, om, h, mu = P
    return 2 * mp.sqrt(E - om / 2) / E - 4 * mp.sqrt(E + h + mu) / mu


for nm, P in [("set_a", set_a), ("set_b mu44", set_b44), ("set_b mu55", set_b55), ("pb", pb)]:
    show("twist_at_zero " + nm, twist0(P))
    show("twist_at_zero FD " + nm, mp.diff(lambda I: theta_bar(P, I), mp.mpf('1e-30')))

E7, om3 = mp.mpf(7), mp.mpf(3)
mubar = (4 * E7**2 + mp.sqrt(8 * E7**3 * (4 * E7 - om3))) / (2 * E7 - om3)
show("mu_bar(7,3)", mubar)
show("h_bar(mu_bar) (should be 0)", (2 * E7 - om3) * mubar**2 / (8 * E7**2) - (E7 + mubar))
show("h_bar set_c", (2 * E7 - om3) * 15**2 / (8 * E7**2) - (E7 + 15))

# caustic radii at I=1
I0 = 1
show("R_E set_a I=1", mp.sqrt((E + mp.sqrt(E * E - 2 * I0 * I0 * om)) / om))
p = 2 * mp.mpf(I0)**2 / mu
e = mp.sqrt(1 + 4 * mp.mpf(I0)**2 * (E + h) / mu**2)
show("R_I set_a I=1", p / (1 + e))
show("a^2 set_a I=1", (E + mp.sqrt(E * E - 2 * om)) / om)

a = mu / (2 * (E + h))
show("c(0) set_a", mp.sqrt((E + h + mu / 2) / (E + h + mu)))
x0 = mp.cos(mp.mpf('0.5'))
show("e winding1 xi=-0.5..0.5", (-x0 + mp.sqrt(4 * a * a + 4 * a + x0 * x0)) / (2 * a))
show("e winding0 xi=-0.5..0.5", (x0 + mp.sqrt(4 * a * a + 4 * a + x0 * x0)) / (2 * a))

# Jacobi length oracles
show("L ejection-collision set_a", 2 * mp.quad(lambda r: mp.sqrt(E + h + mu / r), [0, 1]))
rb = mp.sqrt(2 * E / om)
show("L brake set_a", 2 * mp.quad(lambda r: mp.sqrt(E - om * r * r / 2), [1, rb]))

# periodic actions
def root(P, target, lo, hi):
    return mp.findroot(lambda I: theta_bar(P, I) - target, (mp.mpf(lo), mp.mpf(hi)), solver='anderson')

show("I*(-1,4) set_a branch<0.95", root(set_a, -mp.pi / 2, '0.2', '0.9'))
show("I*(-1,4) set_a branch>0.95", root(set_a, -mp.pi / 2, '1.0', str(Ic - mp.mpf('1e-12'))))
show("I*(-1,3) pb branch 1", root(pb, -2 * mp.pi / 3, '0.2', '0.8'))
show("I*(-1,3) pb branch 2", root(pb, -2 * mp.pi / 3, '0.9', '1.4'))
Ic4 = mp.sqrt(set_c[0] - set_c[1] / 2)
show("Ibar1 set_c", root(set_c, 0, '1.0', str(Ic4 - mp.mpf('1e-12'))))
show("thetabar(Ic) set_c", theta_bar(set_c, Ic4 - mp.mpf('1e-30')))

# scan of theta_bar extremes, base parameters
Is = np.linspace(1e-6, float(Ic) - 1e-9, 20001)
th = np.array([float(theta_bar(set_a, I)) for I in Is[::20]])
print("min thetabar set_a (coarse)", th.min())


# ODE oracle for the outer shift: integrate z'' = -om z in Cartesian form,
# event |z| = 1 on the way back.
def thetaE_ode(alpha, P):
    E, om, h, mu = [float(x) for x in P]
    v = np.sqrt(2 * E - om)
    v0 = np.array([v * np.cos(alpha), v * np.sin(alpha)])

    def rhs(s, y):
        return [y[2], y[3], -om * y[0], -om * y[1]]

    def ev(s, y):
        return y[0]**2 + y[1]**2 - 1.0
    ev.terminal = True
    ev.direction = -1
    sol = solve_ivp(rhs, [1e-9, 20], [1.0 + 1e-9 * v0[0], 1e-9 * v0[1], v0[0], v0[1]],
                    events=ev, rtol=1e-12, atol=1e-13)
    y = sol.y_events[0][0]
    return np.arctan2(y[1], y[0])


for al in [0.3, np.pi / 4, -1.0, 1.4]:
    print(f"thetaE ODE alpha={al:.6f}", repr(thetaE_ode(al, set_a)),
          " closed", mp.nstr(mp.sign(al) * acot(1 / ((2 * 2.5 - 1) * mp.sin(2 * abs(al))) + mp.cot(2 * abs(al))), 15))


# ODE oracle for the inner shift at moderate beta (no collision), Cartesian Kepler.
def thetaI_ode(beta, P):
    E, om, h, mu = [float(x) for x in P]
    v = np.sqrt(2 * (E + h + mu))
    v0 = np.array([-v * np.cos(beta), v * np.sin(beta)])

    def rhs(s, y):
        r3 = (y[0]**2 + y[1]**2)**1.5
        return [y[2], y[3], -mu * y[0] / r3, -mu * y[1] / r3]

    def ev(s, y):
        return y[0]**2 + y[1]**2 - 1.0
    ev.terminal = True
    ev.direction = 1
    sol = solve_ivp(rhs, [1e-9, 20], [1.0 + 1e-9 * v0[0], 1e-9 * v0[1], v0[0], v0[1]],
                    events=ev, rtol=1e-12, atol=1e-13, method='DOP853')
    y = sol.y_events[0][0]
    return np.arctan2(y[1], y[0])


for b in [0.5, 0.8, -0.7]:
    E, om, h, mu = set_a
    th = mp.sign(b) * (2 * mp.acos(((2 * E + 2 * h + 2 * mu) * mp.sin(b)**2 - mu) /
                                   mp.sqrt(4 * (E + h) * (E + h + mu) * mp.sin(b)**2 + mu**2)) - 2 * mp.pi)
    print(f"thetaI ODE beta={b}", repr(thetaI_ode(b, set_a)), " closed mod 2pi",
          mp.nstr(mp.atan2(mp.sin(th), mp.cos(th)), 15))
