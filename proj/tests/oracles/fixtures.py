"""Extended-precision reference values frozen into the C++ unit tests.

Run with `python3 tests/oracles/fixtures.py`. Everything here is computed
by direct summation or mpmath quadrature, independently of the C++ code.
"""
import mpmath as mp

mp.mp.dps = 40


def zipf(size, xi):
    w = [mp.mpf(i) ** (-mp.mpf(xi)) for i in range(1, size + 1)]
    s = mp.fsum(w)
    return [x / s for x in w]


def section(name):
    print(f"\n# {name}")


section("zipf / hit ratios (F=2000, xi=0.56)")
q = zipf(2000, "0.56")
print("q1 =", mp.nstr(q[0], 20))
cu, cs, k = 150, 200, 3
hp = mp.fsum(q[: 2 * cu]) / 2
hu = mp.fsum(q[:cu])
hs = mp.fsum(q[2 * cu: 2 * cu + k * cs]) / k
print("h_p =", mp.nstr(hp, 20), " h_u =", mp.nstr(hu, 20), " h_s =", mp.nstr(hs, 20))
print("F_mpc(150,200) =", mp.nstr(mp.fsum(q[: cu + cs]), 20))

section("special functions")
for z in ["1", "0.5", "0.3", "-0.2", "-0.5", "2.7", "-1.5", "5.5"]:
    print(f"Gamma({z}) =", mp.nstr(mp.gamma(mp.mpf(z)), 20))
for z, a in [("0.3", "0.0001"), ("0.3", "2.5"), ("-0.2", "0.000314159"), ("-0.2", "0.5"),
             ("-0.5", "0.01"), ("-1.2", "0.3"), ("2.5", "1.0"), ("1.0", "3.0"), ("-0.5", "12.0"),
             ("0.8", "40.0"), ("-0.2", "1.2566370614359172e-3")]:
    print(f"Gamma({z},{a}) =", mp.nstr(mp.gammainc(mp.mpf(z), mp.mpf(a), mp.inf), 20))
for x in ["1", "0.001", "0.000314159", "0.5", "2", "10", "50"]:
    print(f"E1({x}) =", mp.nstr(mp.e1(mp.mpf(x)), 20))
print("gauss_integral(1) =", mp.nstr(mp.quad(lambda t: mp.exp(-t * t), [0, 1]), 20))

section("antenna average gain (quadrature of the defining integral)")


def avg_gain(gm_db, gs_db, omega_deg, c="0.3", theta_deg=None):
    gm = mp.mpf(10) ** (mp.mpf(gm_db) / 10)
    gs = mp.mpf(10) ** (mp.mpf(gs_db) / 10)
    w = mp.radians(mp.mpf(omega_deg))
    c = mp.mpf(c)
    th = w * mp.sqrt((mp.mpf(gm_db) - mp.mpf(gs_db)) / (10 * c)) if theta_deg is None else mp.radians(mp.mpf(theta_deg))
    main = mp.quad(lambda t: gm * mp.mpf(10) ** (-c * (2 * t / w) ** 2), [0, th / 2])
    side = gs * (mp.pi - th / 2)
    return (main + side) / mp.pi, th


g, th = avg_gain(18, -2, 10)
print("SBS: theta_m[deg] =", mp.nstr(mp.degrees(th), 15), " Gbar =", mp.nstr(g, 20))
g, th = avg_gain(9, -2, 10)
print("UE : theta_m[deg] =", mp.nstr(mp.degrees(th), 15), " Gbar =", mp.nstr(g, 20))

section("J1 / gamma sums")
print("J1(2, 1001) =", mp.nstr(mp.log(1000) + mp.euler, 20))
for beta in ["0.7", "1.4", "2.5"]:
    b = mp.mpf(beta)
    s = mp.fsum(mp.gamma(j - b) / mp.gamma(j) for j in range(1, 501))
    print(f"sum_{{j<=500}} Gamma(j-{beta})/Gamma(j) =", mp.nstr(s, 20))
for alpha in ["1.6", "1.4", "2.5"]:
    a = mp.mpf(alpha)
    s = mp.fsum(mp.gamma(i - a / 2) / mp.gamma(i) for i in range(2, 101))
    print(f"brute J1({alpha}, N=100) =", mp.nstr(s, 20))

section("loads / backhaul (P_m=0.5, ratio=10, kappa=3.5, B=3e9)")
kappa = mp.mpf("3.5")
x = mp.mpf("0.5") * 10
nb = x * (1 - (1 + x / kappa) ** (-(kappa + 1)))
print("E[N_B] =", mp.nstr(nb, 20))
# the integral the closed form comes from, evaluated by quadrature over Gamma cell areas
f = lambda a: (x * a) * (1 - mp.exp(-x * a)) * a ** (kappa - 1) * mp.exp(-kappa * a) * kappa ** kappa / mp.gamma(kappa)
print("E[N_B] by quadrature =", mp.nstr(mp.quad(f, [0, 1, 5, mp.inf]), 20))
y = 1 + x / kappa
print("E[R_B] =", mp.nstr(mp.mpf("3e9") / x * y ** (kappa + 1) / (y ** (kappa + 1) - 1), 20))

section("core")
lam = mp.mpf(299792458) / mp.mpf("60e9")
print("lambda_w =", mp.nstr(lam, 20), " C =", mp.nstr(lam ** 2 / (16 * mp.pi ** 2), 20))
print("noise =", mp.nstr(mp.mpf("2.16e9") * mp.mpf(10) ** (mp.mpf(-174) / 10) * mp.mpf("1e-3"), 20))

section("J2 brute force (alpha=2.5, N=300, lambda=100/km^2, d0=1): sum over i != k of E[r_i^-alpha]/(pi lambda)^(alpha/2)")
a = mp.mpf("2.5")
r0 = mp.pi * mp.mpf("1e-4")
# first neighbour with guard radius: E[r_1^-a; r_1 >= d0] normalised = Gamma(1 - a/2, r0)
first = mp.gammainc(1 - a / 2, r0, mp.inf)
terms = [first] + [mp.gamma(i - a / 2) / mp.gamma(i) for i in range(2, 301)]
for k in range(1, 5):
    print(f"J2(2.5, k={k}) =", mp.nstr(mp.fsum(terms) - terms[k - 1], 20))

section("J5 moment sum by quadrature (N_D=50, lambda_D=40/km^2, d0=1)")
lam = mp.mpf("40e-6")
R = mp.sqrt(50 / (mp.pi * lam))
for alpha in ["1.6", "2", "2.5"]:
    al = mp.mpf(alpha)
    lo = 0 if al < 2 else 1
    s = 50 * mp.quad(lambda r: r ** (-al) * 2 * r / R ** 2, [lo, 1, R]) if lo == 0 else 50 * mp.quad(lambda r: r ** (-al) * 2 * r / R ** 2, [1, R])
    print(f"J5({alpha}) =", mp.nstr(s / (mp.pi * lam), 20), " R =", mp.nstr(R, 20))
