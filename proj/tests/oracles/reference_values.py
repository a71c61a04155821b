"""High-precision reference values frozen into the C++ tests.

Every value is computed directly from its defining integral with mpmath
quadrature (or from an elementary closed form where one exists), independent
of the library's closed-form transforms. Run: python3 reference_values.py
"""
import mpmath as mp

mp.mp.dps = 40


def fhat(f_pieces, z):
    """Transform of a function given as [(a, b, callable)] by direct quadrature."""
    total = mp.mpc(0)
    for a, b, g in f_pieces:
        total += mp.quad(lambda x: g(x) * mp.exp(-1j * x * z), [a, b])
    return total


def show(name, value):
    print(f"{name:55s} {mp.nstr(value, 20)}")


box = [(0, 1, lambda x: 1)]
show("|fhat(box, pi)|", abs(fhat(box, mp.pi)))
show("2/pi", 2 / mp.pi)

two_step = [(0, 1, lambda x: 2), (1, 2, lambda x: 1)]
show("|fhat(2chi[0,1)+chi[1,2), 2)|", abs(fhat(two_step, 2)))
show("(pi/2)sqrt10 * int_0^{1/2} f", mp.pi / 2 * mp.sqrt(10) * 1)

tri = [(0, 1, lambda x: x), (1, 2, lambda x: 2 - x)]
show("|fhat(triangle, 1)|", abs(fhat(tri, 1)))
show("(pi/2)sqrt10", mp.pi / 2 * mp.sqrt(10))
show("pi sqrt10", mp.pi * mp.sqrt(10))
show("1/(pi sqrt10)", 1 / (mp.pi * mp.sqrt(10)))
show("2/(pi sqrt10)", 2 / (mp.pi * mp.sqrt(10)))

z = mp.mpf("1e-9")
show("S box at 1e-9", mp.quad(lambda x: mp.sin(x * z), [0, 1]))

for n in (1, 2, 4):
    comb = [(2 * j, 2 * j + 1, lambda x: 1) for j in range(5 * n)]
    zz = 101 * mp.pi
    mag = abs(fhat(comb, zz))
    show(f"comb N={n}: |fhat(101pi)| * z / (10N)", mag * zz / (10 * n))
    show(f"comb N={n}: Q(101pi)", mag / (mp.pi * mp.sqrt(10) / zz))
show("sqrt10/pi", mp.sqrt(10) / mp.pi)
comb1 = [(2 * j, 2 * j + 1, lambda x: 1) for j in range(5)]
for zz in (mp.pi, 2 * mp.pi, 3 * mp.pi):
    show(f"comb N=1 |fhat({mp.nstr(zz / mp.pi, 3)} pi)|", abs(fhat(comb1, zz)))
comb2 = [(2 * j, 2 * j + 1, lambda x: 1) for j in range(10)]
show("comb N=2 |fhat(5pi)|", abs(fhat(comb2, 5 * mp.pi)))
show("comb N=2 |fhat(7.3)| re", fhat(comb2, mp.mpf("7.3")).real)
show("comb N=2 |fhat(7.3)| im", fhat(comb2, mp.mpf("7.3")).imag)

# Hardy chain, f = chi[0,1], u = v = chi[0,1], p = q = 2.
fw = mp.sqrt(mp.quad(lambda t: abs(fhat(box, t)) ** 2, [0, 1]))
show("||fhat||_{L^2(chi[0,1])} for chi[0,1]", fw)
show("closed integrand check", mp.sqrt(mp.quad(lambda t: 4 * mp.sin(t / 2) ** 2 / t ** 2, [0, 1])))
show("hardy middle chi[0,1], u=chi[0,1], q=2", 1)
show("hardy middle chi[0,1], u=chi[1,2], q=1 (ln 2)", mp.quad(lambda t: 1 / t, [1, 2]))

# g* = 1 - x/2 on [0,2], u = chi[0,1], v = chi[0,2], p = q = 2.
gstar = [(0, 2, lambda x: 1 - x / 2)]
fw = mp.sqrt(mp.quad(lambda t: abs(fhat(gstar, t)) ** 2, [0, 1]))
def inner(t):
    up = min(1 / t, 2) if t > 0 else 2
    return mp.quad(lambda x: 1 - x / 2, [0, up])
hm = mp.sqrt(mp.quad(lambda t: inner(t) ** 2, [0, mp.mpf(1) / 2, 1]))
show("g*: fourier side", fw)
show("g*: hardy middle", hm)
show("g*: lambda rhs sqrt(2/3)", mp.sqrt(mp.mpf(2) / 3))

# Trapezoid bump train: 10 bumps on [2j, 2j+1], ramps of width 0.01.
d = mp.mpf("0.01")
def trap(j):
    a = 2 * j
    return [(a, a + d, lambda x, a=a: (x - a) / d), (a + d, a + 1 - d, lambda x: 1),
            (a + 1 - d, a + 1, lambda x, a=a: (a + 1 - x) / d)]
train = [p for j in range(10) for p in trap(j)]
zz = mp.pi
mag = abs(fhat(train, zz))
# f* = 1 on [0, 10(1-2d)], then falls linearly to 0 over 20d; 1/pi lies inside the flat part.
show("bump train |fhat(pi)|", mag)
show("bump train Q(pi)", mag / (mp.pi * mp.sqrt(10) / zz))
