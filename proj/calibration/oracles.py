# High-precision reference values frozen into the unit tests.
from mpmath import mp, mpf, quad, exp, sqrt, pi, inf, findroot, erfc, gamma

mp.dps = 40
phi = lambda z: exp(-z * z / 2) / sqrt(2 * pi)
tail = lambda x: erfc(x / sqrt(2)) / 2

# ||Z||_psi1 for Z ~ N(0,1): E exp(|Z|/s) = 2
g = lambda s: 2 * quad(lambda z: exp(z / s) * phi(z), [0, inf]) - 2
s1 = findroot(g, mpf("1.37"))
print("gauss psi1 norm", s1)

# CLT variance (E psi^2 - 1) / (E |Z|/s^2 psi'(|Z|/s))^2
second = 2 * quad(lambda z: (exp(z / s1) - 1) ** 2 * phi(z), [0, inf])
slope = 2 * quad(lambda z: z / s1**2 * exp(z / s1) * phi(z), [0, inf])
print("E psi^2", second, "clt variance", (second - 1) / slope**2)

# derivative constant at s^2 = 8/3 under psi2
s2 = sqrt(mpf(8) / 3)
d = 2 * quad(lambda z: z / s2**2 * 2 * z / s2 * exp(z * z / s2**2) * phi(z), [0, inf])
print("derivative constant", d, "sqrt(27/2)", sqrt(mpf(27) / 2))

# norming sequences of Z = exp(3X^2/8) - 2, small n
z_hi = lambda x: sqrt(mpf(8) / 3 * mp.log(2 + x))
z_lo = lambda x: sqrt(mpf(8) / 3 * mp.log(2 - x)) if x < 1 else mpf(0)
for n in (2, 5, 11):
    exceed = lambda x: 2 * tail(z_hi(x)) + (1 - 2 * tail(z_lo(x))) - mpf(1) / n
    lo, hi = mpf(0), mpf(1)
    for _ in range(200):
        mid = (lo + hi) / 2
        if exceed(mid) > 0: lo = mid
        else: hi = mid
    a = (lo + hi) / 2
    b = 2 * n * quad(lambda z: (exp(-z * z / 8) - 2 * exp(-z * z / 2)) / sqrt(2 * pi),
                     [z_lo(a), z_hi(a)])
    print("n", n, "a_n", a, "b_n", b)

# stable scale of Y in S1 form
print("Y scale", (3 * gamma(mpf(2) / 3) / 2) ** (mpf(3) / 4))
