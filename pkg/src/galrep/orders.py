"""Discriminant valuations of number fields given by a monic polynomial.

Everything here works at one prime q at a time.  For K = Q[x]/(P) the
chain is

    v_q(disc P) = 2 * v_q([O_K : Z[theta]]) + v_q(disc K),

so the field valuation follows once the q-part of the index is known.
Dedekind's criterion decides q-maximality of Z[theta] in one shot; when
it fails, a multiplier-ring enlargement loop (radical of qO, then the
ring of multipliers of that ideal) grows the order until q-maximal,
accumulating the index.

Orders are represented by an integer row matrix W and a denominator D:
the basis vectors are rows of W/D in theta-power coordinates, W kept in
upper-triangular Hermite form.  Products of basis elements have integer
coordinates in the basis (closure), which the code asserts.

The cofactor test handles the composite modulus B that survives trial
division of disc P: it certifies hbar(theta)/B is an algebraic integer,
where hbar lifts P/gcd(P, P') mod B, by checking B^(n-j) divides the
j-th coefficient of the characteristic polynomial of multiplication by
hbar(theta).  A zero divisor met along the way surfaces as
NonInvertibleLeading, handing the caller a free factor of B.
"""

import math
from fractions import Fraction

from .errors import (
    BNotCoprimeConditions,
    InvalidInput,
    NotIrreducible,
    NotMonic,
)
from .modsym import nullspace_mod
from .poly import (
    IntPolynomial,
    mod_divexact,
    mod_gcd,
    mod_reduce,
    poly_disc,
)


# --------------------------------------------------------------- F_q radical

def _flist_derivative(f, q):
    der = [i * c % q for i, c in enumerate(f)][1:]
    while der and not der[-1]:
        der.pop()
    return der


def fq_radical(f, q):
    """Monic squarefree part of f over the prime field F_q.

    Valid for every q including q <= deg f: when the derivative
    vanishes, f is a q-th power g(x)^q = g(x^q) (prime field), and the
    q-th root is read off by the index map x^(qi) -> x^i.
    """
    f = [int(c) % q for c in f]
    while f and not f[-1]:
        f.pop()
    if len(f) <= 1:
        return [1]
    inv = pow(f[-1], q - 2, q)
    f = [c * inv % q for c in f]
    der = _flist_derivative(f, q)
    if not der:
        root = [f[i] for i in range(0, len(f), q)]
        return fq_radical(root, q)
    u = mod_gcd(f, der, q)
    if len(u) == 1:
        return f
    v = mod_divexact(f, u, q)
    # Strip the factors of v out of u; what survives is the product of
    # the f_i with q | e_i, to their full exponent -- a q-th power.
    w = u
    while True:
        g = mod_gcd(w, v, q)
        if len(g) == 1:
            break
        w = mod_divexact(w, g, q)
    if len(w) == 1:
        return v
    root = [w[i] for i in range(0, len(w), q)]
    rad_w = fq_radical(root, q)
    out = [0] * (len(v) + len(rad_w) - 1)
    for i, a in enumerate(v):
        if a:
            for j, b in enumerate(rad_w):
                out[i + j] = (out[i + j] + a * b) % q
    return out


# --------------------------------------------------------- Dedekind criterion

def dedekind_maximal(P: IntPolynomial, q: int) -> bool:
    """Dedekind's criterion: is Z[x]/(P) maximal at q?

    With P = g*h mod q (g the radical) and F = (g~ h~ - P)/q for any
    lifts, maximality is gcd(F, g, h) = 1 over F_q.
    """
    if not P.is_monic():
        raise NotMonic("Dedekind criterion requires a monic polynomial")
    fbar = mod_reduce(P, q)
    g = fq_radical(fbar, q)
    h = mod_divexact(fbar, g, q)
    glift = IntPolynomial([int(c) % q for c in g])
    hlift = IntPolynomial([int(c) % q for c in h])
    diff = glift * hlift - P
    fcoeffs = []
    for c in diff.coeffs:
        if c % q:
            raise ArithmeticError("lift mismatch in Dedekind criterion")
        fcoeffs.append(c // q)
    fbar2 = mod_reduce(IntPolynomial(fcoeffs), q)
    return len(mod_gcd(fbar2, mod_gcd(g, h, q), q)) == 1


# ------------------------------------------------- order arithmetic helpers

def _theta_mul(u, v, pc, n):
    """Product of theta-coordinate vectors, reduced mod P (monic, coeffs
    pc of length n+1); exact integers."""
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] += a * b
    for k in range(len(out) - 1, n - 1, -1):
        top = out[k]
        if top:
            out[k] = 0
            for i in range(n):
                out[k - n + i] -= top * pc[i]
    del out[n:]
    while len(out) < n:
        out.append(0)
    return out


def _hnf(rows, n):
    """Row Hermite form of a full-rank integer lattice basis: upper
    triangular, positive pivots, entries above a pivot reduced mod it."""
    work = [list(r) for r in rows]
    out = []
    for col in range(n):
        work = [r for r in work if any(r)]
        active = [r for r in work if r[col]]
        if not active:
            raise ArithmeticError("hnf: rank deficiency")
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            for r in active[1:]:
                t = r[col] // piv[col]
                for i in range(col, n):
                    r[i] -= t * piv[i]
            active = [r for r in active if r[col]]
        piv = active[0]
        if piv[col] < 0:
            piv = [-c for c in piv]
        work.remove(active[0])
        out.append(piv)
    # reduce above-pivot entries
    for i in range(n - 1, -1, -1):
        for j in range(i):
            t = out[j][i] // out[i][i]
            if t:
                for c in range(i, n):
                    out[j][c] -= t * out[i][c]
    return out


class _Order:
    """Order with basis rows W/D in theta coordinates; W in Hermite form."""

    def __init__(self, pcoeffs, W, D):
        self.pc = pcoeffs  # monic P coefficients, constant first
        self.n = len(pcoeffs) - 1
        self.W = W
        self.D = D

    def coords(self, vec, den):
        """Solve sum x_i W_i / D = vec / den; returns Fractions."""
        n = self.n
        rem = [Fraction(v, den) for v in vec]
        x = [Fraction(0)] * n
        for i in range(n):
            xi = rem[i] / Fraction(self.W[i][i], self.D)
            x[i] = xi
            if xi:
                for c in range(i, n):
                    rem[c] -= xi * Fraction(self.W[i][c], self.D)
        if any(rem):
            raise ArithmeticError("vector outside the order's span")
        return x

    def int_coords(self, vec, den):
        out = []
        for f in self.coords(vec, den):
            if f.denominator != 1:
                raise ArithmeticError("non-integral coordinates")
            out.append(f.numerator)
        return out

    def mul_basis(self, a_coords, b_coords):
        """Coordinates of the product of two integral elements (given in
        basis coordinates); integral by closure."""
        n = self.n
        ua = [0] * n
        ub = [0] * n
        for i in range(n):
            ai, bi = a_coords[i], b_coords[i]
            if ai:
                for c in range(n):
                    ua[c] += ai * self.W[i][c]
            if bi:
                for c in range(n):
                    ub[c] += bi * self.W[i][c]
        prod = _theta_mul(ua, ub, self.pc, n)
        return self.int_coords(prod, self.D * self.D)

    def pow_mod(self, coords, e, q):
        """coords^e in the algebra, coordinates reduced mod q."""
        result = None
        base = [c % q for c in coords]
        while e:
            if e & 1:
                result = (
                    base if result is None
                    else [c % q for c in self.mul_basis(result, base)]
                )
            e >>= 1
            if e:
                base = [c % q for c in self.mul_basis(base, base)]
        return result


def _radical_basis(order, q):
    """Basis (rows, basis coordinates mod q) of the radical of qO in O/qO:
    the kernel of the F_q-linear map x -> x^(q^m), q^m >= n."""
    n = order.n
    m = 1
    while q ** m < n:
        m += 1
    frob = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        frob.append(order.pow_mod(e, q, q))
    # frob rows = images of basis vectors; iterate to the m-th power
    mat = [row[:] for row in frob]
    for _ in range(m - 1):
        nxt = []
        for row in mat:
            acc = [0] * n
            for i, ci in enumerate(row):
                if ci:
                    for c in range(n):
                        acc[c] = (acc[c] + ci * frob[i][c]) % q
            nxt.append(acc)
        mat = nxt
    # kernel of v -> v * mat (row vector convention)
    cols = [[mat[r][c] for r in range(n)] for c in range(n)]
    return nullspace_mod(cols, n, q)


def _enlarge_once(order, q):
    """One multiplier-ring pass; returns (new order, v_q of index gain)."""
    n = order.n
    rad = _radical_basis(order, q)
    rows = [[int(c) % q for c in r] for r in rad]
    rows += [[q if c == i else 0 for c in range(n)] for i in range(n)]
    R = _hnf(rows, n)  # ideal J = radical + qO, in basis coordinates

    def coords_in_R(vec):
        rem = list(vec)
        out = []
        for i in range(n):
            if rem[i] % R[i][i]:
                raise ArithmeticError("vector outside ideal")
            t = rem[i] // R[i][i]
            out.append(t)
            if t:
                for c in range(i, n):
                    rem[c] -= t * R[i][c]
        return out

    # Multipliers: z in O with z*J subset of q*J; then z/q lies in the
    # enlarged order.  Conditions are linear in z mod q: one condition
    # block per ideal generator, one column per basis coefficient of z.
    cond_cols = []
    for s in range(n):
        e = [0] * n
        e[s] = 1
        cond = []
        for t in range(n):
            prod = order.mul_basis(e, R[t])
            cond.extend(c % q for c in coords_in_R(prod))
        cond_cols.append(cond)
    rows = [
        [cond_cols[s][r] for s in range(n)] for r in range(n * n)
    ]
    sols = nullspace_mod(rows, n, q)

    newrows = [[q * c for c in row] for row in order.W]
    for z in sols:
        vec = [0] * n
        for i, zi in enumerate(z):
            zi = int(zi) % q
            if zi:
                for c in range(n):
                    vec[c] += zi * order.W[i][c]
        newrows.append(vec)
    H = _hnf(newrows, n)
    newD = order.D * q
    g = newD
    for row in H:
        for c in row:
            if c:
                g = math.gcd(g, c)
    if g > 1:
        H = [[c // g for c in row] for row in H]
        newD //= g
    new = _Order(order.pc, H, newD)
    # index gain = covol(O) / covol(O') = (det W * newD^n) / (det H * D^n)
    num = 1
    den = 1
    for i in range(n):
        num *= order.W[i][i]
        den *= H[i][i]
    num *= newD ** n
    den *= order.D ** n
    if num % den:
        raise ArithmeticError("index gain not integral")
    gain = num // den
    v = 0
    while gain % q == 0:
        gain //= q
        v += 1
    if gain != 1:
        raise ArithmeticError("index gain not a power of q")
    return new, v


def q_maximal_order(P: IntPolynomial, q: int):
    """(order, s) with the order q-maximal and s = v_q([O_K : Z[theta]])."""
    n = P.degree
    order = _Order(
        tuple(int(c) for c in P.coeffs),
        [[1 if c == i else 0 for c in range(n)] for i in range(n)],
        1,
    )
    s = 0
    while True:
        order, gained = _enlarge_once(order, q)
        if gained == 0:
            return order, s
        s += gained


def dedekind_vq(P: IntPolynomial, q: int, disc=None):
    """(maximal, v_q(disc K)) for K = Q[x]/(P), P monic irreducible.

    maximal reports whether Z[theta] is already q-maximal (Dedekind);
    if not, the enlargement loop runs to compute the exact valuation.
    """
    if not P.is_monic():
        raise NotMonic("dedekind_vq requires a monic polynomial")
    if P.degree < 1:
        raise InvalidInput("polynomial must be nonconstant")
    if disc is None:
        disc = poly_disc(P)
    if disc == 0:
        raise NotIrreducible("polynomial is not squarefree")
    vdisc = 0
    while disc % q == 0:
        disc //= q
        vdisc += 1
    maximal = dedekind_maximal(P, q)
    if maximal:
        return True, vdisc
    _, s = q_maximal_order(P, q)
    if s == 0:
        raise ArithmeticError("Dedekind and enlargement loop disagree")
    v = vdisc - 2 * s
    if v < 0:
        raise ArithmeticError("negative field valuation")
    return False, v


def serre_weight(P: IntPolynomial, ell: int) -> int:
    """v_ell(disc K) - ell + 2: the minimal weight of a lifting."""
    _, v = dedekind_vq(P, ell)
    return v - ell + 2


# ---------------------------------------------------------- cofactor trick

def charpoly_of_mod_element(P: IntPolynomial, hcoeffs):
    """Characteristic polynomial (constant first, monic, degree n) of
    multiplication by h(theta) on Z[theta] = Z[x]/(P), P monic of
    degree n; exact integers via trace recursion."""
    import gmpy2

    n = P.degree
    zero = gmpy2.mpz(0)
    pc = [gmpy2.mpz(c) for c in P.coeffs]
    h = [gmpy2.mpz(c) for c in hcoeffs]
    # M = h(T) with T the multiplication-by-theta matrix, Horner on rows:
    # a coefficient row v maps to v*T by an up-shift minus v[n-1] * P.
    M = [[zero] * n for _ in range(n)]
    for c in reversed(h):
        for r in range(n):
            row = M[r]
            last = row[n - 1]
            for j in range(n - 1, 0, -1):
                row[j] = row[j - 1] - last * pc[j]
            row[0] = -last * pc[0]
        if c:
            for r in range(n):
                M[r][r] += c
    # Faddeev-LeVerrier: M_k = M @ B_{k-1}, c_{n-k} = -tr(M_k)/k,
    # B_k = M_k + c_{n-k} I; divisions are exact.
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Bmat = [[gmpy2.mpz(1) if r == c else zero for c in range(n)] for r in range(n)]
    for k in range(1, n + 1):
        Mk = [
            [
                sum((M[r][i] * Bmat[i][c] for i in range(n) if M[r][i]), zero)
                for c in range(n)
            ]
            for r in range(n)
        ]
        tr = sum(Mk[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("charpoly: non-integral trace step")
        ck = -(tr // k)
        coeffs[n - k] = int(ck)
        for i in range(n):
            Mk[i][i] += ck
        Bmat = Mk
    return coeffs


def _powers_divide(coeffs, B, n):
    acc = 1
    for j in range(n - 1, -1, -1):
        acc *= B
        if coeffs[j] % acc:
            return False
    return True


def cofactor_integrality_test(P: IntPolynomial, B: int, disc=None) -> bool:
    """Does h(theta)/B generate an extension of Z[theta] certifying that
    no prime divisor of B divides disc K?  Here h lifts P/gcd(P, P')
    computed over Z/B.

    Preconditions: B >= 1, gcd(B, lc P) = 1, B^2 | disc P.  Primes of B
    not exceeding deg P (always exposed by trial division) are handled
    over their prime fields, where the radical needs q-th-root steps;
    the rest of B is processed blind, and a zero divisor encountered in
    the Euclidean work raises NonInvertibleLeading carrying a factor.
    """
    if B < 1:
        raise BNotCoprimeConditions("B must be a positive integer")
    if B == 1:
        return True
    if not P.is_monic():
        raise NotMonic("cofactor test requires a monic polynomial")
    if math.gcd(B, int(P.lc)) != 1:
        raise BNotCoprimeConditions("gcd(B, leading coefficient) != 1")
    if disc is None:
        disc = poly_disc(P)
    if disc % (B * B):
        raise BNotCoprimeConditions("B^2 does not divide disc P")
    n = P.degree
    ok = True
    for q in range(2, n + 1):
        if B % q == 0:
            while B % q == 0:
                B //= q
            h = fq_radical(mod_reduce(P, q), q)
            cp = charpoly_of_mod_element(P, [int(c) % q for c in h])
            ok = ok and _powers_divide(cp, q, n)
    if B > 1:
        fbar = mod_reduce(P, B)
        der = _flist_derivative(fbar, B)
        g = mod_gcd(fbar, der, B)  # NonInvertibleLeading escapes to caller
        h = mod_divexact(fbar, g, B)
        cp = charpoly_of_mod_element(P, [int(c) % B for c in h])
        ok = ok and _powers_divide(cp, B, n)
    return ok
