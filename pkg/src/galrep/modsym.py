"""Manin symbols of weight 2 at prime level with character, over F_l.

The symbol space is generated by the projective line P^1(F_l):
index i in [0, l) stands for the class of (1 : i), index l for
(0 : 1).  A pair (c, d) equals u * rep for a scalar u in (Z/l)*, and
the character omega^e (e even, so -1 acts trivially) turns the scalar
into a coefficient: [u*(c:d)] = eps(u) [(c:d)].  The quotient by the
two-term sigma relations x + x|S = 0 and three-term tau relations
x + x|T + x|T^2 = 0 (S = [[0,-1],[1,0]], T = [[0,-1],[1,-1]], acting
on bottom rows from the right) is the weight-2 modular symbol space.

The boundary map sends the symbol of g in SL2(Z) to [g oo] - [g 0].
At prime level there are exactly two character-level cusp classes
(denominator divisible by l or not); a cusp (a : c) lands in the
infinity class with coefficient eps(a)^(-1), or the zero class with
coefficient eps(c).  Cusp classes whose stabilizer meets the
character kernel nontrivially would be dropped; at prime level with
even character none are.  The cuspidal subspace is the kernel of the
boundary on the quotient.

Hecke operators use Merel's family of determinant-p integer matrices
[[a,b],[c,d]] with a > b >= 0, d > c >= 0; a naive coset-representative
implementation with continued-fraction path conversion is kept for
cross-checking small p.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from . import arith, qexp
from .errors import InvalidInput

# ---------------------------------------------------------------------------
# Dense linear algebra over F_p (lists of rows of ints).


def rref_mod(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        sel = None
        for r in range(rank, len(mat)):
            if mat[r][col] % p:
                sel = r
                break
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        inv = pow(mat[rank][col], -1, p)
        mat[rank] = [x * inv % p for x in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col] % p:
                f = mat[r][col]
                mat[r] = [(x - f * y) % p for x, y in zip(mat[r], mat[rank])]
        pivots.append(col)
        rank += 1
    return mat[:rank], pivots


def nullspace_mod(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {v : M v = 0} (column vectors returned as lists)."""
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref_mod(rows, p)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-red[r][f]) % p
        basis.append(v)
    return basis


def mat_mul(a: list[list[int]], b: list[list[int]], p: int) -> list[list[int]]:
    n, m = len(a), len(b[0]) if b else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k, aik in enumerate(ai):
            if aik:
                bk = b[k]
                for j in range(m):
                    oi[j] = (oi[j] + aik * bk[j]) % p
    return out


def mat_vec(a: list[list[int]], v: list[int], p: int) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) % p for row in a]


def solve_in_span(basis_cols: list[list[int]], targets: list[list[int]], p: int):
    """Express each target column in the span of basis columns.

    basis_cols and targets are lists of column vectors.  Returns the
    coefficient matrix S with target_j = sum_i S[i][j] basis_i, or
    raises if some target is outside the span.
    """
    n = len(basis_cols[0])
    r, t = len(basis_cols), len(targets)
    aug = [[basis_cols[j][i] for j in range(r)] + [tg[i] for tg in targets]
           for i in range(n)]
    red, pivots = rref_mod(aug, p)
    if any(c >= r for c in pivots):
        raise ArithmeticError("solve_in_span: target not in span")
    coeff = [[0] * t for _ in range(r)]
    for row, c in zip(red, pivots):
        for j in range(t):
            coeff[c][j] = row[r + j]
    return coeff


# ---------------------------------------------------------------------------


def merel_matrices(p: int) -> list[tuple[int, int, int, int]]:
    """Merel's determinant-p family: a > b >= 0, d > c >= 0, ad-bc = p."""
    out = []
    for a in range(1, p + 1):
        for d in range(1, p + 2 - a):
            bc = a * d - p
            if bc < 0:
                continue
            if bc == 0:
                for c in range(d):
                    out.append((a, 0, c, d))
                for b in range(1, a):
                    out.append((a, b, 0, d))
            else:
                b = 1
                while b * b <= bc:
                    if bc % b == 0:
                        c = bc // b
                        if b < a and c < d:
                            out.append((a, b, c, d))
                        b2, c2 = c, b
                        if b2 != b and b2 < a and c2 < d:
                            out.append((a, b2, c2, d))
                    b += 1
    return out


class ManinSymbolSpace:
    """Weight-2 Manin symbol space at prime level l with character
    omega^e, together with its boundary map and cuspidal subspace."""

    def __init__(self, ell: int, eps_exponent: int):
        if not arith.is_prime(ell) or ell < 5:
            raise InvalidInput(f"level must be a prime >= 5, got {ell}")
        e = eps_exponent % (ell - 1)
        if e % 2:
            raise InvalidInput(
                f"character exponent must be even (eps(-1)=1), got {e}"
            )
        self.ell = ell
        self.eps_exponent = e
        self._eps = [0] + [pow(u, e, ell) for u in range(1, ell)]
        self._build()

    # -- symbol bookkeeping

    def eps(self, u: int) -> int:
        return self._eps[u % self.ell]

    def normalize(self, c: int, d: int) -> tuple[int, int]:
        """(c, d) -> (rep index, scalar u) with (c,d) = u * rep."""
        ell = self.ell
        c, d = c % ell, d % ell
        if c:
            return d * pow(c, -1, ell) % ell, c
        if d:
            return ell, d
        raise InvalidInput("(0, 0) is not a projective point")

    def rep(self, i: int) -> tuple[int, int]:
        return (1, i) if i < self.ell else (0, 1)

    def _build(self):
        ell = self.ell
        n = ell + 1
        rows = []
        for i in range(n):
            c, d = self.rep(i)
            # x + x S = 0 with (c,d) S = (d, -c)
            row = [0] * n
            row[i] = (row[i] + 1) % ell
            j, u = self.normalize(d, -c)
            row[j] = (row[j] + self.eps(u)) % ell
            rows.append(row)
            # x + x T + x T^2 = 0: (c,d) T = (d, -c-d), T^2: (-c-d, c)
            row = [0] * n
            row[i] = (row[i] + 1) % ell
            j, u = self.normalize(d, -c - d)
            row[j] = (row[j] + self.eps(u)) % ell
            j, u = self.normalize(-c - d, c)
            row[j] = (row[j] + self.eps(u)) % ell
            rows.append(row)
        self._relation_rows = rows
        red, pivots = rref_mod(rows, ell)
        pivot_set = set(pivots)
        self.free_cols = [c for c in range(n) if c not in pivot_set]
        self.dim = len(self.free_cols)
        # projection of each generator onto the free-column basis
        proj = [[0] * self.dim for _ in range(n)]
        col_of = {f: k for k, f in enumerate(self.free_cols)}
        for f in self.free_cols:
            proj[f][col_of[f]] = 1
        for r, c in zip(red, pivots):
            for f in self.free_cols:
                if r[f]:
                    proj[c][col_of[f]] = (-r[f]) % ell
        self._proj = proj
        self._boundary()

    def project_symbol(self, i: int, coeff: int = 1) -> list[int]:
        return [coeff * x % self.ell for x in self._proj[i]]

    # -- boundary and cuspidal subspace

    def _lift_to_sl2(self, i: int) -> tuple[int, int, int, int]:
        """An SL2(Z) matrix whose bottom row reduces to rep(i)."""
        if i == self.ell:
            return (1, 0, 0, 1)
        # bottom row (1, i): top row (1, i-1) has det 1*i - (i-1)*1 = 1
        return (1, i - 1, 1, i)

    def _classify_cusp(self, a: int, c: int) -> tuple[int, int]:
        """Cusp (a : c) -> (class index, coefficient).

        Class 0 is the infinity type (l | c), class 1 the zero type.
        """
        ell = self.ell
        if c % ell == 0:
            u = pow(a % ell, -1, ell)  # eps(a)^(-1)
            return 0, self.eps(u)
        return 1, self.eps(c)

    def _boundary(self):
        ell = self.ell
        n = ell + 1
        bnd = [[0] * n for _ in range(2)]  # rows: cusp classes
        for i in range(n):
            a, b, c, d = self._lift_to_sl2(i)
            cls1, s1 = self._classify_cusp(a, c)   # g(oo) = (a : c)
            cls2, s2 = self._classify_cusp(b, d)   # g(0) = (b : d)
            bnd[cls1][i] = (bnd[cls1][i] + s1) % ell
            bnd[cls2][i] = (bnd[cls2][i] - s2) % ell
        # boundary kills the relations; keep the check cheap but real
        for row in self._relation_rows:
            for bd in bnd:
                if sum(x * y for x, y in zip(row, bd)) % ell:
                    raise ArithmeticError("boundary does not kill relations")
        # restrict to the quotient (free columns)
        self.boundary_on_quotient = [
            [bd[f] for f in self.free_cols] for bd in bnd
        ]
        self.cuspidal_basis = nullspace_mod(
            self.boundary_on_quotient, self.dim, ell
        )
        self.cuspidal_dim = len(self.cuspidal_basis)

    # -- Hecke action

    def hecke_on_quotient(self, p: int) -> list[list[int]]:
        """Matrix of T_p on the quotient (columns = images of basis)."""
        ell = self.ell
        cols = []
        for f in self.free_cols:
            c0, d0 = self.rep(f)
            acc = [0] * self.dim
            for a, b, c, d in merel_matrices(p):
                cc = c0 * a + d0 * c
                dd = c0 * b + d0 * d
                if cc % ell == 0 and dd % ell == 0:
                    continue  # only for p = l: symbol collapses to 0
                j, u = self.normalize(cc, dd)
                e = self.eps(u)
                pj = self._proj[j]
                for t in range(self.dim):
                    if pj[t]:
                        acc[t] = (acc[t] + e * pj[t]) % ell
            cols.append(acc)
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def hecke_on_cuspidal(self, p: int) -> list[list[int]]:
        t = self.hecke_on_quotient(p)
        images = [mat_vec(t, v, self.ell) for v in self.cuspidal_basis]
        return solve_in_span(self.cuspidal_basis, images, self.ell)

    # -- naive Hecke via coset representatives, for cross-checks

    def _zero_to(self, num: int, den: int) -> list[int]:
        """Symbol-space vector of the path {0, num/den} ({0, oo} if den=0)."""
        ell = self.ell
        vec = [0] * (ell + 1)
        j, u = self.normalize(0, 1)
        vec[j] = (vec[j] + self.eps(u)) % ell  # {0, oo}
        if den == 0:
            return vec
        g = gcd(num, den)
        if g:
            num, den = num // g, den // g
        if den < 0:
            num, den = -num, -den
        if den == 1 and num == 0:
            # {0, 0} = 0, minus the {0, oo} added above... path {0,0}
            # is empty; undo.
            vec[j] = (vec[j] - self.eps(u)) % ell
            return vec
        # continued fraction convergents of num/den
        pk_1, qk_1 = 1, 0  # p_{-1}/q_{-1} = oo
        pk, qk = None, None
        n, d = num, den
        k = 0
        while True:
            a0 = n // d
            n, d = d, n - a0 * d
            if pk is None:
                pk, qk = a0, 1
            else:
                pk_1, qk_1, pk, qk = pk, qk, a0 * pk + pk_1, a0 * qk + qk_1
            # bottom row of the SL2 lift of {x_{k-1}, x_k}:
            sgn = 1 if (k - 1) % 2 == 0 else -1
            j, u = self.normalize(qk, sgn * qk_1)
            vec[j] = (vec[j] + self.eps(u)) % ell
            k += 1
            if d == 0:
                break
        return vec

    def path_vector(self, alpha: tuple[int, int], beta: tuple[int, int]) -> list[int]:
        """Symbol vector of {alpha, beta}; points are (num, den) pairs."""
        va = self._zero_to(*alpha)
        vb = self._zero_to(*beta)
        return [(y - x) % self.ell for x, y in zip(va, vb)]

    def hecke_on_quotient_naive(self, p: int) -> list[list[int]]:
        """T_p from the p+1 standard coset matrices; p must not be l."""
        ell = self.ell
        if p % ell == 0:
            raise InvalidInput("naive Hecke path needs p != l")
        cols = []
        for f in self.free_cols:
            g = self._lift_to_sl2(f)
            a, b, c, d = g
            alpha, beta = (b, d), (a, c)  # g(0), g(oo)
            total = [0] * (ell + 1)
            mats = [(1, j, 0, p) for j in range(p)] + [(p, 0, 0, 1)]
            for ma, mb, mc, md in mats:
                scale = self.eps(p) if (ma, md) == (p, 1) else 1
                na = (ma * alpha[0] + mb * alpha[1], mc * alpha[0] + md * alpha[1])
                nb = (ma * beta[0] + mb * beta[1], mc * beta[0] + md * beta[1])
                v = self.path_vector(na, nb)
                total = [(t + scale * x) % ell for t, x in zip(total, v)]
            # project into the quotient
            acc = [0] * self.dim
            for j, cj in enumerate(total):
                if cj:
                    pj = self._proj[j]
                    for t in range(self.dim):
                        acc[t] = (acc[t] + cj * pj[t]) % ell
            cols.append(acc)
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]


def build_space(ell: int, eps_exponent: int) -> ManinSymbolSpace:
    return ManinSymbolSpace(ell, eps_exponent)


@dataclass(frozen=True)
class HeckeMatrix:
    p: int
    on_quotient: tuple[tuple[int, ...], ...]
    on_cuspidal: tuple[tuple[int, ...], ...]


def hecke_matrix(space: ManinSymbolSpace, p: int) -> HeckeMatrix:
    if not arith.is_prime(p):
        raise InvalidInput(f"Hecke index must be prime, got {p}")
    tq = space.hecke_on_quotient(p)
    tc = space.hecke_on_cuspidal(p)
    return HeckeMatrix(
        p=p,
        on_quotient=tuple(tuple(r) for r in tq),
        on_cuspidal=tuple(tuple(r) for r in tc),
    )


@dataclass(frozen=True)
class EigensystemReport:
    k: int
    ell: int
    eps_exponent: int
    cuspidal_dim: int
    expected_cuspidal_dim: int
    primes: tuple[int, ...]
    eigenvalues: tuple[int, ...]  # a_p mod l for the weight-k form
    joint_kernel_dim: int
    ok: bool


def eigensystem_check(k: int, ell: int, pmax: int = 20) -> EigensystemReport:
    """Check that the mod-l eigensystem of the weight-k level-one form
    appears in the weight-2 character space: the joint kernel of
    (T_p - a_p(f)) on the cuspidal subspace must be >= 2 dimensional
    (a 2-dimensional Galois module worth of it).
    """
    from . import modcurve

    e = (k - 2) % (ell - 1)
    space = build_space(ell, e)
    expected = 2 * modcurve.dim_S2_eps(ell, e)
    form = qexp.cusp_form_level1(k, pmax)
    ps, eigs = [], []
    # current joint kernel, as columns in cuspidal coordinates
    joint = [
        [1 if i == j else 0 for j in range(space.cuspidal_dim)]
        for i in range(space.cuspidal_dim)
    ]
    joint = [list(col) for col in joint]
    for p in arith.primes_below(pmax + 1):
        if p == ell:
            continue
        ps.append(p)
        ap = form.a(p) % ell
        eigs.append(ap)
        t = space.hecke_on_cuspidal(p)
        n = space.cuspidal_dim
        shifted = [
            [(t[i][j] - (ap if i == j else 0)) % ell for j in range(n)]
            for i in range(n)
        ]
        if not joint:
            break
        # restrict to current joint kernel: solve shifted * (J x) = 0
        mj = [[sum(shifted[i][r] * joint[c][r] for r in range(n)) % ell
               for c in range(len(joint))] for i in range(n)]
        combos = nullspace_mod(mj, len(joint), ell)
        joint = [
            [sum(x[c] * joint[c][r] for c in range(len(x))) % ell for r in range(n)]
            for x in combos
        ]
    jdim = len(joint)
    return EigensystemReport(
        k=k,
        ell=ell,
        eps_exponent=e,
        cuspidal_dim=space.cuspidal_dim,
        expected_cuspidal_dim=expected,
        primes=tuple(ps),
        eigenvalues=tuple(eigs),
        joint_kernel_dim=jdim,
        ok=(space.cuspidal_dim == expected and jdim >= 2),
    )
