"""q-expansions of the level-one cusp forms of weights 12 to 22.

Each space S_k(SL_2(Z)) for k in {12, 16, 18, 20, 22} is
one-dimensional, spanned by the normalized eigenform Delta_k built
from Delta = q prod (1-q^n)^24 times Eisenstein factors:

    Delta_12 = Delta          Delta_16 = E4 Delta
    Delta_18 = E6 Delta       Delta_20 = E4^2 Delta
    Delta_22 = E4 E6 Delta

Series are plain int lists.  Cusp form coefficient lists are indexed
from a_1 (coeffs[n-1] is a_n); Eisenstein lists include the constant
term (coeffs[n] multiplies q^n).  Products use the Kronecker
substitution fast path of poly.convolve; naive_series_mul is the
quadratic reference kept for cross-checks.

Cache files: first line "QEXP v1 k=<k> N=<N>", then N decimal
coefficients a_1..a_N, one per line; writes are atomic
(tmp + rename).
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import InvalidInput
from .poly import convolve

WEIGHTS = (12, 16, 18, 20, 22)


def naive_series_mul(a: list[int], b: list[int], n: int) -> list[int]:
    """Reference O(n^2) truncated product of q-series (index = exponent)."""
    out = [0] * min(n, max(len(a) + len(b) - 1, 0))
    for i, ai in enumerate(a):
        if ai == 0 or i >= n:
            continue
        for j, bj in enumerate(b):
            if i + j >= n:
                break
            out[i + j] += ai * bj
    return out


def series_mul(a: list[int], b: list[int], n: int) -> list[int]:
    return convolve(a, b, trunc=n)


def eta_power_24(n: int) -> list[int]:
    """Coefficients of prod (1-q^m)^24 up to q^(n-1)."""
    # Pentagonal number theorem for prod (1-q^m), then four squarings
    # and one product: f^24 = ((f^2)^2)^2 ^2 / ... = f^16 * f^8.
    f = [0] * n
    j = 0
    while True:
        g1 = j * (3 * j - 1) // 2
        g2 = j * (3 * j + 1) // 2
        if g1 >= n and g2 >= n:
            break
        s = 1 if j % 2 == 0 else -1
        if g1 < n:
            f[g1] += s
        if g2 < n and j > 0:
            f[g2] += s
        j += 1
    f2 = series_mul(f, f, n)
    f4 = series_mul(f2, f2, n)
    f8 = series_mul(f4, f4, n)
    f16 = series_mul(f8, f8, n)
    return series_mul(f16, f8, n)


def _sigma_series(power: int, n: int) -> list[int]:
    """[sum of d^power over d | m] for m = 0..n-1 (index 0 unused = 0)."""
    out = [0] * n
    for d in range(1, n):
        dp = d**power
        for m in range(d, n, d):
            out[m] += dp
    return out


def eisenstein(k: int, n: int) -> list[int]:
    """E4 or E6 up to q^(n-1), constant term included."""
    if k == 4:
        sig = _sigma_series(3, n)
        e = [240 * s for s in sig]
    elif k == 6:
        sig = _sigma_series(5, n)
        e = [-504 * s for s in sig]
    else:
        raise InvalidInput(f"only E4 and E6 are provided, got k={k}")
    e[0] = 1
    return e


def delta_coeffs(n: int) -> list[int]:
    """tau(1).. tau(n): coefficients of Delta."""
    if n < 1:
        raise InvalidInput("need n >= 1")
    return eta_power_24(n)  # Delta = q * f24: a_m = f24[m-1]


@dataclass(frozen=True)
class QExpansion:
    """Normalized cusp form coefficients a_1..a_N (coeffs[n-1] = a_n)."""

    weight: int
    coeffs: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.coeffs)

    def a(self, n: int) -> int:
        if not 1 <= n <= len(self.coeffs):
            raise InvalidInput(f"coefficient a_{n} not computed (N={len(self.coeffs)})")
        return self.coeffs[n - 1]


def _compute(k: int, n: int) -> list[int]:
    f24 = eta_power_24(n)  # a_{m+1} of Delta
    if k == 12:
        out = f24
    elif k == 16:
        out = series_mul(f24, eisenstein(4, n), n)
    elif k == 18:
        out = series_mul(f24, eisenstein(6, n), n)
    elif k == 20:
        e4 = eisenstein(4, n)
        out = series_mul(f24, series_mul(e4, e4, n), n)
    elif k == 22:
        out = series_mul(
            f24, series_mul(eisenstein(4, n), eisenstein(6, n), n), n
        )
    else:
        raise InvalidInput(f"weight must be one of {WEIGHTS}, got {k}")
    return out[:n]


def cache_path(cache_dir: str, k: int, n: int) -> str:
    return os.path.join(cache_dir, f"qexp_k{k}_N{n}.txt")


def save_qexp(path: str, form: QExpansion) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(f"QEXP v1 k={form.weight} N={form.length}\n")
        for c in form.coeffs:
            fh.write(f"{c}\n")
    os.replace(tmp, path)


def load_qexp(path: str) -> QExpansion:
    with open(path) as fh:
        header = fh.readline().strip()
        parts = header.split()
        if (
            len(parts) != 4
            or parts[0] != "QEXP"
            or parts[1] != "v1"
            or not parts[2].startswith("k=")
            or not parts[3].startswith("N=")
        ):
            raise InvalidInput(f"bad cache header: {header!r}")
        k = int(parts[2][2:])
        n = int(parts[3][2:])
        coeffs = [int(line) for line in fh if line.strip()]
    if len(coeffs) != n:
        raise InvalidInput(f"cache has {len(coeffs)} coefficients, header says {n}")
    if n >= 1 and coeffs[0] != 1:
        raise InvalidInput("cache not normalized: a_1 != 1")
    return QExpansion(weight=k, coeffs=tuple(coeffs))


def cusp_form_level1(k: int, n: int, cache_dir: str | None = None) -> QExpansion:
    """The normalized eigenform of weight k, coefficients to a_n."""
    if k not in WEIGHTS:
        raise InvalidInput(f"weight must be one of {WEIGHTS}, got {k}")
    if n < 1:
        raise InvalidInput("need n >= 1")
    if cache_dir:
        path = cache_path(cache_dir, k, n)
        if os.path.exists(path):
            form = load_qexp(path)
            if form.weight == k and form.length >= n:
                return QExpansion(weight=k, coeffs=form.coeffs[:n])
    form = QExpansion(weight=k, coeffs=tuple(_compute(k, n)))
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        save_qexp(cache_path(cache_dir, k, n), form)
    return form
