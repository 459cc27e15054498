"""Constructors for the explicit representation families.

Every constructor returns an LBRep over an automatically chosen cyclotomic
field: the conductor is the lcm of the parameters' conductors (times 3
where a primitive cube root of unity is structurally required), and all
promotion happens here at construction time, never lazily.

Parameters may be ints, Fractions or CycNum values.
"""

from __future__ import annotations

import math

from .cyclotomic import CycNum, make_root_of_unity, omega
from .errors import (
    ConstraintViolated,
    InvalidBlockCombination,
    NotASquareRoot,
    ZeroEigenvalue,
    ZeroParameter,
)
from .linalg import CMatrix
from .repcore import GroupKind, LBRep


def _as_cyc(value) -> CycNum:
    if isinstance(value, CycNum):
        return value
    return CycNum.from_rational(value, 1)


def _prepare(values, extra_conductor: int = 1) -> tuple[list[CycNum], int]:
    vals = [_as_cyc(v) for v in values]
    n = math.lcm(extra_conductor, *(v.conductor for v in vals)) if vals else extra_conductor
    return [v.promote(n) for v in vals], n


def _require_nonzero(vals, error=ZeroEigenvalue, what="eigenvalue"):
    for v in vals:
        if v.is_zero:
            raise error(f"{what} parameters must be nonzero")


def tw2(lam1, lam2, family: int = 2) -> LBRep:
    """The two 2-dimensional braid pairs (reducible family 1, irreducible 2).

    Family 1:  A = [[l1, l1], [0, l2]],  B = [[l1, -l2], [0, l2]]
               with -l1/l2 a primitive cube root of unity.
    Family 2:  A = [[l1, l1], [0, l2]],  B = [[l2, 0], [-l2, l1]]
               with l1^2 - l1*l2 + l2^2 != 0.
    """
    (l1, l2), n = _prepare([lam1, lam2], extra_conductor=3 if family == 1 else 1)
    _require_nonzero([l1, l2])
    a = CMatrix([[l1, l1], [CycNum.zero(n), l2]], n)
    if family == 1:
        w = omega(n)
        ratio = -l1 / l2
        if ratio != w and ratio != w * w:
            raise ConstraintViolated(
                "family 1 requires -lambda1/lambda2 to be a primitive cube root of unity"
            )
        b = CMatrix([[l1, -l2], [CycNum.zero(n), l2]], n)
    elif family == 2:
        if (l1 * l1 - l1 * l2 + l2 * l2).is_zero:
            raise ConstraintViolated(
                "family 2 requires lambda1^2 - lambda1*lambda2 + lambda2^2 != 0"
            )
        b = CMatrix([[l2, CycNum.zero(n)], [-l2, l1]], n)
    else:
        raise ConstraintViolated("family must be 1 or 2")
    return LBRep(target=GroupKind.B3, A=a, B=b)


def tw3(lam1, lam2, lam3) -> LBRep:
    """The 3-dimensional ordered-triangular pair with spectrum (l1, l2, l3)."""
    (l1, l2, l3), n = _prepare([lam1, lam2, lam3])
    _require_nonzero([l1, l2, l3])
    z = CycNum.zero(n)
    mix = l1 * l3 / l2 + l2
    a = CMatrix([[l1, mix, l2], [z, l2, l2], [z, z, l3]], n)
    b = CMatrix([[l3, z, z], [-l2, l2, z], [l2, -mix, l1]], n)
    return LBRep(target=GroupKind.B3, A=a, B=b)


def tw4(lams, gamma2) -> LBRep:
    """The 4-dimensional family; gamma2 is the square gamma^2 directly.

    Only even powers of gamma enter the entries, so the constructor takes
    gamma^2 as the primary datum subject to (gamma^2)^2 = l1*l2*l3*l4.
    """
    vals, n = _prepare([*lams, gamma2])
    l1, l2, l3, l4, g2 = vals
    _require_nonzero([l1, l2, l3, l4])
    if g2 * g2 != l1 * l2 * l3 * l4:
        raise ConstraintViolated("need gamma^4 = lambda1*lambda2*lambda3*lambda4")
    z = CycNum.zero(n)
    one = CycNum.one(n)
    q = l1 * l4 / g2
    r = l2 * l3 / g2
    a = CMatrix(
        [
            [l1, (one + q + q * q) * l2, (one + q + q * q) * l3, l4],
            [z, l2, (one + q) * l3, l4],
            [z, z, l3, l4],
            [z, z, z, l4],
        ],
        n,
    )
    b = CMatrix(
        [
            [l4, z, z, z],
            [-l3, l3, z, z],
            [l2 * l2 * l3 / g2, -(r + one) * l2, l2, z],
            [
                -l1 * l2**3 * l3**3 / g2**3,
                (r**3 + r * r + r) * l1,
                -(r * r + r + one) * l1,
                l1,
            ],
        ],
        n,
    )
    return LBRep(target=GroupKind.B3, A=a, B=b)


def tw5(lams, gamma) -> LBRep:
    """The 5-dimensional family; gamma is a fixed fifth root of the product.

    B is determined entrywise by B[i][j] = (-1)^(i-j) * A[6-i][6-j]
    (1-indexed).
    """
    vals, n = _prepare([*lams, gamma])
    l1, l2, l3, l4, l5, g = vals
    _require_nonzero([l1, l2, l3, l4, l5])
    if g**5 != l1 * l2 * l3 * l4 * l5:
        raise ConstraintViolated("need gamma^5 = lambda1*...*lambda5")
    z = CycNum.zero(n)
    one = CycNum.one(n)
    g2, g3 = g * g, g**3
    t15 = g3 / (l1 * l5)
    arows = [
        [
            l1,
            (one + g2 / (l2 * l4)) * (l2 + g3 / (l3 * l4)),
            (one + l1 * l5 / g2) * (l3 + g + g2 / l3),
            (one + l2 * l4 / g2) * (l3 + g3 / (l2 * l4)),
            t15,
        ],
        [z, l2, l3 + g + g2 / l3, l3 + g + t15, t15],
        [z, z, l3, l3 + t15, t15],
        [z, z, z, l4, l4],
        [z, z, z, z, l5],
    ]
    a = CMatrix(arows, n)
    sign = lambda k: CycNum.one(n) if k % 2 == 0 else -CycNum.one(n)
    b = CMatrix.build(5, n, lambda i, j: sign(i + j) * arows[4 - i][4 - j])
    return LBRep(target=GroupKind.B3, A=a, B=b)


def binomial_pair(lams, c) -> tuple[CMatrix, CMatrix]:
    """The raw (d+1)-dimensional binomial braid pair in ordered triangular form.

    For 0 <= i, j <= d, with C the binomial coefficient:

        A[i][j] = C(j, i) * lambda_(d-j)
        B[i][j] = (-1)^(i+j) * C(d-j, d-i) * lambda_i

    subject to lambda_i * lambda_(d-i) = c for all i.  Every lambda product
    in AB telescopes through that pairing, so AB is pure binomial data and
    cubes to (-1)^d c^3 I.
    """
    vals, n = _prepare([*lams, c], extra_conductor=3)
    *ls, cc = vals
    d = len(ls) - 1
    if d < 1:
        raise ConstraintViolated("need at least two eigenvalue parameters")
    _require_nonzero(ls)
    if cc.is_zero:
        raise ZeroParameter("c must be nonzero")
    for i in range(d + 1):
        if ls[i] * ls[d - i] != cc:
            raise ConstraintViolated(
                f"need lambda_{i} * lambda_{d - i} = c"
            )
    zero = CycNum.zero(n)
    a = CMatrix.build(
        d + 1, n, lambda i, j: math.comb(j, i) * ls[d - j] if i <= j else zero
    )
    b = CMatrix.build(
        d + 1,
        n,
        lambda i, j: (
            ((-1) ** (i + j)) * math.comb(d - j, d - i) * ls[i] if j <= i else zero
        ),
    )
    return a, b


def binomial_rep(lams, c) -> LBRep:
    """The binomial pair together with its standard extension.

    S = ((-1)^d / c) AB satisfies S^3 = I with Tr(S) in {0, +-1}, so the
    extension scalar k = (-1)^d / c always lies in the working field.
    """
    a, b = binomial_pair(lams, c)
    d = a.dim - 1
    cc = _as_cyc(c).promote(a.conductor)
    k = CycNum.from_rational((-1) ** d, a.conductor) / cc
    from . import extend  # deferred: extend builds on repcore/catalog types

    return extend.build_standard_extension(a, b, k)


def counterexample6() -> LBRep:
    """The 6-dimensional irreducible pair over Z[w] with no extension."""
    w = make_root_of_unity(3, 1)
    w2 = w * w
    one = CycNum.one(3)
    z = CycNum.zero(3)
    a = CMatrix(
        [
            [one, 1 - w, 1 - w2, w - 1, w2 - 1, w - 1],
            [w2 - 1, w2, z, 1 - w2, z, z],
            [w2 - 1, w2 - 1, w2, 1 - w2, 1 - w2, z],
            [z, w - 1, w2 - 1, -w, 1 - w2, 1 - w],
            [1 - w2, 1 - w2, z, w2 - 1, -one, z],
            [1 - w2, 1 - w2, 1 - w2, w2 - 1, w2 - 1, -one],
        ],
        3,
    )
    b = CMatrix(
        [
            [one, 1 - w, 1 - w2, 1 - w, 1 - w2, 1 - w],
            [w2 - 1, w2, z, w2 - 1, z, z],
            [w2 - 1, w2 - 1, w2, w2 - 1, w2 - 1, z],
            [z, 1 - w, 1 - w2, -w, 1 - w2, 1 - w],
            [w2 - 1, w2 - 1, z, w2 - 1, -one, z],
            [w2 - 1, w2 - 1, w2 - 1, w2 - 1, w2 - 1, -one],
        ],
        3,
    )
    return LBRep(target=GroupKind.B3, A=a, B=b)


def v1_family(lam, x) -> LBRep:
    """Two-dimensional loop representations with S = I and A = B."""
    (l, xx), n = _prepare([lam, x])
    if l.is_zero:
        raise ZeroEigenvalue("lambda must be nonzero")
    z = CycNum.zero(n)
    one = CycNum.one(n)
    a = CMatrix([[l, xx], [z, -l]], n)
    swap = CMatrix([[z, one], [one, z]], n)
    return LBRep(target=GroupKind.LB3, A=a, B=a, S1=swap, S2=swap)


def abeq_family(
    n_half: int,
    mu,
    sqrt_mu,
    variant_a1: int = 0,
    variant_a2: int = 0,
    sign: int = -1,
) -> LBRep:
    """The 2n-dimensional A = B families with S = mu^-1 w A^2 and V_1 = 0.

    A = diag(A1, A2) in n x n blocks; A2's companion blocks carry mu*w and
    S2 swaps the two blocks.  A1 uses variant 1 (sqrt(mu) then companion
    blocks, n odd) or variant 2 (sqrt(mu), companion blocks, -+sqrt(mu),
    n even); A2's variants mirror that parity.  Variant 0 picks the one
    consistent with the parity of n.
    """
    if n_half < 1:
        raise InvalidBlockCombination("block size n must be >= 1")
    (m, sm), n = _prepare([mu, sqrt_mu], extra_conductor=3)
    if m.is_zero:
        raise ZeroParameter("mu must be nonzero")
    if sm * sm != m:
        raise NotASquareRoot("sqrt_mu^2 != mu")
    parity_variant = 1 if n_half % 2 == 1 else 2
    variant_a1 = variant_a1 or parity_variant
    variant_a2 = variant_a2 or parity_variant
    if variant_a1 != parity_variant or variant_a2 != parity_variant:
        raise InvalidBlockCombination(
            f"variant pair ({variant_a1}, {variant_a2}) does not tile size {n_half}"
        )
    if sign not in (1, -1):
        raise InvalidBlockCombination("sign must be +1 or -1")
    w = omega(n)
    z = CycNum.zero(n)
    one = CycNum.one(n)

    def companion(top) -> list[list[CycNum]]:
        return [[z, top], [one, z]]

    def diag_blocks(blocks) -> list[list[CycNum]]:
        size = sum(len(b) for b in blocks)
        rows = [[z] * size for _ in range(size)]
        at = 0
        for blk in blocks:
            for i, row in enumerate(blk):
                for j, e in enumerate(row):
                    rows[at + i][at + j] = e
            at += len(blk)
        return rows

    if variant_a1 == 1:
        a1 = diag_blocks([[[sm]]] + [companion(m)] * ((n_half - 1) // 2))
    else:
        a1 = diag_blocks(
            [[[sm]]] + [companion(m)] * ((n_half - 2) // 2) + [[[sign * sm]]]
        )
    if variant_a2 == 1:
        a2 = diag_blocks([companion(m * w)] * ((n_half - 1) // 2) + [[[sm * w * w]]])
    else:
        a2 = diag_blocks([companion(m * w)] * (n_half // 2))
    a = CMatrix(diag_blocks([a1, a2]), n)
    s2 = CMatrix.build(
        2 * n_half,
        n,
        lambda i, j: one if abs(i - j) == n_half else z,
    )
    s = (a @ a).scalar_mul(w / m)
    s1 = s @ s2
    return LBRep(target=GroupKind.LB3, A=a, B=a, S1=s1, S2=s2)


def lkb3(q, t) -> LBRep:
    """The Lawrence-Krammer-Bigelow pair for three strands."""
    (qq, tt), n = _prepare([q, t])
    if qq.is_zero or tt.is_zero:
        raise ZeroParameter("q and t must be nonzero")
    z = CycNum.zero(n)
    one = CycNum.one(n)
    a = CMatrix(
        [
            [tt * qq * qq, z, tt * qq * (qq - one)],
            [z, one - qq, qq],
            [z, one, z],
        ],
        n,
    )
    b = CMatrix(
        [
            [one - qq, z, one],
            [z, tt * qq * qq, tt * qq * qq * (qq - one)],
            [qq, z, z],
        ],
        n,
    )
    return LBRep(target=GroupKind.B3, A=a, B=b)


def lkb3_generic(q, t) -> bool:
    """True away from the degenerate locus t*q^2 = -1, t*q = 1, q = 1."""
    (qq, tt), _ = _prepare([q, t])
    return (
        tt * qq * qq != -1
        and not (tt * qq).is_one
        and not qq.is_one
    )


def perm3(t) -> LBRep:
    """The permutation-flavored symmetric extension with parameter t.

    Its S = S1*S2 is not proportional to AB: a genuinely non-standard
    extension, factoring through the symmetric loop braid group.
    """
    (tt,), n = _prepare([t])
    if tt.is_zero:
        raise ZeroParameter("t must be nonzero")
    if tt.is_one:
        raise ConstraintViolated("t = 1 is excluded (reducible degenerate)")
    z = CycNum.zero(n)
    one = CycNum.one(n)
    a = CMatrix([[z, tt, z], [one, z, z], [z, z, one]], n)
    b = CMatrix([[one, z, z], [z, z, tt], [z, one, z]], n)
    s1 = CMatrix([[z, one, z], [one, z, z], [z, z, one]], n)
    s2 = CMatrix([[one, z, z], [z, z, one], [z, one, z]], n)
    return LBRep(target=GroupKind.SLB3, A=a, B=b, S1=s1, S2=s2)
