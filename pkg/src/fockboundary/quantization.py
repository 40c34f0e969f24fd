"""Second quantization and its action on the fixed-point algebra.

For a unitary U on C^d, the second quantization acts as U tensored
with itself degree-many times on each degree block, and conjugation by
it maps l/r creations to the creations of the rotated vectors.  For
uniform weights this conjugation restricts to a *-automorphism of the
fixed-point algebra (implemented symbolically by generator
substitution); for non-uniform weights it fails, and
``counterexample_report`` certifies the failure with an exact nonzero
difference.
"""

from __future__ import annotations

from fractions import Fraction

from . import scalars
from .algebra import CuntzElement, Monomial
from .errors import LetterRangeError, ModeMixError
from .fock import EMPTY_WORD, TruncatedOperator
from .scalars import GaussianRational


class UnitaryMatrix:
    """A d x d unitary; entry(i, j) is u_{ij} in f_i = sum_j u_{ij} e_j.
    Exact mode demands Gaussian-rational entries and exact unitarity."""

    __slots__ = ("rows", "d", "mode")

    def __init__(self, rows, mode=scalars.EXACT, tol=1e-12):
        scalars.check_mode(mode)
        rows = tuple(
            tuple(scalars.coerce_scalar(v, mode) for v in row) for row in rows
        )
        d = len(rows)
        if any(len(row) != d for row in rows):
            raise ValueError("unitary matrix must be square")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "mode", mode)
        for i in range(d):
            for j in range(d):
                s = scalars.zero(mode)
                for k in range(d):
                    s = s + scalars.conj(rows[k][i]) * rows[k][j]
                expected = scalars.one(mode) if i == j else scalars.zero(mode)
                if not scalars.scalars_equal(s, expected, mode, tol):
                    raise ValueError("matrix is not unitary")

    def __setattr__(self, name, value):
        raise AttributeError("UnitaryMatrix is immutable")

    def entry(self, i, j):
        if not (1 <= i <= self.d and 1 <= j <= self.d):
            raise LetterRangeError("index out of range")
        return self.rows[i - 1][j - 1]

    @classmethod
    def identity(cls, d, mode=scalars.EXACT):
        one, zero = scalars.one(mode), scalars.zero(mode)
        return cls(
            [[one if i == j else zero for j in range(d)] for i in range(d)], mode
        )

    @classmethod
    def swap(cls, d, a, b, mode=scalars.EXACT):
        one, zero = scalars.one(mode), scalars.zero(mode)
        rows = [[one if i == j else zero for j in range(d)] for i in range(d)]
        rows[a - 1], rows[b - 1] = rows[b - 1], rows[a - 1]
        return cls(rows, mode)

    def compose(self, other):
        """Matrix of the operator product U V (apply other first, then
        this).  With rows storing u_{ij} from U e_i = sum_j u_{ij} e_j,
        the operator product corresponds to the reversed row-matrix
        product: (UV)_{ik} = sum_j v_{ij} u_{jk}."""
        if self.mode != other.mode or self.d != other.d:
            raise ModeMixError("incompatible unitaries")
        d = self.d
        rows = []
        for i in range(d):
            row = []
            for j in range(d):
                s = scalars.zero(self.mode)
                for k in range(d):
                    s = s + other.rows[i][k] * self.rows[k][j]
                row.append(s)
            rows.append(row)
        return UnitaryMatrix(rows, self.mode)

    def adjoint(self):
        rows = [
            [scalars.conj(self.rows[j][i]) for j in range(self.d)]
            for i in range(self.d)
        ]
        return UnitaryMatrix(rows, self.mode)

    def apply(self, i):
        """Coefficients of U e_i in the basis: list of u_{ij}, j=1..d."""
        return list(self.rows[i - 1])

    def __eq__(self, other):
        if not isinstance(other, UnitaryMatrix):
            return NotImplemented
        return self.mode == other.mode and self.rows == other.rows

    def __repr__(self):
        return "UnitaryMatrix(d=%d, mode=%r)" % (self.d, self.mode)


# rational points on the unit circle used for exact random unitaries
_EXACT_COSSIN = [
    (Fraction(3, 5), Fraction(4, 5)),
    (Fraction(5, 13), Fraction(12, 13)),
    (Fraction(8, 17), Fraction(15, 17)),
    (Fraction(20, 29), Fraction(21, 29)),
    (Fraction(7, 25), Fraction(24, 25)),
]


def random_exact_unitary(d, rng):
    """Random product of Gaussian-rational Givens rotations, phase
    flips, and a permutation; exactly unitary."""
    u = UnitaryMatrix.identity(d)
    perm = list(range(1, d + 1))
    rng.shuffle(perm)
    rows = [[scalars.one(scalars.EXACT) if perm[i] == j + 1 else scalars.zero(scalars.EXACT)
             for j in range(d)] for i in range(d)]
    u = UnitaryMatrix(rows)
    for _ in range(rng.randrange(1, 4)):
        a, b = rng.sample(range(d), 2)
        c, s = rng.choice(_EXACT_COSSIN)
        if rng.random() < 0.5:
            s_entry = GaussianRational(0, s)  # rotate through a phase
        else:
            s_entry = GaussianRational(s)
        rows = [[scalars.one(scalars.EXACT) if i == j else scalars.zero(scalars.EXACT)
                 for j in range(d)] for i in range(d)]
        rows[a][a] = GaussianRational(c)
        rows[b][b] = GaussianRational(c)
        rows[a][b] = s_entry
        rows[b][a] = -scalars.conj(s_entry)
        u = u.compose(UnitaryMatrix(rows))
    return u


def random_float_unitary(d, rng):
    """Haar-ish random unitary from QR of a seeded Gaussian matrix."""
    import numpy as np

    npr = np.random.default_rng(rng.randrange(2 ** 63))
    m = npr.normal(size=(d, d)) + 1j * npr.normal(size=(d, d))
    q, r = np.linalg.qr(m)
    q = q @ np.diag(np.diag(r) / abs(np.diag(r)))
    return UnitaryMatrix([[complex(v) for v in row] for row in q],
                         mode=scalars.FLOAT)


def second_quantize(U, cut):
    """Block-diagonal operator acting as the degree-n tensor power of U
    on degree-n words (and fixing the vacuum)."""
    mode = U.mode
    d = U.d
    one = scalars.one(mode)
    level = {(EMPTY_WORD, EMPTY_WORD): one}
    entries = dict(level)
    for _ in range(cut):
        nxt = {}
        for (row, col), val in level.items():
            for j in range(1, d + 1):
                coeffs = U.apply(j)  # U e_j = sum_i u_{ji} e_i
                for i in range(1, d + 1):
                    u = coeffs[i - 1]
                    if scalars.is_zero_scalar(u, mode):
                        continue
                    nxt[(row + (i,), col + (j,))] = val * u
        entries.update(nxt)
        level = nxt
    return TruncatedOperator(entries, cut, d, mode, _trusted=True)


def conjugate(U, x):
    """Conjugation by the second quantization at the operator's cut."""
    g = second_quantize(U, x.cut)
    return g.compose(x).compose(g.adjoint())


def generator_image(U, weights, i):
    """Image of the generator r_{e_i}: r_{U e_i} = sum_j u_{ij} r_{e_j}."""
    terms = {}
    for j in range(1, U.d + 1):
        u = U.entry(i, j)
        if not scalars.is_zero_scalar(u, U.mode):
            terms[Monomial((j,), EMPTY_WORD)] = u
    return CuntzElement(terms, weights)


def symbolic_gamma(U, x):
    """Generator substitution r_i -> r_{U e_i}, extended to monomials
    multiplicatively in the fixed-point product and then linearly.

    Only valid for uniform weights: for non-uniform weights the
    conjugation fails to be multiplicative (see
    ``counterexample_report``)."""
    weights = x.weights
    if not weights.is_uniform():
        raise ValueError(
            "generator substitution is an automorphism only for uniform "
            "weights; non-uniform weights admit an exact counterexample"
        )
    if U.d != weights.d or U.mode != weights.mode:
        raise ModeMixError("unitary does not match the weight session")
    images = {i: generator_image(U, weights, i) for i in range(1, U.d + 1)}

    def word_image(word):
        acc = CuntzElement.identity(weights)
        for letter in word:
            acc = acc * images[letter]
        return acc

    out = CuntzElement.zero(weights)
    for mono, coeff in x.terms.items():
        part = word_image(mono.I) * word_image(mono.J).adjoint()
        out = out + part.scale(coeff)
    return out


class CounterexampleReport:
    """Witness that conjugation by a swap fails to be multiplicative
    for non-uniform weights."""

    __slots__ = (
        "i0", "j0", "coefficient", "truncated_norm", "difference",
        "harmonicity_defect",
    )

    def __init__(self, i0, j0, coefficient, truncated_norm, difference,
                 harmonicity_defect):
        object.__setattr__(self, "i0", i0)
        object.__setattr__(self, "j0", j0)
        object.__setattr__(self, "coefficient", coefficient)
        object.__setattr__(self, "truncated_norm", truncated_norm)
        object.__setattr__(self, "difference", difference)
        object.__setattr__(self, "harmonicity_defect", harmonicity_defect)

    def __setattr__(self, name, value):
        raise AttributeError("CounterexampleReport is immutable")

    def to_json(self):
        return {
            "i0": self.i0,
            "j0": self.j0,
            "coefficient": scalars.scalar_to_json(
                self.coefficient, self.difference.mode),
            "truncated_norm": self.truncated_norm,
            "difference_entries": len(self.difference.entries),
        }


def counterexample_report(weights, i0, j0, cut=5):
    """Exact failure of multiplicativity at non-uniform weights.

    With U the swap of letters i0 and j0, the conjugated diagonal
    monomial differs from the product of the conjugated generators by
    exactly (w_{i0} - w_{j0}) times the vacuum projection:

        conj(M(i0, i0)) - conj(r_{i0}) . conj(r_{i0})*
            = (w_{i0} - w_{j0}) p_Omega.

    The same difference shows conj(M(i0, i0)) is not harmonic, so the
    conjugation does not even preserve the fixed-point algebra."""
    if weights.weight(i0) == weights.weight(j0):
        raise ValueError(
            "weights at the chosen letters are equal; no counterexample exists"
        )
    u = UnitaryMatrix.swap(weights.d, i0, j0, weights.mode)
    lhs = conjugate(u, CuntzElement.monomial(weights, (i0,), (i0,)).to_truncated(cut))
    # conj(r_{i0}) = r_{j0}, so the product of the images is M(j0, j0)
    rhs = CuntzElement.monomial(weights, (j0,), (j0,)).to_truncated(cut)
    difference = lhs - rhs
    coefficient = difference.entry(EMPTY_WORD, EMPTY_WORD)
    import numpy as np

    truncated_norm = float(
        np.linalg.norm(difference.to_dense(), 2)
    )
    from .fock import is_harmonic

    defect = is_harmonic(lhs, weights)
    return CounterexampleReport(
        i0, j0, coefficient, truncated_norm, difference, defect
    )


class BasisIndependenceReport:
    __slots__ = ("cases", "max_abs_diff", "ok")

    def __init__(self, cases, max_abs_diff, ok):
        object.__setattr__(self, "cases", cases)
        object.__setattr__(self, "max_abs_diff", max_abs_diff)
        object.__setattr__(self, "ok", ok)

    def __setattr__(self, name, value):
        raise AttributeError("BasisIndependenceReport is immutable")

    def __bool__(self):
        return self.ok


def markov_step_in_basis(x, weights, V):
    """One step of the Markov operator built from the rotated basis
    f_i = V e_i: sum_i w_i l_{f_i}* x l_{f_i}, exact on the degree
    <= cut - 1 block."""
    from .choi_effros import op_left_creation

    cut, d, mode = x.cut, x.d, x.mode
    out = TruncatedOperator.zero(cut, d, mode)
    for i in range(1, d + 1):
        coeffs = V.apply(i)
        lf = TruncatedOperator.zero(cut, d, mode)
        for j in range(1, d + 1):
            if not scalars.is_zero_scalar(coeffs[j - 1], mode):
                lf = lf + op_left_creation((j,), cut, d, mode).scale(coeffs[j - 1])
        out = out + lf.adjoint().compose(x).compose(lf).scale(weights.values[i - 1])
    return out.recut(cut - 1)


def basis_independence_check(weights, V, cut, trials=20, rng=None, tol=1e-10):
    """Verify that conjugation intertwines the Markov operators of the
    two bases on random sparse operators: the conjugated image of a
    Markov step equals the rotated-basis Markov step of the conjugated
    operator, entrywise on the degree <= cut - 1 block."""
    import random

    from .fock import markov_step, words_up_to

    rng = rng or random.Random(0)
    basis = words_up_to(weights.d, cut)
    gamma = second_quantize(V, cut)
    gamma_small = second_quantize(V, cut - 1)
    worst = 0.0
    cases = []
    for n in range(trials):
        entries = {}
        for _ in range(6):
            row = rng.choice(basis)
            col = rng.choice(basis)
            if weights.mode == scalars.EXACT:
                val = GaussianRational(
                    Fraction(rng.randrange(-3, 4)), Fraction(rng.randrange(-3, 4))
                )
            else:
                val = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            entries[(row, col)] = val
        x = TruncatedOperator(entries, cut, weights.d, weights.mode)
        lhs = gamma_small.compose(markov_step(x, weights)).compose(
            gamma_small.adjoint()
        )
        rhs = markov_step_in_basis(
            gamma.compose(x).compose(gamma.adjoint()), weights, V
        )
        agree = lhs.equal_on_block(rhs, cut - 1, tol)
        worst = max(worst, lhs.max_block_diff(rhs, cut - 1))
        cases.append(agree)
    return BasisIndependenceReport(cases, worst, all(cases))
