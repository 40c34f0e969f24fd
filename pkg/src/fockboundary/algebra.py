"""Exact symbolic algebra spanned by the monomials M(I, J) = r_I . r_J*
inside the fixed-point algebra of the Markov operator.

The product is the fixed-point (Choi-Effros) product.  On monomials it
reduces to a contraction rule: the Cuntz isometry relations hold
exactly inside the fixed-point algebra, so

    M(I, J) . M(K, L) = M(I K', L)   if K = J K'
                      = M(I, L J')   if J = K J'
                      = 0            otherwise.

Raw coefficient comparison is unsound because of the expansion relation
M(I, J) = sum_{|K| = m} M(IK, JK); equality is decided by the faithful
vacuum state (``is_zero``), with ``normal_form`` as a canonical-form
optimization cross-checked against it.
"""

from __future__ import annotations

import os

from . import scalars
from .errors import TermBudgetError
from .fock import (
    EMPTY_WORD,
    TruncatedOperator,
    check_word,
    display_word,
    format_word,
    parse_word,
    same_weights,
    word_reverse,
    words_of_length,
)

DEFAULT_TERM_CAP = 200000


def term_cap():
    """Symbolic term budget; override with the FOCK_TERM_CAP env var."""
    raw = os.environ.get("FOCK_TERM_CAP")
    return int(raw) if raw else DEFAULT_TERM_CAP


class Monomial:
    """The monomial r_I . r_J*; M((), ()) is the identity."""

    __slots__ = ("I", "J")

    def __init__(self, I, J):
        object.__setattr__(self, "I", tuple(I))
        object.__setattr__(self, "J", tuple(J))

    def __setattr__(self, name, value):
        raise AttributeError("Monomial is immutable")

    def flip(self):
        return Monomial(self.J, self.I)

    def sort_key(self):
        return (len(self.I) - len(self.J), len(self.J), self.I, self.J)

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.I == other.I and self.J == other.J

    def __hash__(self):
        return hash((self.I, self.J))

    def __repr__(self):
        return "M(%s,%s)" % (display_word(self.I), display_word(self.J))


IDENTITY_MONOMIAL = Monomial(EMPTY_WORD, EMPTY_WORD)


def mono_product(a, b):
    """Contraction rule for M(I,J) . M(K,L); returns the resulting
    Monomial or None when the product vanishes."""
    J, K = a.J, b.I
    if len(K) >= len(J):
        if K[: len(J)] == J:
            return Monomial(a.I + K[len(J):], b.J)
        return None
    if J[: len(K)] == K:
        return Monomial(a.I, b.J + J[len(K):])
    return None


class CuntzElement:
    """A finite linear combination of monomials tied to one weight
    session.  All operations are pure and mode-consistent."""

    __slots__ = ("terms", "weights")

    def __init__(self, terms, weights, _trusted=False):
        if _trusted:
            clean = terms
        else:
            clean = {}
            for mono, coeff in terms.items():
                check_word(mono.I, weights.d)
                check_word(mono.J, weights.d)
                coeff = scalars.coerce_scalar(coeff, weights.mode)
                if not scalars.is_zero_scalar(coeff, weights.mode):
                    clean[mono] = coeff
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "weights", weights)

    def __setattr__(self, name, value):
        raise AttributeError("CuntzElement is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, weights):
        return cls({}, weights, _trusted=True)

    @classmethod
    def monomial(cls, weights, I, J=EMPTY_WORD, coeff=1):
        return cls({Monomial(I, J): coeff}, weights)

    @classmethod
    def identity(cls, weights):
        return cls.monomial(weights, EMPTY_WORD, EMPTY_WORD)

    @classmethod
    def right_creation(cls, weights, i):
        return cls.monomial(weights, (i,), EMPTY_WORD)

    @classmethod
    def right_annihilation(cls, weights, i):
        return cls.monomial(weights, EMPTY_WORD, (i,))

    # -- linear structure ----------------------------------------------------

    @property
    def mode(self):
        return self.weights.mode

    def __add__(self, other):
        same_weights(self.weights, other.weights)
        terms = dict(self.terms)
        z = scalars.zero(self.mode)
        for mono, coeff in other.terms.items():
            s = terms.get(mono, z) + coeff
            if scalars.is_zero_scalar(s, self.mode):
                terms.pop(mono, None)
            else:
                terms[mono] = s
        return CuntzElement(terms, self.weights, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CuntzElement(
            {m: -c for m, c in self.terms.items()}, self.weights, _trusted=True
        )

    def scale(self, c):
        c = scalars.coerce_scalar(c, self.mode)
        if scalars.is_zero_scalar(c, self.mode):
            return CuntzElement.zero(self.weights)
        return CuntzElement(
            {m: c * v for m, v in self.terms.items()}, self.weights, _trusted=True
        )

    # -- ring structure --------------------------------------------------------

    def __mul__(self, other):
        """Fixed-point product, extended bilinearly from the monomial
        contraction rule."""
        same_weights(self.weights, other.weights)
        cap = term_cap()
        terms = {}
        z = scalars.zero(self.mode)
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_product(ma, mb)
                if m is None:
                    continue
                s = terms.get(m, z) + ca * cb
                if scalars.is_zero_scalar(s, self.mode):
                    terms.pop(m, None)
                else:
                    terms[m] = s
                    if len(terms) > cap:
                        raise TermBudgetError(
                            "product exceeded the term budget (%d)" % cap
                        )
        return CuntzElement(terms, self.weights, _trusted=True)

    def adjoint(self):
        return CuntzElement(
            {m.flip(): scalars.conj(c) for m, c in self.terms.items()},
            self.weights,
            _trusted=True,
        )

    # -- normal form ---------------------------------------------------------

    def expand(self, depth):
        """Apply M(I,J) = sum_{|K| = depth} M(IK, JK) to every term."""
        if depth == 0:
            return self
        cap = term_cap()
        d = self.weights.d
        terms = {}
        z = scalars.zero(self.mode)
        for mono, coeff in self.terms.items():
            for suffix in words_of_length(d, depth):
                m = Monomial(mono.I + suffix, mono.J + suffix)
                s = terms.get(m, z) + coeff
                if scalars.is_zero_scalar(s, self.mode):
                    terms.pop(m, None)
                else:
                    terms[m] = s
                    if len(terms) > cap:
                        raise TermBudgetError(
                            "expansion exceeded the term budget (%d)" % cap
                        )
        return CuntzElement(terms, self.weights, _trusted=True)

    def normal_form(self):
        """Canonical form: within each class of fixed k = |I| - |J|
        (invariant under expansion), expand every monomial to the
        maximal |J| in the class.  Monomials of fixed (|I|, |J|) are
        linearly independent, so coefficient equality on normal forms
        is sound."""
        classes = {}
        for mono, coeff in self.terms.items():
            k = len(mono.I) - len(mono.J)
            classes.setdefault(k, []).append((mono, coeff))
        d = self.weights.d
        z = scalars.zero(self.mode)
        cap = term_cap()
        terms = {}
        for k, items in classes.items():
            target = max(len(m.J) for m, _ in items)
            for mono, coeff in items:
                depth = target - len(mono.J)
                suffixes = words_of_length(d, depth) if depth else [EMPTY_WORD]
                for suffix in suffixes:
                    m = Monomial(mono.I + suffix, mono.J + suffix)
                    s = terms.get(m, z) + coeff
                    if scalars.is_zero_scalar(s, self.mode):
                        terms.pop(m, None)
                    else:
                        terms[m] = s
                        if len(terms) > cap:
                            raise TermBudgetError(
                                "normal form exceeded the term budget (%d)" % cap
                            )
        return CuntzElement(terms, self.weights, _trusted=True)

    # -- state, inner product, zero test ----------------------------------------

    def vacuum_state(self):
        """phi(M(I,J)) = w_J when I = J, else 0; extended linearly."""
        total = scalars.zero(self.mode)
        for mono, coeff in self.terms.items():
            if mono.I == mono.J:
                total = total + coeff * self.weights.word_weight(mono.J)
        return total

    def gns_inner(self, other):
        """<x, y> = phi(y* . x)."""
        same_weights(self.weights, other.weights)
        return (other.adjoint() * self).vacuum_state()

    def gns_norm_sq(self):
        return self.gns_inner(self)

    def is_zero(self, tol=1e-12):
        """Zero test via faithfulness of the vacuum state: x = 0 iff
        phi(x* . x) = 0 (exact in exact mode, toleranced otherwise)."""
        value = self.gns_norm_sq()
        return scalars.is_zero_scalar(value, self.mode, tol)

    def equals(self, other, tol=1e-12):
        return (self - other).is_zero(tol)

    # -- shape helpers ---------------------------------------------------------

    def max_word_length(self):
        if not self.terms:
            return 0
        return max(max(len(m.I), len(m.J)) for m in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mc[0].sort_key())

    def __eq__(self, other):
        if not isinstance(other, CuntzElement):
            return NotImplemented
        return self.equals(other)

    def __repr__(self):
        if not self.terms:
            return "CuntzElement(0)"
        bits = ["%r*%r" % (c, m) for m, c in self.sorted_terms()]
        return "CuntzElement(%s)" % " + ".join(bits)

    # -- concrete realization -----------------------------------------------

    def to_truncated(self, cut):
        """Compression of the concrete operator representing the
        element: M(I,J) acts as r_I r_J* plus the vacuum corrections

            sum_{t=1..|J|} w_{(J^op)_t} l_{(J^op)_t}* r_I p_Omega r_{J_{|J|-t}}*

        which reduce to single matrix units.  Exact on the whole stored
        block (the listed entries are the full compression)."""
        if cut < self.max_word_length():
            raise ValueError(
                "cut %d below the maximal word length %d"
                % (cut, self.max_word_length())
            )
        d = self.weights.d
        mode = self.mode
        entries = {}
        z = scalars.zero(mode)

        def bump(row, col, value):
            key = (row, col)
            s = entries.get(key, z) + value
            if scalars.is_zero_scalar(s, mode):
                entries.pop(key, None)
            else:
                entries[key] = s

        from .fock import words_up_to

        for mono, coeff in self.terms.items():
            i_op = word_reverse(mono.I)
            j_op = word_reverse(mono.J)
            # r_I r_J*: e_{W J^op} -> e_{W I^op}
            room = cut - max(len(i_op), len(j_op))
            for w in words_up_to(d, room):
                bump(w + i_op, w + j_op, coeff)
            # vacuum corrections: nonzero only when I^op starts with (J^op)_t
            n = len(mono.J)
            for t in range(1, n + 1):
                head = j_op[:t]
                if i_op[:t] != head:
                    continue
                factor = self.weights.word_weight(head)
                col = word_reverse(mono.J[: n - t])
                row = i_op[t:]
                bump(row, col, coeff * factor)
        return TruncatedOperator(entries, cut, d, mode, _trusted=True)

    # -- serialization -----------------------------------------------------

    def to_json(self):
        items = []
        for mono, coeff in self.sorted_terms():
            rec = {"I": format_word(mono.I), "J": format_word(mono.J)}
            rec.update(scalars.scalar_to_json(coeff, self.mode))
            items.append(rec)
        return {"d": self.weights.d, "mode": self.mode, "terms": items}

    @classmethod
    def from_json(cls, obj, weights):
        if int(obj["d"]) != weights.d or obj["mode"] != weights.mode:
            raise ValueError("element JSON does not match the weight session")
        terms = {}
        for rec in obj["terms"]:
            mono = Monomial(parse_word(rec["I"]), parse_word(rec["J"]))
            terms[mono] = scalars.scalar_from_json(rec, weights.mode)
        return cls(terms, weights)


# functional-style aliases

def product(x, y):
    return x * y


def adjoint(x):
    return x.adjoint()


def normal_form(x):
    return x.normal_form()


def vacuum_state(x):
    return x.vacuum_state()


def gns_inner(x, y):
    return x.gns_inner(y)


def is_zero(x, tol=1e-12):
    return x.is_zero(tol)


def to_truncated(x, cut):
    return x.to_truncated(cut)
