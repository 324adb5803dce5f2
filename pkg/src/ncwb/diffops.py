"""Operators generated by left multiplications and a Cartan action.

Words live in the free product of the algebra with the tensor algebra of
the pair bimodule: a word is a sequence of letters, each an algebra or a
module basis symbol, and a general element is a rational combination of
words.  Adjacent algebra letters merge through the structure constants and
a letter equal to 1 drops out; module runs stay as tensor factors.

mu realises words as operators on A (algebra letters as left
multiplication, module letters through the pair action) and is a
homomorphism from concatenation to composition.  normal_form pushes every
algebra letter to the front with the two rewriting moves

    f * X   ->  (f.X)                 (inside the module letter)
    X * f   ->  (X.f) + (X(f))        (module letter, then algebra letter)

which mu sends to identities, so rewriting never changes the operator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .linalg import Matrix, Subspace, frac, is_zero_vector, kernel, \
    span_closure
from .cartan import CartanPair
from .reporting import CheckReport


def _canonical(pair: CartanPair, terms: dict, push_actions: bool) -> dict:
    """Merge algebra letters, drop unit letters, optionally move algebra
    letters leftwards across module letters."""
    a = pair.algebra
    unit_idx = a.unit_index
    nb = pair.bimodule
    out: dict = {}
    work = list(terms.items())
    while work:
        w, c = work.pop()
        if c == 0:
            continue
        redex = None
        for k in range(len(w)):
            kind, idx = w[k]
            if kind == "a" and unit_idx is not None and idx == unit_idx:
                redex = ("unit", k)
                break
            if kind == "a" and k + 1 < len(w) and w[k + 1][0] == "a":
                redex = ("merge", k)
                break
            if push_actions and kind == "m" and k + 1 < len(w) \
                    and w[k + 1][0] == "a":
                redex = ("push", k)
                break
        if redex is None:
            out[w] = out.get(w, Fraction(0)) + c
            if out[w] == 0:
                del out[w]
            continue
        what, k = redex
        if what == "unit":
            work.append((w[:k] + w[k + 1:], c))
        elif what == "merge":
            i, j = w[k][1], w[k + 1][1]
            for t, coeff in enumerate(a.sc[i][j]):
                if coeff:
                    work.append((w[:k] + (("a", t),) + w[k + 2:], c * coeff))
        else:
            t, i = w[k][1], w[k + 1][1]
            for s, coeff in enumerate(nb.right[i].col(t)):
                if coeff:
                    work.append((w[:k] + (("m", s),) + w[k + 2:], c * coeff))
            for s, coeff in enumerate(pair.action[t].col(i)):
                if coeff:
                    work.append((w[:k] + (("a", s),) + w[k + 2:], c * coeff))
    return out


class FreeWord:
    """Rational combination of alternating words over a fixed pair."""

    def __init__(self, pair: CartanPair, terms: Optional[dict] = None):
        self.pair = pair
        self.terms = _canonical(pair, terms or {}, push_actions=False)

    @classmethod
    def one(cls, pair) -> "FreeWord":
        return cls(pair, {(): Fraction(1)})

    @classmethod
    def algebra_letter(cls, pair, coords) -> "FreeWord":
        return cls(pair, {(("a", i),): frac(c)
                          for i, c in enumerate(coords) if c != 0})

    @classmethod
    def module_letter(cls, pair, coords) -> "FreeWord":
        return cls(pair, {(("m", t),): frac(c)
                          for t, c in enumerate(coords) if c != 0})

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        assert other.pair is self.pair
        prod: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                prod[w] = prod.get(w, Fraction(0)) + c1 * c2
        return FreeWord(self.pair, prod)

    def __add__(self, other: "FreeWord") -> "FreeWord":
        assert other.pair is self.pair
        s = dict(self.terms)
        for w, c in other.terms.items():
            s[w] = s.get(w, Fraction(0)) + c
        return FreeWord(self.pair, s)

    def __rmul__(self, scalar) -> "FreeWord":
        c = frac(scalar)
        return FreeWord(self.pair, {w: c * x for w, x in self.terms.items()})

    def __sub__(self, other: "FreeWord") -> "FreeWord":
        return self + (-1) * other

    def __neg__(self) -> "FreeWord":
        return (-1) * self

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __eq__(self, other):
        return isinstance(other, FreeWord) and other.pair is self.pair \
            and other.terms == self.terms

    def __repr__(self):
        return format_word_sum(self.pair, self)


def format_word_sum(pair: CartanPair, w: FreeWord,
                    module_names: Optional[Iterable[str]] = None) -> str:
    names = pair.algebra.basis_names
    mnames = list(module_names) if module_names is not None else \
        ["X%d" % t for t in range(pair.bimodule.dim)]
    if not w.terms:
        return "0"
    parts = []
    for word, c in w.sorted_terms():
        letters = [names[i] if kind == "a" else mnames[i]
                   for kind, i in word]
        body = "*".join(letters) if letters else "1"
        if c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        else:
            parts.append("%s*%s" % (c, body))
    out = parts[0]
    for p in parts[1:]:
        out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
    return out


def left_mult_op(pair: CartanPair, fcoords) -> Matrix:
    """f as the operator g -> f g."""
    return pair.algebra.left_mult_matrix(fcoords)


def action_op(pair: CartanPair, xcoords) -> Matrix:
    """A bimodule vector as its action operator."""
    return pair.action_of(xcoords)


def evaluate_mu(pair: CartanPair, w) -> Matrix:
    """Realise a word combination as an operator on A."""
    n = pair.algebra.dim
    if isinstance(w, FreeWord):
        assert w.pair is pair
        out = Matrix.zeros(n, n)
        for word, c in w.terms.items():
            out = out + _word_operator(pair, word).scale(c)
        return out
    return _word_operator(pair, tuple(w))


def _word_operator(pair: CartanPair, word) -> Matrix:
    op = Matrix.identity(pair.algebra.dim)
    for kind, idx in word:
        op = op @ (pair.algebra.lmul[idx] if kind == "a"
                   else pair.action[idx])
    return op


def normal_form(w: FreeWord) -> FreeWord:
    """Rewrite to combinations of words with one leading algebra letter.

    Each move either deletes an algebra letter or moves it one module
    letter to the left, so rewriting terminates; mu is unchanged because
    the moves come from the pair laws.
    """
    out = FreeWord(w.pair)
    out.terms = _canonical(w.pair, w.terms, push_actions=True)
    return out


def is_normal_form_word(word) -> bool:
    seen_m = False
    for kind, _ in word:
        if kind == "m":
            seen_m = True
        elif seen_m:
            return False
    return sum(1 for kind, _ in word if kind == "a") <= 1


@dataclass
class OperatorAlgebra:
    """Span of all composites of the generators inside End(A)."""
    generators: tuple
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim

    def basis_operators(self, n: int):
        return [Matrix.from_flat(b, n, n) for b in self.space.basis]

    def contains(self, op: Matrix) -> bool:
        return self.space.contains(op.flatten())


def generate_diffop_algebra(pair: CartanPair) -> OperatorAlgebra:
    """Close identity, left multiplications and the action under
    composition."""
    n = pair.algebra.dim
    seed = [Matrix.identity(n).flatten()]
    gens = ["id"]
    for i in range(n):
        seed.append(pair.algebra.lmul[i].flatten())
        gens.append("l(%s)" % pair.algebra.basis_names[i])
    for t in range(pair.bimodule.dim):
        seed.append(pair.action[t].flatten())
        gens.append("act(X%d)" % t)

    def compose(u, v):
        return (Matrix.from_flat(u, n, n) @ Matrix.from_flat(v, n, n)).flatten()

    return OperatorAlgebra(tuple(gens),
                           span_closure(seed, compose, n * n))


@dataclass
class RelationSearch:
    """Kernel of mu on the span of short normal-form words."""
    words: tuple            # coordinate order of the word span
    space: Subspace         # relations, inside that span
    max_len: int

    def freeword(self, pair: CartanPair, coeffs) -> FreeWord:
        terms = {}
        for c, w in zip(coeffs, self.words):
            if c != 0:
                terms[w] = frac(c)
        fw = FreeWord(pair)
        fw.terms = terms
        return fw

    def word_index(self, word) -> int:
        return self.words.index(tuple(word))


def find_relations(pair: CartanPair, max_len: int = 4) -> RelationSearch:
    """Relations among words f * X_1 * ... * X_k of length k+1 <= max_len.

    These words are linearly independent in the free product, so the
    kernel of mu on their span is exactly the set of relations visible at
    this length.  Truncation is honest: longer relations stay unseen.
    """
    assert max_len >= 1
    n = pair.algebra.dim
    p = pair.bimodule.dim
    words = []
    for k in range(max_len):
        for i in range(n):
            for mw in itertools.product(range(p), repeat=k):
                words.append((("a", i),) + tuple(("m", t) for t in mw))
    cols = [_word_operator(pair, w).flatten() for w in words]
    space = kernel(Matrix.from_cols(cols, nrows=n * n))
    return RelationSearch(tuple(words), space, max_len)


def check_ccr(pair: CartanPair) -> CheckReport:
    """Canonical commutation: [X, f^l] = (X(f))^l and centrality f.X = X.f,
    on all basis pairs."""
    rep = CheckReport("canonical commutation")
    a = pair.algebra
    nb = pair.bimodule
    for i in range(a.dim):
        for t in range(nb.dim):
            if nb.left[i].col(t) != nb.right[i].col(t):
                rep.add("centrality", (i, t),
                        "%s.X%d != X%d.%s" % (a.basis_names[i], t, t,
                                              a.basis_names[i]))
            comm = pair.action[t] @ a.lmul[i] - a.lmul[i] @ pair.action[t]
            expect = a.left_mult_matrix(pair.action[t].col(i))
            if comm != expect:
                defect = comm - expect
                wit = None
                for j in range(a.dim):
                    if not is_zero_vector(defect.col(j)):
                        wit = j
                        break
                rep.add("commutator", (i, t),
                        "([X%d, l(%s)] - l(X%d(%s)))(%s) = %s" % (
                            t, a.basis_names[i], t, a.basis_names[i],
                            a.basis_names[wit],
                            a.format(defect.col(wit))))
    return rep


def fock_check(pair: CartanPair) -> CheckReport:
    """1 is a vacuum: the action kills it and left multiplication
    reproduces the multiplier."""
    rep = CheckReport("vacuum")
    a = pair.algebra
    for t in range(pair.bimodule.dim):
        img = pair.action[t].apply(a.unit)
        if not is_zero_vector(img):
            rep.add("vacuum-annihilation", (t,),
                    "X%d(1) = %s" % (t, a.format(img)))
    for i in range(a.dim):
        ei = tuple(1 if s == i else 0 for s in range(a.dim))
        if a.lmul[i].apply(a.unit) != ei:
            rep.add("vacuum-reproduction", (i,),
                    "l(%s)(1)" % a.basis_names[i])
    return rep
