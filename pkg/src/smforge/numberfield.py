"""Exact arithmetic in the number fields generated by singular moduli.

A field is presented by a primitive element theta (an integer linear
combination of the generators) together with its monic integer minimal
polynomial, reconstructed by rounding the certified ball product
prod (X - sigma(theta)) exactly as for class polynomials.  Elements are
rational coordinate vectors in the theta-power basis; all ring operations
are exact.  Certified complex embeddings are kept alongside and can be
recomputed at any precision.

The independence machinery follows the valuation recipe: a prime ideal
with v(alpha) != 0 pins the only possible exponent ratio, which is then
confirmed or refuted by exact field arithmetic.  Prime ideals are used
only at primes p where the defining polynomial is squarefree mod p
(then p is unramified and prime to the index, and valuations reduce to
minimal coefficient valuations after a Hensel lift).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import sympy
from mpmath import mp, mpf, workprec
from sympy.polys.factortools import dup_zz_hensel_lift
from sympy.polys.galoistools import gf_diff, gf_factor, gf_gcd
from sympy import ZZ

from .ball import (
    CBall,
    RBall,
    PrecisionExhausted,
    UncertainComparison,
    escalating,
)
from .forms import enumerate_forms
from .modular import ClassPolynomial, eval_j, tau_of_form


class FieldBuildError(Exception):
    """No usable primitive element was found."""


class Inconclusive(Exception):
    """The test could not decide; never raised in place of a wrong answer."""


# ---------------------------------------------------------------------------
# generators and their certified conjugates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GenSpec:
    """One field generator: 'hcp' (a singular modulus), 'sqrt' (a quadratic
    surd sqrt(d), d squarefree after reduction) or 'rational'."""

    kind: str
    data: object

    @property
    def count(self) -> int:
        if self.kind == "hcp":
            return len(enumerate_forms(self.data))
        if self.kind == "sqrt":
            return 2
        return 1

    def conj_map(self) -> tuple[int, ...]:
        """Index permutation realizing complex conjugation on conjugates."""
        if self.kind == "hcp":
            forms = enumerate_forms(self.data)
            return tuple(forms.index(f.mirror()) for f in forms)
        if self.kind == "sqrt":
            return (1, 0) if self.data < 0 else (0, 1)
        return (0,)

    def values(self) -> list[CBall]:
        """Certified conjugate values at the current working precision."""
        if self.kind == "hcp":
            return [
                eval_j(tau_of_form(self.data, f))
                for f in enumerate_forms(self.data)
            ]
        if self.kind == "sqrt":
            root = RBall.exact(abs(self.data)).sqrt()
            if self.data < 0:
                up = CBall.from_rballs(RBall.exact(0), root)
            else:
                up = CBall.from_rballs(root, RBall.exact(0))
            return [up, -up]
        return [CBall.exact(self.data)]


def _squarefree_part(n: int) -> int:
    s = 1
    sign = -1 if n < 0 else 1
    n = abs(n)
    f = 2
    while f * f <= n:
        while n % (f * f) == 0:
            n //= f * f
        if n % f == 0:
            s *= f
            n //= f
        f += 1
    return sign * s * n


def _as_genspec(g) -> GenSpec:
    if isinstance(g, GenSpec):
        return g
    if isinstance(g, ClassPolynomial):
        if g.degree == 1:
            return GenSpec("rational", -Fraction(g.coefficients[0]))
        return GenSpec("hcp", g.disc)
    if isinstance(g, int):
        d = _squarefree_part(g)
        if d == 1:
            return GenSpec("rational", Fraction(1))
        return GenSpec("sqrt", d)
    if isinstance(g, (tuple, list)):
        # a polynomial, lowest first; only linear or X^2 - d supported
        cs = [int(c) for c in g]
        if len(cs) == 2:
            return GenSpec("rational", Fraction(-cs[0], cs[1]))
        if len(cs) == 3 and cs[1] == 0 and cs[2] == 1:
            return _as_genspec(-cs[0])
    raise FieldBuildError(f"unsupported generator {g!r}")


# ---------------------------------------------------------------------------
# the field
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Embedding:
    index: int
    choices: tuple[int, ...]   # conjugate picked for each generator
    conj_index: int            # embedding realizing the conjugate values


class NumberField:
    def __init__(self, poly, gens, weights, embeddings):
        self.poly = tuple(int(c) for c in poly)   # monic, lowest first
        self.degree = len(self.poly) - 1
        self.gens = tuple(gens)
        self.weights = tuple(weights)
        self.embeddings = embeddings
        self._theta_cache: dict[int, list[CBall]] = {}
        self._gen_elements: dict[int, "FieldElement"] = {}

    # -- embeddings -------------------------------------------------------
    def theta_values(self) -> list[CBall]:
        """Images of theta under all embeddings, at current precision."""
        prec = mp.prec
        if prec not in self._theta_cache:
            gen_vals = [g.values() for g in self.gens]
            out = []
            for emb in self.embeddings:
                acc = CBall.exact(0)
                for w, vals, c in zip(self.weights, gen_vals, emb.choices):
                    acc = acc + vals[c] * w
                out.append(acc)
            self._theta_cache[prec] = out
        return self._theta_cache[prec]

    def gen_values(self, k: int) -> list[CBall]:
        vals = self.gens[k].values()
        return [vals[emb.choices[k]] for emb in self.embeddings]

    # -- elements ---------------------------------------------------------
    def element(self, coords) -> "FieldElement":
        coords = [Fraction(c) for c in coords]
        coords += [Fraction(0)] * (self.degree - len(coords))
        return FieldElement(self, tuple(coords[: self.degree]))

    def zero(self) -> "FieldElement":
        return self.element([])

    def one(self) -> "FieldElement":
        return self.element([1])

    def from_rational(self, q) -> "FieldElement":
        return self.element([Fraction(q)])

    def theta(self) -> "FieldElement":
        if self.degree == 1:
            # theta is rational: its value is -poly[0]
            return self.from_rational(-self.poly[0])
        return self.element([0, 1])

    def gen_element(self, k: int) -> "FieldElement":
        """The k-th generator as an exact element (reconstructed once)."""
        if k not in self._gen_elements:
            g = self.gens[k]
            if g.kind == "rational":
                el = self.from_rational(g.data)
            elif len(self.gens) == 1:
                el = self.theta() / self.weights[0]
            else:
                if g.kind == "sqrt":
                    check = (-g.data, 0, 1)
                else:
                    check = _hcp_coeffs(g.data)
                el = _reconstruct_element(
                    self, lambda: self.gen_values(k), check
                )
            self._gen_elements[k] = el
        return self._gen_elements[k]

    def __repr__(self):
        return f"NumberField(degree={self.degree})"


def _hcp_coeffs(disc: int) -> tuple[int, ...]:
    from .modular import class_polynomial

    return class_polynomial(disc).coefficients


class FieldElement:
    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords):
        self.field = field
        self.coords = tuple(Fraction(c) for c in coords)

    def _same(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ValueError("elements of different fields")
            return other
        return self.field.from_rational(other)

    def __add__(self, other):
        other = self._same(other)
        return FieldElement(
            self.field, [a + b for a, b in zip(self.coords, other.coords)]
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) + (-self)

    def __mul__(self, other):
        other = self._same(other)
        n = self.field.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if not a:
                continue
            for j, b in enumerate(other.coords):
                if b:
                    prod[i + j] += a * b
        return FieldElement(self.field, _poly_mod(prod, self.field.poly))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        inv = _poly_invert(list(self.coords), self.field.poly)
        return FieldElement(self.field, inv)

    def __truediv__(self, other):
        return self * self._same(other).inverse()

    def __rtruediv__(self, other):
        return self._same(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, (FieldElement, int, Fraction)):
            return NotImplemented
        return self.coords == self._same(other).coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def embed(self, i: int) -> CBall:
        """Certified image under the i-th embedding (current precision)."""
        theta = self.field.theta_values()[i]
        acc = CBall.exact(0)
        for c in reversed(self.coords):
            acc = acc * theta + CBall.exact(c)
        return acc

    def embeddings(self) -> list[CBall]:
        return [self.embed(i) for i in range(self.field.degree)]

    def __repr__(self):
        return f"FieldElement{self.coords}"


# -- exact polynomial helpers (Fraction coefficients, lowest first) ---------


def _poly_mod(poly, modulus) -> list[Fraction]:
    n = len(modulus) - 1
    poly = list(poly)
    for k in range(len(poly) - 1, n - 1, -1):
        c = poly[k]
        if c:
            for i in range(n + 1):
                poly[k - n + i] -= c * modulus[i]
    return [Fraction(p) for p in poly[:n]] + [Fraction(0)] * max(0, n - len(poly))


def _poly_divmod(a, b):
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    if da < db:
        return [Fraction(0)], a
    q = [Fraction(0)] * (da - db + 1)
    for k in range(da, db - 1, -1):
        c = a[k] / b[db]
        q[k - db] = c
        if c:
            for i in range(db + 1):
                a[k - db + i] -= c * b[i]
    r = a[:db]
    return q, r


def _poly_trim(a):
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


def _poly_invert(a, modulus) -> list[Fraction]:
    # extended Euclid in Q[X] for gcd(a, modulus) = 1
    m = [Fraction(c) for c in modulus]
    r0, r1 = m, _poly_trim([Fraction(c) for c in a])
    s0, s1 = [Fraction(0)], [Fraction(1)]
    while any(c for c in r1):
        if len(r1) == 1:
            inv = 1 / r1[0]
            return _poly_mod([c * inv for c in s1], modulus)
        q, r = _poly_divmod(r0, r1)
        r = _poly_trim(r)
        qs = [Fraction(0)] * (len(q) + len(s1) - 1)
        for i, qi in enumerate(q):
            if qi:
                for j, sj in enumerate(s1):
                    qs[i + j] += qi * sj
        ns = [x - y for x, y in itertools.zip_longest(s0, qs, fillvalue=Fraction(0))]
        r0, r1, s0, s1 = r1, r, s1, _poly_trim(ns)
    raise ZeroDivisionError("element not invertible (reducible modulus?)")


# ---------------------------------------------------------------------------
# building fields
# ---------------------------------------------------------------------------


def _round_poly_from_roots(root_balls) -> list[int]:
    """Round prod (X - r) to integer coefficients, margin 1/4."""
    coeffs = [CBall.exact(1)]
    for r in root_balls:
        new = [CBall.exact(0) for _ in range(len(coeffs) + 1)]
        for k, c in enumerate(coeffs):
            new[k + 1] = new[k + 1] + c
            new[k] = new[k] - c * r
        coeffs = new
    return [c.unique_integer(Fraction(1, 4)) for c in coeffs]


def _is_squarefree_int_poly(coeffs) -> bool:
    x = sympy.symbols("x")
    f = sympy.Poly(list(reversed(coeffs)), x, domain="QQ")
    return f.gcd(f.diff(x)).degree() == 0


def build_field(generators, first_attempt: int = 1) -> NumberField:
    """A field containing all generators, with a primitive element found by
    trying small integer weights.  The degree is the product of generator
    degrees; distinctness of the reconstructed minimal polynomial's roots
    is certified (squarefree check), irreducibility is supplied by the
    theory of ring class fields for the inputs used here.

    first_attempt shifts the weight search, producing a different primitive
    element (hence a different power basis and index) for the same field;
    useful when a computation needs a prime not dividing the index.
    """
    gens = [_as_genspec(g) for g in generators]
    # rationals contribute nothing to the degree
    nontrivial = [g for g in gens if g.kind != "rational"]
    if not nontrivial:
        # the rationals: theta = 0, every generator is itself rational
        gens = gens or [GenSpec("rational", Fraction(0))]
        return NumberField(
            (0, 1), gens, [0] * len(gens),
            [Embedding(0, tuple(0 for _ in gens), 0)],
        )
    gens = nontrivial
    counts = [g.count for g in gens]
    degree = math.prod(counts)
    conj_maps = [g.conj_map() for g in gens]

    choice_list = list(itertools.product(*[range(c) for c in counts]))
    index_of = {c: i for i, c in enumerate(choice_list)}
    embeddings = [
        Embedding(
            i,
            c,
            index_of[tuple(cm[ci] for cm, ci in zip(conj_maps, c))],
        )
        for i, c in enumerate(choice_list)
    ]

    for attempt in range(first_attempt, first_attempt + 11):
        weights = [attempt ** k for k in range(len(gens))]

        def _build(p):
            gen_vals = [g.values() for g in gens]
            roots = []
            for c in choice_list:
                acc = CBall.exact(0)
                for w, vals, ci in zip(weights, gen_vals, c):
                    acc = acc + vals[ci] * w
                roots.append(acc)
            # certified pairwise distinct
            for i in range(len(roots)):
                for j in range(i + 1, len(roots)):
                    if not (roots[i] - roots[j]).abs() > RBall.exact(0):
                        raise UncertainComparison("roots not separated")
            return _round_poly_from_roots(roots)

        try:
            poly = escalating(_build, start=512)
        except (PrecisionExhausted, UncertainComparison):
            continue
        if len(poly) - 1 == degree and _is_squarefree_int_poly(poly):
            return NumberField(poly, gens, weights, embeddings)
    raise FieldBuildError("no primitive element found")


# ---------------------------------------------------------------------------
# reconstruction of elements from certified embedding values
# ---------------------------------------------------------------------------


def _ball_solve(matrix, rhs):
    """Gaussian elimination on CBall entries; raises UncertainComparison
    when a pivot cannot be certified nonzero."""
    n = len(matrix)
    m = [row[:] + [r] for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col].mid))
        if m[piv][col].contains_zero():
            raise UncertainComparison("singular ball matrix")
        m[col], m[piv] = m[piv], m[col]
        inv = CBall.exact(1) / m[col][col]
        m[col] = [e * inv for e in m[col]]
        for r in range(n):
            if r == col:
                continue
            f = m[r][col]
            if f.mid != 0 or f.rad != 0:
                m[r] = [e - f * g for e, g in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def _fraction_from_ball(b: CBall, max_den=10 ** 400) -> Fraction | None:
    """The simplest rational inside the ball, or None.  Callers must verify
    the result exactly; a wrong guess is caught downstream."""
    if abs(b.mid.imag) > b.rad + mpf(2) ** (10 - mp.prec):
        return None
    x = b.mid.real
    rad = b.rad + abs(x) * mpf(2) ** (10 - mp.prec)
    # continued-fraction convergents of x
    p0, q0, p1, q1 = 0, 1, 1, 0
    y = x
    for _ in range(20000):
        a = int(mp.floor(y))
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        if q1 > max_den:
            return None
        if abs(x - mpf(p1) / q1) <= rad:
            return Fraction(p1, q1)
        frac = y - a
        if frac == 0:
            return None
        y = 1 / frac
    return None


def _vandermonde(field) -> list[list[CBall]]:
    thetas = field.theta_values()
    rows = []
    for t in thetas:
        row = [CBall.exact(1)]
        for _ in range(field.degree - 1):
            row.append(row[-1] * t)
        rows.append(row)
    return rows


def _reconstruct_element(field, values_fn, check_poly) -> FieldElement:
    """Find the exact element whose embedding images are the given balls.

    check_poly (integer coefficients, lowest first) must annihilate the
    element; the exact verification makes the numeric solve rigorous,
    and the per-embedding containment pins the intended root.
    """

    def _run(p):
        vand = _vandermonde(field)
        vals = values_fn()
        coords = _ball_solve(vand, vals)
        fracs = []
        for c in coords:
            f = _fraction_from_ball(c)
            if f is None:
                raise UncertainComparison("coordinate not recognizably rational")
            fracs.append(f)
        el = field.element(fracs)
        # exact annihilation
        acc = field.zero()
        for c in reversed(check_poly):
            acc = acc * el + field.from_rational(c)
        if not acc.is_zero():
            raise UncertainComparison("reconstructed element fails exact check")
        # certified containment under every embedding
        for i, v in enumerate(vals):
            d = (el.embed(i) - v).abs()
            if not (d.lower() <= 0 or d.upper() < v.rad * 4 + mpf(2) ** (8 - p)):
                raise UncertainComparison("embedding mismatch")
        return el

    return escalating(_run, start=512)


def _roots_via_factoring(field, poly_ints) -> list[FieldElement]:
    """Exact roots of an integer polynomial inside the field, through
    factorization over Q(theta) (Trager's method via sympy)."""
    x = sympy.Dummy("x")
    theta = sympy.CRootOf(sympy.Poly(_dup(field.poly), x).as_expr(), 0)
    K = sympy.QQ.algebraic_field(theta)
    if K.mod.degree() != field.degree:
        raise FieldBuildError("defining polynomial is reducible")
    poly = sympy.Poly(_dup(poly_ints), x, domain=K)
    roots = []
    for fac, _ in poly.factor_list()[1]:
        if fac.degree() != 1:
            continue
        lc, c0 = fac.set_domain(K).rep.to_list()
        anp = -c0 / lc
        coords = [
            Fraction(int(q.numerator), int(q.denominator))
            for q in reversed(anp.to_list())
        ]
        roots.append(field.element(coords))
    return roots


def embedding_pattern(elem: FieldElement, target_values_fn) -> tuple[int, ...]:
    """For each embedding, the index of the (certified disjoint) target
    ball containing the element's image."""

    def _run(p):
        targets = target_values_fn()
        out = []
        for i in range(elem.field.degree):
            v = elem.embed(i)
            hits = []
            for t_idx, t in enumerate(targets):
                d = (v - t).abs()
                if d.lower() <= 0:
                    hits.append(t_idx)
            if len(hits) != 1:
                raise UncertainComparison("ambiguous embedding match")
            out.append(hits[0])
        return tuple(out)

    return escalating(_run, start=256)


def roots_in_field(field, poly_ints, root_values_fn, root_conj_map=None):
    """All roots of the given integer polynomial that lie in the field, as
    exact elements, each with the pattern assigning to every embedding the
    index of the complex root it maps to.  Returns list of
    (element, pattern); root_values_fn() supplies certified balls for the
    polynomial's complex roots at the current precision."""
    out = []
    for el in _roots_via_factoring(field, poly_ints):
        out.append((el, embedding_pattern(el, root_values_fn)))
    return out


# ---------------------------------------------------------------------------
# valuations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ValuationCertificate:
    prime: int
    prime_ideal_tag: str
    v_alpha: int
    v_beta: int


def _dup(coeffs_lowfirst):
    # sympy dense polys are highest-first
    return [int(c) for c in reversed(coeffs_lowfirst)]


def usable_prime(field: NumberField, p: int) -> bool:
    """p is usable when the defining polynomial is squarefree mod p: then p
    is unramified and prime to the index of the power basis."""
    f = [c % p for c in _dup(field.poly)]
    if f[0] % p == 0:
        return False
    g = gf_gcd(f, gf_diff(f, p, ZZ), p, ZZ)
    return len(g) == 1


def _prime_factors_modp(field, p):
    f = [c % p for c in _dup(field.poly)]
    _, facs = gf_factor(f, p, ZZ)
    return [fac for fac, _ in facs]


def _lift_factors(field, p, k):
    facs = _prime_factors_modp(field, p)
    if len(facs) == 1:
        g = _dup(field.poly)
        return [[c % p ** k for c in g]]
    return dup_zz_hensel_lift(p, _dup(field.poly), facs, k, ZZ)


def _vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _min_coeff_valuation(num_dup, g_dup, p, k):
    """v_p of A(theta) in the unramified completion cut out by the lifted
    factor g: reduce A mod (g, p^k) and take the minimal coefficient
    valuation.  Returns None when everything vanishes mod p^k."""
    mod = p ** k
    a = [c % mod for c in num_dup]
    # polynomial remainder mod (g, p^k); g monic
    dg = len(g_dup) - 1
    a = a[:]
    while len(a) - 1 >= dg and len(a) > 0:
        lead = a[0]
        if lead:
            for i in range(len(g_dup)):
                a[i] = (a[i] - lead * g_dup[i]) % mod
        a = a[1:]
    vals = [_vp_int(c, p) for c in a if c % mod]
    if not vals:
        return None
    return min(vals)


class _Presentation:
    """A bare power-basis presentation (just a defining polynomial), enough
    for the mod-p factoring and Hensel helpers."""

    __slots__ = ("poly",)

    def __init__(self, poly):
        self.poly = tuple(poly)


def _valuations_core(poly_lowfirst, coords, p, kstart=64):
    """v_P at every prime over p of the element with the given coordinates
    in the power basis of poly (monic, squarefree mod p)."""
    pres = _Presentation(poly_lowfirst)
    den = math.lcm(*[Fraction(c).denominator for c in coords])
    num = [int(Fraction(c) * den) for c in coords]
    if all(c == 0 for c in num):
        raise ValueError("valuation of zero")
    vden = _vp_int(den, p) if den % p == 0 else 0
    num_dup = _dup(num)
    k = kstart
    while True:
        out = []
        ok = True
        for g in _lift_factors(pres, p, k):
            v = _min_coeff_valuation(num_dup, g, p, k)
            if v is None:
                ok = False
                break
            out.append(v - vden)
        if ok:
            return out
        k *= 2
        if k > 1 << 14:
            raise Inconclusive(f"valuation at p={p} did not stabilize")


def element_valuations(field, elem: FieldElement, p: int, kstart=64):
    """v_P(elem) at every prime ideal P over a usable prime p."""
    if elem.is_zero():
        raise ValueError("valuation of zero")
    return _valuations_core(field.poly, elem.coords, p, kstart)


def presentation_valuations(field, elems, p, tries=45):
    """Valuation vectors over p for several elements at once, usable even
    when p divides the index of the field's own power basis.

    Searches for an integral primitive element g whose power basis has
    index prime to p (defining polynomial squarefree mod p), converts the
    elements into that basis exactly, and runs the Hensel machinery there.
    The ideal labels are consistent across the returned vectors.  Returns
    None when no suitable g is found."""
    n = field.degree
    for t in range(tries):
        g_coords = [0, 1] + [(t // 3 ** k) % 3 for k in range(max(0, n - 2))]
        g = field.element(g_coords[:n])
        powers = [field.one()]
        for _ in range(n):
            powers.append(powers[-1] * g)
        B = sympy.Matrix(
            [
                [
                    sympy.Rational(
                        powers[j].coords[i].numerator,
                        powers[j].coords[i].denominator,
                    )
                    for j in range(n)
                ]
                for i in range(n)
            ]
        )
        if B.det() == 0:
            continue  # g is not primitive
        target = sympy.Matrix(
            [
                sympy.Rational(
                    powers[n].coords[i].numerator, powers[n].coords[i].denominator
                )
                for i in range(n)
            ]
        )
        tail = B.solve(target)
        poly_low = [-sympy.Rational(c) for c in tail] + [sympy.Integer(1)]
        if any(c.q != 1 for c in poly_low[:-1]):
            continue  # g not integral in this basis; should not happen
        poly_low = [int(c) for c in poly_low]
        f = [c % p for c in _dup(poly_low)]
        if f[0] % p == 0:
            continue
        if len(gf_gcd(f, gf_diff(f, p, ZZ), p, ZZ)) != 1:
            continue  # p divides the index of Z[g] as well
        vecs = []
        for elem in elems:
            vec = sympy.Matrix(
                [
                    sympy.Rational(c.numerator, c.denominator)
                    for c in elem.coords
                ]
            )
            cg = B.solve(vec)
            coords = [Fraction(c.p, c.q) for c in cg]
            vecs.append(_valuations_core(poly_low, coords, p))
        return vecs
    return None


# ---------------------------------------------------------------------------
# valuations at index primes: local round-2 and etale splitting
# ---------------------------------------------------------------------------


def _modp_nullspace(rows, p):
    """Left-kernel basis of the integer matrix given by rows, over F_p:
    vectors v with sum_i v_i rows[i] = 0 mod p."""
    if not rows:
        return []
    m, n = len(rows), len(rows[0])
    # reduce the transpose; kernel of x . A as row vectors
    a = [[rows[i][j] % p for i in range(m)] for j in range(n)]
    piv_of_col = [-1] * m
    rank_rows = []
    for r in range(len(a)):
        row = a[r]
        for rr, pc in rank_rows:
            f = row[pc] % p
            if f:
                inv = pow(a[rr][pc], -1, p)
                f = (f * inv) % p
                row = [(x - f * y) % p for x, y in zip(row, a[rr])]
        for c in range(m):
            if row[c] % p:
                a[r] = row
                rank_rows.append((r, c))
                piv_of_col[c] = r
                break
        else:
            a[r] = row
    free = [c for c in range(m) if piv_of_col[c] < 0]
    basis = []
    for fc in free:
        v = [0] * m
        v[fc] = 1
        # back-substitute through the recorded pivots
        for rr, pc in reversed(rank_rows):
            s = sum(a[rr][c] * v[c] for c in range(m) if c != pc) % p
            v[pc] = (-s * pow(a[rr][pc], -1, p)) % p
        basis.append(v)
    return basis


def _row_hnf(rows, n):
    """Row-style Hermite normal form basis of the lattice spanned by integer
    rows (full column rank n expected)."""
    from sympy.matrices.normalforms import hermite_normal_form

    M = sympy.Matrix(rows)
    H = hermite_normal_form(M.T).T
    out = [[int(x) for x in H.row(i)] for i in range(H.rows)]
    if len(out) != n:
        raise Inconclusive("degenerate lattice in order computation")
    return out


class LocalOrder:
    """The p-maximal order of a number field, as a lattice basis over the
    field's power basis, together with integer structure constants."""

    def __init__(self, field, p, basis_rows):
        self.field = field
        self.p = p
        self.basis = basis_rows  # list of rows of Fractions (theta coords)
        n = field.degree
        self.elems = [field.element(row) for row in basis_rows]
        M = sympy.Matrix(
            [[sympy.Rational(c.numerator, c.denominator) for c in row]
             for row in basis_rows]
        )
        self._to_basis = M.inv()
        # integer structure constants: b_i b_j = sum_k c[i][j][k] b_k
        self.struct = []
        for i in range(n):
            rowtab = []
            for j in range(n):
                prod = self.elems[i] * self.elems[j]
                rowtab.append(self.coords(prod, integral=True))
            self.struct.append(rowtab)
        self.one = self.coords(field.one(), integral=True)

    def coords(self, elem, integral=False):
        v = sympy.Matrix(
            [sympy.Rational(c.numerator, c.denominator) for c in elem.coords]
        )
        out = (self._to_basis.T * v).T
        res = [Fraction(int(c.p), int(c.q)) for c in out]
        if integral:
            assert all(c.denominator == 1 for c in res), "element not in order"
            return [int(c) for c in res]
        return res

    def mul_mod(self, a, b, mod):
        n = self.field.degree
        out = [0] * n
        for i, ai in enumerate(a):
            if not ai % mod:
                continue
            for j, bj in enumerate(b):
                if not bj % mod:
                    continue
                f = (ai * bj) % mod
                row = self.struct[i][j]
                for k in range(n):
                    if row[k]:
                        out[k] = (out[k] + f * row[k]) % mod
        return out

    def pow_mod(self, a, e, mod):
        result = [c % mod for c in self.one]
        base = [c % mod for c in a]
        while e:
            if e & 1:
                result = self.mul_mod(result, base, mod)
            base = self.mul_mod(base, base, mod)
            e >>= 1
        return result


def p_maximal_order(field, p, max_rounds=64) -> LocalOrder:
    """Round-2 enlargement of Z[theta] at p until p-maximal."""
    n = field.degree
    basis = [
        [Fraction(1) if j == i else Fraction(0) for j in range(n)]
        for i in range(n)
    ]
    for _ in range(max_rounds):
        order = LocalOrder(field, p, basis)
        q = p
        while q < n:
            q *= p
        frob = [order.pow_mod(row, q, p)
                for row in ([[1 if j == i else 0 for j in range(n)]
                             for i in range(n)])]
        rad = _modp_nullspace([[frob[i][k] for k in range(n)]
                               for i in range(n)], p)
        ideal_rows = [[p if j == i else 0 for j in range(n)] for i in range(n)]
        ideal_rows += [[c % p for c in v] for v in rad]
        U = _row_hnf(ideal_rows, n)
        Um = sympy.Matrix(U)
        Uinv = Um.inv()
        stacked = []
        for i in range(n):
            row_all = []
            for u in U:
                # coords of b_i * u in the U-basis of the ideal: integers
                prod = [0] * n
                for j, uj in enumerate(u):
                    if uj:
                        for k in range(n):
                            prod[k] += uj * order.struct[i][j][k]
                vec = (Uinv.T * sympy.Matrix(prod)).T
                for c in vec:
                    assert c.q == 1, "ideal coordinates not integral"
                    row_all.append(int(c))
            stacked.append(row_all)
        ker = _modp_nullspace(stacked, p)
        new_rows = [v for v in ker if any(c % p for c in v)]
        if not new_rows:
            return order
        lattice = _row_hnf(
            [[p if j == i else 0 for j in range(n)] for i in range(n)]
            + [[c % p for c in v] for v in new_rows],
            n,
        )
        # new basis = lattice/p in the current basis, mapped to theta coords
        basis = []
        for row in lattice:
            acc = [Fraction(0)] * n
            for j, c in enumerate(row):
                if c:
                    for k in range(n):
                        acc[k] += Fraction(c, p) * order.basis[j][k]
            basis.append(acc)
    raise Inconclusive(f"p-maximal order at {p} did not stabilize")


def _split_idempotents(order: LocalOrder):
    """Primitive idempotents of O/pO for an unramified p (etale algebra);
    raises Inconclusive when a radical is present (ramified p)."""
    p = order.p
    n = order.field.degree
    q = p
    while q < n:
        q *= p
    unit_rows = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    frob_q = [order.pow_mod(row, q, p) for row in unit_rows]
    if _modp_nullspace(frob_q, p):
        raise Inconclusive(f"p={p} is ramified (nilpotents mod p)")

    def min_poly_modp(v, ident):
        # monic minimal polynomial of v in the component with identity ident
        pows = [ident[:]]
        while True:
            nxt = order.mul_mod(pows[-1], v, p)
            dep = _in_span_coords(pows, nxt, p)
            if dep is not None:
                return [(-c) % p for c in dep] + [1]
            pows.append(nxt)

    final = []
    stack = [order.one[:]]
    while stack:
        e = stack.pop()
        # Frobenius-fixed subspace of the component e*A
        comp_rows = [order.mul_mod(e, row, p) for row in unit_rows]
        basis_rows = _rowspace_basis(comp_rows, p)
        fixed = None
        for v in _candidate_fixed(order, basis_rows, p):
            if not _proportional_modp(v, e, p):
                fixed = v
                break
        if fixed is None:
            final.append(e)
            continue
        mp = min_poly_modp(fixed, e)
        from sympy.polys.galoistools import gf_factor as _gf_factor
        _, facs = _gf_factor([c % p for c in reversed(mp)], p, ZZ)
        roots = []
        for fac, mult in facs:
            assert mult == 1 and len(fac) == 2, "split polynomial not etale"
            roots.append((-fac[1]) % p)
        for c in roots:
            # e_c = e * prod_{c' != c} (v - c') / (c - c')
            ec = e[:]
            for cp in roots:
                if cp == c:
                    continue
                shifted = [(x - cp * o) % p for x, o in zip(fixed, order.one)]
                ec = order.mul_mod(ec, shifted, p)
                ec = [(x * pow((c - cp) % p, -1, p)) % p for x in ec]
            stack.append(ec)
    final.sort()
    return final


def _rowspace_basis(rows, p):
    out = []
    mat = [row[:] for row in rows]
    pivots = []
    for row in mat:
        row = [x % p for x in row]
        for prow, pc in zip(out, pivots):
            f = row[pc]
            if f:
                row = [(x - f * y) % p for x, y in zip(row, prow)]
        nz = next((c for c, x in enumerate(row) if x % p), None)
        if nz is None:
            continue
        inv = pow(row[nz], -1, p)
        row = [(x * inv) % p for x in row]
        out.append(row)
        pivots.append(nz)
    return out


def _candidate_fixed(order, basis_rows, p):
    """Elements of the span of basis_rows fixed by Frobenius x -> x^p."""
    if not basis_rows:
        return
    m = len(basis_rows)
    n = order.field.degree
    # matrix of x -> x^p - x on the subspace, in the subspace's own coords
    imgs = []
    for row in basis_rows:
        f = order.pow_mod(row, p, p)
        diff = [(a - b) % p for a, b in zip(f, row)]
        imgs.append(diff)
    # express images in the basis_rows coordinates (solve small systems)
    M = []
    for img in imgs:
        coeffs = _in_span_coords(basis_rows, img, p)
        assert coeffs is not None, "Frobenius does not preserve component"
        M.append(coeffs)
    for v in _modp_nullspace(M, p):
        out = [0] * n
        for c, row in zip(v, basis_rows):
            if c:
                for k in range(n):
                    out[k] = (out[k] + c * row[k]) % p
        yield out


def _in_span_coords(basis_rows, target, p):
    m = len(basis_rows)
    n = len(target)
    aug = [[basis_rows[i][j] % p for i in range(m)] + [target[j] % p]
           for j in range(n)]
    piv = []
    r0 = 0
    for c in range(m):
        pr = next((r for r in range(r0, n) if aug[r][c] % p), None)
        if pr is None:
            continue
        aug[r0], aug[pr] = aug[pr], aug[r0]
        inv = pow(aug[r0][c], -1, p)
        aug[r0] = [(x * inv) % p for x in aug[r0]]
        for r in range(n):
            if r != r0 and aug[r][c] % p:
                f = aug[r][c]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[r0])]
        piv.append(c)
        r0 += 1
    for r in range(r0, n):
        if aug[r][m] % p:
            return None
    sol = [0] * m
    for r, c in enumerate(piv):
        sol[c] = aug[r][m] % p
    return sol


def _proportional_modp(v, w, p):
    ratio = None
    for a, b in zip(v, w):
        a %= p
        b %= p
        if a == 0 and b == 0:
            continue
        if b == 0:
            return False
        r = (a * pow(b, -1, p)) % p
        if ratio is None:
            ratio = r
        elif r != ratio:
            return False
    return True


def order_valuations(field, p, elems, kstart=64):
    """Valuation vectors (one entry per prime over p) for several elements,
    valid at any unramified p including index primes and common index
    divisors.  Entries are consistently labeled across elements."""
    order = p_maximal_order(field, p)
    idems = _split_idempotents(order)
    n = field.degree
    out = []
    k = kstart
    while True:
        mod = p ** k
        lifted = []
        ok = True
        for e in idems:
            # Newton lifting e <- 3e^2 - 2e^3 doubles the precision
            cur = [c % p for c in e]
            kk = 1
            while kk < k:
                kk = min(2 * kk, k)
                m2 = p ** kk
                sq = order.mul_mod(cur, cur, m2)
                cube = order.mul_mod(sq, cur, m2)
                cur = [(3 * a - 2 * b) % m2 for a, b in zip(sq, cube)]
            lifted.append(cur)
        out = []
        for elem in elems:
            den = math.lcm(*[c.denominator for c in elem.coords])
            scaled = field.element([c * den for c in elem.coords])
            coords = order.coords(scaled, integral=True)
            vden = _vp_int(den, p) if den % p == 0 else 0
            vec = []
            for e in lifted:
                z = order.mul_mod(coords, e, mod)
                vals = [_vp_int(c, p) for c in z if c % mod]
                if not vals:
                    ok = False
                    break
                vec.append(min(vals) - vden)
            if not ok:
                break
            out.append(vec)
        if ok:
            return out
        k *= 2
        if k > 1 << 14:
            raise Inconclusive(f"valuation at p={p} did not stabilize")


def _norm_numerator_primes(field, elem, limit=10 ** 6):
    """Primes (up to a trial bound) dividing the numerator or denominator
    of the norm of elem."""
    den = math.lcm(*[c.denominator for c in elem.coords])
    num = [int(c * den) for c in elem.coords]
    x = sympy.symbols("x")
    f = sympy.Poly(_dup(field.poly), x)
    a = sympy.Poly(_dup(num), x)
    if a.degree() < 0 or a.is_zero:
        raise ValueError("norm of zero")
    res = int(sympy.resultant(f, a))
    primes = set()
    for base in (abs(res), den ** field.degree):
        if base in (0, 1):
            continue
        primes |= _small_prime_divisors(base, limit)
    return sorted(primes)


def _small_prime_divisors(n: int, limit: int) -> set[int]:
    """Primes below limit dividing n, found by gcd with prime blocks (the
    factorizations here involve numbers far too large to factor fully)."""
    out = set()
    chunk = []
    for p in itertools.chain(sympy.primerange(2, limit), [None]):
        if p is not None:
            chunk.append(p)
            if len(chunk) < 2048:
                continue
        if chunk:
            g = math.gcd(n, math.prod(chunk))
            if g > 1:
                out.update(q for q in chunk if g % q == 0)
            chunk = []
    return out


def valuations_at_common_prime(alpha: FieldElement, beta: FieldElement):
    """A prime ideal with v(alpha) != 0 and the two valuations, or None when
    alpha's support is empty at every usable candidate prime.  Smallest
    usable prime wins (deterministic)."""
    field = alpha.field
    candidates = set(_norm_numerator_primes(field, alpha))
    candidates |= set(_norm_numerator_primes(field, beta))
    saw_unusable = False
    for p in sorted(candidates):
        if usable_prime(field, p):
            va = element_valuations(field, alpha, p)
            vb = element_valuations(field, beta, p)
        else:
            # index prime: fall back to the p-maximal order
            try:
                va, vb = order_valuations(field, p, [alpha, beta])
            except Inconclusive:
                saw_unusable = True
                continue
        for i, (a, b) in enumerate(zip(va, vb)):
            if a != 0:
                return ValuationCertificate(p, f"p{p}#{i}", a, b)
    if saw_unusable:
        raise Inconclusive("all candidate primes with support are unusable")
    return None


# ---------------------------------------------------------------------------
# roots of unity and independence
# ---------------------------------------------------------------------------


def torsion_orders(degree: int) -> list[int]:
    """Candidate orders k of roots of unity: phi(k) divides the degree."""
    out = []
    k = 1
    while True:
        phi = int(sympy.totient(k))
        if phi > degree:
            # phi(k) >= sqrt(k/2), so beyond 2 (degree+1)^2 nothing qualifies
            if k > 2 * (degree + 1) ** 2:
                break
            k += 1
            continue
        if degree % phi == 0:
            out.append(k)
        k += 1
    return out


def is_root_of_unity(elem: FieldElement):
    """(True, order) or (False, None); exact and complete, since a torsion
    element's order k must have phi(k) dividing the degree."""
    if elem.is_zero():
        return False, None
    for k in torsion_orders(elem.field.degree):
        if (elem ** k) == elem.field.one():
            return True, k
    return False, None


def _zeta_absent(field, k, tries=25) -> bool:
    """Certify zeta_k not in field: find a usable prime p (p not dividing k)
    with some residue degree d where k does not divide p^d - 1."""
    p = 2
    for _ in range(tries):
        p = int(sympy.nextprime(p))
        if k % p == 0 or not usable_prime(field, p):
            continue
        degs = [len(g) - 1 for g in _prime_factors_modp(field, p)]
        if any((p ** d - 1) % k for d in degs):
            return True
    return False


def roots_of_unity(field: NumberField):
    """The full torsion group of the field as exact elements."""
    present = {1: field.one(), 2: -field.one()}
    for g_idx, g in enumerate(field.gens):
        if g.kind == "sqrt" and g.data == -1:
            s = field.gen_element(g_idx)
            present[4] = s
        if g.kind == "sqrt" and g.data == -3:
            s = field.gen_element(g_idx)
            present[6] = (field.one() + s) / 2
    for k in torsion_orders(field.degree):
        if k <= 2 or any(o % k == 0 for o in present):
            continue
        if not _zeta_absent(field, k):
            raise Inconclusive(f"presence of zeta_{k} undecided")
    # close under the group structure
    order = max(present)
    zeta = present[order]
    if order % 2:
        order *= 2
        zeta = -zeta
    out, g = [], field.one()
    for _ in range(order):
        out.append(g)
        g = g * zeta
    return out


@dataclass
class IndependenceResult:
    status: str                       # independent | dependent | inconclusive
    method: str
    certificate: ValuationCertificate | None = None
    dependence: tuple | None = None   # (k, l, zeta) with alpha^k = zeta beta^l
    detail: str = ""


def _not_unit_circle(elem: FieldElement) -> bool:
    """Certify |elem| != 1 under some embedding (sound; False = unknown)."""
    for prec in (192, 512, 2048):
        with workprec(prec):
            for i in range(elem.field.degree):
                try:
                    a = elem.embed(i).abs()
                    if a > RBall.exact(1) or a < RBall.exact(1):
                        return True
                except UncertainComparison:
                    continue
    return False


def _log_minor_independent(alpha, beta) -> bool:
    """Certify independence from the archimedean log-embedding vectors: a
    dependence alpha^k = zeta beta^l (k != 0) forces k log|alpha|_i =
    l log|beta|_i at every embedding, so all 2x2 minors of the two vectors
    vanish; one certified nonzero minor proves independence.  (k = 0 would
    make beta torsion, which callers exclude first.)  False means unknown."""
    n = alpha.field.degree
    for prec in (192, 512, 2048):
        with workprec(prec):
            try:
                la = [alpha.embed(i).log_abs() for i in range(n)]
                lb = [beta.embed(i).log_abs() for i in range(n)]
            except UncertainComparison:
                continue
            for i in range(n):
                for j in range(i + 1, n):
                    minor = la[i] * lb[j] - la[j] * lb[i]
                    if minor.definitely_nonzero():
                        return True
    return False


def mult_independent(alpha: FieldElement, beta: FieldElement) -> IndependenceResult:
    """Decide multiplicative independence of two nonzero field elements.

    Either a certified independence proof, or the explicit dependence
    (k, l, zeta) with alpha^k = zeta * beta^l and zeta a root of unity.
    Sign twists are covered automatically since -1 is torsion.
    """
    if alpha.is_zero() or beta.is_zero():
        raise ValueError("independence test needs nonzero elements")
    one = alpha.field.one()

    tor_a, ka = is_root_of_unity(alpha)
    if tor_a:
        return IndependenceResult(
            "dependent", "torsion", dependence=(ka, 0, one)
        )
    tor_b, kb = is_root_of_unity(beta)
    if tor_b:
        return IndependenceResult(
            "dependent", "torsion", dependence=(0, kb, one)
        )

    try:
        cert = valuations_at_common_prime(alpha, beta)
    except Inconclusive:
        cert = None
        saw_gap = True
    else:
        saw_gap = False

    if cert is not None:
        va, vb = cert.v_alpha, cert.v_beta
        if vb == 0:
            # alpha^k = zeta beta^l forces k va = l vb = 0, so k = 0 and
            # beta would be torsion; already excluded
            return IndependenceResult("independent", "valuation", cert)
        g = math.gcd(abs(va), abs(vb))
        k0, l0 = abs(vb) // g, abs(va) // g
        if va * vb < 0:
            l0 = -l0
        gamma = (alpha ** k0) * (beta ** (-l0))
        tor, _ = is_root_of_unity(gamma)
        if tor:
            return IndependenceResult(
                "dependent", "valuation", cert, dependence=(k0, l0, gamma)
            )
        return IndependenceResult("independent", "valuation", cert)

    # no prime support to use: fall back to the archimedean certificates
    if _log_minor_independent(alpha, beta):
        return IndependenceResult("independent", "log-minors")
    res = _unit_fallback(alpha, beta)
    if res is not None:
        return res
    return IndependenceResult(
        "inconclusive",
        "valuation" if saw_gap else "unit-fallback",
        detail="no usable prime and archimedean reconstruction failed",
    )


def _unit_fallback(alpha, beta, qcap=10 ** 6):
    """Candidate exponent ratio from certified log-moduli at one embedding,
    then exact verification.  Only exact identities are ever reported."""
    field = alpha.field
    with workprec(2048):
        for i in range(field.degree):
            try:
                la = alpha.embed(i).log_abs()
                lb = beta.embed(i).log_abs()
                if not (la.abs() > RBall.exact(0)):
                    continue
            except UncertainComparison:
                continue
            theta = lb / la
            # convergents of the midpoint within the ball
            f = _fraction_from_ball(
                CBall(theta.mid, theta.rad), max_den=qcap
            )
            if f is None:
                continue
            k0, l0 = f.numerator, f.denominator
            # dependence alpha^m = zeta beta^n needs m la = n lb, m/n = theta
            gamma = (alpha ** k0) * (beta ** (-l0)) if l0 else None
            if gamma is None:
                continue
            tor, _ = is_root_of_unity(gamma)
            if tor:
                return IndependenceResult(
                    "dependent", "unit-fallback", dependence=(k0, l0, gamma)
                )
            gamma2 = (alpha ** l0) * (beta ** (-k0))
            tor2, _ = is_root_of_unity(gamma2)
            if tor2:
                return IndependenceResult(
                    "dependent", "unit-fallback", dependence=(l0, k0, gamma2)
                )
            return None
    return None


# ---------------------------------------------------------------------------
# the sigma-twist test
# ---------------------------------------------------------------------------


@dataclass
class PowerProductVerdict:
    status: str            # certified | not-applicable | inconclusive
    sigma_index: int | None = None
    detail: str = ""


def rational_power_product_test(field, x_elem, y_elem) -> PowerProductVerdict:
    """Find an automorphism sigma with x/x^sigma and y^sigma/y
    multiplicatively independent; this certifies that x^m y^n is never
    rational for (m, n) != (0, 0).

    Automorphisms are realized through the conjugates of theta that lie in
    the field itself (exact elements); fields where theta's conjugates are
    not all in the field yield not-applicable.
    """
    thetas = roots_in_field(
        field,
        list(field.poly),
        field.theta_values,
        tuple(e.conj_index for e in field.embeddings),
    )
    if len(thetas) != field.degree:
        return PowerProductVerdict(
            "not-applicable",
            detail=f"only {len(thetas)} of {field.degree} conjugates in field",
        )

    def apply_sigma(elem, theta_el):
        acc = field.zero()
        for c in reversed(elem.coords):
            acc = acc * theta_el + field.from_rational(c)
        return acc

    last = "no sigma separated the twists"
    for idx, (tel, _) in enumerate(thetas):
        xs = apply_sigma(x_elem, tel)
        ys = apply_sigma(y_elem, tel)
        if xs == x_elem or ys == y_elem:
            continue
        a = x_elem / xs
        b = ys / y_elem
        if a.is_zero() or b.is_zero():
            continue
        try:
            res = mult_independent(a, b)
        except Inconclusive as exc:
            last = str(exc)
            continue
        if res.status == "independent":
            return PowerProductVerdict("certified", sigma_index=idx)
        if res.status == "inconclusive":
            last = res.detail
    verdict = fixed_pair_power_test(field, x_elem, y_elem)
    if verdict.status == "certified":
        return verdict
    return PowerProductVerdict("inconclusive", detail=last)


def _conjugate_ratios_all_torsion(field, elem) -> bool:
    """True when elem/elem^sigma is a root of unity for every conjugate of
    theta inside the field, i.e. some power of elem is rational."""
    thetas = roots_in_field(
        field,
        list(field.poly),
        field.theta_values,
        tuple(e.conj_index for e in field.embeddings),
    )
    for tel, _ in thetas:
        acc = field.zero()
        for c in reversed(elem.coords):
            acc = acc * tel + field.from_rational(c)
        if acc == elem:
            continue
        if acc.is_zero():
            return False
        tor, _ = is_root_of_unity(elem / acc)
        if not tor:
            return False
    return True


def fixed_pair_power_test(field, x_elem, y_elem) -> PowerProductVerdict:
    """Exact valuation test that x^m y^n is never rational, (m, n) != (0, 0).

    For a rational value A and an unramified prime p, v_P(A) = v_p(A) at
    every ideal P over p, so m (v_P(x) - v_Q(x)) + n (v_P(y) - v_Q(y)) = 0
    for all pairs P, Q over p.  Two non-proportional constraints leave only
    (m, n) = (0, 0).  A single constraint direction pins one candidate ray,
    which is excluded exactly when some conjugate ratio of x^k y^l is not a
    root of unity (then no power of it is rational)."""
    candidates = set(_norm_numerator_primes(field, x_elem))
    candidates |= set(_norm_numerator_primes(field, y_elem))
    direction = None
    for p in sorted(candidates):
        try:
            if usable_prime(field, p):
                vx = element_valuations(field, x_elem, p)
                vy = element_valuations(field, y_elem, p)
            else:
                got = presentation_valuations(field, [x_elem, y_elem], p)
                if got is None:
                    got = order_valuations(field, p, [x_elem, y_elem])
                vx, vy = got
        except Inconclusive:
            continue
        for i in range(len(vx)):
            for j in range(i + 1, len(vx)):
                c = (vx[i] - vx[j], vy[i] - vy[j])
                if c == (0, 0):
                    continue
                if direction is None:
                    direction = c
                elif direction[0] * c[1] != direction[1] * c[0]:
                    return PowerProductVerdict(
                        "certified",
                        detail=f"independent valuation constraints at p={p}",
                    )
    if direction is None:
        return PowerProductVerdict(
            "inconclusive", detail="no valuation constraint found"
        )
    dx, dy = direction
    g = math.gcd(abs(dx), abs(dy))
    k, l = -dy // g, dx // g  # the only ray compatible with the constraint
    gamma = (x_elem ** k) * (y_elem ** l)
    if not _conjugate_ratios_all_torsion(field, gamma):
        return PowerProductVerdict(
            "certified",
            detail=f"residual ray ({k}, {l}) excluded by conjugate ratios",
        )
    return PowerProductVerdict(
        "inconclusive",
        detail=f"x^{k} y^{l} has a rational power; ray not excluded",
    )
