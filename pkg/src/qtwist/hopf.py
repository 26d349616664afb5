"""Hopf structure of the deformed algebra: coproduct, counit, twist, R-matrix.

The deformed coproduct leaves the H generators primitive and couples the X
generators through the group-like matrix ``e^{2 alpha.H}``.  Conjugating it
by the twist ``Phi = exp(h r^{i,mu} H_i (x) X_mu)`` recovers a primitive
coproduct on the classical basis, and ``R = swap(Phi) * Phi^{-1}`` is the
universal R-matrix.  All outputs live at the context's truncation order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from .algebra import (
    Monomial,
    SeriesMatrix,
    exp_coefficients,
    exp_truncated,
    series_apply,
)
from .errors import ShapeError, UnsupportedPresetError
from .model import DerivedStructure, derive_alpha

Q = Fraction


def build_context(spec):
    """Derive the structure for a spec and wrap it in a HopfContext."""
    return HopfContext(derive_alpha(spec))


class HopfContext:
    """Bundles a derived structure with the cached Hopf-side data.

    The heavyweight pieces (coproduct images, matrix exponentials, the twist
    and the R-matrix) are built lazily and cached; everything is immutable
    after construction, so a context can be shared across parallel checks.
    """

    def __init__(self, derived: DerivedStructure):
        self.derived = derived
        self.spec = derived.spec
        self.algebra = derived.algebra
        self._delta_cache = {}

    # -- series matrices ---------------------------------------------------

    @cached_property
    def alpha_h(self):
        return self.derived.alpha_h_matrix()

    @cached_property
    def exp_2alpha_h(self):
        coeffs = exp_coefficients(self.algebra.order)
        return series_apply(coeffs, self.alpha_h.scale(2))

    @cached_property
    def exp_neg2alpha_h(self):
        coeffs = exp_coefficients(self.algebra.order)
        return series_apply(coeffs, self.alpha_h.scale(-2))

    @cached_property
    def one_minus_exp_neg2(self):
        return SeriesMatrix.identity(self.algebra, self.spec.n) - self.exp_neg2alpha_h

    # -- coproduct and counit ------------------------------------------------

    @cached_property
    def _delta_h_gens(self):
        alg = self.algebra
        out = []
        for i in range(self.spec.m):
            g = alg.h(i)
            out.append(alg.outer(g, alg.one()) + alg.outer(alg.one(), g))
        return tuple(out)

    @cached_property
    def _delta_x_gens(self):
        alg = self.algebra
        out = []
        for mu in range(self.spec.n):
            t = alg.outer(alg.x(mu), alg.one())
            for nu in range(self.spec.n):
                entry = self.exp_2alpha_h.entry(nu, mu)
                if not entry.is_zero():
                    t = t + alg.outer(entry, alg.x(nu))
            out.append(t)
        return tuple(out)

    def _delta_monomial(self, mono):
        cached = self._delta_cache.get(mono)
        if cached is not None:
            return cached
        t = self.algebra.tensor_unit(2)
        for i, e in enumerate(mono.h):
            for _ in range(e):
                t = t * self._delta_h_gens[i]
        for mu, e in enumerate(mono.x):
            for _ in range(e):
                t = t * self._delta_x_gens[mu]
        self._delta_cache[mono] = t
        return t

    def coproduct(self, a):
        """Deformed coproduct, extended from the generators as an algebra map."""
        out = self.algebra.tensor_zero(2)
        for (k, mono), c in a.terms.items():
            delta = self._delta_monomial(mono)
            shifted = {}
            for (dk, monos), dc in delta.terms.items():
                nk = dk + k
                if nk > self.algebra.order:
                    continue
                shifted[(nk, monos)] = dc * c
            out = out + self.algebra.tensor_element(2, shifted)
        return out

    def coproduct_on_leg(self, tensor, leg):
        """Apply the coproduct to one leg, widening the tensor by a leg."""
        if not 0 <= leg < tensor.legs:
            raise ShapeError("leg out of range")
        alg = self.algebra
        out = {}
        for (k, monos), c in tensor.terms.items():
            delta = self._delta_monomial(monos[leg])
            for (dk, pair), dc in delta.terms.items():
                nk = k + dk
                if nk > alg.order:
                    continue
                wide = monos[:leg] + pair + monos[leg + 1 :]
                key = (nk, wide)
                out[key] = out.get(key, Q(0)) + c * dc
        return alg.tensor_element(tensor.legs + 1, out)

    def counit(self, a):
        """Counit as a rational per deformation power (unit-monomial slice)."""
        return a.unit_series()

    def counit_on_leg(self, tensor, leg):
        return tensor.strip_unit_leg(leg)

    # -- twist and R-matrix ----------------------------------------------------

    @cached_property
    def twist_exponent(self):
        """The 2-tensor h * r^{i,mu} H_i (x) X_mu."""
        alg = self.algebra
        terms = {}
        for i in range(self.spec.m):
            for mu in range(self.spec.n):
                c = self.spec.r[i][mu]
                if c:
                    key = (
                        1,
                        (
                            Monomial.h_gen(self.spec.m, self.spec.n, i),
                            Monomial.x_gen(self.spec.m, self.spec.n, mu),
                        ),
                    )
                    terms[key] = c
        return alg.tensor_element(2, terms)

    @cached_property
    def phi(self):
        """The twist element, exp of the pairing 2-tensor."""
        return exp_truncated(self.twist_exponent)

    @cached_property
    def phi_inverse(self):
        """Inverse twist, exp of the negated pairing 2-tensor."""
        return exp_truncated(self.twist_exponent.scale(-1))

    @cached_property
    def universal_r(self):
        """exp(swapped exponent) * exp(-exponent)."""
        head = exp_truncated(self.twist_exponent.swap())
        return head * self.phi_inverse

    def twisted_coproduct(self, a, phi=None):
        """Conjugate the deformed coproduct by the twist."""
        p = self.phi if phi is None else phi
        return self.phi_inverse * self.coproduct(a) * p

    # -- derived generator families ----------------------------------------------

    def lifted_h(self, mu):
        """H with a raised index: h * sum_i r[i][mu] H_i."""
        alg = self.algebra
        terms = {}
        for i in range(self.spec.m):
            c = self.spec.r[i][mu]
            if c:
                terms[(1, Monomial.h_gen(self.spec.m, self.spec.n, i))] = c
        return alg.element(terms)

    def classical_K(self, xi):
        """Classical basis: K^mu = xi^nu (I - e^{-2 alpha.H})^mu_nu."""
        if len(xi) != self.spec.n:
            raise ShapeError("xi has the wrong length")
        out = []
        for mu in range(self.spec.n):
            acc = self.algebra.zero()
            for nu in range(self.spec.n):
                c = Q(xi[nu])
                if c:
                    acc = acc + self.one_minus_exp_neg2.entry(mu, nu).scale(c)
            out.append(acc)
        return tuple(out)

    def physical_basis(self):
        """Generators of the null-plane presentation: Y_nu = X_mu (e^{-alpha.H})^mu_nu.

        Only available for the null-plane preset family, whose closed-form
        bracket and coproduct tables the checks compare against.
        """
        if self.spec.metadata.get("family") != "null-plane":
            raise UnsupportedPresetError(
                "the physical basis is only defined for the null-plane preset"
            )
        coeffs = exp_coefficients(self.algebra.order)
        exp_neg = series_apply(coeffs, self.alpha_h.scale(-1))
        out = []
        for nu in range(self.spec.n):
            acc = self.algebra.zero()
            for mu in range(self.spec.n):
                entry = exp_neg.entry(mu, nu)
                if not entry.is_zero():
                    acc = acc + self.algebra.x(mu) * entry
            out.append(acc)
        return tuple(out)

    def generator_elements(self):
        """All generators as elements, keyed by display name."""
        alg = self.algebra
        out = {}
        for i, name in enumerate(self.spec.h_names):
            out[name] = alg.h(i)
        for mu, name in enumerate(self.spec.x_names):
            out[name] = alg.x(mu)
        return out
