'''The degree-3 limiting density polynomials of folded words and their
constrained minimization.

For alphabet size s, a folded word with block fractions x_1, ..., x_r
(r = floor((s-1)/2)) splits into 2r+1 segments whose length fractions are
(x_1, ..., x_r, 1 - 2*sum, x_r, ..., x_1).  Three uniform positions land in
an ordered segment triple with multinomial probability, and within an
alternating segment a position's letter is either of the segment's two
letters with probability 1/2, independently of everything else (a constant
segment contributes its fixed letter).  Summing the monotonicity indicator
over all segment triples and letter assignments gives the exact limit
polynomial; evaluation and differentiation are exact over the rationals.
'''

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from monoflag.constructions import folded_segments

Exponents = Tuple[int, ...]


@dataclass(frozen=True)
class MultiPoly:
    '''A multivariate polynomial of total degree at most 3 with exact
    rational coefficients.  Zero coefficients are never stored.'''

    nvars: int
    terms: Dict[Exponents, Fraction]

    def __post_init__(self):
        for exps, coef in self.terms.items():
            if len(exps) != self.nvars:
                raise ValueError('exponent vector %r has wrong arity' % (exps,))
            if sum(exps) > 3:
                raise ValueError('total degree above 3 is not supported')
            if coef == 0:
                raise ValueError('zero coefficients must not be stored')

    def __add__(self, other: 'MultiPoly') -> 'MultiPoly':
        if self.nvars != other.nvars:
            raise ValueError('arity mismatch')
        terms = dict(self.terms)
        for exps, coef in other.terms.items():
            new = terms.get(exps, Fraction(0)) + coef
            if new:
                terms[exps] = new
            else:
                terms.pop(exps, None)
        return MultiPoly(self.nvars, terms)

    def __mul__(self, other) -> 'MultiPoly':
        if isinstance(other, MultiPoly):
            if self.nvars != other.nvars:
                raise ValueError('arity mismatch')
            terms: Dict[Exponents, Fraction] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    exps = tuple(a + b for a, b in zip(e1, e2))
                    new = terms.get(exps, Fraction(0)) + c1 * c2
                    if new:
                        terms[exps] = new
                    else:
                        terms.pop(exps, None)
            return MultiPoly(self.nvars, terms)
        coef = Fraction(other)
        if coef == 0:
            return MultiPoly(self.nvars, {})
        return MultiPoly(self.nvars,
                         {e: c * coef for e, c in self.terms.items()})

    __rmul__ = __mul__

    @staticmethod
    def constant(value, nvars: int) -> 'MultiPoly':
        coef = Fraction(value)
        if coef == 0:
            return MultiPoly(nvars, {})
        return MultiPoly(nvars, {(0,) * nvars: coef})

    @staticmethod
    def variable(index: int, nvars: int) -> 'MultiPoly':
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return MultiPoly(nvars, {exps: Fraction(1)})


def generate_hs(s: int) -> MultiPoly:
    '''The exact limit polynomial h_s of the folded family over s letters.'''
    if s < 3:
        raise ValueError('alphabet size must be at least 3')
    segments = folded_segments(s)
    r = (s - 1) // 2
    count = len(segments)

    lam: List[MultiPoly] = []
    center = MultiPoly.constant(1, r)
    for i in range(r):
        center = center + (-2) * MultiPoly.variable(i, r)
    for idx in range(count):
        if idx < r:
            lam.append(MultiPoly.variable(idx, r))
        elif idx == r:
            lam.append(center)
        else:
            lam.append(MultiPoly.variable(count - 1 - idx, r))

    total = MultiPoly(r, {})
    for a, b, c in combinations_with_replacement(range(count), 3):
        if a == b == c:
            mult = 1
        elif a < b < c:
            mult = 6
        else:
            mult = 3
        good = 0
        cases = 0
        for la, lb, lc in product(segments[a], segments[b], segments[c]):
            cases += 1
            if la <= lb <= lc or la >= lb >= lc:
                good += 1
        if good == 0:
            continue
        total = total + (lam[a] * lam[b] * lam[c]) * Fraction(mult * good, cases)
    return total


def evaluate(p: MultiPoly, point):
    '''Evaluate p at the given point (scalar allowed when p is univariate).

    Exact when the coordinates are rational; float coordinates give a
    float result.
    '''
    coords = _coerce_point(p, point)
    total = 0
    for exps, coef in p.terms.items():
        term = coef
        for x, e in zip(coords, exps):
            for _ in range(e):
                term = term * x
        total = total + term
    return total


def partial_derivative(p: MultiPoly, index: int) -> MultiPoly:
    '''The formal partial derivative of p with respect to variable index.'''
    if not 0 <= index < p.nvars:
        raise ValueError('variable index out of range')
    terms: Dict[Exponents, Fraction] = {}
    for exps, coef in p.terms.items():
        e = exps[index]
        if e == 0:
            continue
        new = exps[:index] + (e - 1,) + exps[index + 1:]
        terms[new] = terms.get(new, Fraction(0)) + coef * e
    return MultiPoly(p.nvars, {e: c for e, c in terms.items() if c})


def gradient(p: MultiPoly, point):
    '''The gradient of p at the point, exact for rational coordinates.'''
    coords = _coerce_point(p, point)
    return tuple(evaluate(partial_derivative(p, i), coords)
                 for i in range(p.nvars))


def _coerce_point(p: MultiPoly, point) -> Tuple:
    if isinstance(point, (int, float, Fraction)):
        point = (point,)
    coords = tuple(point)
    if len(coords) != p.nvars:
        raise ValueError('point has arity %d, polynomial has %d'
                         % (len(coords), p.nvars))
    return coords


def format_poly(p: MultiPoly, names: Optional[Sequence[str]] = None) -> str:
    '''Render in graded lexicographic order, highest degree first.'''
    if names is None:
        names = ['x%d' % (i + 1) for i in range(p.nvars)]
    if not p.terms:
        return '0'
    ordered = sorted(p.terms.items(),
                     key=lambda item: (-sum(item[0]),
                                       tuple(-e for e in item[0])))
    pieces = []
    for exps, coef in ordered:
        monomial = '*'.join(
            name if e == 1 else '%s^%d' % (name, e)
            for name, e in zip(names, exps) if e)
        mag = abs(coef)
        if not monomial:
            body = str(mag)
        elif mag == 1:
            body = monomial
        else:
            body = '%s*%s' % (mag, monomial)
        if not pieces:
            pieces.append(body if coef > 0 else '-' + body)
        else:
            pieces.append(('+ ' if coef > 0 else '- ') + body)
    return ' '.join(pieces)


@dataclass(frozen=True)
class SimplexMin:
    '''Result of minimizing over {x >= 0, sum(x) <= 1/2}.'''

    point: Tuple[float, ...]
    value: float
    gradient_norm_at_point: float
    active_constraints: FrozenSet[str]


_EDGE_TOLERANCE = 1e-9


def _project(point: np.ndarray) -> np.ndarray:
    '''Euclidean projection onto {x >= 0, sum(x) <= 1/2}.'''
    clipped = np.maximum(point, 0.0)
    if clipped.sum() <= 0.5:
        return clipped
    # Project onto the face {x >= 0, sum(x) = 1/2} by thresholding.
    u = np.sort(point)[::-1]
    cumulative = np.cumsum(u) - 0.5
    rho = np.nonzero(u > cumulative / np.arange(1, len(u) + 1))[0][-1]
    theta = cumulative[rho] / (rho + 1)
    return np.maximum(point - theta, 0.0)


def _grid_points(r: int) -> List[Tuple[float, ...]]:
    steps = {1: 0.01, 2: 0.01, 3: 0.01, 4: 0.025, 5: 0.05}
    step = steps.get(r, 0.1)
    limit = int(round(0.5 / step))
    points: List[Tuple[float, ...]] = []

    def recurse(prefix: List[int], remaining: int):
        if len(prefix) == r:
            points.append(tuple(k * step for k in prefix))
            return
        for k in range(remaining + 1):
            recurse(prefix + [k], remaining - k)

    recurse([], limit)
    return points


def _active_set(x: np.ndarray) -> Tuple[List[int], bool]:
    actives = [i for i in range(len(x)) if x[i] <= _EDGE_TOLERANCE]
    sum_active = x.sum() >= 0.5 - _EDGE_TOLERANCE
    return actives, sum_active


def _projected_gradient_norm(grad: np.ndarray, x: np.ndarray) -> float:
    '''Norm of the steepest feasible descent direction at x.'''
    d = -np.asarray(grad, dtype=float)
    actives, sum_active = _active_set(x)
    for _ in range(3):
        if sum_active and d.sum() > 0:
            d = d - d.sum() / len(d)
        for i in actives:
            if d[i] < 0:
                d[i] = 0.0
    return float(np.linalg.norm(d))


class _FloatPoly:
    '''Float view of a MultiPoly with its first and second derivatives.'''

    def __init__(self, p: MultiPoly):
        self.nvars = p.nvars
        self.terms = [(exps, float(coef)) for exps, coef in p.terms.items()]
        self.partials = [partial_derivative(p, i) for i in range(p.nvars)]
        self.partial_terms = [
            [(exps, float(coef)) for exps, coef in q.terms.items()]
            for q in self.partials]
        self.hessian_polys = [
            [partial_derivative(self.partials[i], j) for j in range(p.nvars)]
            for i in range(p.nvars)]

    @staticmethod
    def _eval(terms, x) -> float:
        total = 0.0
        for exps, coef in terms:
            term = coef
            for xi, e in zip(x, exps):
                if e == 1:
                    term *= xi
                elif e == 2:
                    term *= xi * xi
                elif e == 3:
                    term *= xi * xi * xi
            total += term
        return total

    def value(self, x) -> float:
        return self._eval(self.terms, x)

    def grad(self, x) -> np.ndarray:
        return np.array([self._eval(t, x) for t in self.partial_terms])

    def hess(self, x) -> np.ndarray:
        r = self.nvars
        h = np.empty((r, r))
        for i in range(r):
            for j in range(r):
                h[i, j] = float(evaluate(self.hessian_polys[i][j], tuple(x)))
        return h


def _refine(fp: _FloatPoly, start: np.ndarray) -> np.ndarray:
    x = _project(np.asarray(start, dtype=float))
    # Projected gradient with Armijo backtracking.
    for _ in range(400):
        g = fp.grad(x)
        fx = fp.value(x)
        step = 1.0
        next_x = None
        for _ in range(40):
            candidate = _project(x - step * g)
            if fp.value(candidate) < fx - 1e-16:
                next_x = candidate
                break
            step *= 0.5
        if next_x is None:
            break
        done = np.linalg.norm(next_x - x) < 1e-15
        x = next_x
        if done:
            break
    # Newton polish while strictly interior.  Acceptance is judged on the
    # gradient norm: near the minimum it resolves progress long after value
    # differences fall below float resolution.
    for _ in range(40):
        actives, sum_active = _active_set(x)
        if actives or sum_active:
            break
        g = fp.grad(x)
        gnorm = np.linalg.norm(g)
        if gnorm == 0:
            break
        try:
            delta = np.linalg.solve(fp.hess(x), -g)
        except np.linalg.LinAlgError:
            break
        scale = 1.0
        improved = False
        for _ in range(30):
            candidate = _project(x + scale * delta)
            if np.linalg.norm(fp.grad(candidate)) < gnorm:
                x = candidate
                improved = True
                break
            scale *= 0.5
        if not improved or np.linalg.norm(scale * delta) < 1e-16:
            break
    return x


def minimize_simplex(p: MultiPoly) -> SimplexMin:
    '''Global minimum of p over {x >= 0, sum(x) <= 1/2}.

    Coarse grid seeding followed by projected-gradient descent and a damped
    Newton polish from the best seeds; boundary faces are covered by the
    projection.  Absolute tolerance on the value is 1e-9 and the projected
    gradient norm at the reported point is below 1e-7.
    '''
    if p.nvars < 1 or p.nvars > 8:
        raise ValueError('supported arity is 1..8')
    fp = _FloatPoly(p)
    seeds = sorted(_grid_points(p.nvars), key=fp.value)[:25]
    candidates = []
    for seed in seeds:
        x = _refine(fp, np.array(seed))
        candidates.append((fp.value(x),
                           _projected_gradient_norm(fp.grad(x), x),
                           tuple(float(c) for c in x)))
    # Refined seeds cluster around the optimum with value differences below
    # float resolution; prefer the first-order sharpest of the near-ties,
    # then lexicographic order, keeping the result deterministic.
    lowest = min(v for v, _, _ in candidates)
    best_value, best_gnorm, best = min(
        (c for c in candidates if c[0] <= lowest + 1e-12),
        key=lambda c: (c[1], c[2]))
    best = np.array(best)
    actives, sum_active = _active_set(best)
    labels = {'x%d=0' % (i + 1) for i in actives}
    if sum_active:
        labels.add('sum=1/2')
    return SimplexMin(
        point=tuple(float(c) for c in best),
        value=float(best_value),
        gradient_norm_at_point=_projected_gradient_norm(fp.grad(best), best),
        active_constraints=frozenset(labels))


def q_of_s(s: int, cap: int = 15) -> float:
    '''The conjectured value of f(s, 3): the constrained minimum of h_s.

    Monotone non-increasing in s; reported as a float together with the
    first-order conditions via minimize_simplex.
    '''
    if s > cap:
        raise ValueError('s = %d exceeds the cap %d' % (s, cap))
    return minimize_simplex(generate_hs(s)).value
