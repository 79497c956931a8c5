"""Certified complex enclosures with rational data.

A ``Disk`` is a closed disk with rational center and rational radius; disk
arithmetic is outward-rounded so every operation returns a disk containing all
possible exact results. Roots of squarefree polynomials are certified with the
bound ``min_i |z - r_i| <= deg(f) * |f(z) / f'(z)|``.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .polynomial import RationalPolynomial
from .rational import cabs2, cdiv, csub, mpq, sqrt_upper

__all__ = ["Disk", "IntervalRect", "isolate_all_roots", "refine_root", "DEFAULT_BITS"]

# 2**-67 ~ 6.8e-21: the default starting precision of 1e-20
DEFAULT_BITS = 67


def _round(q: mpq, bits: int) -> mpq:
    scale = 1 << bits
    n = q * scale
    return mpq(int(n.numerator // n.denominator), scale)


@dataclass(frozen=True)
class Disk:
    re: mpq
    im: mpq
    radius: mpq

    @classmethod
    def point(cls, re, im=0) -> "Disk":
        return cls(mpq(re), mpq(im), mpq(0))

    @property
    def center(self):
        return (self.re, self.im)

    def abs_upper(self) -> mpq:
        return sqrt_upper(cabs2(self.center), 32) + self.radius

    def __add__(self, other):
        if not isinstance(other, Disk):
            return Disk(self.re + mpq(other), self.im, self.radius)
        return Disk(self.re + other.re, self.im + other.im, self.radius + other.radius)

    __radd__ = __add__

    def __neg__(self):
        return Disk(-self.re, -self.im, self.radius)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Disk) else -mpq(other))

    def __mul__(self, other):
        if not isinstance(other, Disk):
            c = mpq(other)
            return Disk(self.re * c, self.im * c, self.radius * abs(c))
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        r = (sqrt_upper(cabs2(self.center), 32) * other.radius
             + sqrt_upper(cabs2(other.center), 32) * self.radius
             + self.radius * other.radius)
        return Disk(re, im, r)

    __rmul__ = __mul__

    def rounded(self, bits: int) -> "Disk":
        """Snap the center to the 2**-bits grid, absorbing the error in the radius."""
        re, im = _round(self.re, bits), _round(self.im, bits)
        if re == self.re and im == self.im:
            return self
        err = abs(re - self.re) + abs(im - self.im)
        return Disk(re, im, self.radius + err)

    def conjugate(self) -> "Disk":
        return Disk(self.re, -self.im, self.radius)

    def contains_zero(self) -> bool:
        return cabs2(self.center) <= self.radius * self.radius

    def intersects(self, other: "Disk") -> bool:
        d2 = cabs2(csub(self.center, other.center))
        r = self.radius + other.radius
        return d2 <= r * r

    def contains_disk(self, other: "Disk") -> bool:
        if other.radius > self.radius:
            return False
        d2 = cabs2(csub(self.center, other.center))
        gap = self.radius - other.radius
        return d2 <= gap * gap

    def real_interval(self) -> tuple[mpq, mpq]:
        return self.re - self.radius, self.re + self.radius

    def imag_interval(self) -> tuple[mpq, mpq]:
        return self.im - self.radius, self.im + self.radius

    def rect(self) -> "IntervalRect":
        return IntervalRect(self.re - self.radius, self.re + self.radius,
                            self.im - self.radius, self.im + self.radius)

    def to_mpc(self):
        return mpmath.mpc(mpmath.mpf(self.re.numerator) / self.re.denominator,
                          mpmath.mpf(self.im.numerator) / self.im.denominator)


@dataclass(frozen=True)
class IntervalRect:
    re_lo: mpq
    re_hi: mpq
    im_lo: mpq
    im_hi: mpq

    def __post_init__(self):
        for name in ("re_lo", "re_hi", "im_lo", "im_hi"):
            object.__setattr__(self, name, mpq(getattr(self, name)))
        if self.re_lo > self.re_hi or self.im_lo > self.im_hi:
            raise ValueError("empty rectangle")

    @classmethod
    def around(cls, re, im, half_width) -> "IntervalRect":
        re, im, h = mpq(re), mpq(im), mpq(half_width)
        return cls(re - h, re + h, im - h, im + h)

    def contains_disk(self, d: Disk) -> bool:
        return (self.re_lo <= d.re - d.radius and d.re + d.radius <= self.re_hi
                and self.im_lo <= d.im - d.radius and d.im + d.radius <= self.im_hi)

    def intersects_disk(self, d: Disk) -> bool:
        # nearest point of the rectangle to the disk center
        x = min(max(d.re, self.re_lo), self.re_hi)
        y = min(max(d.im, self.im_lo), self.im_hi)
        return cabs2((x - d.re, y - d.im)) <= d.radius * d.radius

    def mirrored(self) -> "IntervalRect":
        return IntervalRect(self.re_lo, self.re_hi, -self.im_hi, -self.im_lo)

    @property
    def width(self) -> mpq:
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def to_strings(self) -> list[str]:
        return [str(self.re_lo), str(self.re_hi), str(self.im_lo), str(self.im_hi)]


def _newton_radius(f: RationalPolynomial, df: RationalPolynomial, z) -> mpq | None:
    """Radius of a disk around z certified to contain a root of squarefree f."""
    fz = f.eval_complex(z)
    if fz == (0, 0):
        return mpq(0)
    dfz = df.eval_complex(z)
    if dfz == (0, 0):
        return None
    return f.degree * sqrt_upper(cabs2(fz) / cabs2(dfz), 40)


def isolate_all_roots(f: RationalPolynomial, bits: int = DEFAULT_BITS,
                      max_bits: int = 4096) -> list[Disk]:
    """Pairwise disjoint disks, one around each complex root of squarefree f.

    Approximations come from mpmath; the certificate is exact. Precision is
    doubled until the disks separate.
    """
    d = f.degree
    if d < 1:
        return []
    df = f.derivative()
    while bits <= max_bits:
        with mpmath.workdps(int(bits * 0.31) + 20):
            coeffs = [mpmath.mpf(int(c.numerator)) / int(c.denominator)
                      for c in reversed(f.coefficients)]
            try:
                approx = mpmath.polyroots(coeffs, maxsteps=200 + 10 * d,
                                          extraprec=2 * bits + 60)
            except mpmath.libmp.libhyper.NoConvergence:
                approx = None
        if approx is not None:
            disks = []
            for z in approx if d > 1 else [approx]:
                z = mpmath.mpc(z)
                c = (_round(_mpf_to_q(z.real), bits), _round(_mpf_to_q(z.imag), bits))
                r = _newton_radius(f, df, c)
                if r is None:
                    break
                disks.append(Disk(c[0], c[1], r))
            else:
                if _disjoint(disks):
                    return disks
        bits *= 2
    raise ArithmeticError(f"could not separate the roots of {f}")


def _mpf_to_q(x) -> mpq:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    m = -int(man) if sign else int(man)
    return mpq(m * (1 << exp)) if exp >= 0 else mpq(m, 1 << -exp)


def _disjoint(disks: list[Disk]) -> bool:
    for i in range(len(disks)):
        for j in range(i + 1, len(disks)):
            if disks[i].intersects(disks[j]):
                return False
    return True


def refine_root(f: RationalPolynomial, disk: Disk, bits: int) -> Disk:
    """Shrink an isolating disk of f to radius <= 2**-bits by exact Newton steps.

    Every new disk is certified and lies inside the previous one, so it
    encloses the same root.
    """
    target = mpq(1, 1 << bits)
    df = f.derivative()
    current = disk
    work = bits + 8
    for _ in range(200):
        if current.radius <= target:
            return current
        z = current.center
        fz, dfz = f.eval_complex(z), df.eval_complex(z)
        if dfz == (0, 0):
            break
        step = cdiv(fz, dfz)
        nz = (_round(z[0] - step[0], work), _round(z[1] - step[1], work))
        r = _newton_radius(f, df, nz)
        if r is None:
            break
        cand = Disk(nz[0], nz[1], r)
        if not current.contains_disk(cand):
            break
        if cand.radius >= current.radius:
            work += 16
        current = cand
    # Newton stalled: fall back to a fresh global isolation at higher precision
    extra = 16
    while extra <= 1 << 14:
        for d in isolate_all_roots(f, max(bits, DEFAULT_BITS) + extra, max_bits=1 << 16):
            if current.contains_disk(d) and d.radius <= target:
                return d
        extra *= 4
    raise ArithmeticError("root refinement failed")
