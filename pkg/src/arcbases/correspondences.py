"""The maps eps, 'eps and phi between the families and E_N."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .families import FamilyLabel, label, labels
from .gf2 import EvenSubset, check_n, even_masks, gamma_mask, in_prime_part, interval, sign_of
from .matchings import Arc, Matching
from .report import Report, Tally


class FamilyError(ValueError):
    """A matching was passed to a map outside that map's domain."""


def arc_closure_mask(a: Arc, n: int) -> int:
    i, j = a.written
    if i < j:
        return interval(i, j, n)
    return interval(i, n, n) | interval(1, j, n)


def arc_closure(a: Arc, n: int) -> EvenSubset:
    """[[ij]]: the interval [i, j], or the wrap-around [i, N] + [1, j] for even arcs."""
    return EvenSubset(n, arc_closure_mask(a, n))


def _closure_sum(b: Matching) -> int:
    m = 0
    for a in b.arcs:
        m ^= arc_closure_mask(a, b.n)
    return m


def _require(b: Matching, xn1: bool) -> FamilyLabel:
    lab = label(b)
    if xn1 and not lab.in_xn1:
        raise FamilyError(f"{b} is not in X_{{N-1}} (N={b.n})")
    if not xn1 and not lab.in_xn2:
        raise FamilyError(f"{b} is not in X_{{N-2}} (N={b.n})")
    return lab


def eps(b: Matching) -> EvenSubset:
    _require(b, xn1=True)
    return EvenSubset(b.n, _closure_sum(b))


def _eps_prime_mask(b: Matching, lab: FamilyLabel) -> int:
    n = b.n
    m = _closure_sum(b)
    if lab.plus is not None and lab.plus.u is not None:
        u = lab.plus.u
        if u % 2 == 0:
            m ^= interval(u, n, n)
        else:
            m ^= interval(n, n, n) ^ interval(1, u, n)
    return m


def eps_prime(b: Matching) -> EvenSubset:
    lab = _require(b, xn1=False)
    return EvenSubset(b.n, _eps_prime_mask(b, lab))


def phi(b: Matching) -> Matching:
    """X_{N-2} -> X_{N-1}: add the arc {u_B, N} when |B^0| is odd on the plus side."""
    lab = _require(b, xn1=False)
    if lab.plus is not None and lab.plus.u is not None:
        return b.with_arc(Arc(lab.plus.u, b.n))
    return b


def _removable_arc(b: Matching) -> Arc | None:
    """The arc {i^B, N} if B lies in X_{N-1,0}."""
    s = len(b.b0)
    if s == 0:
        return None
    for a in b.arcs:
        if a.hi == b.n and a.lo % 2 == (s + 1) % 2:
            return a
    return None


def phi_inv(b: Matching) -> Matching:
    _require(b, xn1=True)
    arc = _removable_arc(b)
    return b if arc is None else b.without_arc(arc)


def span_members(b: Matching) -> list[int]:
    """Masks of all elements of <B>: unions of whole arcs."""
    out = [0]
    for a in b.arcs:
        out += [m | a.mask for m in out]
    return out


def in_span(mask: int, b: Matching) -> bool:
    if mask & ~b.supp:
        return False
    return all(mask & a.mask in (0, a.mask) for a in b.arcs)


@dataclass(frozen=True)
class CorrespondenceTable:
    """A bijection between a family of matchings and E_N, both directions."""

    n: int
    forward: dict[Matching, EvenSubset]
    backward: dict[EvenSubset, Matching]

    def carrier(self) -> tuple[Matching, ...]:
        """Family members ordered by their image in E_N."""
        return tuple(self.backward[x] for x in sorted(self.backward))


@lru_cache(maxsize=None)
def eps_table(n: int) -> CorrespondenceTable:
    check_n(n)
    fwd = {b: EvenSubset(n, _closure_sum(b)) for b, lab in labels(n).items() if lab.in_xn1}
    return CorrespondenceTable(n, fwd, _invert(fwd, "eps"))


@lru_cache(maxsize=None)
def eps_prime_table(n: int) -> CorrespondenceTable:
    check_n(n)
    fwd = {
        b: EvenSubset(n, _eps_prime_mask(b, lab))
        for b, lab in labels(n).items()
        if lab.in_xn2
    }
    return CorrespondenceTable(n, fwd, _invert(fwd, "'eps"))


def _invert(fwd: dict[Matching, EvenSubset], name: str) -> dict[EvenSubset, Matching]:
    back: dict[EvenSubset, Matching] = {}
    for b, x in fwd.items():
        if x in back:
            raise FamilyError(f"{name} is not injective: {back[x]} and {b} both map to {x}")
        back[x] = b
    return back


def _injective_onto(tally: Tally, images: dict, target: set[int], what: str) -> None:
    seen: dict[int, object] = {}
    for b, m in images.items():
        tally.check(m not in seen, lambda b=b, m=m: f"{what}: {seen[m]} and {b} collide")
        seen.setdefault(m, b)
        tally.check(m in target, lambda b=b, m=m: f"{what}: image of {b} lies outside target")
    missed = target - set(seen)
    tally.check(not missed, lambda: f"{what}: {len(missed)} targets not hit")


def _phi_case_target(b: Matching, lab: FamilyLabel, img: Matching, n: int) -> bool:
    """Where 1.5(a)-(e) say phi(b) should land, given b's label."""
    s = len(b.b0)
    img_s = len(img.b0)
    partner = next((a.lo for a in img.arcs if a.hi == n), None)
    if lab.minus is not None:
        return img_s == s and partner is not None and partner % 2 == s % 2
    if s == 0:
        return img_s == 0 and partner is None
    u = lab.plus.u
    if u % 2:
        return img_s == s + 1 and partner is not None and partner % 2 == 1
    return img_s == s and partner is not None and partner % 2 == 0


def verify_correspondences(n: int) -> list[Report]:
    check_n(n)
    labs = labels(n)
    xn1 = {b: lab for b, lab in labs.items() if lab.in_xn1}
    xn2 = {b: lab for b, lab in labs.items() if lab.in_xn2}
    e1 = eps_table(n).forward
    e2 = eps_prime_table(n).forward
    all_e = set(even_masks(n))
    reports = []

    t = Tally("1.4", n)
    t.counts.update(xn1=len(xn1), xn2=len(xn2))
    for b, lab in xn2.items():
        t.check(lab.plus is None or lab.minus is None, f"{b} in both signed families")
        t.check(lab.xn2_t is not None and lab.xn2_t % 2 == 0, f"{b}: bad stratum")
    for b, lab in xn1.items():
        t.check(lab.xn1 % 2 == 0, f"{b}: bad stratum {lab.xn1}")
    reports.append(t.report())

    t = Tally("1.5", n)
    images = {}
    for b, lab in xn2.items():
        img = phi(b)
        images[b] = img
        t.check(img in xn1, lambda b=b, img=img: f"phi({b}) = {img} not in X_(N-1)")
        t.check(_phi_case_target(b, lab, img, n), lambda b=b, img=img: f"phi({b}) = {img}: wrong case target")
        t.check(set(b.arcs) <= set(img.arcs), f"{b} not contained in phi image")
        t.check(phi_inv(img) == b, lambda b=b: f"phi_inv(phi({b})) != {b}")
        partner = next((a.lo for a in img.arcs if a.hi == n), None)
        hits = partner is not None and partner % 2 == len(img.b0) % 2
        # (g) for the minus family, (h) for the plus family
        t.check(hits == (lab.minus is not None), lambda b=b: f"{b}: restriction (g)/(h) fails")
    t.check(len(set(images.values())) == len(images), "phi not injective")
    t.check(set(images.values()) == set(xn1), "phi not onto X_(N-1)")
    for b in xn1:
        t.check(phi(phi_inv(b)) == b, lambda b=b: f"phi(phi_inv({b})) != {b}")
    reports.append(t.report())

    t = Tally("Thm2.4a", n)
    _injective_onto(t, {b: x.bits for b, x in e1.items()}, all_e, "eps")
    t.counts.update(family=len(e1), vectors=len(all_e))
    reports.append(t.report())

    t = Tally("Thm2.4b", n)
    for b, x in e1.items():
        t.check(in_span(x.bits, b), lambda b=b: f"eps({b}) not in <B>")
    reports.append(t.report())

    t = Tally("Thm2.4c", n)
    back1 = eps_table(n).backward
    pairs = 0
    for b in e1:
        s = len(b.b0)
        for m in span_members(b):
            other = back1.get(EvenSubset(n, m))
            if other is None:
                continue
            pairs += 1
            t.check(len(other.b0) <= s, lambda b=b, o=other: f"eps({o}) in <{b}> but |B'0| > |B0|")
    t.counts["pairs"] = pairs
    reports.append(t.report())

    t = Tally("2.7", n)
    for b, x in e1.items():
        t.check(gamma_mask(x.bits) == xn1[b].xn1, lambda b=b: f"gamma(eps({b})) != t")
    reports.append(t.report())

    t = Tally("2.8a", n)
    for b, x in e2.items():
        t.check(x == e1[phi(b)], lambda b=b: f"'eps({b}) != eps(phi({b}))")
    reports.append(t.report())

    t = Tally("Thm2.9a", n)
    _injective_onto(t, {b: x.bits for b, x in e2.items()}, all_e, "'eps")
    t.counts.update(family=len(e2), vectors=len(all_e))
    reports.append(t.report())

    t = Tally("Thm2.9b", n)
    for b, x in e2.items():
        t.check(in_span(x.bits, b), lambda b=b: f"'eps({b}) not in <B>")
    reports.append(t.report())

    t = Tally("Thm2.13", n)
    strata: dict[tuple[str, int], dict] = {}
    for b, x in e2.items():
        lab = xn2[b]
        strata.setdefault((lab.xn2_sign, lab.xn2_t), {})[b] = x.bits
    for (sign, tt), imgs in sorted(strata.items()):
        target = {m for m in all_e if sign_of(m, n) == sign and gamma_mask(m) == tt}
        _injective_onto(t, imgs, target, f"stratum ({tt},{sign})")
    for sign in "+-":
        imgs = {b: x.bits for b, x in e2.items() if xn2[b].xn2_sign == sign}
        _injective_onto(t, imgs, {m for m in all_e if sign_of(m, n) == sign}, f"E_N^{sign}")
    t.counts["strata"] = len(strata)
    reports.append(t.report())

    t = Tally("3.1a", n)
    for sign in "+-":
        for primed in (True, False):
            imgs = {
                b: x.bits
                for b, x in e2.items()
                if xn2[b].xn2_sign == sign and xn2[b].primed == primed
            }
            target = {m for m in all_e if sign_of(m, n) == sign and in_prime_part(m, n) == primed}
            _injective_onto(t, imgs, target, f"{'prime' if primed else 'doubleprime'}{sign}")
        if sign == "+":
            for primed in (True, False):
                imgs = {
                    b: x.bits
                    for b, x in e2.items()
                    if xn2[b].plus is not None and xn2[b].plus.t == 0 and xn2[b].primed == primed
                }
                target = {
                    m for m in all_e
                    if sign_of(m, n) == "+" and gamma_mask(m) == 0 and in_prime_part(m, n) == primed
                }
                _injective_onto(t, imgs, target, f"t=0 {'prime' if primed else 'doubleprime'}")
    reports.append(t.report())
    return reports
