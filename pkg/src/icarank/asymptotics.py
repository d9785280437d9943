"""Divergent lower-bound sequences for CA monoids over infinite groups.

For each supported infinite family, stage k builds an explicit finite
quotient (rank transfers along quotients, and the unit group bounds the
monoid from below), evaluates the class-count lower bound on that quotient,
and reports the growing sequence.  An unbounded sequence certifies that the
CA monoid over the infinite group is not finitely generated.

Quotient chains:
  Z, Z^s + torsion  ->  C_{2^k}                 (mod the subgroup 2^k Z)
  free rank m       ->  Z^m  ->  C_{2^k}        (through the abelianization)
  D_infinity        ->  D_{2^k}                 (mod the rotation subgroup
                                                 generated by (xy)^{2^{k-1}})
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bounds import ica_lower
from .caps import DEFAULT_CAPS, Caps
from .errors import CapExceeded, ConstructionError, InternalInvariantError, SpecParseError
from .groups import FiniteGroup, make_cyclic, make_dihedral
from .lattice import conjugacy_classes

_MAX_STAGES = 12


@dataclass(frozen=True)
class FamilyDescriptor:
    """An infinite-group family whose finite quotients we can build.

    kinds: "Z" (the integers), "abelian" (Z^s plus finite torsion),
    "D_infinity", "free" (free group of given rank).
    """

    kind: str
    s: int = 1
    torsion: tuple[int, ...] = ()
    free_rank: int = 1

    def __post_init__(self):
        if self.kind not in ("Z", "abelian", "D_infinity", "free"):
            raise ConstructionError(f"unknown family kind {self.kind!r}")
        if self.kind == "abelian":
            if not 1 <= self.s <= 4:
                raise ConstructionError(f"free rank s must be 1..4, got {self.s}")
            t = 1
            for m in self.torsion:
                if m < 2:
                    raise ConstructionError(f"torsion orders must be >= 2, got {m}")
                t *= m
            if t > 256:
                raise ConstructionError(f"torsion order {t} exceeds 256")
        if self.kind == "free" and not 1 <= self.free_rank <= 4:
            raise ConstructionError(f"free rank must be 1..4, got {self.free_rank}")

    def spec_string(self) -> str:
        if self.kind == "Z":
            return "Z"
        if self.kind == "abelian":
            head = "Z" if self.s == 1 else f"Z^{self.s}"
            tail = "".join(f"xC{m}" for m in self.torsion)
            return head + tail
        if self.kind == "D_infinity":
            return "Dinf"
        return f"F{self.free_rank}"


def parse_family(text: str) -> FamilyDescriptor:
    """Parse family specs: Z, Z^2, Z^2xC3xC4, Dinf, F2."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise SpecParseError("empty family spec")
    low = s.lower()
    if low in ("dinf", "d_inf", "dinfinity", "d_infinity"):
        return FamilyDescriptor(kind="D_infinity")
    m = re.fullmatch(r"(?:f|free)(\d+)", low)
    if m:
        return FamilyDescriptor(kind="free", free_rank=int(m.group(1)))
    m = re.fullmatch(r"z(?:\^(\d+))?((?:xc\d+)*)", low)
    if m:
        s_rank = int(m.group(1)) if m.group(1) else 1
        torsion = tuple(int(t) for t in re.findall(r"xc(\d+)", m.group(2) or ""))
        if s_rank == 1 and not torsion:
            return FamilyDescriptor(kind="Z")
        return FamilyDescriptor(kind="abelian", s=s_rank, torsion=torsion)
    raise SpecParseError(f"unrecognized family spec {text!r}")


@dataclass(frozen=True)
class DivergenceStage:
    k: int
    quotient_spec: str
    r: int
    r_2: int
    lower_bound: int
    justification: str
    quotient_chain: tuple[str, ...]


@dataclass
class DivergenceReport:
    family: FamilyDescriptor
    q: int
    stages: tuple[DivergenceStage, ...]

    @property
    def lower_bounds(self) -> list[int]:
        return [st.lower_bound for st in self.stages]

    @property
    def unbounded_trend(self) -> bool:
        vals = self.lower_bounds
        return len(vals) >= 2 and vals[-1] > vals[0]


def _stage_quotient(family: FamilyDescriptor, k: int, caps: Caps) -> tuple[FiniteGroup, tuple[str, ...]]:
    if family.kind == "D_infinity":
        order = 2 ** k
        if order > caps.max_lattice_order:
            raise CapExceeded(
                f"stage {k} needs the lattice of D{order}, above cap "
                f"{caps.max_lattice_order}")
        chain = (f"Dinf -> Dinf/<(xy)^{2 ** (k - 1)}> = D{order}",)
        return make_dihedral(order, caps), chain
    order = 2 ** k
    if order > caps.max_group_order:
        raise CapExceeded(f"stage {k} needs C{order}, above cap {caps.max_group_order}")
    if family.kind == "Z":
        chain = (f"Z -> Z/<{order}> = C{order}",)
    elif family.kind == "abelian":
        head = family.spec_string()
        kernel = f"<{order}> + Z^{family.s - 1}" + "".join(
            f" + C{m}" for m in family.torsion)
        chain = (f"{head} -> {head}/({kernel}) = C{order}",)
    else:
        chain = (
            f"F{family.free_rank} -> Z^{family.free_rank} (abelianization)",
            f"Z^{family.free_rank} -> C{order}",
        )
    return make_cyclic(order, caps), chain


def divergence(family: FamilyDescriptor, q: int, k_max: int,
               caps: Caps = DEFAULT_CAPS) -> DivergenceReport:
    """Lower-bound sequence over k = 1..k_max finite quotient stages.

    Every stage bound is computed from the quotient's own subgroup lattice
    (no divisor shortcut), so the report is self-verifying.
    """
    if q < 2:
        raise ConstructionError(f"alphabet size must be >= 2, got {q}")
    if not 1 <= k_max <= _MAX_STAGES:
        raise ConstructionError(f"k_max must be 1..{_MAX_STAGES}, got {k_max}")
    tag = ("unit-group-lower-bound+quotient-transfer"
           if family.kind != "free"
           else "unit-group-lower-bound+abelianization+quotient-transfer")
    stages = []
    for k in range(1, k_max + 1):
        quot, chain = _stage_quotient(family, k, caps)
        table = conjugacy_classes(
            quot, caps,
            max_order_override=quot.order if quot.is_abelian else None)
        lower = ica_lower(quot, q, caps)
        stages.append(DivergenceStage(
            k=k,
            quotient_spec=quot.name,
            r=table.r,
            r_2=table.r_i(2),
            lower_bound=lower,
            justification=tag,
            quotient_chain=chain,
        ))
    report = DivergenceReport(family=family, q=q, stages=tuple(stages))
    vals = report.lower_bounds
    if any(b < a for a, b in zip(vals, vals[1:])):
        raise InternalInvariantError("divergence sequence decreased")
    if len(vals) >= 3 and vals[-1] <= vals[0]:
        raise InternalInvariantError("divergence sequence failed to grow")
    return report


# -- memory-set sanity check --------------------------------------------------


@dataclass(frozen=True)
class AmbientGroup:
    """A symbolic ambient group for the finite-memory-set argument."""

    name: str
    finitely_generated: bool


@dataclass(frozen=True)
class NonFgWitness:
    status: str        # "proper-subgroup-witness" | "identity-subgroup" | "inapplicable"
    subgroup_marker: str
    message: str


def remark_nonfg_check(ambient: AmbientGroup,
                       memory_sets: Sequence[Sequence[str]]) -> NonFgWitness:
    """Check the composition-of-memory-sets argument symbolically.

    Finitely many finite memory sets generate a finitely generated subgroup;
    inside a non-finitely-generated ambient group that subgroup is proper,
    so some CA has a memory set outside it and no finite set generates the
    monoid.  Purely explanatory output.
    """
    if ambient.finitely_generated:
        return NonFgWitness(
            status="inapplicable",
            subgroup_marker=f"<union of memory sets> <= {ambient.name}",
            message=(f"{ambient.name} is finitely generated; the memory-set "
                     "argument needs a non-finitely-generated ambient group"),
        )
    union: set[str] = set()
    for s in memory_sets:
        union.update(s)
    if not union:
        return NonFgWitness(
            status="identity-subgroup",
            subgroup_marker="<empty> = 1",
            message="no memory sets given; they generate only the identity",
        )
    return NonFgWitness(
        status="proper-subgroup-witness",
        subgroup_marker=f"<{len(union)} elements> < {ambient.name}",
        message=(f"finitely many finite memory sets generate a finitely "
                 f"generated subgroup, proper in {ambient.name}; any map whose "
                 "minimal memory set avoids it witnesses non-finite generation"),
    )
