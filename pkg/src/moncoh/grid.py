"""Cohomology along lattice paths through stacked cochain complexes.

A grid stacks floors, each a finite monoid with a coefficient system;
position (floor f, degree j) carries the degree j cochain group of floor
f.  A path starts at (0, 0) and at each step moves right (R, same floor,
degree + 1, along the floor's coboundary) or down (D, floor + 1, same
degree, along a supplied vertical family).  After its explicit moves a
path continues rightward forever; walks are truncated by a degree bound.

The groups along a path form a cochain sequence.  It is a complex exactly
when consecutive maps compose to zero: right-right pairs always do, down
pairs need the family's column condition, and mixed pairs are probed by
validate_mixed_compositions.  square_cohomology then takes cohomology at
every visited position and classifies each value by the shape of its
flanking maps:

    in horizontal or start, out horizontal -> floor_leech: the value is
        the floor's own cohomology at that degree;
    in zero-vertical or start, out zero-vertical -> full_cochain_group;
    in zero-vertical, out horizontal -> kernel_group (kernel of the
        outgoing coboundary);
    anything flanked by a nonzero vertical, or horizontal-in with
        vertical-out -> extremal: a truncation artifact of the path, not
        one of the named forms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .abelian import AbHom, FgAbGroup, TRIVIAL_GROUP, cohomology_at
from .coeff import CoeffSystem
from .leech import CochainGroup, LeechComplex
from .monoid import FinMonoid

Position = tuple[int, int]  # (floor, degree)


class PathError(ValueError):
    """A move string that does not fit the grid."""


class TooManyDescents(PathError):
    """More descents than the truncated stack has floors below."""


class DescentBelowBottomFloor(PathError):
    """Descent from the bottom floor of a grid declared finite."""


class ColumnConditionError(ValueError):
    """Two stacked vertical maps whose composition is nonzero."""

    def __init__(self, violations: Sequence[tuple[int, int, AbHom]]):
        self.violations = tuple(violations)
        spots = ", ".join(f"(floor {f}, degree {d})" for f, d, _ in violations)
        super().__init__(f"vertical maps do not square to zero at {spots}")


@dataclass(frozen=True)
class CompositionViolation:
    """First position whose incoming and outgoing maps fail to compose to
    zero, with the offending product."""

    index: int
    position: Position
    moves: tuple[str, str]
    product: AbHom


class MixedCompositionError(ValueError):
    def __init__(self, violation: CompositionViolation):
        self.violation = violation
        f, d = violation.position
        super().__init__(
            f"maps around position (floor {f}, degree {d}) compose to a "
            f"nonzero homomorphism; the path groups do not form a complex")


@dataclass(frozen=True)
class GridSpec:
    """Stack of floors; finite means the bottom floor really is the last
    one rather than a truncation artifact."""

    floors: tuple[tuple[FinMonoid, CoeffSystem], ...]
    finite: bool = True

    def __post_init__(self) -> None:
        if not self.floors:
            raise ValueError("a grid needs at least one floor")
        object.__setattr__(self, "floors", tuple(
            (m, c) for m, c in self.floors))
        for k, (m, c) in enumerate(self.floors):
            if c.monoid != m:
                raise ValueError(
                    f"floor {k}: coefficient system belongs to a different monoid")
        for i in range(len(self.floors)):
            for j in range(i + 1, len(self.floors)):
                if self.floors[i][0].same_table(self.floors[j][0]):
                    raise ValueError(
                        f"floors {i} and {j} share a multiplication table; "
                        f"floors must be pairwise distinct")

    @property
    def floor_count(self) -> int:
        return len(self.floors)

    def complexes(self, max_degree: int) -> tuple[LeechComplex, ...]:
        return tuple(LeechComplex(m, c, max_degree) for m, c in self.floors)


@dataclass(frozen=True)
class PathSpec:
    """Explicit move prefix over {R, D}; continued rightward forever."""

    prefix_moves: str = ""

    def __post_init__(self) -> None:
        bad = set(self.prefix_moves) - {"R", "D"}
        if bad:
            raise ValueError(f"path moves must be R or D, got {sorted(bad)!r}")

    def walk(self, p_max: int) -> list[Position]:
        """Positions from (0,0) through degree p_max, plus the single next
        position at degree p_max + 1 so the last one has an outgoing map."""
        if p_max < 0:
            raise ValueError("degree bound must be nonnegative")
        pos = (0, 0)
        out = [pos]
        for move in itertools.chain(self.prefix_moves, itertools.repeat("R")):
            pos = (pos[0] + 1, pos[1]) if move == "D" else (pos[0], pos[1] + 1)
            out.append(pos)
            if pos[1] > p_max:
                return out
        raise AssertionError("unreachable: the rightward tail is infinite")

    def descent_count(self) -> int:
        return self.prefix_moves.count("D")


def validate_path(path: PathSpec, grid: GridSpec, p_max: int) -> None:
    """Check the whole declared prefix against the floor stack.

    The degree bound is part of the call signature for report context but
    descents are validated on the full prefix: a declared move below the
    bottom floor is an error even when truncation would hide it.
    """
    floor = 0
    bottom = grid.floor_count - 1
    for k, move in enumerate(path.prefix_moves):
        if move == "D":
            if floor == bottom:
                if grid.finite:
                    raise DescentBelowBottomFloor(
                        f"move {k} descends below floor {bottom}, the bottom "
                        f"of a finite grid")
                raise TooManyDescents(
                    f"move {k} needs floor {floor + 1} but only "
                    f"{grid.floor_count} floors were supplied")
            floor += 1


def path_from_rule(rule: Callable[[int], bool], grid: GridSpec,
                   p_max: int) -> PathSpec:
    """Path that descends at every column where the rule holds, clamped at
    the bottom floor; trailing right-moves are dropped since the tail is
    implicit."""
    bottom = grid.floor_count - 1
    floor = 0
    moves: list[str] = []
    for column in range(p_max + 1):
        if rule(column) and floor < bottom:
            moves.append("D")
            floor += 1
        moves.append("R")
    while moves and moves[-1] == "R":
        moves.pop()
    return PathSpec("".join(moves))


@dataclass(frozen=True)
class VerticalFamily:
    """Degree-preserving maps between consecutive floors, keyed by
    (floor, degree); missing keys mean the zero map."""

    kind: str
    maps: Mapping[tuple[int, int], AbHom] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in ("zero", "explicit"):
            raise ValueError("vertical family kind must be zero or explicit")
        if self.kind == "zero" and self.maps:
            raise ValueError("the zero family carries no explicit maps")

    @classmethod
    def zero(cls) -> "VerticalFamily":
        return cls("zero", {})

    @classmethod
    def explicit(cls, maps: Mapping[tuple[int, int], AbHom]) -> "VerticalFamily":
        return cls("explicit", dict(maps))

    def column_violations(self) -> list[tuple[int, int, AbHom]]:
        """Stored stacked pairs whose composition is nonzero; the witness
        is keyed by the upper floor and shared degree."""
        out = []
        for (floor, degree), lower in sorted(self.maps.items()):
            upper = self.maps.get((floor + 1, degree))
            if upper is None:
                continue
            product = upper.compose(lower)
            if not product.is_zero():
                out.append((floor, degree, product))
        return out

    def hom(self, complexes: Sequence[LeechComplex], floor: int,
            degree: int) -> AbHom:
        dom = complexes[floor].group(degree).total
        cod = complexes[floor + 1].group(degree).total
        if self.kind == "zero":
            return AbHom.zero(dom, cod)
        stored = self.maps.get((floor, degree))
        if stored is None:
            return AbHom.zero(dom, cod)
        if stored.domain != dom or stored.codomain != cod:
            raise ValueError(
                f"vertical map at (floor {floor}, degree {degree}) connects "
                f"{stored.domain} -> {stored.codomain} but the cochain groups "
                f"there are {dom} -> {cod}")
        return stored


class PathCochain:
    """Groups and maps along a truncated path.

    positions lists the couples with degree <= p_max; maps[k] leaves
    positions[k], the last one landing on tail_position at degree
    p_max + 1.  move_tags mirrors maps with horizontal/vertical labels.
    """

    def __init__(self, grid: GridSpec, family: VerticalFamily, path: PathSpec,
                 p_max: int):
        validate_path(path, grid, p_max)
        self.grid = grid
        self.family = family
        self.path = path
        self.p_max = p_max
        walked = path.walk(p_max)
        self.positions: tuple[Position, ...] = tuple(walked[:-1])
        self.tail_position: Position = walked[-1]
        self.complexes = grid.complexes(p_max + 1)
        maps: list[AbHom] = []
        tags: list[str] = []
        for (f0, d0), (f1, _) in zip(walked, walked[1:]):
            if f1 == f0:
                maps.append(self.complexes[f0].differential(d0))
                tags.append("horizontal")
            else:
                maps.append(family.hom(self.complexes, f0, d0))
                tags.append("vertical")
        self.maps: tuple[AbHom, ...] = tuple(maps)
        self.move_tags: tuple[str, ...] = tuple(tags)
        self.groups: tuple[CochainGroup, ...] = tuple(
            self.complexes[f].group(d) for f, d in self.positions)

    def first_composition_violation(self) -> CompositionViolation | None:
        for k in range(len(self.maps) - 1):
            product = self.maps[k + 1].compose(self.maps[k])
            if not product.is_zero():
                return CompositionViolation(
                    k + 1, self.positions[k + 1],
                    (self.move_tags[k], self.move_tags[k + 1]), product)
        return None


def validate_mixed_compositions(grid: GridSpec, family: VerticalFamily,
                                path: PathSpec,
                                p_max: int) -> CompositionViolation | None:
    """Probe every consecutive pair of path maps for a nonzero composite.

    Mixed pairs (right-then-down and down-then-right) are the substantive
    condition on the family; same-direction pairs are implied by the floor
    complexes and the column condition but are re-checked here anyway.
    Returns the first violation instead of raising so callers can report
    the witness.
    """
    return PathCochain(grid, family, path, p_max).first_composition_violation()


@dataclass(frozen=True)
class SquareEntry:
    index: int
    floor: int
    degree: int
    move_in: str  # "start", "R" or "D"
    move_out: str  # "R" or "D"
    in_is_zero: bool
    out_is_zero: bool
    group: FgAbGroup
    tag: str


@dataclass(eq=False)
class SquareReport:
    finite: bool
    p_max: int
    moves: str
    entries: tuple[SquareEntry, ...]
    cochain: PathCochain

    def groups(self) -> list[FgAbGroup]:
        return [e.group for e in self.entries]

    def tags(self) -> list[str]:
        return [e.tag for e in self.entries]


def _flank_kind(tag: str, hom: AbHom) -> str:
    if tag == "horizontal":
        return "H"
    return "V0" if hom.is_zero() else "V"


def _classify(in_kind: str, out_kind: str) -> str:
    if in_kind in ("start", "H") and out_kind == "H":
        return "floor_leech"
    if in_kind in ("start", "V0") and out_kind == "V0":
        return "full_cochain_group"
    if in_kind == "V0" and out_kind == "H":
        return "kernel_group"
    return "extremal"


def classify_trivial(cochain: PathCochain) -> list[str]:
    """Per-position tags from the flanking map shapes; zero-ness of a
    vertical flank is decided by the actual map, so explicit families with
    zero blocks classify the same way as the zero family."""
    tags = []
    for k in range(len(cochain.positions)):
        in_kind = ("start" if k == 0 else
                   _flank_kind(cochain.move_tags[k - 1], cochain.maps[k - 1]))
        out_kind = _flank_kind(cochain.move_tags[k], cochain.maps[k])
        tags.append(_classify(in_kind, out_kind))
    return tags


def square_cohomology(grid: GridSpec, family: VerticalFamily, path: PathSpec,
                      p_max: int) -> SquareReport:
    """Cohomology at every path position with degree <= p_max.

    H at position k is ker(map out of k) / im(map into k), the incoming
    map at the start being zero.  All composition conditions are verified
    first; a finite grid makes this the bounded-stack variant, otherwise
    it is a truncation of the unbounded one.
    """
    column = family.column_violations()
    if column:
        raise ColumnConditionError(column)
    pc = PathCochain(grid, family, path, p_max)
    violation = pc.first_composition_violation()
    if violation is not None:
        raise MixedCompositionError(violation)
    tags = classify_trivial(pc)
    start = AbHom.zero(TRIVIAL_GROUP, pc.groups[0].total)
    entries = []
    for k, (floor, degree) in enumerate(pc.positions):
        into = start if k == 0 else pc.maps[k - 1]
        out = pc.maps[k]
        entries.append(SquareEntry(
            index=k,
            floor=floor,
            degree=degree,
            move_in="start" if k == 0 else
                    ("R" if pc.move_tags[k - 1] == "horizontal" else "D"),
            move_out="R" if pc.move_tags[k] == "horizontal" else "D",
            in_is_zero=into.is_zero(),
            out_is_zero=out.is_zero(),
            group=cohomology_at(into, out),
            tag=tags[k],
        ))
    return SquareReport(grid.finite, p_max, path.prefix_moves,
                        tuple(entries), pc)


@dataclass(frozen=True)
class HorizontalRun:
    """Maximal stretch of rightward moves on one floor.

    length counts the moves between reported positions; a tail run keeps
    going past the truncation bound, so only non-tail runs can be called
    short."""

    floor: int
    start_degree: int
    end_degree: int
    length: int
    short: bool
    tail: bool


@dataclass(frozen=True)
class FloorIdentification:
    floor: int
    degree: int
    path_group: FgAbGroup
    floor_group: FgAbGroup
    matches: bool


@dataclass(eq=False)
class LocalExactnessReport:
    runs: tuple[HorizontalRun, ...]
    identifications: tuple[FloorIdentification, ...]
    extremal_positions: tuple[Position, ...]
    all_identified: bool


def local_exactness_report(grid: GridSpec, family: VerticalFamily,
                           path: PathSpec, p_max: int,
                           square_report: SquareReport | None = None,
                           ) -> LocalExactnessReport:
    """Maximal horizontal runs plus the floor-identification check.

    Every position flanked by horizontal maps must carry the floor's own
    cohomology; the report recomputes the floor value and records the
    comparison.  Runs shorter than five moves are flagged, since short
    runs are the ones whose boundary effects dominate; the final run is
    the truncated all-right tail and is never flagged short.
    """
    report = square_report if square_report is not None else \
        square_cohomology(grid, family, path, p_max)
    pc = report.cochain
    runs: list[HorizontalRun] = []
    n_moves = len(pc.maps)
    k = 0
    while k < n_moves:
        if pc.move_tags[k] != "horizontal":
            k += 1
            continue
        start = k
        while k < n_moves and pc.move_tags[k] == "horizontal":
            k += 1
        floor, start_degree = pc.positions[start]
        last_reported = min(k, len(pc.positions) - 1)
        end_degree = pc.positions[last_reported][1]
        tail = k == n_moves
        length = end_degree - start_degree
        runs.append(HorizontalRun(
            floor=floor,
            start_degree=start_degree,
            end_degree=end_degree,
            length=length,
            short=(not tail) and length < 5,
            tail=tail,
        ))
    identifications = []
    for entry in report.entries:
        if entry.tag != "floor_leech":
            continue
        floor_group = pc.complexes[entry.floor].cohomology(entry.degree)
        identifications.append(FloorIdentification(
            entry.floor, entry.degree, entry.group, floor_group,
            entry.group == floor_group))
    extremal = tuple((e.floor, e.degree) for e in report.entries
                     if e.tag == "extremal")
    return LocalExactnessReport(
        runs=tuple(runs),
        identifications=tuple(identifications),
        extremal_positions=extremal,
        all_identified=all(i.matches for i in identifications),
    )
