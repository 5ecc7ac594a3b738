"""Job documents, orchestration, and structured report emission.

A job is a single JSON document:

    {"format_version": 1, "degree": 3, "generators": ["(1 2)", "(1 2 3)"],
     "base_genus": 0, "branch_points": 4, "marked_point": 1,
     "branching_type": [["(1 2)", 4]], "caps": {"work": ..., "orbit": ..., "order": ...}}

``marked_point`` defaults to 1 (1-based); ``branching_type`` and ``caps``
are optional.  A run produces one report document whose payload is
byte-identical across runs and thread counts; only the ``meta`` section
(timing, cache statistics) may vary.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field

from . import __version__
from .cache import ResultCache
from .classify import SpaceClassification, classify_space
from .covers import universal_fiber_report
from .errors import (
    InputError,
    IntransitiveGroup,
    SchemaError,
    TypeMultiplicityMismatch,
)
from .moves import ComponentPartition, components
from .perms import PermGroup, format_perm, generate_group, identity, parse_perm
from .tuples import (
    BranchingType,
    HurwitzTuple,
    branching_type_of,
    enumerate_tuples,
    make_branching_type,
    tuple_from_entries,
)

FORMAT_VERSION = 1


@dataclass(frozen=True)
class Caps:
    work: int = 10**8
    orbit: int = 10**7
    order: int = 10**6


@dataclass(frozen=True)
class JobSpec:
    """Validated, normalized description of one computation."""

    degree: int
    generators: tuple[str, ...]
    base_genus: int
    branch_points: int
    marked_point: int = 1  # 1-based, like all text I/O
    branching_type: tuple[tuple[str, int], ...] | None = None
    caps: Caps = field(default_factory=Caps)
    # run options, not part of the document schema
    requested: str = "reports"
    cache_dir: str | None = None
    use_cache: bool = True
    threads: int = 1


_TOP_KEYS = {
    "format_version",
    "degree",
    "generators",
    "base_genus",
    "branch_points",
    "marked_point",
    "branching_type",
    "caps",
}
_CAP_KEYS = {"work", "orbit", "order"}


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise SchemaError(message)


def parse_job(doc: str | dict) -> JobSpec:
    """Validate a job document and apply defaults.

    Raises SchemaError for structural problems, IntransitiveGroup when the
    generated group does not act transitively, and
    TypeMultiplicityMismatch when type multiplicities do not sum to the
    branch count.
    """
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}") from exc
    _require(isinstance(doc, dict), "job document must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    _require(not unknown, f"unknown fields: {sorted(unknown)}")
    _require(doc.get("format_version") == FORMAT_VERSION,
             f"format_version must be {FORMAT_VERSION}")
    for name in ("degree", "generators", "base_genus", "branch_points"):
        _require(name in doc, f"missing required field {name!r}")

    degree = doc["degree"]
    _require(isinstance(degree, int) and degree >= 1, "degree must be a positive integer")
    gens_raw = doc["generators"]
    _require(
        isinstance(gens_raw, list) and gens_raw
        and all(isinstance(s, str) for s in gens_raw),
        "generators must be a non-empty list of cycle strings",
    )
    base_genus = doc["base_genus"]
    _require(isinstance(base_genus, int) and base_genus >= 0,
             "base_genus must be a non-negative integer")
    branch_points = doc["branch_points"]
    _require(isinstance(branch_points, int) and branch_points >= 1,
             "branch_points must be a positive integer")
    marked_point = doc.get("marked_point", 1)
    _require(isinstance(marked_point, int) and 1 <= marked_point <= degree,
             f"marked_point must be in 1..{degree}")

    caps_raw = doc.get("caps", {})
    _require(isinstance(caps_raw, dict) and set(caps_raw) <= _CAP_KEYS,
             f"caps may only contain {sorted(_CAP_KEYS)}")
    for k, v in caps_raw.items():
        _require(isinstance(v, int) and v >= 1, f"cap {k!r} must be a positive integer")
    caps = Caps(**caps_raw)

    try:
        gens = [parse_perm(s, degree) for s in gens_raw]
    except InputError as exc:
        raise SchemaError(f"bad generator: {exc}") from exc
    group = generate_group(gens, degree, cap=caps.order, marked_point=marked_point - 1)
    if not group.is_transitive():
        raise IntransitiveGroup(
            "the generated group does not act transitively on the points"
        )

    bt_raw = doc.get("branching_type")
    branching_type: tuple[tuple[str, int], ...] | None = None
    if bt_raw is not None:
        _require(isinstance(bt_raw, list) and bt_raw, "branching_type must be a non-empty list")
        pairs = []
        for item in bt_raw:
            _require(
                isinstance(item, list) and len(item) == 2
                and isinstance(item[0], str) and isinstance(item[1], int),
                "each branching_type entry must be [cycle-string, multiplicity]",
            )
            s, mult = item
            _require(mult >= 1, "type multiplicities must be positive")
            try:
                p = parse_perm(s, degree)
            except InputError as exc:
                raise SchemaError(f"bad branching_type element: {exc}") from exc
            _require(p in group, f"type element {s!r} is not in the group")
            _require(p != identity(degree), "the identity cannot be a branch class")
            pairs.append((p, mult))
        if sum(m for _, m in pairs) != branch_points:
            raise TypeMultiplicityMismatch(
                "type multiplicities must sum to branch_points"
            )
        bt = make_branching_type(group, pairs)
        branching_type = tuple((format_perm(rep), m) for rep, m in bt.entries)

    return JobSpec(
        degree=degree,
        generators=tuple(format_perm(g) for g in sorted(set(gens))),
        base_genus=base_genus,
        branch_points=branch_points,
        marked_point=marked_point,
        branching_type=branching_type,
        caps=caps,
    )


def build_group(spec: JobSpec) -> tuple[PermGroup, BranchingType | None]:
    gens = [parse_perm(s, spec.degree) for s in spec.generators]
    group = generate_group(
        gens, spec.degree, cap=spec.caps.order, marked_point=spec.marked_point - 1
    )
    bt = None
    if spec.branching_type is not None:
        bt = make_branching_type(
            group,
            [(parse_perm(s, spec.degree), m) for s, m in spec.branching_type],
        )
    return group, bt


def cache_key(spec: JobSpec) -> str:
    """Stable content address of everything the enumeration depends on."""
    fragment = {
        "format_version": FORMAT_VERSION,
        "degree": spec.degree,
        "generators": sorted(
            list(parse_perm(s, spec.degree)) for s in spec.generators
        ),
        "base_genus": spec.base_genus,
        "branch_points": spec.branch_points,
        "marked_point": spec.marked_point,
        "branching_type": None
        if spec.branching_type is None
        else sorted(
            [list(parse_perm(s, spec.degree)), m] for s, m in spec.branching_type
        ),
    }
    blob = json.dumps(fragment, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


# ---------------------------------------------------------------------------
# Report assembly


def _spec_to_json(spec: JobSpec) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "degree": spec.degree,
        "generators": list(spec.generators),
        "base_genus": spec.base_genus,
        "branch_points": spec.branch_points,
        "marked_point": spec.marked_point,
        "branching_type": None
        if spec.branching_type is None
        else [[s, m] for s, m in spec.branching_type],
        "caps": {"work": spec.caps.work, "orbit": spec.caps.orbit, "order": spec.caps.order},
    }


def _type_to_json(bt: BranchingType) -> list:
    return [[format_perm(rep), m] for rep, m in bt.entries]


def _tuples_to_ints(tuples: list[HurwitzTuple] | tuple[HurwitzTuple, ...]) -> list[int]:
    flat: list[int] = []
    for t in tuples:
        for e in t.entries():
            flat.extend(e)
    return flat


def _tuples_from_ints(data: list[int], degree: int, base_genus: int,
                      branch_points: int) -> list[HurwitzTuple]:
    width = (2 * base_genus + branch_points) * degree
    if width == 0 or len(data) % width != 0:
        raise ValueError("cached payload has the wrong shape")
    out = []
    for off in range(0, len(data), width):
        row = data[off:off + width]
        entries = [
            tuple(row[k:k + degree]) for k in range(0, width, degree)
        ]
        out.append(tuple_from_entries(degree, base_genus, entries))
    return out


def run_job(spec: JobSpec) -> dict:
    """Execute one job and assemble the full report document.

    The census, components and classes sections are always all computed;
    the subcommand only selects how the caller consumes the document.
    """
    t_start = time.perf_counter()
    group, type_filter = build_group(spec)
    cache = ResultCache(spec.cache_dir, spec.use_cache)
    key = cache_key(spec)
    stats: dict = {}

    tuples = None
    loaded = cache.load(key, "tuples")
    if loaded is not None:
        meta, data = loaded
        try:
            tuples = tuple(
                _tuples_from_ints(data, spec.degree, spec.base_genus, spec.branch_points)
            )
        except ValueError:
            tuples = None
    if tuples is None:
        tuples = tuple(
            enumerate_tuples(
                group,
                spec.base_genus,
                spec.branch_points,
                type_filter,
                work_cap=spec.caps.work,
                threads=spec.threads,
                stats=stats,
            )
        )
        cache.store(
            key,
            "tuples",
            {"count": len(tuples)},
            _tuples_to_ints(tuples),
        )

    cls = classify_space(
        group, spec.base_genus, spec.branch_points, type_filter, tuples=tuples
    )

    def compute_components(level: str) -> ComponentPartition:
        return components(
            group,
            spec.base_genus,
            spec.branch_points,
            type_filter,
            level=level,  # type: ignore[arg-type]
            orbit_cap=spec.caps.orbit,
            classification=cls,
        )

    part_tuples = None
    loaded = cache.load(key, "components")
    if loaded is not None:
        part_tuples = _partition_from_assignment(cls, loaded[1])
    if part_tuples is None:
        part_tuples = compute_components("tuples")
        _store_partition(cache, key, cls, part_tuples)
    parts = {
        "tuples": part_tuples,
        "pointed": compute_components("pointed"),
        "unpointed": compute_components("unpointed"),
    }

    census = cls.census
    classes_json = []
    for c in cls.pointed:
        report = universal_fiber_report(c, group)
        classes_json.append(
            {
                "canonical": [format_perm(e) for e in c.canonical.entries()],
                "type": _type_to_json(branching_type_of(c.canonical, group)),
                "profiles": [list(p) for p in report.profiles],
                "genus_induced": report.genus,
                "genus_galois": report.galois_genus,
            }
        )

    doc = {
        "format_version": FORMAT_VERSION,
        "spec": _spec_to_json(spec),
        "census": {
            "tuples": census.tuple_count,
            "pointed": census.pointed_count,
            "unpointed": census.unpointed_count,
            "by_type": [
                {
                    "type": _type_to_json(row.branching_type),
                    "tuples": row.tuples,
                    "pointed": row.pointed,
                    "unpointed": row.unpointed,
                }
                for row in census.by_type
            ],
        },
        "components": {
            "exact": parts["tuples"].exact,
            "orbit_sizes": list(parts["tuples"].orbit_sizes),
            "orbit_sizes_pointed": list(parts["pointed"].orbit_sizes),
            "orbit_sizes_unpointed": list(parts["unpointed"].orbit_sizes),
        },
        "classes": classes_json,
        "meta": {
            "version": __version__,
            "elapsed_s": round(time.perf_counter() - t_start, 6),
            "threads": spec.threads,
            "work_nodes": stats.get("nodes"),
            "cache": {"hits": cache.hits, "misses": cache.misses},
        },
    }
    return doc


def _store_partition(cache: ResultCache, key: str, cls: SpaceClassification,
                     part: ComponentPartition) -> None:
    index_of = {t: i for i, t in enumerate(cls.tuples)}
    assignment = [0] * len(cls.tuples)
    for orbit_id, orbit in enumerate(part.orbits):
        for t in orbit:
            assignment[index_of[t]] = orbit_id
    cache.store(key, "components", {"orbits": len(part.orbits)}, assignment)


def _partition_from_assignment(cls: SpaceClassification,
                               assignment: list[int]) -> ComponentPartition | None:
    """Rebuild the tuple-level partition from a cached assignment array."""
    if len(assignment) != len(cls.tuples):
        return None
    buckets: dict[int, list[HurwitzTuple]] = {}
    for t, orbit_id in zip(cls.tuples, assignment):
        buckets.setdefault(orbit_id, []).append(t)
    if not buckets:
        orbits: tuple = ()
    elif set(buckets) != set(range(len(buckets))):
        return None
    else:
        orbits = tuple(
            tuple(sorted(buckets[i])) for i in range(len(buckets))
        )
    return ComponentPartition(
        level="tuples",
        exact=cls.base_genus == 0,
        orbit_sizes=tuple(len(o) for o in orbits),
        orbits=orbits,
    )


def report_to_json(doc: dict) -> str:
    """Canonical serialization: fixed key order, two-space indent, newline."""
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def comparison_payload(doc: dict) -> str:
    """The deterministic portion of a report (everything except meta)."""
    trimmed = {k: v for k, v in doc.items() if k != "meta"}
    return report_to_json(trimmed)
