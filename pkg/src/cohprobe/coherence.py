"""Coherence probes: Tor_1 profiles of finitely generated right ideals.

A probe builds the map  (+) A(-deg g_i) -> A  onto the ideal, computes the
minimal generators of its kernel degree by degree up to D, and reads the
per-degree new-generator counts as evidence.  Verdicts are evidence, never
proofs: STABLE(d0) means the profile is silent after d0 with at least the
stability margin of trailing silent degrees; GROWING means new generators
keep appearing through the top half of the window.

Profiles are graded by module degree (the degree of the syzygy inside
(+) A(-deg g_i)), which is also the grading of Tor_1(J, k) and matches
Tor_2(A/J, k) degree for degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .freealg import NcPoly, parse_poly, poly_str
from .gbasis import AlgebraPresentation, RelationFamily, complete_to_degree, opposite
from .grmod import FreeModule, ModuleMap, kernel_min_generators
from .linalg import QQ, SpanSolver

STABILITY_MARGIN = 4


@dataclass
class RightIdealSpec:
    """Finitely generated homogeneous right ideal, generators in normal form."""

    gens: list

    @classmethod
    def from_strings(cls, tgb, texts):
        gens = [parse_poly(tgb.gt, tgb.field, t) for t in texts]
        return cls.normalized(tgb, gens)

    @classmethod
    def normalized(cls, tgb, gens):
        out = []
        for g in gens:
            nf = tgb.normal_form(g)
            if nf.is_zero():
                raise ValueError("ideal generator is zero in the algebra")
            if nf.degree < 1:
                raise ValueError("ideal generators must have degree >= 1")
            out.append(nf)
        if not out:
            raise ValueError("ideal needs at least one generator")
        return cls(out)

    def strings(self, tgb):
        return [poly_str(tgb.gt, tgb.field, g) for g in self.gens]


@dataclass
class Verdict:
    kind: str            # STABLE | GROWING | INCONCLUSIVE
    d0: int = None       # last degree with a new generator (STABLE only)

    def __str__(self):
        if self.kind == "STABLE":
            return f"STABLE({self.d0})"
        return self.kind

    def to_dict(self):
        return {"kind": self.kind, "d0": self.d0}


def classify_profile(profile, D, margin=STABILITY_MARGIN):
    """Verdict from a new-generator profile indexed 0..D.

    STABLE(d0) when the last new generator sits at d0 with D - d0 >= margin;
    otherwise GROWING when at least half (floor) of the degrees in the top
    half-window (D//2, D] carry new generators; otherwise INCONCLUSIVE.
    """
    d0 = 0
    for d, c in enumerate(profile):
        if c:
            d0 = d
    if D - d0 >= margin:
        return Verdict("STABLE", d0)
    top = range(D // 2 + 1, D + 1)
    nnz = sum(1 for d in top if d <= D and profile[d])
    if nnz >= max(1, len(top) // 2):
        return Verdict("GROWING")
    return Verdict("INCONCLUSIVE")


@dataclass
class CoherenceProbeReport:
    ideal_strings: list
    D: int
    profile: list                 # new minimal kernel generators per module degree
    verdict: Verdict
    witness: list                 # (degree, [component strings]) in the top window
    margin: int = STABILITY_MARGIN

    def to_dict(self):
        return {
            "gens": self.ideal_strings,
            "D": self.D,
            "profile": self.profile,
            "verdict": self.verdict.to_dict(),
            "witness": [[d, comps] for d, comps in self.witness],
            "margin": self.margin,
        }


def ideal_map(tgb, ideal):
    """The presentation map (+) A(-deg g_i) -> A of the ideal."""
    shifts = tuple(g.degree for g in ideal.gens)
    entries = {(0, i): g for i, g in enumerate(ideal.gens)}
    return ModuleMap(tgb, FreeModule(shifts), FreeModule((0,)), entries)


def probe_ideal(tgb, ideal, D=None, margin=STABILITY_MARGIN):
    """Per-degree Tor_1 new-generator profile of the ideal, with verdict."""
    D = tgb.D if D is None else D
    gens = kernel_min_generators(ideal_map(tgb, ideal), tgb, D)
    profile = [0] * (D + 1)
    for g in gens:
        profile[g.degree] += 1
    verdict = classify_profile(profile, D, margin)
    top_floor = D // 2
    witness = [(g.degree, g.strings(tgb)) for g in gens if g.degree > top_floor]
    return CoherenceProbeReport(ideal.strings(tgb), D, profile, verdict, witness, margin)


_VERDICT_RANK = {"STABLE": 0, "INCONCLUSIVE": 1, "GROWING": 2}


def worst_verdict(verdicts):
    worst = Verdict("STABLE", 0)
    rank = -1
    for v in verdicts:
        r = _VERDICT_RANK[v.kind]
        if r > rank:
            worst, rank = v, r
    return worst


@dataclass
class AggregateProbeReport:
    label: str
    side: str
    D: int
    gen_degree_bound: int
    max_ideals: int
    reports: list
    aggregate: Verdict
    witness_ideal: list  # gens of the first worst-verdict ideal

    def to_dict(self):
        return {
            "algebra": self.label,
            "side": self.side,
            "D": self.D,
            "gen_degree_bound": self.gen_degree_bound,
            "max_ideals": self.max_ideals,
            "aggregate": self.aggregate.to_dict(),
            "witness_ideal": self.witness_ideal,
            "ideals": [r.to_dict() for r in self.reports],
        }


def enumerate_ideals(tgb, gen_degree_bound, max_ideals):
    """Deterministic list of RightIdealSpecs with <= 2 normal-word generators."""
    words = []
    for d in range(1, gen_degree_bound + 1):
        words.extend(tgb.normal_words(d))
    fld = tgb.field
    gt = tgb.gt
    ideals = []
    for w in words:
        ideals.append(RightIdealSpec([NcPoly.monomial(gt, fld, w)]))
    for i in range(len(words)):
        for j in range(i + 1, len(words)):
            ideals.append(
                RightIdealSpec(
                    [NcPoly.monomial(gt, fld, words[i]), NcPoly.monomial(gt, fld, words[j])]
                )
            )
    return ideals[:max_ideals]


def probe_algebra(p, D, gen_degree_bound=2, max_ideals=64, side="right",
                  margin=STABILITY_MARGIN):
    """Probe every enumerated ideal and aggregate the worst verdict.

    The left variant probes the opposite presentation; its ideals live in
    opposite coordinates.
    """
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    probed = p if side == "right" else opposite(p)
    tgb = complete_to_degree(probed, D)
    reports = [
        probe_ideal(tgb, ideal, D, margin)
        for ideal in enumerate_ideals(tgb, gen_degree_bound, max_ideals)
    ]
    aggregate = worst_verdict([r.verdict for r in reports])
    witness = []
    for r in reports:
        if r.verdict.kind == aggregate.kind:
            witness = r.ideal_strings
            break
    return AggregateProbeReport(
        p.label, side, D, gen_degree_bound, max_ideals, reports, aggregate, witness
    )


def ideal_tor0_profile(tgb, gens, D):
    """Minimal-generator degrees of the right ideal (g_1, ..., g_s) itself.

    Tor_0(J, k)_d = dim J_d - dim (J * A_+)_d, computed by spanning both
    sides inside A_d; used for the Noetherian staircase evidence.
    """
    fld = tgb.field
    profile = [0] * (D + 1)
    for d in range(D + 1):
        index = tgb.normal_index(d)
        plus = SpanSolver(fld)
        full = SpanSolver(fld)

        def vec_of(poly):
            return {index[w]: c for w, c in poly.terms.items()}

        for g in gens:
            if g.degree > d:
                continue
            for w in tgb.normal_words(d - g.degree):
                prod = tgb.normal_form(
                    NcPoly(
                        {gw + w: c for gw, c in g.terms.items()}, d
                    )
                )
                if prod.is_zero():
                    continue
                v = vec_of(prod)
                full.add(dict(v))
                if w:
                    plus.add(v)
        profile[d] = full.rank - plus.rank
    return profile


# --- built-in corpus ------------------------------------------------------


@dataclass
class CorpusEntry:
    label: str
    presentation: AlgebraPresentation
    expected_right: str
    expected_left: str
    witness_right: list = dc_field(default_factory=list)   # ideal gen strings
    witness_left: list = dc_field(default_factory=list)    # ideals of the opposite
    note: str = ""


def _pres(field, names, rel_texts, label, fams=()):
    from .freealg import GeneratorTable

    gt = GeneratorTable(list(names))
    rels = [parse_poly(gt, field, t) for t in rel_texts]
    return AlgebraPresentation(field, gt, rels, list(fams), label=label)


def builtin_corpus(field=QQ):
    """The example algebras of the source material, with expected verdicts."""
    entries = []
    entries.append(
        CorpusEntry(
            "free1",
            _pres(field, "x", [], "free1"),
            "STABLE",
            "STABLE",
            witness_right=["x"],
            witness_left=["x"],
            note="polynomial ring in one variable",
        )
    )
    entries.append(
        CorpusEntry(
            "free2",
            _pres(field, "xy", [], "free2"),
            "STABLE",
            "STABLE",
            witness_right=["x"],
            witness_left=["x"],
            note="tensor algebra on two generators; coherent, Tor_2 == 0",
        )
    )
    entries.append(
        CorpusEntry(
            "xy_zero",
            _pres(field, "xy", ["x*y"], "xy_zero"),
            "STABLE",
            "STABLE",
            witness_right=["x"],
            witness_left=["y"],
            note="one monomial relation; coherent",
        )
    )
    entries.append(
        CorpusEntry(
            "example1",
            _pres(field, "xyz", ["x*y", "y*z", "x*z - z*x"], "example1"),
            "GROWING",
            "GROWING",
            witness_right=["x"],
            witness_left=["z"],
            note="neither side coherent; J=(x) needs a new syzygy every degree",
        )
    )
    entries.append(
        CorpusEntry(
            "example2",
            _pres(field, "xyz", ["y*z", "x*z - z*x"], "example2"),
            "STABLE",
            "GROWING",
            witness_right=["x"],
            witness_left=["z"],
            note="right coherent, not left coherent",
        )
    )
    remark_gt_names = "xy"
    remark_fam = RelationFamily(
        factors=[(0, (0, 1)), (1, (2, 1)), (0, (0, 1))],  # x * y^(2n+1) * x
        n_min=0,
        raw="x*y^{2*n+1}*x n >= 0",
    )
    entries.append(
        CorpusEntry(
            "remark",
            _pres(
                field,
                remark_gt_names,
                ["x^2*y", "y*x^2", "y*x*y"],
                "remark",
                fams=[remark_fam],
            ),
            "GROWING",
            "GROWING",
            witness_right=["x*y"],
            witness_left=["x*y"],
            note="infinitely related; witness ideal (x*y) is a design choice",
        )
    )
    entries.append(
        CorpusEntry(
            "noetherian_base",
            _pres(field, "tz", ["z*t"], "noetherian_base"),
            "STABLE",
            "STABLE",
            witness_right=["z"],
            witness_left=["t"],
            note="coherent but not right Noetherian: chain (tz, t^2z^2, ...)",
        )
    )
    entries.append(
        CorpusEntry(
            "commutative_model",
            _pres(field, "xy", ["x*y - y*x"], "commutative_model"),
            "STABLE",
            "STABLE",
            witness_right=["x"],
            witness_left=["x"],
            note="Serre desk model: coordinate ring of the projective line",
        )
    )
    return entries


def corpus_entry(label, field=QQ):
    for e in builtin_corpus(field):
        if e.label == label:
            return e
    raise KeyError(label)


def noetherian_chain_profile(tgb, D):
    """New-generator flags for the staged ideal chain (tz, t^2 z^2, ...).

    Stage m adds t^m z^m (degree 2m <= D); the flag says whether the stage
    generator is a new minimal generator on top of the earlier stages.
    """
    gt, fld = tgb.gt, tgb.field
    t, z = gt.index("t"), gt.index("z")
    stages = []
    gens = []
    m = 1
    while 2 * m <= D:
        word = (t,) * m + (z,) * m
        gens.append(NcPoly.monomial(gt, fld, word))
        profile = ideal_tor0_profile(tgb, gens, D)
        stages.append(bool(profile[2 * m]))
        m += 1
    return stages
