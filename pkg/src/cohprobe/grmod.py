"""Finitely presented graded right modules over a truncated algebra.

Modules enter only as presentations coker(r: F1 -> F0) of maps between
shifted free modules; every question is answered by degreewise linear
algebra on component matrices.  Free module components are indexed by
pairs (generator k, normal word u), ordered by k then by the word order,
so all coordinates and witnesses are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegreeBoundExceeded
from .freealg import NcPoly, poly_str
from .linalg import SpanSolver


@dataclass(frozen=True)
class FreeModule:
    """Direct sum of shifted copies A(-s_k); generator e_k sits in degree s_k."""

    shifts: tuple

    def __len__(self):
        return len(self.shifts)


def free_basis(tgb, fm, d):
    """Component basis of the free module at degree d: pairs (k, word)."""
    out = []
    for k, s in enumerate(fm.shifts):
        if d - s < 0:
            continue
        for w in tgb.normal_words(d - s):
            out.append((k, w))
    return out


def free_dim(tgb, fm, d):
    total = 0
    for s in fm.shifts:
        if d - s >= 0:
            total += tgb.dim(d - s)
    return total


class ModuleMap:
    """Degree-0 map of free modules: e_l -> sum_k e_k * entry[(k, l)].

    entry (k, l) is homogeneous of degree shifts_src[l] - shifts_tgt[k]
    (or zero); entries are stored in normal form.
    """

    def __init__(self, tgb, source, target, entries):
        self.tgb = tgb
        self.source = source
        self.target = target
        self.entries = {}
        for (k, l), poly in entries.items():
            if poly is None or poly.is_zero():
                continue
            poly = tgb.normal_form(poly)
            if poly.is_zero():
                continue
            want = source.shifts[l] - target.shifts[k]
            if poly.degree != want:
                raise ValueError(
                    f"entry ({k},{l}) has degree {poly.degree}, expected {want}"
                )
            self.entries[(k, l)] = poly

    def column_polys(self, l):
        """The image of e_l as a list over target generators."""
        return [
            self.entries.get((k, l), NcPoly.zero()) for k in range(len(self.target))
        ]

    def component_columns(self, d):
        """Columns of the degree-d component matrix over the target basis index."""
        tgb = self.tgb
        fld = tgb.field
        tgt_off = {}
        off = 0
        for k, s in enumerate(self.target.shifts):
            n = tgb.dim(d - s) if d - s >= 0 else 0
            tgt_off[k] = off
            off += n
        cols = []
        for l, s in enumerate(self.source.shifts):
            if d - s < 0:
                continue
            polys = [(k, self.entries[(k, l)]) for k in range(len(self.target)) if (k, l) in self.entries]
            for u in tgb.normal_words(d - s):
                vec = {}
                for k, a in polys:
                    idx = tgb.normal_index(d - self.target.shifts[k])
                    for w, c in a.terms.items():
                        for t, tc in tgb.normal_form_word(w + u).items():
                            i = tgt_off[k] + idx[t]
                            cur = vec.get(i)
                            nv = fld.mul(c, tc) if cur is None else fld.add(cur, fld.mul(c, tc))
                            if cur is not None and fld.is_zero(nv):
                                del vec[i]
                            elif not fld.is_zero(nv):
                                vec[i] = nv
                cols.append(vec)
        return cols

    def element_strings(self):
        tgb = self.tgb
        out = {}
        for (k, l), poly in sorted(self.entries.items()):
            out[f"({k},{l})"] = poly_str(tgb.gt, tgb.field, poly)
        return out


@dataclass
class ModulePresentation:
    """M = coker(relations: F1 -> F0)."""

    relations: ModuleMap

    @property
    def f0(self):
        return self.relations.target

    @property
    def f1(self):
        return self.relations.source

    @classmethod
    def free(cls, tgb, shifts):
        fm = FreeModule(tuple(shifts))
        return cls(ModuleMap(tgb, FreeModule(()), fm, {}))

    @classmethod
    def of_map(cls, tgb, src_shifts, tgt_shifts, entries):
        return cls(
            ModuleMap(tgb, FreeModule(tuple(src_shifts)), FreeModule(tuple(tgt_shifts)), entries)
        )


def _mult_basis_vector(tgb, fm, d_from, vec, letter):
    """Right-multiply a coordinate vector at degree d_from by a generator letter.

    vec is indexed over free_basis(tgb, fm, d_from); the result is indexed
    over free_basis at d_from + weight(letter).
    """
    fld = tgb.field
    basis_from = free_basis(tgb, fm, d_from)
    d_to = d_from + tgb.gt.weights[letter]
    offsets = {}
    off = 0
    for k, s in enumerate(fm.shifts):
        n = tgb.dim(d_to - s) if d_to - s >= 0 else 0
        offsets[k] = off
        off += n
    out = {}
    for i, c in vec.items():
        k, u = basis_from[i]
        idx = tgb.normal_index(d_to - fm.shifts[k])
        for t, tc in tgb.normal_form_word(u + (letter,)).items():
            j = offsets[k] + idx[t]
            cur = out.get(j)
            nv = fld.mul(c, tc) if cur is None else fld.add(cur, fld.mul(c, tc))
            if cur is not None and fld.is_zero(nv):
                del out[j]
            elif not fld.is_zero(nv):
                out[j] = nv
    return out


class ModuleComponents:
    """Cached degreewise bases and canonical coordinates for a presented module.

    The degree-d basis is the deterministic unit-vector complement of the
    relation image inside the free component; coords() expresses any free
    component vector in that basis.
    """

    def __init__(self, pres, tgb):
        self.pres = pres
        self.tgb = tgb
        self._data = {}

    def _degree_data(self, d):
        if d > self.tgb.D:
            raise DegreeBoundExceeded(f"degree {d} > bound {self.tgb.D}")
        cached = self._data.get(d)
        if cached is not None:
            return cached
        fld = self.tgb.field
        solver = SpanSolver(fld, track=True)
        for col in self.pres.relations.component_columns(d):
            solver.add(col, tag=None)
        basis = []
        fb = free_basis(self.tgb, self.pres.f0, d)
        one = fld.one()
        for i in range(len(fb)):
            if solver.add({i: one}, tag=len(basis)):
                basis.append((i, fb[i]))
        data = (solver, basis, fb)
        self._data[d] = data
        return data

    def basis(self, d):
        """Basis of M_d as pairs (generator k, normal word)."""
        _, basis, _ = self._degree_data(d)
        return [pair for _, pair in basis]

    def dim(self, d):
        return len(self._degree_data(d)[1])

    def coords(self, d, fvec):
        """Coordinates of a free-component vector in the chosen basis of M_d."""
        solver, _, _ = self._degree_data(d)
        residue, expr = solver.reduce(fvec)
        if residue:
            raise AssertionError("vector not reduced to the quotient basis")
        return expr

    def basis_free_vectors(self, d):
        """The chosen basis as unit vectors in free-component coordinates."""
        fld = self.tgb.field
        _, basis, _ = self._degree_data(d)
        return [{i: fld.one()} for i, _ in basis]


def component_basis(pres, tgb, d):
    """Deterministic basis of M_d = (F0 / im r)_d."""
    return ModuleComponents(pres, tgb).basis(d)


@dataclass
class KernelGenerator:
    degree: int
    vector: dict          # over free_basis(source, degree)
    element: tuple        # one NcPoly per source generator

    def strings(self, tgb):
        return [poly_str(tgb.gt, tgb.field, p) for p in self.element]


def _vector_to_element(tgb, fm, d, vec):
    fld = tgb.field
    fb = free_basis(tgb, fm, d)
    polys = [dict() for _ in fm.shifts]
    for i, c in vec.items():
        k, u = fb[i]
        polys[k][u] = c
    return tuple(
        NcPoly(t, d - fm.shifts[k] if t else None) for k, t in enumerate(polys)
    )


def kernel_min_generators(f, tgb, D):
    """Minimal generators of ker(f) in degrees <= D, with witnesses.

    Degree by degree: compute the kernel of the component matrix, knock out
    the span of lower-degree kernel components pushed up by every generator
    (that span equals the A-span of the previously emitted generators), and
    emit the kernel basis vectors that extend it — graded Nakayama makes
    this a minimal generating set on the window.
    """
    fld = tgb.field
    gens = []
    kernel_bases = {}
    if len(f.source) == 0:
        return gens
    dmin = min(f.source.shifts)
    weights = tgb.gt.weights
    for d in range(dmin, D + 1):
        kbasis = _kernel_from_columns(fld, f.component_columns(d))
        kernel_bases[d] = kbasis
        old_span = SpanSolver(fld)
        for letter, w in enumerate(weights):
            for vec in kernel_bases.get(d - w, ()):
                old_span.add(_mult_basis_vector(tgb, f.source, d - w, vec, letter))
        for vec in kbasis:
            if old_span.add(vec):
                gens.append(
                    KernelGenerator(d, vec, _vector_to_element(tgb, f.source, d, vec))
                )
    return gens


def _kernel_from_columns(fld, cols):
    """Kernel of the map with the given columns; deterministic free-column basis."""
    rref = SpanSolver(fld, track=True)
    pivots = {}
    for j, col in enumerate(cols):
        residue, expr = rref.reduce(col)
        if residue:
            rref.add(col, tag=j)
        else:
            pivots[j] = expr
    out = []
    one = fld.one()
    for j in sorted(pivots):
        vec = {j: one}
        for t, c in pivots[j].items():
            vec[t] = fld.neg(c)
        out.append(vec)
    return out


@dataclass
class TruncatedResolution:
    """Minimal chain P^L -> ... -> P^0 -> M, exact up to degree D.

    p0_map carries the chosen generator representatives P^0 -> F0;
    diffs[i] is the differential P^(i+1) -> P^i.
    """

    pres: ModulePresentation
    tgb: object
    D: int
    p0: FreeModule
    p0_map: ModuleMap
    diffs: list
    modules: list        # [P^0, P^1, ..., P^L]
    tor: list            # tor[i][d] = generators of P^i in degree d

    def tor_row(self, i):
        return self.tor[i] if i < len(self.tor) else [0] * (self.D + 1)


def minimal_resolution(pres, tgb, D, length=2):
    """Minimal free resolution window of M = coker(pres) up to degree D.

    length <= 2 is what the coherence criterion needs; raising it extends
    the same syzygy loop.  Requires the presentation shifts to be >= 0
    (every module in the package is presented that way).
    """
    fld = tgb.field
    if pres.f0.shifts and min(pres.f0.shifts) < 0:
        raise ValueError("minimal_resolution expects nonnegative shifts")
    comps = ModuleComponents(pres, tgb)
    f0 = pres.f0

    # P^0: minimal generators of M, degree by degree
    tor0 = [0] * (D + 1)
    p0_shifts = []
    p0_entries = {}
    mgen_vectors = {}
    for d in range(0, D + 1):
        fb = free_basis(tgb, f0, d)
        if not fb:
            continue
        span = SpanSolver(fld)
        for col in pres.relations.component_columns(d):
            span.add(col)
        for letter, w in enumerate(tgb.gt.weights):
            for vec in mgen_vectors.get(d - w, ()):
                span.add(_mult_basis_vector(tgb, f0, d - w, vec, letter))
        one = fld.one()
        for i in range(len(fb)):
            if span.add({i: one}):
                k, u = fb[i]
                col = len(p0_shifts)
                p0_shifts.append(d)
                p0_entries[(k, col)] = NcPoly.monomial(tgb.gt, fld, u)
                tor0[d] += 1
        # spanning set of M_d for the next degrees: quotient basis representatives
        mgen_vectors[d] = comps.basis_free_vectors(d)
    p0 = FreeModule(tuple(p0_shifts))
    p0_map = ModuleMap(tgb, p0, f0, p0_entries)

    modules = [p0]
    tor = [tor0]
    diffs = []

    prev_module = p0
    for level in range(1, length + 1):
        if level == 1:
            gens = _kernel_of_into_quotient(p0_map, pres.relations, tgb, D)
        else:
            gens = kernel_min_generators(diffs[-1], tgb, D)
        shifts = tuple(g.degree for g in gens)
        pmod = FreeModule(shifts)
        entries = {}
        for col, g in enumerate(gens):
            for k, poly in enumerate(g.element):
                if not poly.is_zero():
                    entries[(k, col)] = poly
        dmap = ModuleMap(tgb, pmod, prev_module, entries)
        row = [0] * (D + 1)
        for g in gens:
            row[g.degree] += 1
        modules.append(pmod)
        tor.append(row)
        diffs.append(dmap)
        prev_module = pmod
    return TruncatedResolution(pres, tgb, D, p0, p0_map, diffs, modules, tor)


def _kernel_of_into_quotient(pmap, rel_map, tgb, D):
    """Minimal generators of ker(P -> coker(rel_map)) in degrees <= D.

    Kernel vectors at degree d are the projections to the P block of the
    kernel of the stacked matrix [pmap | rel_map], span-reduced to a
    deterministic basis (RREF rows by pivot order).
    """
    fld = tgb.field
    gens = []
    kernel_bases = {}
    src = pmap.source
    if len(src) == 0:
        return gens
    dmin = min(src.shifts)
    weights = tgb.gt.weights
    for d in range(dmin, D + 1):
        pcols = pmap.component_columns(d)
        rcols = rel_map.component_columns(d)
        kvecs = _kernel_from_columns(fld, pcols + rcols)
        nsrc = len(pcols)
        reducer = SpanSolver(fld)
        for vec in kvecs:
            reducer.add({i: c for i, c in vec.items() if i < nsrc})
        kbasis = [dict(reducer.pivot_rows[p]) for p in reducer.pivot_cols()]
        kernel_bases[d] = kbasis
        old_span = SpanSolver(fld)
        for letter, w in enumerate(weights):
            for vec in kernel_bases.get(d - w, ()):
                old_span.add(_mult_basis_vector(tgb, src, d - w, vec, letter))
        for vec in kbasis:
            if old_span.add(vec):
                gens.append(KernelGenerator(d, vec, _vector_to_element(tgb, src, d, vec)))
    return gens


@dataclass
class TorProfile:
    """dim Tor_i(M, k)_d for i = 0..L and d = 0..D, read off a minimal resolution."""

    D: int
    rows: list

    def row(self, i):
        return self.rows[i] if i < len(self.rows) else [0] * (self.D + 1)

    def to_dict(self):
        return {f"tor{i}": row for i, row in enumerate(self.rows)}


def tor_dims(pres, tgb, D, length=2):
    """Tor profile of M: generator counts of the minimal resolution terms."""
    res = minimal_resolution(pres, tgb, D, length)
    return TorProfile(D, res.tor)


def audit_resolution(res):
    """Exactness, minimality and surjectivity checks; returns a findings dict.

    - minimality: no differential has a degree-0 (scalar) entry;
    - exact at P^0: rank d1_d == dim ker(P^0 -> M)_d for all d <= D;
    - exact at P^i: rank d(i+1)_d == dim ker(di)_d;
    - surjectivity: columns of [p0_map | relations] span F0_d.
    """
    tgb = res.tgb
    fld = tgb.field
    findings = {"minimal": True, "exact": True, "surjective": True, "detail": []}
    for i, dmap in enumerate(res.diffs):
        for (k, l), poly in dmap.entries.items():
            if poly.degree == 0:
                findings["minimal"] = False
                findings["detail"].append(f"d{i+1} has scalar entry at ({k},{l})")
    for d in range(0, res.D + 1):
        pcols = res.p0_map.component_columns(d)
        rcols = res.pres.relations.component_columns(d)
        both = SpanSolver(fld)
        for col in pcols + rcols:
            both.add(col)
        if both.rank != free_dim(tgb, res.pres.f0, d):
            findings["surjective"] = False
            findings["detail"].append(f"P0 -> M not onto at degree {d}")
        # kernel of P0 -> M dimensionwise
        stacked = _kernel_from_columns(fld, pcols + rcols)
        proj_span = SpanSolver(fld)
        nsrc = len(pcols)
        for vec in stacked:
            proj_span.add({i: c for i, c in vec.items() if i < nsrc})
        want = proj_span.rank
        if res.diffs:
            have = SpanSolver(fld)
            for col in res.diffs[0].component_columns(d):
                have.add(col)
            if have.rank != want:
                findings["exact"] = False
                findings["detail"].append(
                    f"image(d1) != ker(P0->M) at degree {d}: {have.rank} vs {want}"
                )
        for i in range(1, len(res.diffs)):
            upper_cols = res.diffs[i].component_columns(d)
            lower_cols = res.diffs[i - 1].component_columns(d)
            kern = len(_kernel_from_columns(fld, lower_cols))
            im = SpanSolver(fld)
            for col in upper_cols:
                im.add(col)
            if im.rank != kern:
                findings["exact"] = False
                findings["detail"].append(
                    f"image(d{i+1}) != ker(d{i}) at degree {d}: {im.rank} vs {kern}"
                )
    return findings


def euler_characteristic_check(res):
    """sum_i (-1)^i dim P^i_d == dim M_d for d <= D; meaningful when the
    window loses no Tor (all syzygies of the last level vanish)."""
    tgb = res.tgb
    comps = ModuleComponents(res.pres, tgb)
    out = []
    for d in range(res.D + 1):
        total = 0
        sign = 1
        for pmod in res.modules:
            total += sign * free_dim(tgb, pmod, d)
            sign = -sign
        out.append(total == comps.dim(d))
    return out
