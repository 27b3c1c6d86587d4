"""Corpus generation: canonical forms, exhaustive small searches, and growth
of projective-plane quadrangulations by vertex splitting.

Enumeration completeness is NOT claimed: the corpus is the closure of the
seed set under vertex splits, re-validated per product.  The verification
harness treats theorem checks as property tests over this corpus.
"""

from __future__ import annotations

import hashlib
from itertools import combinations, permutations

import numpy as np

from . import _kernels
from .errors import TooLarge
from .surface import EmbeddedGraph, SignedRotationSystem

_SEP = -1


def _encode_from(srs, start_dart, start_side, best):
    """BFS-labelled flat-int encoding of the embedding from one start state.

    Tokens per dart are (edge_label, neighbor_label, sign_bit); vertex blocks
    end with a -1 sentinel.  Invariant under vertex relabelling and local
    reorientation (vertex flips); the minimum over all starts is canonical.
    Aborts and returns None as soon as the encoding exceeds ``best``.
    """
    rot = srs.rotations
    dv = srs._dart_vertex
    edges = srs.edges
    n = srs.vertex_count
    label = [-1] * n
    hand = [0] * n
    entry = [0] * n
    root = dv[start_dart]
    label[root] = 0
    hand[root] = start_side
    entry[root] = start_dart
    order = [root]
    edge_label = [-1] * len(edges)
    next_edge = 0
    enc = []
    ahead = best is None   # strictly smaller than best so far?
    p = 0
    qi = 0
    while qi < len(order):
        v = order[qi]
        qi += 1
        hv = hand[v]
        rv = rot[v]
        k = len(rv)
        i0 = rv.index(entry[v])
        for step in range(k):
            d = rv[(i0 + step * hv) % k]
            e = d >> 1
            el = edge_label[e]
            if el < 0:
                el = edge_label[e] = next_edge
                next_edge += 1
            w = dv[d ^ 1]
            lw = label[w]
            if lw < 0:
                lw = label[w] = len(order)
                hand[w] = hv * edges[e][2]
                entry[w] = d ^ 1
                order.append(w)
            sb = 0 if edges[e][2] * hv * hand[w] > 0 else 1
            for tok in (el, lw, sb):
                if not ahead:
                    bt = best[p]
                    if tok > bt:
                        return None, None
                    if tok < bt:
                        ahead = True
                enc.append(tok)
                p += 1
        if not ahead:
            if _SEP > best[p]:
                return None, None
            if _SEP < best[p]:
                ahead = True
        enc.append(_SEP)
        p += 1
    if not ahead and p < len(best):
        return None, None     # equal prefix but shorter: cannot happen per
                              # component; treat as not better
    return len(order), tuple(enc)


def _component_min_encoding(srs, darts):
    """Minimum encoding over the given start darts (both sides each)."""
    best = None
    count = 0
    for d in darts:
        for side in (1, -1):
            c, enc = _encode_from(srs, d, side, best)
            if enc is not None and (best is None or enc < best):
                best, count = enc, c
    return count, best


def _start_darts(srs, vertices):
    """Start darts for canonical search restricted to ``vertices``.

    For simple graphs the canonical encoding provably starts at a vertex of
    minimum degree (the block sentinel sorts below any token), so only those
    darts are tried; graphs with loops or multi-edges use every dart.
    """
    verts = [v for v in vertices if srs.rotations[v]]
    if not verts:
        return []
    if srs.is_simple():
        dmin = min(len(srs.rotations[v]) for v in verts)
        verts = [v for v in verts if len(srs.rotations[v]) == dmin]
    return [d for v in verts for d in srs.rotations[v]]


def _min_encoding_fast(srs, darts):
    """Numba-backed minimum encoding for a connected system."""
    n, ne = srs.vertex_count, srs.edge_count
    rot_flat = np.empty(2 * ne, np.int32)
    rot_start = np.empty(n, np.int32)
    rot_len = np.empty(n, np.int32)
    pos_in_rot = np.empty(2 * ne, np.int32)
    at = 0
    for v in range(n):
        rot_start[v] = at
        rv = srs.rotations[v]
        rot_len[v] = len(rv)
        for i, d in enumerate(rv):
            rot_flat[at] = d
            pos_in_rot[d] = i
            at += 1
    dart_vertex = np.asarray(srs._dart_vertex, np.int32)
    sign = np.asarray([s for (_u, _v, s) in srs.edges], np.int8)
    enc = _kernels._min_encoding_jit(
        n, ne, rot_flat, rot_start, rot_len, pos_in_rot, dart_vertex, sign,
        np.asarray(darts, np.int32))
    return tuple(int(t) for t in enc)


def canonical_key(g) -> str:
    """Canonical string of an embedding, equal for two embeddings iff they
    are related by relabelling, rotation/reflection, and sign flips."""
    srs = g.srs if isinstance(g, EmbeddedGraph) else g
    n = srs.vertex_count
    ne = srs.edge_count
    prefix = f"v{n}e{ne}:"
    if ne == 0:
        return prefix + f"iso{n}"
    comps = _vertex_components(srs)
    if len(comps) == 1 and _kernels.HAS_NUMBA:
        darts = _start_darts(srs, comps[0])
        enc = _min_encoding_fast(srs, darts)
        return prefix + ",".join(map(str, enc))
    isolated = 0
    parts = []
    for comp in comps:
        darts = _start_darts(srs, comp)
        if not darts:
            isolated += len(comp)
            continue
        _c, enc = _component_min_encoding(srs, darts)
        parts.append(",".join(map(str, enc)))
    parts.sort()
    body = "//".join(parts)
    if isolated:
        body = f"iso{isolated}//" + body
    return prefix + body


def _vertex_components(srs):
    n = srs.vertex_count
    adj = srs.adjacency()
    seen = [False] * n
    comps = []
    for v in range(n):
        if seen[v]:
            continue
        comp = [v]
        seen[v] = True
        stack = [v]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def short_key(g) -> str:
    """Filesystem-friendly digest of the canonical string."""
    return hashlib.blake2b(canonical_key(g).encode(), digest_size=8).hexdigest()


class CanonicalForm:
    """Text key invariant under embedded isomorphism."""

    def __init__(self, g):
        self.canonical_string = canonical_key(g)

    def __eq__(self, other):
        return (isinstance(other, CanonicalForm)
                and self.canonical_string == other.canonical_string)

    def __hash__(self):
        return hash(self.canonical_string)


# -- exhaustive embedding search --------------------------------------------


def _spanning_tree_edges(n, edges):
    seen = [False] * n
    seen[0] = True
    tree = []
    frontier = [0]
    adj = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    while frontier:
        x = frontier.pop()
        for (y, i) in adj[x]:
            if not seen[y]:
                seen[y] = True
                tree.append(i)
                frontier.append(y)
    if not all(seen):
        raise TooLarge("exhaustive search expects a connected graph")
    return set(tree)


def all_embeddings(n, edges, max_edges=10):
    """Yield every signed rotation system of a connected simple graph, one
    representative per (rotations x tree-normalized signs) choice.

    Complete up to embedded isomorphism: every equivalence class contains a
    representative whose spanning-tree signs are all +1.
    """
    ne = len(edges)
    if ne > max_edges:
        raise TooLarge(f"{ne} edges exceeds the exhaustive gate ({max_edges})")
    darts_at = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        darts_at[u].append(2 * i)
        darts_at[v].append(2 * i + 1)
    tree = _spanning_tree_edges(n, edges)
    free = [i for i in range(ne) if i not in tree]

    rot_choices = []
    for v in range(n):
        ds = darts_at[v]
        if len(ds) <= 2:
            rot_choices.append([tuple(ds)])
        else:
            first, rest = ds[0], ds[1:]
            rot_choices.append([(first,) + p for p in permutations(rest)])

    def rec_rot(v, acc):
        if v == n:
            yield list(acc)
            return
        for rot in rot_choices[v]:
            acc.append(rot)
            yield from rec_rot(v + 1, acc)
            acc.pop()

    for rots in rec_rot(0, []):
        for bits in range(1 << len(free)):
            sign = [1] * ne
            for j, e in enumerate(free):
                if (bits >> j) & 1:
                    sign[e] = -1
            yield SignedRotationSystem(
                n,
                [(u, v, sign[i]) for i, (u, v) in enumerate(edges)],
                rots,
                check=False,
            )


def exhaustive_small_search(n, edges, predicate, max_edges=10):
    """All projective-plane embeddings of the graph satisfying ``predicate``,
    deduplicated by canonical form, sorted by canonical string."""
    found = {}
    for srs in all_embeddings(n, edges, max_edges=max_edges):
        g = EmbeddedGraph(srs)
        if not (g.euler_char == 1 and not g.orientable):
            continue
        if not predicate(g):
            continue
        key = canonical_key(g)
        if key not in found:
            found[key] = g
    return [found[k] for k in sorted(found)]


# -- growth moves -------------------------------------------------------------


def _is_quadrangulation_p2(g: EmbeddedGraph):
    return (g.srs.is_simple()
            and g.srs.is_connected()
            and g.euler_char == 1
            and not g.orientable
            and all(f.length == 4 for f in g.faces))


def _fast_quad_face_count(srs, expect):
    """Count faces, aborting as soon as any walk exceeds length 4.

    Returns the face count, or -1 if some face is longer than 4 or the count
    differs from ``expect``.
    """
    ne = srs.edge_count
    used = bytearray(4 * ne)
    nxt = srs._rot_next
    prv = srs._rot_prev
    edges = srs.edges
    count = 0
    for start in range(4 * ne):
        if used[start]:
            continue
        d0, s0 = start >> 1, 1 - 2 * (start & 1)
        d, s = d0, s0
        steps = 0
        walk = []
        while True:
            used[2 * d + (0 if s > 0 else 1)] = 1
            walk.append((d, s))
            steps += 1
            e = d >> 1
            s = s * edges[e][2]
            d2 = d ^ 1
            d = nxt[d2] if s > 0 else prv[d2]
            if d == d0 and s == s0:
                break
            if steps >= 4:
                return -1
        if steps != 4:
            return -1
        count += 1
        for dd, ss in walk:
            rs = -ss * edges[dd >> 1][2]
            used[2 * (dd ^ 1) + (0 if rs > 0 else 1)] = 1
    return count if count == expect else -1


def vertex_split(g: EmbeddedGraph, v, i, j):
    """Split vertex ``v`` between rotation positions ``i`` and ``j``.

    The neighbors at positions i and j stay attached to both halves; the arc
    strictly between them moves to the new vertex, which inherits the local
    orientation of ``v``.  The insertion side of each new edge end is forced
    by the face structure: the new end replaces the old one next to the face
    corner that migrates to the new vertex, which is the rotation-predecessor
    side at ``x`` iff sign(vx) is +1 and the successor side at ``y`` iff
    sign(vy) is +1.

    Returns the raw SignedRotationSystem (not validated, not traced).
    """
    srs = g.srs
    rot_v = srs.rotations[v]
    k = len(rot_v)
    di, dj = rot_v[i], rot_v[j]
    ei, ej = di >> 1, dj >> 1
    x = srs.dart_vertex(di ^ 1)
    y = srs.dart_vertex(dj ^ 1)
    arc = [rot_v[(i + t) % k] for t in range(1, (j - i) % k)]
    keep = [rot_v[(j + t) % k] for t in range(0, (i - j) % k + 1)]
    n = srs.vertex_count
    vp = n  # the new vertex
    ne = srs.edge_count
    e1 = ne      # vp - x
    e2 = ne + 1  # vp - y
    edges = list(srs.edges) + [(vp, x, srs.sign(ei)), (vp, y, srs.sign(ej))]
    for d in arc:
        e = d >> 1
        u0, v0, s0 = edges[e]
        edges[e] = (vp, v0, s0) if (d & 1) == 0 else (u0, vp, s0)
    rotations = [list(r) for r in srs.rotations]
    rotations[v] = keep
    rotations.append([2 * e1] + arc + [2 * e2])
    rx = rotations[x]
    pos = rx.index(di ^ 1)
    rx.insert(pos if srs.sign(ei) > 0 else pos + 1, 2 * e1 + 1)
    ry = rotations[y]
    pos = ry.index(dj ^ 1)
    ry.insert(pos + 1 if srs.sign(ej) > 0 else pos, 2 * e2 + 1)
    return SignedRotationSystem(n + 1, edges, rotations, check=False)


def vertex_split_products(g: EmbeddedGraph, v, i, j):
    """Valid simple-quadrangulation products of one vertex split."""
    srs = vertex_split(g, v, i, j)
    if _fast_quad_face_count(srs, g.face_count + 1) < 0:
        return []
    if not srs.is_simple():
        return []
    cand = EmbeddedGraph(srs)
    if not _is_quadrangulation_p2(cand):
        return []
    return [cand]


def grow_quadrangulations(seeds, n_max):
    """Closure of the seeds under vertex splits, keeping simple P^2
    quadrangulations up to ``n_max`` vertices, deduplicated canonically.

    Returns {n: [(canonical_string, SignedRotationSystem), ...]} sorted by
    key.  Products found under a new canonical key are fully re-validated;
    the split construction itself guarantees quadrangulation-ness, so a
    validation failure here is a bug, not an input condition.
    """
    by_n = {}
    seen = set()
    frontier = []
    for g in seeds:
        if isinstance(g, SignedRotationSystem):
            g = EmbeddedGraph(g)
        if not _is_quadrangulation_p2(g):
            raise TooLarge("seed is not a simple P^2 quadrangulation")
        key = canonical_key(g)
        if key in seen:
            continue
        seen.add(key)
        by_n.setdefault(g.vertex_count, []).append((key, g.srs))
        frontier.append(g.srs)
    while frontier:
        srs0 = frontier.pop()
        if srs0.vertex_count >= n_max:
            continue
        g = _QuadView(srs0)
        for v in range(srs0.vertex_count):
            k = srs0.degree(v)
            for i, j in combinations(range(k), 2):
                srs = vertex_split(g, v, i, j)
                if not srs.is_simple():
                    continue
                key = canonical_key(srs)
                if key in seen:
                    continue
                seen.add(key)
                if not _is_quadrangulation_p2(EmbeddedGraph(srs)):
                    raise AssertionError(
                        "vertex split produced a non-quadrangulation")
                by_n.setdefault(srs.vertex_count, []).append((key, srs))
                frontier.append(srs)
    return {n: sorted(v, key=lambda kv: kv[0]) for n, v in sorted(by_n.items())}


class _QuadView:
    """Minimal stand-in for EmbeddedGraph in the split hot path (a
    quadrangulation's face count is V - 1 on the projective plane)."""

    __slots__ = ("srs",)

    def __init__(self, srs):
        self.srs = srs

    @property
    def face_count(self):
        return self.srs.vertex_count - 1


# -- corpus ------------------------------------------------------------------


def default_seed():
    from . import fixtures
    return fixtures.fix_k4()


def enumerate_o1ppg(n_max, even_only=False, seeds=None):
    """Instances over every polyhedral corpus quadrangulation with n >= 9
    (and n even when ``even_only``), ordered by (n, canonical key)."""
    from .errors import NotSimpleResult
    from .model import build_o1ppg, validate_quadrangulation
    from .surface import EmbeddedGraph

    if seeds is None:
        seeds = [default_seed()]
    corpus = grow_quadrangulations(seeds, n_max)
    out = []
    for n in sorted(corpus):
        if n < 9 or (even_only and n % 2):
            continue
        for key, srs in corpus[n]:
            g = EmbeddedGraph(srs)
            try:
                q = validate_quadrangulation(g)
            except Exception:
                continue
            try:
                inst = build_o1ppg(q, key=f"q{n}-{short_key(srs)}")
            except NotSimpleResult:
                continue
            out.append(inst)
    return out


def write_corpus(out_dir, n_max, seeds=None):
    """Write the full grown corpus and its manifest.

    Layout: ``q<n>/<key>.srs`` plus ``manifest.tsv`` with columns
    n, key, polyhedral, bipartite, connectivity (of the derived instance;
    "-" when not applicable).  Deterministic byte-for-byte.
    """
    import pathlib

    from . import srsio
    from .errors import NotSimpleResult
    from .graphs import vertex_connectivity_flow
    from .model import build_o1ppg, validate_quadrangulation
    from .surface import EmbeddedGraph

    if seeds is None:
        seeds = [default_seed()]
    out_dir = pathlib.Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    corpus = grow_quadrangulations(seeds, n_max)
    rows = []
    for n in sorted(corpus):
        sub = out_dir / f"q{n}"
        sub.mkdir(exist_ok=True)
        for key, srs in corpus[n]:
            skey = short_key(srs)
            srsio.dump(srs, sub / f"{skey}.srs")
            g = EmbeddedGraph(srs)
            bip = "1" if _srs_bipartite(srs) else "0"
            poly = "0"
            conn = "-"
            try:
                q = validate_quadrangulation(g)
                poly = "1"
            except Exception:
                q = None
            if q is not None and n >= 9:
                try:
                    inst = build_o1ppg(q)
                    conn = str(vertex_connectivity_flow(
                        inst.n, inst.adj, 8))
                except NotSimpleResult:
                    conn = "-"
            rows.append((n, skey, poly, bip, conn))
    rows.sort()
    with open(out_dir / "manifest.tsv", "w", newline="\n") as fh:
        fh.write("n\tkey\tpolyhedral\tbipartite\tconnectivity\n")
        for row in rows:
            fh.write("\t".join(map(str, row)) + "\n")
    return rows


def _srs_bipartite(srs):
    from .graphs import adjacency_masks, is_bipartite
    return is_bipartite(srs.vertex_count,
                        adjacency_masks(srs.vertex_count,
                                        [(u, v) for (u, v, _s) in srs.edges]))


def load_corpus_instances(corpus_dir, max_n=None):
    """Instances from a written corpus: polyhedral members with n >= 9."""
    import pathlib

    from . import srsio
    from .errors import NotSimpleResult
    from .model import build_o1ppg, validate_quadrangulation
    from .surface import EmbeddedGraph

    corpus_dir = pathlib.Path(corpus_dir)
    manifest = corpus_dir / "manifest.tsv"
    out = []
    with open(manifest) as fh:
        header = fh.readline()
        for line in fh:
            n_s, key, poly, _bip, _conn = line.rstrip("\n").split("\t")
            n = int(n_s)
            if poly != "1" or n < 9 or (max_n is not None and n > max_n):
                continue
            srs = srsio.load(corpus_dir / f"q{n}" / f"{key}.srs")
            q = validate_quadrangulation(EmbeddedGraph(srs))
            try:
                inst = build_o1ppg(q, key=f"q{n}-{key}")
            except NotSimpleResult:
                continue
            out.append(inst)
    out.sort(key=lambda i: (i.n, i.key))
    return out
