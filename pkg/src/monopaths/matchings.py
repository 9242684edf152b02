"""Connected matchings: exact covers of fair tripartite graphs and robust covers of dense ones.

A connected matching in colour ``c`` is a ``c``-coloured matching whose edges
all lie in one component of the ``c``-coloured subgraph.  Components come from
a union-find per colour; its union events form a spanning forest, and the
tree of the relevant component is kept as a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .bipartite import SplitWitness
from .graph import (
    BLUE,
    RED,
    ColouredGraph,
    Colour,
    DefectError,
    HypothesisError,
    Report,
    iter_bits,
    reduce_to_tripartite,
    is_fair,
)


class UnionFind:
    """Union-find that remembers the edges that merged two sets."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.events: list[tuple[int, int]] = []

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, u: int, v: int) -> bool:
        a, b = self.find(u), self.find(v)
        if a == b:
            return False
        if self.rank[a] < self.rank[b]:
            a, b = b, a
        self.parent[b] = a
        if self.rank[a] == self.rank[b]:
            self.rank[a] += 1
        self.events.append((u, v))
        return True


class ColourForest:
    """Components of one colour class on a vertex subset, with a spanning forest."""

    def __init__(self, g: ColouredGraph, c: Colour, vertices: Optional[int] = None):
        self.colour = c
        alive = (1 << g.n) - 1 if vertices is None else vertices
        self.alive = alive
        uf = UnionFind(g.n)
        for u in iter_bits(alive):
            for v in iter_bits(g.neighbours(u, c) & alive & ~((1 << (u + 1)) - 1)):
                uf.union(u, v)
        self.uf = uf
        self.comp_mask: dict[int, int] = {}
        for v in iter_bits(alive):
            r = uf.find(v)
            self.comp_mask[r] = self.comp_mask.get(r, 0) | 1 << v

    def root(self, v: int) -> int:
        return self.uf.find(v)

    def component(self, v: int) -> int:
        return self.comp_mask[self.uf.find(v)]

    def components(self) -> list[int]:
        return sorted(self.comp_mask.values(), key=lambda m: (-bin(m).count("1"), m & -m))

    def tree(self, comp: int) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((min(u, v), max(u, v)) for u, v in self.uf.events if (comp >> u) & 1))


@dataclass(frozen=True)
class ConnectedMatching:
    colour: Colour
    edges: tuple[tuple[int, int], ...] = ()
    component: int = -1  # lowest vertex of the component, -1 when empty
    tree: tuple[tuple[int, int], ...] = ()

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def to_json(self) -> dict:
        return {
            "colour": self.colour.symbol,
            "edges": [list(e) for e in self.edges],
            "component": self.component,
            "tree": [list(e) for e in self.tree],
        }


def make_matching(g: ColouredGraph, c: Colour, edges: Iterable[tuple[int, int]], forest: Optional[ColourForest] = None) -> ConnectedMatching:
    edges = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
    if not edges:
        return ConnectedMatching(c)
    if forest is None or forest.colour != c:
        forest = ColourForest(g, c)
    comp = forest.component(edges[0][0])
    low = (comp & -comp).bit_length() - 1
    return ConnectedMatching(c, edges, low, forest.tree(comp))


def validate_matching(g: ColouredGraph, m: ConnectedMatching) -> Report:
    seen = set()
    for u, v in m.edges:
        if u in seen or v in seen:
            return Report(False, "matching not vertex-disjoint", {"edge": [u, v]})
        seen.update((u, v))
        if not g.has_edge(u, v, m.colour):
            return Report(False, "matching edge of wrong colour", {"edge": [u, v]})
    if not m.edges:
        return Report(True)
    tree_vertices = set()
    uf = UnionFind(g.n)
    for u, v in m.tree:
        if not g.has_edge(u, v, m.colour):
            return Report(False, "tree edge of wrong colour", {"edge": [u, v]})
        if not uf.union(u, v):
            return Report(False, "tree certificate has a cycle", {"edge": [u, v]})
        tree_vertices.update((u, v))
    if len(seen) > 1 and not seen <= tree_vertices:
        return Report(False, "endpoint outside tree certificate", {"missing": sorted(seen - tree_vertices)})
    roots = {uf.find(v) for v in seen}
    if len(roots) > 1:
        return Report(False, "matching not connected", {})
    return Report(True)


def validate_matching_cover(g: ColouredGraph, red: ConnectedMatching, blue: ConnectedMatching, missing: int = 0) -> Report:
    for m, c in ((red, RED), (blue, BLUE)):
        if m.colour != c:
            return Report(False, "matching colours must be red then blue", {})
        rep = validate_matching(g, m)
        if not rep:
            return rep
    if red.vertices & blue.vertices:
        return Report(False, "matchings share a vertex", {"vertices": sorted(red.vertices & blue.vertices)})
    uncovered = g.n - len(red.vertices) - len(blue.vertices)
    if uncovered > missing:
        return Report(False, "coverage deficit", {"uncovered": uncovered, "allowed": missing})
    return Report(True)


# ---------------------------------------------------------------------------
# fairness on vertex subsets


class ClassCounter:
    def __init__(self, g: ColouredGraph):
        self.masks = [sum(1 << v for v in c) for c in g.classes]
        self.class_of = g.class_of

    def sizes(self, alive: int) -> list[int]:
        return [bin(alive & m).count("1") for m in self.masks]

    def fair(self, alive: int) -> bool:
        s = self.sizes(alive)
        return 2 * max(s, default=0) <= sum(s)


def _perfect_matching_of_fair(counter: ClassCounter, alive: int) -> list[tuple[int, int]]:
    """Perfect matching of the complete multipartite graph on ``alive`` (fair, even size)."""
    groups = sorted(([v for v in iter_bits(alive & m)] for m in counter.masks), key=len, reverse=True)
    order = [v for grp in groups for v in grp]
    half = len(order) // 2
    return [(order[i], order[i + half]) for i in range(half)]


# ---------------------------------------------------------------------------
# exact cover


def cover_matchings_exact(g: ColouredGraph, trace=None) -> tuple[ConnectedMatching, ConnectedMatching]:
    """A red and a blue connected matching covering every vertex of a fair graph with k >= 3, n even."""
    if g.k < 3:
        raise HypothesisError("needs at least three classes")
    if not is_fair(g):
        raise HypothesisError("unfair")
    if g.n % 2:
        raise HypothesisError("odd number of vertices")
    h = reduce_to_tripartite(g)
    counter = ClassCounter(h)
    alive = (1 << h.n) - 1
    removed: list[tuple[int, int]] = []
    while True:
        sizes = counter.sizes(alive)
        order = sorted(range(3), key=lambda i: (-sizes[i], i))
        if sizes[order[1]] <= 1:
            break
        v1 = next(iter_bits(alive & counter.masks[order[0]]))
        v2 = next(iter_bits(alive & counter.masks[order[1]]))
        removed.append((v1, v2))
        alive &= ~(1 << v1 | 1 << v2)
    red, blue = _base_cover(h, alive)
    if trace is not None:
        trace.append({"step": "matching-base", "red": sorted(red), "blue": sorted(blue)})
    for v1, v2 in reversed(removed):
        alive |= 1 << v1 | 1 << v2
        red, blue, how = _repair(h, counter, alive, red, blue, v1, v2)
        if trace is not None:
            trace.append({"step": "matching-repair", "v1": v1, "v2": v2, "how": how})
    fr, fb = ColourForest(g, RED), ColourForest(g, BLUE)
    out = make_matching(g, RED, red, fr), make_matching(g, BLUE, blue, fb)
    rep = validate_matching_cover(g, *out)
    if not rep:
        raise DefectError(f"exact matching cover invalid: {rep.violation}", g, detail=rep.detail)
    return out


def _connected(g: ColouredGraph, c: Colour, edges, alive: int) -> bool:
    if len(edges) <= 1:
        return True
    f = ColourForest(g, c, alive)
    roots = {f.root(u) for e in edges for u in e}
    return len(roots) == 1


def _base_cover(g: ColouredGraph, alive: int):
    verts = list(iter_bits(alive))
    if len(verts) == 0:
        return [], []
    # shape (2,1,1): V_1 = {a1, a2}
    cls = {}
    for v in verts:
        cls.setdefault(g.class_of[v], []).append(v)
    big = max(cls.values(), key=len)
    a1, a2 = big
    b, c = [v for v in verts if v not in big]
    for e1, e2 in (((a1, b), (a2, c)), ((a1, c), (a2, b))):
        c1, c2 = g.colour(*e1), g.colour(*e2)
        if c1 != c2:
            return ([e1], [e2]) if c1 == RED else ([e2], [e1])
    for e1, e2 in (((a1, b), (a2, c)), ((a1, c), (a2, b))):
        col = g.colour(*e1)
        if _connected(g, col, [e1, e2], alive):
            return ([e1, e2], []) if col == RED else ([], [e1, e2])
    raise DefectError("base case of the matching cover failed", g)


def _repair(g: ColouredGraph, counter: ClassCounter, alive: int, red, blue, v1: int, v2: int):
    c = g.colour(v1, v2)
    same = red if c == RED else blue
    if not same:
        out = [(v1, v2)]
        return (out, blue, "new-edge") if c == RED else (red, out, "new-edge")
    forest = ColourForest(g, c, alive)
    if forest.root(v1) == forest.root(same[0][0]):
        grown = same + [(v1, v2)]
        return (grown, blue, "extend") if c == RED else (red, grown, "extend")
    # escalation: a maximal matching in the other colour keeping the rest fair,
    # then the first colour on what is left; try both colour roles
    for first in (c.other, c):
        got = _escalate(g, counter, alive, first)
        if got is not None:
            m_first, m_second = got
            if first == RED:
                return m_first, m_second, f"escalate-{first.symbol}"
            return m_second, m_first, f"escalate-{first.symbol}"
    raise DefectError("repair exhausted", g, v1=v1, v2=v2, alive=alive)


def greedy_fair_matching(g: ColouredGraph, counter: ClassCounter, alive: int, c: Colour, allowed: Optional[int] = None) -> list[tuple[int, int]]:
    """Maximal ``c``-matching inside ``allowed`` whose removal keeps ``alive`` fair.

    Candidate edges are scanned in lexicographic order until nothing changes.
    """
    allowed = alive if allowed is None else allowed & alive
    matched = 0
    edges: list[tuple[int, int]] = []
    rest = alive
    changed = True
    while changed:
        changed = False
        for u in iter_bits(allowed & ~matched):
            if (matched >> u) & 1:
                continue
            for v in iter_bits(g.neighbours(u, c) & allowed & ~matched & ~((1 << (u + 1)) - 1)):
                cand = rest & ~(1 << u | 1 << v)
                if counter.fair(cand):
                    edges.append((u, v))
                    matched |= 1 << u | 1 << v
                    rest = cand
                    changed = True
                    break
    return edges


def _escalate(g: ColouredGraph, counter: ClassCounter, alive: int, first: Colour):
    m_first = greedy_fair_matching(g, counter, alive, first)
    if not _connected(g, first, m_first, alive):
        return None
    left = alive
    for u, v in m_first:
        left &= ~(1 << u | 1 << v)
    second = first.other
    if left == 0:
        return m_first, []
    # every remaining edge has the second colour, or one class holds half of
    # the remainder and its edges to the rest have the second colour
    pm = _perfect_matching_of_fair(counter, left)
    if all(g.has_edge(u, v, second) for u, v in pm) and _connected(g, second, pm, alive):
        return m_first, pm
    return None


# ---------------------------------------------------------------------------
# robust covers


@dataclass(frozen=True)
class RobustParams:
    eps: float

    def __post_init__(self):
        if not 0 < self.eps < 0.2:
            raise HypothesisError("epsilon-range: need 0 < eps < 1/5")


@dataclass
class RobustCover:
    red: ConnectedMatching
    blue: ConnectedMatching
    uncovered: list[int]
    transcript: list = field(default_factory=list)
    obstruction: Optional[SplitWitness] = None

    def to_json(self) -> dict:
        out = {
            "v": 1,
            "red": self.red.to_json(),
            "blue": self.blue.to_json(),
            "uncovered": self.uncovered,
            "transcript": self.transcript,
        }
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction.to_json()
        return out


def cross_degree(g: ColouredGraph, v: int) -> int:
    return bin(g.defined[v]).count("1")


def check_tripartite_hypotheses(g: ColouredGraph, p: RobustParams) -> list[str]:
    """Named checks; returns the transcript, raises on the first failure."""
    n = g.n
    done = []

    def need(name, ok):
        if not ok:
            raise HypothesisError(f"{name} check failed")
        done.append(name)

    need("tripartite", g.k == 3)
    need("fair", is_fair(g))
    need("class-floor", all(len(c) >= 3 * p.eps * n for c in g.classes))
    need("no-intra-class", all(g.defined[v] & ~g.cross[v] == 0 for v in range(n)))
    need("degree", all(cross_degree(g, v) >= (1 - p.eps) * (n - len(g.classes[g.class_of[v]])) - 1e-9 for v in range(n)))
    return done


def check_bipartite_hypotheses(g: ColouredGraph, p: RobustParams) -> list[str]:
    n = g.n
    done = []

    def need(name, ok):
        if not ok:
            raise HypothesisError(f"{name} check failed")
        done.append(name)

    need("bipartite", g.k == 2)
    need("balanced", len(g.classes[0]) == len(g.classes[1]))
    need("no-intra-class", all(g.defined[v] & ~g.cross[v] == 0 for v in range(n)))
    need("degree", all(cross_degree(g, v) >= (1 - p.eps) * n / 2 - 1e-9 for v in range(n)))
    return done


def _grow(g: ColouredGraph, counter: Optional[ClassCounter], alive: int, comps: dict, start=None):
    """Greedy disjoint red and blue matchings inside fixed components, then 3-augmentations.

    ``comps[c]`` is the vertex mask of the chosen ``c`` component.  With a
    ``counter`` every step keeps the uncovered part fair.
    """
    nb = {c: [g.neighbours(v, c) & comps[c] if (comps[c] >> v) & 1 else 0 for v in range(g.n)] for c in (RED, BLUE)}
    mate = {}
    colour_of = {}
    rest = alive
    if start:
        for c, edges in start.items():
            for u, v in edges:
                mate[u], mate[v] = v, u
                colour_of[(min(u, v), max(u, v))] = c
                rest &= ~(1 << u | 1 << v)

    def ok(mask):
        return counter is None or counter.fair(mask)

    for u in iter_bits(alive):
        if u in mate:
            continue
        for c in (RED, BLUE):
            cand = nb[c][u] & rest & ~(1 << u)
            placed = False
            for v in iter_bits(cand):
                m2 = rest & ~(1 << u | 1 << v)
                if ok(m2):
                    mate[u], mate[v] = v, u
                    colour_of[(min(u, v), max(u, v))] = c
                    rest = m2
                    placed = True
                    break
            if placed:
                break
    # augment: free x - a = b - free y becomes x a, b y
    improved = True
    while improved:
        improved = False
        for (a, b), c0 in list(colour_of.items()):
            if rest == 0:
                break
            for a_, b_ in ((a, b), (b, a)):
                for ca in (RED, BLUE):
                    xs = nb[ca][a_] & rest
                    if not xs:
                        continue
                    for cb in (RED, BLUE):
                        ys = nb[cb][b_] & rest
                        if not ys:
                            continue
                        found = None
                        for x in iter_bits(xs):
                            ys2 = ys & ~(1 << x)
                            for y in iter_bits(ys2):
                                m2 = rest & ~(1 << x | 1 << y)
                                if ok(m2):
                                    found = (x, y, m2)
                                    break
                            if found:
                                break
                        if found:
                            x, y, m2 = found
                            del colour_of[(a, b)]
                            colour_of[(min(x, a_), max(x, a_))] = ca
                            colour_of[(min(y, b_), max(y, b_))] = cb
                            mate[x], mate[a_] = a_, x
                            mate[y], mate[b_] = b_, y
                            rest = m2
                            improved = True
                            break
                    if improved:
                        break
                if improved:
                    break
            if improved:
                break
    red = [e for e, c in colour_of.items() if c == RED]
    blue = [e for e, c in colour_of.items() if c == BLUE]
    return red, blue, rest


def _component_choices(forests: dict, alive: int, top: int = 2):
    picks = {}
    for c in (RED, BLUE):
        comps = [m & alive for m in forests[c].components() if bin(m & alive).count("1") >= 2]
        picks[c] = comps[:top] or [0]
    for r in picks[RED]:
        for b in picks[BLUE]:
            yield {RED: r, BLUE: b}


def _best_cover(g, counter, alive, forests, transcript, label, start=None):
    best = None
    for comps in _component_choices(forests, alive):
        red, blue, rest = _grow(g, counter, alive, comps, start)
        uncovered = bin(rest).count("1")
        if best is None or uncovered < best[2]:
            best = (red, blue, uncovered, rest)
    transcript.append({"phase": label, "uncovered": best[2]})
    return best


def _finish(g, red, blue, forests, transcript, bound, where):
    out_r = make_matching(g, RED, red, forests[RED])
    out_b = make_matching(g, BLUE, blue, forests[BLUE])
    covered = out_r.vertices | out_b.vertices
    uncovered = [v for v in range(g.n) if v not in covered]
    rep = validate_matching_cover(g, out_r, out_b, missing=g.n)
    if not rep:
        raise DefectError(f"{where}: invalid matchings: {rep.violation}", g, detail=rep.detail)
    if len(uncovered) > bound:
        raise DefectError(f"{where}: {len(uncovered)} uncovered exceeds {bound:.2f}", g)
    return RobustCover(out_r, out_b, uncovered, transcript)


def cover_matchings_robust_tripartite(g: ColouredGraph, p: RobustParams) -> RobustCover:
    """Red and blue connected matchings covering all but at most ``36 eps n`` vertices."""
    transcript: list = [{"checks": check_tripartite_hypotheses(g, p)}]
    n = g.n
    bound = 36 * p.eps * n
    counter = ClassCounter(g)
    full = (1 << n) - 1
    forests = {c: ColourForest(g, c) for c in (RED, BLUE)}
    red, blue, unc, rest = _best_cover(g, counter, full, forests, transcript, "grow-fair")
    if unc > bound:
        got = _tripartite_endgame(g, p, counter, forests, red, blue, rest, transcript)
        if got is not None and got[2] < unc:
            red, blue, unc = got
    if unc > 0:
        # the cover itself does not need the fairness bookkeeping
        r2, b2, u2, _ = _best_cover(g, None, full, forests, transcript, "grow-free", {RED: red, BLUE: blue})
        if u2 < unc and _connected(g, RED, r2, full) and _connected(g, BLUE, b2, full):
            red, blue, unc = r2, b2, u2
    return _finish(g, red, blue, forests, transcript, bound, "robust tripartite cover")


def _tripartite_endgame(g, p, counter, forests, red, blue, rest, transcript):
    """Choose ``l`` and ``X`` as in the robust argument and redo the cover around them."""
    n = g.n
    eps_n = p.eps * n
    VR = forests[RED].component(red[0][0]) if red else 0
    VB = forests[BLUE].component(blue[0][0]) if blue else 0
    full = (1 << n) - 1
    V_eps = full & ~(VR | VB)
    # half-degree step on the two largest leftover classes, recorded for the transcript
    sizes = counter.sizes(rest)
    order = sorted(range(3), key=lambda i: -sizes[i])
    a, b = counter.masks[order[0]] & rest, counter.masks[order[1]] & rest
    for c in (RED, BLUE):
        rows = {v: g.neighbours(v, c) & (b if (a >> v) & 1 else a) for v in iter_bits(a | b)}
        sub = half_degree_subgraph(rows)
        transcript.append({"phase": "half-degree", "colour": c.symbol, "kept": len(sub)})
    best = None
    for l in range(3):
        for X, VX in ((RED, VR), (BLUE, VB)):
            others = full & ~counter.masks[l] & ~V_eps
            if others & ~VX:
                continue
            if any(bin(V_eps & counter.masks[i]).count("1") > eps_n for i in range(3) if i != l):
                continue
            v_eps_prime = V_eps & ~counter.masks[l]
            mx = greedy_fair_matching(g, counter, full, X, allowed=(full & ~v_eps_prime) & (VX | 0) if VX else full & ~v_eps_prime)
            left = full
            for u, v in mx:
                left &= ~(1 << u | 1 << v)
            Y = X.other
            fy = ColourForest(g, Y, left & ~v_eps_prime)
            my_best = []
            for comp in fy.components()[:2]:
                my = greedy_fair_matching(g, counter, left, Y, allowed=comp)
                if len(my) > len(my_best):
                    my_best = my
            unc = n - 2 * (len(mx) + len(my_best))
            transcript.append({"phase": "endgame", "l": l, "X": X.symbol, "uncovered": unc})
            if best is None or unc < best[2]:
                pair = (mx, my_best) if X == RED else (my_best, mx)
                best = (pair[0], pair[1], unc)
    return best


def cover_matchings_robust_bipartite(g: ColouredGraph, p: RobustParams) -> RobustCover:
    """Red and blue connected matchings covering all but ``4 eps n`` vertices, or the split obstruction."""
    transcript: list = [{"checks": check_bipartite_hypotheses(g, p)}]
    w = detect_split_partial(g)
    # with an empty part the colour classes still admit a total cover
    if w is not None and all((w.A, w.B, w.C, w.D)):
        transcript.append({"phase": "split-colouring"})
        empty = ConnectedMatching(RED), ConnectedMatching(BLUE)
        return RobustCover(empty[0], empty[1], list(range(g.n)), transcript, obstruction=w)
    n = g.n
    bound = 4 * p.eps * n
    full = (1 << n) - 1
    forests = {c: ColourForest(g, c) for c in (RED, BLUE)}
    red, blue, unc, rest = _best_cover(g, None, full, forests, transcript, "grow")
    if unc > bound:
        got = _bipartite_endgame(g, p, forests, red, blue, transcript)
        if got is not None and got[2] < unc:
            red, blue, unc = got
    return _finish(g, red, blue, forests, transcript, bound, "robust bipartite cover")


def _bipartite_endgame(g, p, forests, red, blue, transcript):
    n = g.n
    full = (1 << n) - 1
    VR = forests[RED].component(red[0][0]) if red else 0
    VB = forests[BLUE].component(blue[0][0]) if blue else 0
    masks = [sum(1 << v for v in c) for c in g.classes]
    best = None
    for X, VX in ((RED, VR), (BLUE, VB)):
        for i in range(2):
            miss = masks[i] & ~VX
            if bin(miss).count("1") > 2 * p.eps * n:
                continue
            fx = forests[X]
            comp = VX
            mx = _max_in(g, X, comp & full & ~miss)
            left = full
            for u, v in mx:
                left &= ~(1 << u | 1 << v)
            Y = X.other
            fy = ColourForest(g, Y, left)
            my_best = []
            for cm in fy.components()[:2]:
                my = _max_in(g, Y, cm)
                if len(my) > len(my_best):
                    my_best = my
            unc = n - 2 * (len(mx) + len(my_best))
            transcript.append({"phase": "endgame", "X": X.symbol, "i": i, "uncovered": unc})
            if best is None or unc < best[2]:
                pair = (mx, my_best) if X == RED else (my_best, mx)
                best = (pair[0], pair[1], unc)
    return best


def _max_in(g: ColouredGraph, c: Colour, allowed: int) -> list[tuple[int, int]]:
    red, blue, _ = _grow(g, None, allowed, {c: allowed, c.other: 0})
    return red if c == RED else blue


def detect_split_partial(g: ColouredGraph) -> Optional[SplitWitness]:
    """Split witness for a bipartite graph that may miss edges (parity labelling per component)."""
    U = set(g.classes[0])
    group = {}
    for s in range(g.n):
        if s in group:
            continue
        group[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in iter_bits(g.defined[u]):
                want = group[u] if g.colour(u, v) == BLUE else 1 - group[u]
                if v not in group:
                    group[v] = want
                    stack.append(v)
                elif group[v] != want:
                    return None
    A = [v for v in sorted(U) if group[v] == 0]
    B = [v for v in sorted(U) if group[v] == 1]
    C = [v for v in g.classes[1] if group[v] == 0]
    D = [v for v in g.classes[1] if group[v] == 1]
    return SplitWitness(A, B, C, D)


def half_degree_subgraph(rows: dict[int, int]) -> set[int]:
    """Delete vertices of degree below half the original average degree, repeatedly.

    ``rows`` maps each vertex to the bitmask of its neighbours.  The threshold
    stays fixed at the original average, so fewer edges are deleted than exist
    and the result is non-empty whenever there is an edge.
    """
    verts = set(rows)
    if not verts:
        return set()
    alive = sum(1 << v for v in verts)
    avg = sum(bin(rows[v] & alive).count("1") for v in verts) / len(verts)
    threshold = avg / 2
    changed = True
    while changed:
        changed = False
        for v in sorted(verts):
            if bin(rows[v] & alive).count("1") < threshold:
                verts.discard(v)
                alive &= ~(1 << v)
                changed = True
    return verts


def delete_edges(g: ColouredGraph, edges: Iterable[tuple[int, int]]) -> ColouredGraph:
    defined = list(g.defined)
    for u, v in edges:
        defined[u] &= ~(1 << v)
        defined[v] &= ~(1 << u)
    return ColouredGraph(g.classes, defined, [r & d for r, d in zip(g.red, defined)])
