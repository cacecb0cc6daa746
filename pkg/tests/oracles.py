"""Brute-force reference computations, kept independent of the library code paths."""

from itertools import product as iproduct


def words_up_to(alphabet, max_len):
    for k in range(max_len + 1):
        for w in iproduct(alphabet, repeat=k):
            yield tuple(w)


def one_step_reducts(w, relations):
    """Every word obtained by one rewrite l -> r (l the longer side) anywhere in w."""
    out = set()
    for lhs, rhs in relations:
        for i in range(len(w) - len(lhs) + 1):
            if w[i:i + len(lhs)] == lhs:
                out.add(w[:i] + rhs + w[i + len(lhs):])
    return out


def all_irreducible_reducts(w, relations):
    """Irreducible words reachable from w under any order of rewrites."""
    seen, stack, ends = {w}, [w], set()
    while stack:
        v = stack.pop()
        nxt = one_step_reducts(v, relations)
        if not nxt:
            ends.add(v)
        for u in nxt - seen:
            seen.add(u)
            stack.append(u)
    return ends


class _UF:
    def __init__(self):
        self.parent = {}

    def find(self, a):
        self.parent.setdefault(a, a)
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)


def congruence_closure(alphabet, relations, max_len):
    """Union-find of the words of length <= max_len under u l v ~ u r v."""
    uf = _UF()
    words = list(words_up_to(alphabet, max_len))
    for w in words:
        uf.find(w)
    for lhs, rhs in relations:
        for u in words:
            for v in words:
                a, b = u + lhs + v, u + rhs + v
                if len(a) <= max_len and len(b) <= max_len:
                    uf.union(a, b)
    return uf



def tensor_classes(X, phi, bound, word_len):
    """Classes of pairs (x, n), degree(x) + len(n) <= bound, under
    (x.w, n) ~ (x, phi(w) n) for every word w of length <= word_len."""
    M, N = phi.source, phi.target
    pairs = [(x, n) for x in X.elements(bound) for n in N.elements(bound)
             if X.degree(x) + len(n) <= bound]
    index = set(pairs)
    uf = _UF()
    for p in pairs:
        uf.find(p)
    for x, n in pairs:
        for w in words_up_to(M.generators, word_len):
            image = tuple(s for g in w for s in phi.images[g])
            p1 = (X.act(x, w), n)
            p2 = (x, N.normalize(image + n))
            if p1 in index and p2 in index:
                uf.union(p1, p2)
    groups = {}
    for p in pairs:
        groups.setdefault(uf.find(p), set()).add(p)
    return {frozenset(g) for g in groups.values()}
