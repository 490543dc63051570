"""Brute-force reference implementations written from the definitions.

Everything here reads only the raw tables as nested lists and uses frozensets,
so it shares no code path with the bitmask and numpy machinery under test.
"""

from __future__ import annotations

from itertools import chain, combinations


def tables(S):
    return S.mul.tolist(), S.star.tolist(), S.zero


def related(S, kind, s, t) -> bool:
    m, st, z = tables(S)
    if kind == "L":
        return m[s][st[t]] == z
    if kind == "R":
        return m[st[s]][t] == z
    if kind == "perp":
        return m[s][st[t]] == z and m[s][t] == z
    if kind == "bot4":
        return all(v == z for v in (m[s][st[t]], m[s][t], m[st[s]][t], m[st[s]][st[t]]))
    if kind == "nabla":
        return all(m[m[s][u]][t] == z for u in range(S.n))
    raise ValueError(kind)


def relation_table(S, kind):
    return [[related(S, kind, s, t) for t in range(S.n)] for s in range(S.n)]


def polar(S, kind, T, table=None):
    table = table or relation_table(S, kind)
    return frozenset(s for s in range(S.n) if all(table[t][s] for t in T))


def all_subsets(n):
    return chain.from_iterable(combinations(range(n), k) for k in range(n + 1))


def closed_family(S, kind) -> set:
    """Every polar T^R, which is exactly the family of closed sets."""
    table = relation_table(S, kind)
    return {polar(S, kind, T, table) for T in all_subsets(S.n)}


def to_set(mask: int) -> frozenset:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def is_proper(S) -> bool:
    m, st, z = tables(S)
    absorbing = all(m[z][x] == z and m[x][z] == z for x in range(S.n))
    return absorbing and all(m[st[s]][s] != z for s in range(S.n) if s != z)


def squarefree(n: int) -> bool:
    return all(n % (p * p) for p in range(2, int(n**0.5) + 1))


def positives(S) -> frozenset:
    m, st, _ = tables(S)
    return frozenset(m[st[s]][s] for s in range(S.n))


def singleton_closure(S, s, table=None):
    table = table or relation_table(S, "perp")
    return polar(S, "perp", polar(S, "perp", {s}, table), table)


def sim_pairs(S) -> set:
    """All (A, B) with some s having {s}^pp = A and {s*}^pp = B."""
    table = relation_table(S, "perp")
    st = S.star.tolist()
    return {(singleton_closure(S, s, table), singleton_closure(S, st[s], table)) for s in range(S.n)}


def orthomodular(family, ortho) -> bool:
    def join(a, b):
        return ortho(ortho(a) & ortho(b))

    return all(join(q, p & ortho(q)) == p for p in family for q in family if q <= p)


def left_rooted_left_ideals(S) -> set:
    m, st, _ = tables(S)
    out = set()
    for T in all_subsets(S.n):
        T = frozenset(T)
        if S.zero not in T:
            continue
        ideal = all(m[s][t] in T for s in range(S.n) for t in T)
        rooted = all(s in T for s in range(S.n) if m[st[s]][s] in T)
        if ideal and rooted:
            out.add(T)
    return out


def nabla_finite(S, A, family, nabla_table) -> bool:
    """No B strictly inside A in P^perp shares A's nabla-polar."""
    An = polar(S, "nabla", A, nabla_table)
    return all(polar(S, "nabla", B, nabla_table) != An for B in family if B < A)


def sim_finite(S, A, family, pairs) -> bool:
    return not any((A, B) in pairs for B in family if B < A)


def decomposition(S, kind):
    """Every candidate A in P^nabla for the given decomposition, by definition."""
    nab = relation_table(S, "nabla")
    perp = relation_table(S, "perp")
    Pp = closed_family(S, "perp")
    N = closed_family(S, "nabla")
    zero = frozenset({S.zero})
    if kind in ("type_I", "type_I1"):
        fin = lambda A: nabla_finite(S, A, Pp, nab)
    else:
        pairs = sim_pairs(S)
        fin = lambda A: sim_finite(S, A, Pp, pairs)
    pool = Pp if kind in ("type_I", "type_III") else N
    finite_members = [B for B in pool if fin(B)]
    out = []
    for A in N:
        if kind in ("type_I", "type_III"):
            ok = any(polar(S, "nabla", polar(S, "nabla", B, nab), nab) == A for B in finite_members)
        else:
            ok = fin(A)
        Ap = polar(S, "perp", A, perp)
        if ok and not any(B != zero and B <= Ap for B in finite_members):
            out.append(A)
    return out
