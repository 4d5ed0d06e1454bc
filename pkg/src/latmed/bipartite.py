"""Bipartite maximum matching via augmenting paths (Kuhn's algorithm).

Deterministic: left vertices are processed in index order and adjacency
lists are scanned in the order given, so equal inputs always produce the
same matching. Sizes here are desk scale; no Hopcroft-Karp needed.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence


def max_matching(n_left: int, n_right: int, adj: Sequence[Sequence[int]]):
    """Maximum matching of the bipartite graph given as left adjacency lists.

    Returns (match_l, match_r): match_l[u] is the right partner of u or -1,
    match_r[v] the left partner of v or -1.
    """
    match_l = [-1] * n_left
    match_r = [-1] * n_right

    def try_augment(u, seen):
        for v in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if match_r[v] == -1 or try_augment(match_r[v], seen):
                match_l[u] = v
                match_r[v] = u
                return True
        return False

    for u in range(n_left):
        try_augment(u, set())
    return match_l, match_r


def alternating_reachable(n_left, adj, match_l, match_r):
    """Left/right vertex sets reachable from unmatched left vertices.

    Alternating search: forward along any edge, backward only along matched
    edges. With a maximum matching, the reachable left set S satisfies
    |N(S)| = |S| - (number of unmatched left vertices), i.e. S is a Hall
    violator whenever some left vertex is unmatched.
    """
    left = [u for u in range(n_left) if match_l[u] == -1]
    seen_l = set(left)
    seen_r = set()
    queue = deque(left)
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v in seen_r:
                continue
            seen_r.add(v)
            w = match_r[v]
            if w != -1 and w not in seen_l:
                seen_l.add(w)
                queue.append(w)
    return seen_l, seen_r
