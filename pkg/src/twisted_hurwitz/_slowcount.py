"""Pure-Python tuple-search kernel.

Drop-in fallback for the compiled extension `_fastcount`; both expose
``count_for_sigma`` with identical semantics (see `_kernel`).  The search for
one fixed sigma walks the tree of transposition choices depth-first, keeping

* the partial sandwich product  eta_s * ... * eta_1 * sigma * (t eta_1 t) * ... * (t eta_s t)
  (first transposition innermost), and
* a union-find partition of the points under the generators chosen so far
  (only when counting connected tuples).

At a leaf the finished product is looked up in a precomputed map from
``alpha * sigma * alpha^{-1}`` to the list of alphas realizing it.
"""

BACKEND = "python"


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _union(parent, a, b):
    ra, rb = _find(parent, a), _find(parent, b)
    if ra != rb:
        parent[ra] = rb


def count_for_sigma(sigma, etas, eta_taus, alphas, lookup, depth, connected):
    """Number of (eta_1..eta_depth, alpha) completions for this sigma.

    sigma, etas[e], eta_taus[e], alphas[a]: permutations as int sequences.
    lookup: dict  bytes(product) -> list of indices into alphas.
    depth: number of transposition slots (g - 1; may be 0).
    connected: require the tuple's group to act transitively.
    """
    n = len(sigma)
    n_eta = len(etas)

    base = list(range(n))
    if connected:
        for i in range(n):
            _union(base, i, sigma[i])

    # each sandwich merges the two supports {i,j} and {tau i, tau j}
    pairs = []
    for eta, etat in zip(etas, eta_taus):
        moved = [i for i in range(n) if eta[i] != i]
        movedt = [i for i in range(n) if etat[i] != i]
        pairs.append((moved[0], moved[1], movedt[0], movedt[1]))

    count = 0
    stack = [(list(sigma), base, 0)]
    while stack:
        cur, parent, level = stack.pop()
        if level == depth:
            cand = lookup.get(bytes(cur))
            if not cand:
                continue
            if not connected:
                count += len(cand)
                continue
            root = _find(parent, 0)
            if all(_find(parent, i) == root for i in range(n)):
                count += len(cand)
                continue
            for ai in cand:
                alpha = alphas[ai]
                trial = parent.copy()
                for i in range(n):
                    _union(trial, i, alpha[i])
                r = _find(trial, 0)
                if all(_find(trial, i) == r for i in range(n)):
                    count += 1
            continue
        for e in range(n_eta - 1, -1, -1):
            eta = etas[e]
            etat = eta_taus[e]
            nxt = [eta[cur[etat[i]]] for i in range(n)]
            if connected:
                p2 = parent.copy()
                i, j, ti, tj = pairs[e]
                _union(p2, i, j)
                _union(p2, ti, tj)
            else:
                p2 = parent
            stack.append((nxt, p2, level + 1))
    return count
