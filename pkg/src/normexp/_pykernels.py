"""Pure-Python kernels. Same signatures and results as the compiled ``_ckernels``.

Literal indices: atom ``i`` has positive literal ``2*i`` and negative literal
``2*i + 1``, so the complement of ``l`` is ``l ^ 1``.
"""

from collections import deque

import numpy as np

DEFEATER = 2
IMPOSSIBLE = 1 << 63


def defeasible_fixpoint(n_lits, plus_delta, heads, kinds, ant_ptr, ant_idx, beat_ptr, beat_idx):
    """Worklist computation of the +∂ / −∂ tags.

    ``beat_ptr``/``beat_idx`` list, for each rule s, the rules t with t > s.
    Returns two uint8 arrays (plus, minus) of length ``n_lits``.
    """
    plus_delta = [int(x) for x in plus_delta]
    heads = [int(x) for x in heads]
    kinds = [int(x) for x in kinds]
    ant_ptr = [int(x) for x in ant_ptr]
    ant_idx = [int(x) for x in ant_idx]
    beat_ptr = [int(x) for x in beat_ptr]
    beat_idx = [int(x) for x in beat_idx]
    n_rules = len(heads)

    by_head = [[] for _ in range(n_lits)]
    uses = [[] for _ in range(n_lits)]
    for r in range(n_rules):
        by_head[heads[r]].append(r)
        for k in range(ant_ptr[r], ant_ptr[r + 1]):
            uses[ant_idx[k]].append(r)
    missing = [ant_ptr[r + 1] - ant_ptr[r] for r in range(n_rules)]
    discarded = [False] * n_rules
    plus = [0] * n_lits
    minus = [0] * n_lits

    def beaten(s, l):
        for k in range(beat_ptr[s], beat_ptr[s + 1]):
            t = beat_idx[k]
            if heads[t] == l and missing[t] == 0:
                return True
        return False

    def unbeatable(s, l):
        for k in range(beat_ptr[s], beat_ptr[s + 1]):
            t = beat_idx[k]
            if heads[t] == l and not discarded[t]:
                return False
        return True

    def provable(l):
        if plus_delta[l]:
            return True
        if plus_delta[l ^ 1]:
            return False
        if not any(kinds[r] != DEFEATER and missing[r] == 0 for r in by_head[l]):
            return False
        return all(discarded[s] or beaten(s, l) for s in by_head[l ^ 1])

    def refutable(l):
        if plus_delta[l]:
            return False
        if plus_delta[l ^ 1]:
            return True
        if all(discarded[r] for r in by_head[l] if kinds[r] != DEFEATER):
            return True
        return any(missing[s] == 0 and unbeatable(s, l) for s in by_head[l ^ 1])

    queue = deque(range(n_lits))
    queued = [True] * n_lits

    def push(l):
        if not queued[l] and not plus[l] and not minus[l]:
            queued[l] = True
            queue.append(l)

    while queue:
        l = queue.popleft()
        queued[l] = False
        if plus[l] or minus[l]:
            continue
        if provable(l):
            plus[l] = 1
            for r in uses[l]:
                missing[r] -= 1
                if missing[r] == 0:
                    push(heads[r])
                    push(heads[r] ^ 1)
        elif refutable(l):
            minus[l] = 1
            for r in uses[l]:
                if not discarded[r]:
                    discarded[r] = True
                    push(heads[r])
                    push(heads[r] ^ 1)
    return np.array(plus, dtype=np.uint8), np.array(minus, dtype=np.uint8)


def neighborhood_classes(n_bits, cls_bit, sup_ptr, sup_mask, opp_ptr, opp_mask, beat_ptr, beat_mask):
    """For every world mask in 1 .. 2**n_bits - 1, the bitmask of conclusion classes that fire.

    Class ``c`` concludes the literal at bit ``cls_bit[c]``; it fires at world ``x`` when a
    rule of the class has its antecedents inside ``x`` and every opposing rule either has
    an antecedent outside ``x`` or is beaten by a stronger class rule applicable in ``x``.
    Antecedent masks carrying the ``IMPOSSIBLE`` bit never fit inside a world.
    """
    n_worlds = 1 << n_bits
    out = np.zeros(n_worlds, dtype=np.uint64)
    cls_bit = [int(x) for x in cls_bit]
    sup_ptr = [int(x) for x in sup_ptr]
    sup_mask = [int(x) for x in sup_mask]
    opp_ptr = [int(x) for x in opp_ptr]
    opp_mask = [int(x) for x in opp_mask]
    beat_ptr = [int(x) for x in beat_ptr]
    beat_mask = [int(x) for x in beat_mask]
    n_cls = len(cls_bit)
    for x in range(1, n_worlds):
        fired = 0
        for c in range(n_cls):
            ok = False
            for k in range(sup_ptr[c], sup_ptr[c + 1]):
                if sup_mask[k] & ~x == 0:
                    ok = True
                    break
            if not ok:
                continue
            for e in range(opp_ptr[c], opp_ptr[c + 1]):
                if opp_mask[e] & ~x != 0:
                    continue
                beaten = False
                for k in range(beat_ptr[e], beat_ptr[e + 1]):
                    if beat_mask[k] & ~x == 0:
                        beaten = True
                        break
                if not beaten:
                    ok = False
                    break
            if ok:
                fired |= 1 << cls_bit[c]
        out[x] = fired
    return out
