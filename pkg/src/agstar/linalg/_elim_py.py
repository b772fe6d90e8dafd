"""Pure-Python exact elimination kernels.

Drop-in fallback for the compiled extension.  Ranks use Markowitz pivot
selection (minimize fill, ties broken by smallest (row, col)) on sparse
row/column indices; rank profiles use strict left-to-right column order so
the reported pivot columns form the lexicographically first column basis.

The rational path is fraction-free: every update is
(pivot * a_ij - a_ip * a_pj) / previous_pivot with an exact division, so
entries stay integers of minor-bounded size.  Python integers make the
fallback overflow-proof.
"""

from __future__ import annotations

HAVE_COMPILED = False


def _row_dicts(rows):
    """Normalize a dense row iterable into sparse per-row dicts."""
    out = []
    for row in rows:
        out.append({c: int(v) for c, v in enumerate(row) if v})
    return out


def _column_index(rows):
    cols: dict[int, set[int]] = {}
    for r, row in enumerate(rows):
        for c in row:
            cols.setdefault(c, set()).add(r)
    return cols


def _markowitz_pivot(rows, cols, active):
    """Entry minimizing (row_nnz - 1)(col_nnz - 1); ties by (row, col)."""
    best = None
    best_cost = None
    for r in sorted(active):
        row = rows[r]
        if not row:
            continue
        rn = len(row) - 1
        for c in sorted(row):
            cost = rn * (len(cols[c]) - 1)
            if best_cost is None or cost < best_cost:
                best_cost, best = cost, (r, c)
            if best_cost == 0:
                return best
    return best


def rank_mod_p(dense_rows, p):
    rows = []
    for row in _row_dicts(dense_rows):
        reduced = {c: v % p for c, v in row.items() if v % p}
        rows.append(reduced)
    cols = _column_index(rows)
    active = {r for r, row in enumerate(rows) if row}
    rank = 0
    while True:
        piv = _markowitz_pivot(rows, cols, active)
        if piv is None:
            return rank
        pr, pc = piv
        rank += 1
        pivot_row = rows[pr]
        inv = pow(pivot_row[pc], p - 2, p)
        active.discard(pr)
        for c in pivot_row:
            cols[c].discard(pr)
        for r in list(cols[pc]):
            if r not in active:
                continue
            row = rows[r]
            factor = row[pc] * inv % p
            for c, v in pivot_row.items():
                new = (row.get(c, 0) - factor * v) % p
                if new:
                    if c not in row:
                        cols[c].add(r)
                    row[c] = new
                elif c in row:
                    del row[c]
                    cols[c].discard(r)


def rank_over_q(dense_rows):
    rows = _row_dicts(dense_rows)
    cols = _column_index(rows)
    active = {r for r, row in enumerate(rows) if row}
    rank = 0
    prev = 1
    while True:
        piv = _markowitz_pivot(rows, cols, active)
        if piv is None:
            return rank
        pr, pc = piv
        rank += 1
        pivot_row = rows[pr]
        pivot = pivot_row[pc]
        active.discard(pr)
        for c in pivot_row:
            cols[c].discard(pr)
        for r in list(active):
            row = rows[r]
            arp = row.get(pc, 0)
            if arp:
                support = set(row) | set(pivot_row)
            else:
                # fraction-free bookkeeping still rescales untouched rows
                support = set(row)
            for c in support:
                new = (pivot * row.get(c, 0) - arp * pivot_row.get(c, 0)) // prev
                if new:
                    if c not in row:
                        cols[c].add(r)
                    row[c] = new
                elif c in row:
                    del row[c]
                    cols[c].discard(r)
        prev = pivot


def rank_profile_mod_p(dense_rows, ncols, p):
    rows = []
    for row in _row_dicts(dense_rows):
        reduced = {c: v % p for c, v in row.items() if v % p}
        rows.append(reduced)
    active = set(range(len(rows)))
    pivots = []
    for pc in range(ncols):
        pr = min((r for r in active if rows[r].get(pc, 0)), default=None)
        if pr is None:
            continue
        pivots.append(pc)
        pivot_row = rows[pr]
        inv = pow(pivot_row[pc], p - 2, p)
        active.discard(pr)
        for r in active:
            row = rows[r]
            factor = row.get(pc, 0) * inv % p
            if not factor:
                continue
            for c, v in pivot_row.items():
                new = (row.get(c, 0) - factor * v) % p
                if new:
                    row[c] = new
                else:
                    row.pop(c, None)
    return len(pivots), tuple(pivots)


def rank_profile_over_q(dense_rows, ncols):
    rows = _row_dicts(dense_rows)
    active = set(range(len(rows)))
    pivots = []
    prev = 1
    for pc in range(ncols):
        pr = min((r for r in active if rows[r].get(pc, 0)), default=None)
        if pr is None:
            continue
        pivots.append(pc)
        pivot_row = rows[pr]
        pivot = pivot_row[pc]
        active.discard(pr)
        for r in active:
            row = rows[r]
            arp = row.get(pc, 0)
            support = set(row) | set(pivot_row) if arp else set(row)
            for c in support:
                new = (pivot * row.get(c, 0) - arp * pivot_row.get(c, 0)) // prev
                if new:
                    row[c] = new
                else:
                    row.pop(c, None)
        prev = pivot
    return len(pivots), tuple(pivots)
