"""Builders for the concrete physical layouts: full all-pairs, reduced,
two-register addition, and the multi-controlled-phase ladder.

The all-pairs layout places parity qubit (i,j) at grid cell (i, j) and data
qubit (i) at (i, i), so logical line i runs as an L-shaped path: along row
y=i for the crossings with lower lines, through the data corner, then up
column x=i. Lines i and j meet exactly at (i,j).
"""

from __future__ import annotations

from .code import Constraint, ParityLayout, QubitLabel, label


def _pair(i: int, j: int) -> QubitLabel:
    return label(i, j)


def _data(i: int) -> QubitLabel:
    return QubitLabel((i,))


def _lhz_line(i: int, n: int) -> tuple[QubitLabel, ...]:
    row = [_pair(k, i) for k in range(i)]
    col = [_pair(i, j) for j in range(i + 1, n)]
    return tuple(row + [_data(i)] + col)


def lhz_layout(n: int) -> ParityLayout:
    """All-pairs layout: n data qubits plus one parity qubit per pair.

    Constraints are the unit squares of the parity grid, the triangles along
    its inner boundary, and one data triangle (i), (i+1), (i,i+1) per
    consecutive pair.
    """
    if n < 2:
        raise ValueError("need at least 2 logical qubits")
    qubits: list[QubitLabel] = []
    positions: dict[QubitLabel, tuple[int, int]] = {}
    for i in range(n):
        d = _data(i)
        qubits.append(d)
        positions[d] = (i, i)
        for j in range(i + 1, n):
            p = _pair(i, j)
            qubits.append(p)
            positions[p] = (i, j)

    constraints: list[Constraint] = []
    for i in range(n - 1):
        constraints.append(Constraint((_data(i), _data(i + 1), _pair(i, i + 1))))
    for i in range(n - 2):
        constraints.append(Constraint((_pair(i, i + 1), _pair(i, i + 2), _pair(i + 1, i + 2))))
    for j in range(2, n - 1):
        for i in range(j - 1):
            constraints.append(Constraint(
                (_pair(i, j), _pair(i + 1, j), _pair(i, j + 1), _pair(i + 1, j + 1))))

    lines = {i: _lhz_line(i, n) for i in range(n)}
    return ParityLayout(n, tuple(qubits), positions, tuple(constraints), lines)


def _order_line(members: set[QubitLabel], positions) -> tuple[QubitLabel, ...]:
    """Order a qubit set into a grid path, or raise if none exists."""
    if len(members) <= 1:
        return tuple(members)
    adj = {
        q: [r for r in members
            if abs(positions[q][0] - positions[r][0]) + abs(positions[q][1] - positions[r][1]) == 1]
        for q in members
    }
    ends = [q for q in members if len(adj[q]) <= 1] or list(members)
    for start in sorted(ends, key=lambda q: positions[q]):
        path, used = [start], {start}
        while len(path) < len(members):
            nxt = [r for r in adj[path[-1]] if r not in used]
            if not nxt:
                break
            step = sorted(nxt, key=lambda q: positions[q])[0]
            path.append(step)
            used.add(step)
        if len(path) == len(members):
            return tuple(path)
    raise ValueError(f"qubits {sorted(str(q) for q in members)} do not form a grid path")


def reduced_layout(n: int, required_labels, constraints=(),
                   positions=None) -> ParityLayout:
    """Layout with data qubits plus only the requested parity qubits.

    Without explicit positions the qubits are placed on the all-pairs grid,
    which requires every label to be a data or pair label and every logical
    line to stay grid contiguous. Explicit positions lift both restrictions.
    """
    labels = set(required_labels)
    qubits = [_data(i) for i in range(n)]
    qubits += sorted(q for q in labels if not q.is_data)
    if positions is None:
        positions = {}
        for q in qubits:
            if len(q.indices) > 2:
                raise ValueError(f"label {q} needs explicit positions")
            i, j = q.indices[0], q.indices[-1]
            positions[q] = (i, j)
    lines = {}
    for i in range(n):
        members = {q for q in qubits if q.contains(i)}
        lines[i] = _order_line(members, positions)
    layout = ParityLayout(n, tuple(qubits), dict(positions), tuple(constraints), lines)
    return layout


def addition_layout(n: int, r2_internal: bool = False) -> ParityLayout:
    """Two n-qubit registers wired for in-place modular addition.

    Register A is the full all-pairs block. The inter-register block holds
    one parity qubit per pair (a_w, b_s) with s <= w, continuing each A line
    downward as a straight column segment; B lines run as rows through it.
    With `r2_internal` a third all-pairs block for B is attached so B keeps
    its own pairwise parities.
    """
    if n < 1:
        raise ValueError("need at least 1 qubit per register")
    a = list(range(n))            # logical 0..n-1
    b = [n + s for s in range(n)]  # logical n..2n-1
    qubits: list[QubitLabel] = []
    positions: dict[QubitLabel, tuple[int, int]] = {}

    def put(q, pos):
        qubits.append(q)
        positions[q] = pos

    for i in range(n):
        put(_data(a[i]), (i, i))
        for j in range(i + 1, n):
            put(_pair(a[i], a[j]), (i, j))
    for s in range(n):
        for w in range(s, n):
            put(_pair(a[w], b[s]), (w, n + s))
    if not r2_internal:
        for s in range(n):
            put(_data(b[s]), (n, n + s))
    else:
        for s in range(n):
            put(_data(b[s]), (n + s, n + s))
            for t in range(s + 1, n):
                put(_pair(b[s], b[t]), (n + s, n + t))

    constraints: list[Constraint] = []
    for i in range(n - 1):
        constraints.append(Constraint((_data(a[i]), _data(a[i + 1]), _pair(a[i], a[i + 1]))))
    for i in range(n - 2):
        constraints.append(Constraint(
            (_pair(a[i], a[i + 1]), _pair(a[i], a[i + 2]), _pair(a[i + 1], a[i + 2]))))
    for j in range(2, n - 1):
        for i in range(j - 1):
            constraints.append(Constraint(
                (_pair(a[i], a[j]), _pair(a[i + 1], a[j]),
                 _pair(a[i], a[j + 1]), _pair(a[i + 1], a[j + 1]))))
    # inter-block squares
    for s in range(n):
        for w in range(s + 1, n - 1):
            if s + 1 <= w:
                members = (_pair(a[w], b[s]), _pair(a[w + 1], b[s]),
                           _pair(a[w], b[s + 1]), _pair(a[w + 1], b[s + 1]))
                if all(m in positions for m in members):
                    constraints.append(Constraint(members))
    # junction between the A block top row and the first inter row
    if n >= 2:
        for w in range(n - 2):
            constraints.append(Constraint(
                (_pair(a[w], a[n - 1]), _pair(a[w + 1], a[n - 1]),
                 _pair(a[w], b[0]), _pair(a[w + 1], b[0]))))
        constraints.append(Constraint(
            (_pair(a[n - 2], a[n - 1]), _pair(a[n - 2], b[0]), _pair(a[n - 1], b[0]))))
    if not r2_internal:
        for s in range(n - 1):
            constraints.append(Constraint(
                (_data(b[s]), _data(b[s + 1]),
                 _pair(a[n - 1], b[s]), _pair(a[n - 1], b[s + 1]))))
    else:
        for s in range(n - 1):
            constraints.append(Constraint((_data(b[s]), _data(b[s + 1]), _pair(b[s], b[s + 1]))))
        for s in range(n - 2):
            constraints.append(Constraint(
                (_pair(b[s], b[s + 1]), _pair(b[s], b[s + 2]), _pair(b[s + 1], b[s + 2]))))
        for t in range(2, n - 1):
            for s in range(t - 1):
                constraints.append(Constraint(
                    (_pair(b[s], b[t]), _pair(b[s + 1], b[t]),
                     _pair(b[s], b[t + 1]), _pair(b[s + 1], b[t + 1]))))

    lines: dict[int, tuple[QubitLabel, ...]] = {}
    for w in range(n):
        row = [_pair(a[k], a[w]) for k in range(w)]
        col = [_pair(a[w], a[j]) for j in range(w + 1, n)]
        inter = [_pair(a[w], b[s]) for s in range(w + 1)]
        lines[a[w]] = tuple(row + [_data(a[w])] + col + inter)
    for s in range(n):
        inter = [_pair(a[w], b[s]) for w in range(s, n)]
        if not r2_internal:
            lines[b[s]] = tuple(inter + [_data(b[s])])
        else:
            row = [_pair(b[u], b[s]) for u in range(s)]
            col = [_pair(b[s], b[t]) for t in range(s + 1, n)]
            lines[b[s]] = tuple(inter + row + [_data(b[s])] + col)

    return ParityLayout(2 * n, tuple(qubits), positions, tuple(constraints), lines)


def grover_layout(m: int) -> ParityLayout:
    """Reduced layout for the m-controlled phase gate with a Toffoli ladder.

    Logical qubits are interleaved as q1, q2, A1, q3, A2, ..., q_m, A_{m-1},
    q_{m+1} so every needed parity lies within distance two on the all-pairs
    grid; the layout is the grid restricted to those labels. Each physical
    controlled-phase partner pair sits across an occupied plaquette diagonal.
    """
    if m < 2:
        raise ValueError("need at least 2 control qubits")
    pairs = grover_parity_pairs(m)
    n_logical = 2 * m
    labels = {label(u, v) for u, v in pairs}
    layout = reduced_layout(n_logical, labels, constraints=grover_constraints(m))
    return layout


def grover_logical_indices(m: int) -> tuple[list[int], list[int]]:
    """(controls + target, ancillas) in the interleaved global numbering."""
    problem = [0, 1] + [2 * k + 1 for k in range(1, m)]   # q1..q_{m+1}
    ancillas = [2 * k for k in range(1, m)]               # A1..A_{m-1}
    return problem, ancillas


def grover_parity_pairs(m: int) -> list[tuple[int, int]]:
    problem, anc = grover_logical_indices(m)
    pairs = [(problem[0], problem[1]),        # (q1, q2)
             (problem[0], anc[0]),            # (q1, A1)
             (problem[1], anc[0])]            # (q2, A1)
    for k in range(2, m):
        qk1, ak_prev, ak = problem[k], anc[k - 2], anc[k - 1]
        pairs += [tuple(sorted((qk1, ak_prev))),
                  tuple(sorted((qk1, ak))),
                  tuple(sorted((ak_prev, ak)))]
    pairs.append(tuple(sorted((problem[m], anc[m - 2]))))  # central phase pair
    return pairs


def grover_constraints(m: int) -> tuple[Constraint, ...]:
    pairs = set(grover_parity_pairs(m))
    out = []
    for u, v in sorted(pairs):
        if v == u + 1:
            out.append(Constraint((_data(u), _data(v), label(u, v))))
        elif v == u + 2 and (u, u + 1) in pairs and (u + 1, v) in pairs:
            out.append(Constraint((label(u, u + 1), label(u, v), label(u + 1, v))))
    return tuple(out)


def grover_ancilla_stats(m: int) -> tuple[int, list[int]]:
    """(physical qubits introduced beyond the problem data, ancilla line lengths)."""
    layout = grover_layout(m)
    _, ancillas = grover_logical_indices(m)
    extra = len(layout.qubits) - (m + 1)
    lengths = [len(layout.line(a)) for a in ancillas]
    return extra, lengths


def ascii_grid(layout: ParityLayout) -> str:
    """Plain-text rendering of the layout grid."""
    cells = {pos: str(q) for q, pos in layout.positions.items()}
    xs = [p[0] for p in cells]
    ys = [p[1] for p in cells]
    width = max(len(s) for s in cells.values()) + 1
    rows = []
    for y in range(max(ys), min(ys) - 1, -1):
        row = []
        for xcol in range(min(xs), max(xs) + 1):
            row.append(cells.get((xcol, y), ".").ljust(width))
        rows.append("".join(row).rstrip())
    return "\n".join(rows)
