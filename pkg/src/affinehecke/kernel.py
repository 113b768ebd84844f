"""Vectorized evaluation of chains of monomial operators.

A term (z, a, b) with integer entries is packed into one int64 as a sum of
balanced digits, one digit per entry, so that multiplying by a monomial is an
addition of packed keys.  A batch of polynomials is processed at once by
giving every term an extra digit holding the index of its polynomial.
Coefficients are int64.  Before every step the digit ranges and the
coefficient growth are bounded; when a bound could be exceeded
``Unsupported`` is raised and the caller uses the exact dict path instead.
"""
from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

import numpy as np

_COEFF_BOUND = float(1 << 60)
BATCH = 256


class Unsupported(Exception):
    pass


class Layout:
    """Digits in storage order [tag, b, a, z_0, ..., z_{dim-1}], tag lowest."""

    def __init__(self, dim: int, tag_bits: int = 0):
        self.dim = dim
        self.tag_bits = tag_bits
        bits = (63 - tag_bits) // (dim + 2)
        self.widths = [tag_bits] + [bits] * (dim + 2)
        self.limit = (1 << (bits - 1)) - 1
        self.tag_limit = (1 << (tag_bits - 1)) - 1 if tag_bits else 0
        self.zshift = tag_bits + 2 * bits

    def pack(self, z, a: int, b: int, tag: int = 0) -> int:
        if abs(tag) > self.tag_limit:
            raise Unsupported
        k = 0
        for x in tuple(reversed(tuple(z))) + (a, b):
            if type(x) is not int or abs(x) > self.limit:
                raise Unsupported
            k = (k << self.widths[1]) + x
        return (k << self.tag_bits) + tag

    def digits(self, k: int) -> List[int]:
        out = []
        for w in self.widths:
            if w == 0:
                out.append(0)
                continue
            half, mask = 1 << (w - 1), (1 << w) - 1
            f = ((k + half) & mask) - half
            out.append(f)
            k = (k - f) >> w
        return out

    def unpack_z(self, zk: int) -> tuple:
        w = self.widths[1]
        half, mask = 1 << (w - 1), (1 << w) - 1
        out = []
        for _ in range(self.dim):
            f = ((zk + half) & mask) - half
            out.append(f)
            zk = (zk - f) >> w
        return tuple(out)

    def zpart(self, keys: np.ndarray) -> np.ndarray:
        return (keys + (1 << (self.zshift - 1))) >> self.zshift

    def decode(self, keys: np.ndarray) -> List[np.ndarray]:
        k = keys.copy()
        out = []
        for w in self.widths:
            if w == 0:
                out.append(np.zeros_like(k))
                continue
            half, mask = 1 << (w - 1), (1 << w) - 1
            f = ((k + half) & mask) - half
            out.append(f)
            k = (k - f) >> w
        return out


class _Table:
    """Packed monomial images of one operator, looked up by packed z."""

    def __init__(self, op, layout: Layout):
        self.op = op
        self.layout = layout
        self.index: Dict[int, Tuple[int, int]] = {}
        self.known = np.zeros(0, dtype=np.int64)
        self.starts = np.zeros(0, dtype=np.int64)
        self.lens = np.zeros(0, dtype=np.int64)
        self.deltas = np.zeros(0, dtype=np.int64)
        self.coeffs = np.zeros(0, dtype=np.int64)
        self.max_shift = [0] * len(layout.widths)
        self.max_coeff = 0

    def _add(self, missing: np.ndarray) -> None:
        lay = self.layout
        new_d: List[int] = []
        new_c: List[int] = []
        size = int(self.deltas.size)
        zs = [lay.unpack_z(zk) for zk in missing.tolist()]
        images = self.op.images_of(zs)
        for zk, z, img in zip(missing.tolist(), zs, images):
            base = lay.pack(z, 0, 0)
            start = size + len(new_d)
            for z2, da, db, c2 in img:
                if type(c2) is not int:
                    raise Unsupported
                d = lay.pack(z2, da, db) - base
                for i, f in enumerate(lay.digits(d)):
                    if abs(f) > self.max_shift[i]:
                        self.max_shift[i] = abs(f)
                self.max_coeff = max(self.max_coeff, abs(c2))
                new_d.append(d)
                new_c.append(c2)
            self.index[zk] = (start, size + len(new_d) - start)
        if self.max_coeff >= 1 << 62:
            raise Unsupported
        self.deltas = np.concatenate([self.deltas, np.array(new_d, dtype=np.int64)])
        self.coeffs = np.concatenate([self.coeffs, np.array(new_c, dtype=np.int64)])
        items = sorted(self.index.items())
        self.known = np.array([k for k, _ in items], dtype=np.int64)
        self.starts = np.array([v[0] for _, v in items], dtype=np.int64)
        self.lens = np.array([v[1] for _, v in items], dtype=np.int64)

    def lookup(self, uz: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        idx = np.searchsorted(self.known, uz)
        found = idx < self.known.size
        found[found] = self.known[idx[found]] == uz[found]
        if not found.all():
            self._add(uz[~found])
            idx = np.searchsorted(self.known, uz)
        return self.starts[idx], self.lens[idx]


def _table(op, layout: Layout) -> _Table:
    tables = op.__dict__.setdefault("_tables", {})
    key = (layout.dim, layout.tag_bits)
    tab = tables.get(key)
    if tab is None:
        tab = tables[key] = _Table(op, layout)
    return tab


def _step(tab: _Table, lay: Layout, keys: np.ndarray, coeffs: np.ndarray):
    uz, inv = np.unique(lay.zpart(keys), return_inverse=True)
    starts, lens = tab.lookup(uz)
    for f, shift in zip(lay.decode(keys)[1:], tab.max_shift[1:]):
        if int(np.abs(f).max()) + shift > lay.limit:
            raise Unsupported
    if float(np.abs(coeffs).astype(np.float64).sum()) * tab.max_coeff >= _COEFF_BOUND:
        raise Unsupported
    rep = lens[inv]
    total = int(rep.sum())
    if total == 0:
        return keys[:0], coeffs[:0]
    tid = np.repeat(np.arange(keys.size), rep)
    first = np.cumsum(rep) - rep
    src = np.repeat(starts[inv] - first, rep) + np.arange(total)
    nk = keys[tid] + tab.deltas[src]
    nc = coeffs[tid] * tab.coeffs[src]
    order = np.argsort(nk, kind="stable")
    nk, nc = nk[order], nc[order]
    head = np.empty(nk.size, dtype=bool)
    head[0] = True
    np.not_equal(nk[1:], nk[:-1], out=head[1:])
    pos = np.flatnonzero(head)
    keys, coeffs = nk[pos], np.add.reduceat(nc, pos)
    nz = coeffs != 0
    return keys[nz], coeffs[nz]


def _run(ops: Sequence, dim: int, batch: Sequence[Dict]):
    n = len(batch)
    lay = Layout(dim, n.bit_length() + 1)
    keys_l: List[int] = []
    vals: List[int] = []
    for tag, terms in enumerate(batch):
        for (z, a, b), c in terms.items():
            if type(c) is not int or abs(c) >= 1 << 62:
                raise Unsupported
            keys_l.append(lay.pack(z, a, b, tag))
            vals.append(c)
    keys = np.array(keys_l, dtype=np.int64)
    coeffs = np.array(vals, dtype=np.int64)
    if keys.size:
        order = np.argsort(keys, kind="stable")
        keys, coeffs = keys[order], coeffs[order]
    for op in reversed(ops):
        if keys.size == 0:
            break
        keys, coeffs = _step(_table(op, lay), lay, keys, coeffs)
    return lay, keys, coeffs


def _unpack_batch(lay: Layout, n: int, keys: np.ndarray, coeffs: np.ndarray) -> List[Dict]:
    digits = [f.tolist() for f in lay.decode(keys)]
    tags, b_list, a_list, z_lists = digits[0], digits[1], digits[2], digits[3:]
    zs = list(zip(*z_lists)) if lay.dim else [()] * len(tags)
    out: List[Dict] = [{} for _ in range(n)]
    for tag, z, a, b, c in zip(tags, zs, a_list, b_list, coeffs.tolist()):
        out[tag][(z, a, b)] = c
    return out


def apply_chain_batch(ops: Sequence, dim: int, batch: Sequence[Dict]) -> List[Dict]:
    """Apply ops[-1] first, ..., ops[0] last to every term dict {(z, a, b): c} of ``batch``."""
    lay, keys, coeffs = _run(ops, dim, batch)
    return _unpack_batch(lay, len(batch), keys, coeffs)


def apply_chain(ops: Sequence, dim: int, terms: Dict) -> Dict:
    return apply_chain_batch(ops, dim, [terms])[0]


def compare_chains(ops1: Sequence, ops2: Sequence, dim: int, batch: Sequence[Dict]):
    """Indices of the batch where the two chains disagree, with both images there."""
    lay, k1, c1 = _run(ops1, dim, batch)
    _, k2, c2 = _run(ops2, dim, batch)
    if k1.size == k2.size and np.array_equal(k1, k2) and np.array_equal(c1, c2):
        return []
    r1 = _unpack_batch(lay, len(batch), k1, c1)
    r2 = _unpack_batch(lay, len(batch), k2, c2)
    return [(i, a, b) for i, (a, b) in enumerate(zip(r1, r2)) if a != b]
