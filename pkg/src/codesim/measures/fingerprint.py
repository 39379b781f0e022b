"""Hash and fingerprint based similarity measures.

Rabin-Karp rolling hashes, winnowing fingerprint selection, greedy
string tiling accelerated with Karp-Rabin hashing, and a glyph-free
perceptual hash over a layout bitmap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from codesim.core import MeasureId, SimilarityScore, SourceUnit
from codesim.lexsrc import NormScheme, TokenStream, normalize_tokens, strip_comments, tokenize
from codesim.measures.lexical import jaccard

HASH_BASE = 257
HASH_MOD = (1 << 61) - 1

DEFAULT_ROLLING_K = 5
DEFAULT_WINNOW_K = 5
DEFAULT_WINNOW_W = 4
DEFAULT_GST_MML = 3

BITMAP_SIZE = 32
_TAB_WIDTH = 4


@dataclass(frozen=True)
class Fingerprint:
    hash: int
    position: int


@dataclass(frozen=True)
class Tile:
    pos_a: int
    pos_b: int
    length: int


def _seq_hash(items: Sequence[str]) -> int:
    h = 0
    for item in items:
        for byte in item.encode("utf-8"):
            h = (h * HASH_BASE + byte + 1) % HASH_MOD
        h = (h * HASH_BASE) % HASH_MOD  # item separator
    return h


def rolling_hashes(ts: TokenStream, k: int = DEFAULT_ROLLING_K) -> set[int]:
    """Hashes of every length-k window of normalized token lexemes.

    Streams shorter than k contribute a single hash of the whole stream.
    The rolling update is over whole lexemes (base-257 polynomial, modulus
    2^61-1 on per-lexeme sub-hashes).
    """
    if k < 1:
        raise ValueError("window size must be >= 1")
    lexemes = normalize_tokens(ts, NormScheme.ABSTRACT_IDS_AND_LITERALS).lexemes()
    if len(lexemes) < k:
        return {_seq_hash(lexemes)}
    item_hashes = [_seq_hash([lx]) for lx in lexemes]
    # Combine per-lexeme hashes positionally: H = sum h_i * B^(k-1-i) mod M.
    base_pow = pow(HASH_BASE, k - 1, HASH_MOD)
    h = 0
    for v in item_hashes[:k]:
        h = (h * HASH_BASE + v) % HASH_MOD
    out = {h}
    for i in range(k, len(item_hashes)):
        h = ((h - item_hashes[i - k] * base_pow) * HASH_BASE + item_hashes[i]) % HASH_MOD
        out.add(h)
    return out


def window_hashes(item_hashes: Sequence[int], k: int) -> list[int]:
    """Direct (non-rolling) positional hash of every length-k window."""
    out = []
    for i in range(len(item_hashes) - k + 1):
        h = 0
        for v in item_hashes[i : i + k]:
            h = (h * HASH_BASE + v) % HASH_MOD
        out.append(h)
    return out


def sim_rollinghash(a: SourceUnit, b: SourceUnit, k: int = DEFAULT_ROLLING_K) -> SimilarityScore:
    ha = rolling_hashes(tokenize(a.text), k)
    hb = rolling_hashes(tokenize(b.text), k)
    return SimilarityScore(jaccard(ha, hb), MeasureId.ROLLINGHASH)


def _winnow_text(text: str) -> str:
    return re.sub(r"\s+", "", strip_comments(text)).lower()


def winnow_fingerprints(
    text: str, k: int = DEFAULT_WINNOW_K, w: int = DEFAULT_WINNOW_W
) -> set[Fingerprint]:
    """Winnowing selection: the minimum hash in each window of w k-gram
    hashes, rightmost minimum on ties."""
    if k < 1 or w < 1:
        raise ValueError("k and w must be >= 1")
    cleaned = _winnow_text(text)
    if len(cleaned) < k:
        return {Fingerprint(_seq_hash([cleaned]), 0)}
    grams = [cleaned[i : i + k] for i in range(len(cleaned) - k + 1)]
    hashes = [_seq_hash([g]) for g in grams]
    if len(hashes) <= w:
        pos = max(range(len(hashes)), key=lambda i: (hashes[i] == min(hashes), i))
        return {Fingerprint(hashes[pos], pos)}
    selected: set[Fingerprint] = set()
    for start in range(len(hashes) - w + 1):
        window = hashes[start : start + w]
        m = min(window)
        # Rightmost occurrence of the minimum.
        pos = start + max(i for i, h in enumerate(window) if h == m)
        selected.add(Fingerprint(hashes[pos], pos))
    return selected


def sim_winnow(
    a: SourceUnit, b: SourceUnit, k: int = DEFAULT_WINNOW_K, w: int = DEFAULT_WINNOW_W
) -> SimilarityScore:
    fa = {f.hash for f in winnow_fingerprints(a.text, k, w)}
    fb = {f.hash for f in winnow_fingerprints(b.text, k, w)}
    return SimilarityScore(jaccard(fa, fb), MeasureId.WINNOW)


def gst_tiles(
    a_tokens: Sequence[str], b_tokens: Sequence[str], mml: int = DEFAULT_GST_MML
) -> set[Tile]:
    """Greedy string tiling: repeatedly mark the longest unmarked common
    substrings of length >= mml.

    Candidate substrings are located via Karp-Rabin hashing of length-mml
    seeds; ties break on the smallest (pos_a, pos_b).
    """
    if mml < 1:
        raise ValueError("minimum match length must be >= 1")
    a = list(a_tokens)
    b = list(b_tokens)
    marked_a = [False] * len(a)
    marked_b = [False] * len(b)
    tiles: set[Tile] = set()
    if len(a) < mml or len(b) < mml:
        return tiles

    a_hashes = [_seq_hash([x]) for x in a]
    b_hashes = [_seq_hash([x]) for x in b]

    while True:
        # Seed index over unmarked positions in B.
        b_seed: dict[int, list[int]] = {}
        b_windows = window_hashes(b_hashes, mml)
        for j, h in enumerate(b_windows):
            if not any(marked_b[j : j + mml]):
                b_seed.setdefault(h, []).append(j)

        best_len = mml - 1
        best: list[tuple[int, int]] = []
        a_windows = window_hashes(a_hashes, mml)
        for i, h in enumerate(a_windows):
            if any(marked_a[i : i + mml]) or h not in b_seed:
                continue
            for j in b_seed[h]:
                if a[i : i + mml] != b[j : j + mml]:
                    continue  # hash collision
                length = mml
                while (
                    i + length < len(a)
                    and j + length < len(b)
                    and not marked_a[i + length]
                    and not marked_b[j + length]
                    and a[i + length] == b[j + length]
                ):
                    length += 1
                if length > best_len:
                    best_len = length
                    best = [(i, j)]
                elif length == best_len:
                    best.append((i, j))
        if not best:
            break
        best.sort()
        placed = False
        for i, j in best:
            if any(marked_a[i : i + best_len]) or any(marked_b[j : j + best_len]):
                continue  # overlaps a tile placed this round
            tiles.add(Tile(i, j, best_len))
            for t in range(best_len):
                marked_a[i + t] = True
                marked_b[j + t] = True
            placed = True
        if not placed:
            break
    return tiles


def gst_coverage(a_tokens: Sequence[str], b_tokens: Sequence[str], mml: int = DEFAULT_GST_MML) -> int:
    return sum(t.length for t in gst_tiles(a_tokens, b_tokens, mml))


def sim_rkrgst(a: SourceUnit, b: SourceUnit, mml: int = DEFAULT_GST_MML) -> SimilarityScore:
    """2*coverage / (|A|+|B|) over abstract-identifier token streams.

    Streams are canonically ordered (shorter first, lexicographic joined
    form on ties) before tiling so the score is symmetric by construction.
    """
    ta = normalize_tokens(tokenize(a.text), NormScheme.ABSTRACT_IDS).lexemes()
    tb = normalize_tokens(tokenize(b.text), NormScheme.ABSTRACT_IDS).lexemes()
    if not ta and not tb:
        return SimilarityScore(1.0, MeasureId.RKRGST)
    if (len(ta), "\x00".join(ta)) > (len(tb), "\x00".join(tb)):
        ta, tb = tb, ta
    coverage = gst_coverage(ta, tb, mml)
    return SimilarityScore(2.0 * coverage / (len(ta) + len(tb)), MeasureId.RKRGST)


_INTENSITY_PUNCT = 64
_INTENSITY_OPERATOR = 128
_INTENSITY_DIGIT = 192
_INTENSITY_LETTER = 255
_PUNCT_CHARS = set("(){}[];,.")


def _char_intensity(c: str) -> int:
    if c.isspace():
        return 0
    if c.isdigit():
        return _INTENSITY_DIGIT
    if c.isalpha() or c in "_$":
        return _INTENSITY_LETTER
    if c in _PUNCT_CHARS:
        return _INTENSITY_PUNCT
    return _INTENSITY_OPERATOR


def render_bitmap(text: str) -> np.ndarray:
    """Glyph-free 32x32 layout bitmap of the source text.

    Characters are laid out on a logical line/column grid (tabs expand to
    4 columns), mapped to class intensities, then box-filter downscaled.
    """
    lines = text.expandtabs(_TAB_WIDTH).split("\n")
    rows = len(lines)
    cols = max((len(ln) for ln in lines), default=0)
    if rows == 0 or cols == 0:
        return np.zeros((BITMAP_SIZE, BITMAP_SIZE), dtype=float)
    grid = np.zeros((rows, cols), dtype=float)
    for r, ln in enumerate(lines):
        for c, ch in enumerate(ln):
            grid[r, c] = _char_intensity(ch)
    # Box-filter downscale: average the grid cells falling in each output cell.
    out = np.zeros((BITMAP_SIZE, BITMAP_SIZE), dtype=float)
    row_edges = np.linspace(0, rows, BITMAP_SIZE + 1)
    col_edges = np.linspace(0, cols, BITMAP_SIZE + 1)
    for r in range(BITMAP_SIZE):
        r0, r1 = int(row_edges[r]), max(int(row_edges[r]) + 1, int(np.ceil(row_edges[r + 1])))
        for c in range(BITMAP_SIZE):
            c0, c1 = int(col_edges[c]), max(int(col_edges[c]) + 1, int(np.ceil(col_edges[c + 1])))
            out[r, c] = grid[r0 : min(r1, rows), c0 : min(c1, cols)].mean()
    return out


def average_hash(bitmap: np.ndarray) -> int:
    """64-bit average hash: each 8x8 block mean compared to the global mean."""
    blocks = bitmap.reshape(8, 4, 8, 4).mean(axis=(1, 3))
    global_mean = bitmap.mean()
    bits = (blocks > global_mean).flatten()
    h = 0
    for bit in bits:
        h = (h << 1) | int(bit)
    return h


def sim_phash(a: SourceUnit, b: SourceUnit) -> SimilarityScore:
    ha = average_hash(render_bitmap(a.text))
    hb = average_hash(render_bitmap(b.text))
    hamming = bin(ha ^ hb).count("1")
    return SimilarityScore(1.0 - hamming / 64.0, MeasureId.PHASH)
