"""
Symmetry Module - Exact symmetry search for binary matrices.
A symmetry of X is a row permutation sigma and a permaut phi with
X_sigma == X^phi; X is asymmetric when only the trivial pair exists.
"""

import itertools
import logging
import math
import random
from collections import Counter
from multiprocessing import Pool
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from tqdm import tqdm

from Distinguish.bitmatrix import (
    BinaryMatrix,
    Permaut,
    RowPermutation,
    Symmetry,
    apply_permaut,
    apply_row_permutation,
    normalize_low_weight,
)
from Distinguish.errors import BudgetExceeded, CertificateMismatch, OutOfRange, SearchBudgetExceeded
from Distinguish.limits import DEFAULT_LIMITS, Limits

log = logging.getLogger(__name__)

EXHAUSTIVE_CHUNK = 4096


def _quick_symmetry(matrix: BinaryMatrix) -> Optional[Symmetry]:
    m, n = matrix.shape
    pair = matrix.duplicate_row_pair()
    if pair is not None:
        return Symmetry(RowPermutation.swap(m, *pair), Permaut.identity(n))
    pair = matrix.isomorphic_column_pair()
    if pair is not None:
        i, j = pair
        pi = list(range(n))
        pi[i], pi[j] = j, i
        flips = frozenset() if matrix.columns[i] == matrix.columns[j] else frozenset((i, j))
        return Symmetry(RowPermutation.identity(m), Permaut(tuple(pi), flips))
    return None


def necessary_condition_violation(matrix: BinaryMatrix) -> Optional[str]:
    """
    Name the first necessary condition for asymmetry that ``matrix`` fails.

    Returns:
        A short description, or None when every condition holds
    """
    m, n = matrix.shape
    pair = matrix.duplicate_row_pair()
    if pair is not None:
        return f"rows {pair[0] + 1} and {pair[1] + 1} are equal"
    pair = matrix.isomorphic_column_pair()
    if pair is not None:
        return f"columns {pair[0] + 1} and {pair[1] + 1} are isomorphic"
    if m >= 2:
        if m >= 1 << n:
            return f"m = {m} is not below 2^{n}"
        if n >= 1 << (m - 1):
            return f"n = {n} is not below 2^{m - 1}"
    return None


def _relabel(keys: Sequence) -> List[int]:
    order = {key: index for index, key in enumerate(sorted(set(keys)))}
    return [order[key] for key in keys]


def _classes(colors: Sequence[int]) -> Dict[int, List[int]]:
    classes: Dict[int, List[int]] = {}
    for index, color in enumerate(colors):
        classes.setdefault(color, []).append(index)
    return classes


class _SymmetrySearch:
    """
    Backtracking over one side of a low weight matrix with distinct rows and classes.

    Positions are assigned in index order and candidates tried in increasing
    order, so the certificate returned is the lexicographically first one on
    the searched side.
    """

    def __init__(self, matrix: BinaryMatrix, budget: int):
        self.matrix = matrix
        self.m, self.n = matrix.shape
        self.budget = budget
        self.nodes = 0
        n = self.n
        self.row_bits = [[(row >> (n - 1 - j)) & 1 for j in range(n)] for row in matrix.rows]
        self.col_bits = [[bits[j] for bits in self.row_bits] for j in range(n)]
        self.half = [matrix.is_half_weight_column(j) for j in range(n)]
        self.row_color, self.col_color = self._refine()

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(self.budget)

    def _refine(self) -> Tuple[List[int], List[int]]:
        """
        Colour refinement that every symmetry must respect. Half weight
        columns may be complemented, so they see their ones and zeros as an
        unordered pair and do not feed back into row colours.
        """
        m, n = self.m, self.n
        ones = [[i for i in range(m) if self.col_bits[j][i]] for j in range(n)]
        zeros = [[i for i in range(m) if not self.col_bits[j][i]] for j in range(n)]
        full = [j for j in range(n) if not self.half[j]]
        row_color = [0] * m
        col_color = _relabel(self.matrix.column_weights)
        row_count, col_count = 1, len(set(col_color))
        rounds = 0
        while True:
            rounds += 1
            col_keys = []
            for j in range(n):
                seen = tuple(sorted(row_color[i] for i in ones[j]))
                if self.half[j]:
                    unseen = tuple(sorted(row_color[i] for i in zeros[j]))
                    col_keys.append((col_color[j], tuple(sorted((seen, unseen)))))
                else:
                    col_keys.append((col_color[j], (seen,)))
            col_color = _relabel(col_keys)
            row_keys = [
                (row_color[i], tuple(sorted(col_color[j] for j in full if self.row_bits[i][j])))
                for i in range(m)
            ]
            row_color = _relabel(row_keys)
            new_rows, new_cols = len(set(row_color)), len(set(col_color))
            if new_rows == row_count and new_cols == col_count:
                break
            row_count, col_count = new_rows, new_cols
        log.debug("refinement: %d rounds, %d row classes, %d column classes", rounds, row_count, col_count)
        return row_color, col_color

    def run(self) -> Optional[Symmetry]:
        row_classes = _classes(self.row_color)
        col_classes = _classes(self.col_color)
        row_cost = math.prod(math.factorial(len(c)) for c in row_classes.values())
        col_cost = math.prod(math.factorial(len(c)) for c in col_classes.values()) << sum(self.half)
        if row_cost == 1 or col_cost == 1:
            return None
        if row_cost <= col_cost:
            log.debug("searching rows (%d candidates against %d)", row_cost, col_cost)
            return self._search_rows(row_classes)
        log.debug("searching columns (%d candidates against %d)", col_cost, row_cost)
        return self._search_columns(col_classes)

    def _column_key(self, j: int, signature: int, depth: int) -> Tuple[int, int]:
        if self.half[j]:
            signature = min(signature, signature ^ ((1 << depth) - 1))
        return (self.col_color[j], signature)

    def _search_rows(self, classes: Dict[int, List[int]]) -> Optional[Symmetry]:
        m, n = self.m, self.n
        order = list(range(m))

        # column signatures over the source rows, one multiset per depth
        signatures = [0] * n
        expected = [Counter(self._column_key(j, 0, 0) for j in range(n))]
        for depth, i in enumerate(order, start=1):
            bits = self.row_bits[i]
            signatures = [(s << 1) | bits[j] for j, s in enumerate(signatures)]
            expected.append(Counter(self._column_key(j, signatures[j], depth) for j in range(n)))

        used = [False] * m
        chosen: List[int] = []
        partial = [[0] * n]
        frames: List[Iterator[int]] = [iter(classes[self.row_color[order[0]]])]
        while frames:
            target = next((t for t in frames[-1] if not used[t]), None)
            if target is None:
                frames.pop()
                if chosen:
                    used[chosen.pop()] = False
                    partial.pop()
                continue
            self._tick()
            depth = len(chosen) + 1
            bits = self.row_bits[target]
            extended = [(s << 1) | bits[j] for j, s in enumerate(partial[-1])]
            keys = Counter(self._column_key(j, extended[j], depth) for j in range(n))
            if keys != expected[depth]:
                continue
            if depth == m:
                images = [0] * m
                for position, source in enumerate(order):
                    images[source] = (chosen + [target])[position]
                found = self._complete_rows(RowPermutation(tuple(images)))
                if found is not None:
                    return found
                continue
            used[target] = True
            chosen.append(target)
            partial.append(extended)
            frames.append(iter(classes[self.row_color[order[depth]]]))
        return None

    def _complete_rows(self, sigma: RowPermutation) -> Optional[Symmetry]:
        if sigma.is_identity():
            return None
        permuted = apply_row_permutation(self.matrix, sigma)
        position = {column: k for k, column in enumerate(permuted.columns)}
        mask = (1 << self.m) - 1
        pi = [0] * self.n
        flips = set()
        for j, column in enumerate(self.matrix.columns):
            if column in position:
                pi[j] = position[column]
            elif column ^ mask in position:
                pi[j] = position[column ^ mask]
                flips.add(j)
            else:
                return None
        return Symmetry(sigma, Permaut(tuple(pi), frozenset(flips)))

    def _search_columns(self, classes: Dict[int, List[int]]) -> Optional[Symmetry]:
        m, n = self.m, self.n
        order = list(range(n))

        def candidates(j: int) -> Iterator[Tuple[int, int]]:
            flips = (0, 1) if self.half[j] else (0,)
            return iter([(k, f) for k in classes[self.col_color[j]] for f in flips])

        used = [False] * n
        chosen: List[Tuple[int, int]] = []
        sources = [[0] * m]
        targets = [[0] * m]
        frames = [candidates(order[0])]
        while frames:
            pick = next((c for c in frames[-1] if not used[c[0]]), None)
            if pick is None:
                frames.pop()
                if chosen:
                    used[chosen.pop()[0]] = False
                    sources.pop()
                    targets.pop()
                continue
            self._tick()
            k, flip = pick
            j = order[len(chosen)]
            moved = self.col_bits[k]
            kept = self.col_bits[j]
            source = [(a << 1) | moved[i] for i, a in enumerate(sources[-1])]
            target = [(b << 1) | (kept[i] ^ flip) for i, b in enumerate(targets[-1])]
            if Counter(zip(self.row_color, source)) != Counter(zip(self.row_color, target)):
                continue
            depth = len(chosen) + 1
            if depth == n:
                pi = [0] * n
                flips = set()
                for (image, f), column in zip(chosen + [pick], order):
                    pi[column] = image
                    if f:
                        flips.add(column)
                found = self._complete_columns(Permaut(tuple(pi), frozenset(flips)))
                if found is not None:
                    return found
                continue
            used[k] = True
            chosen.append(pick)
            sources.append(source)
            targets.append(target)
            frames.append(candidates(order[depth]))
        return None

    def _complete_columns(self, phi: Permaut) -> Optional[Symmetry]:
        if phi.is_identity():
            return None
        permuted = apply_permaut(self.matrix, phi)
        position = {row: t for t, row in enumerate(permuted.rows)}
        images = []
        for row in self.matrix.rows:
            if row not in position:
                return None
            images.append(position[row])
        return Symmetry(RowPermutation(tuple(images)), phi)


def find_symmetry(matrix: BinaryMatrix, limits: Optional[Limits] = None) -> Optional[Symmetry]:
    """
    Find a nontrivial symmetry of ``matrix``.

    Args:
        matrix: Matrix with at least one row and one column
        limits: Search budget and other guards

    Returns:
        A verified symmetry, or None if the matrix is asymmetric

    Raises:
        SearchBudgetExceeded: If the node budget runs out first
    """
    limits = limits or DEFAULT_LIMITS
    if matrix.row_count < 1 or matrix.col_count < 1:
        raise OutOfRange(f"symmetry search needs a non-empty matrix, got {matrix.row_count}x{matrix.col_count}")

    symmetry = _quick_symmetry(matrix)
    if symmetry is None:
        normalized, flipped = normalize_low_weight(matrix)
        search = _SymmetrySearch(normalized, limits.search_budget)
        found = search.run()
        log.debug("search on %dx%d visited %d nodes", matrix.row_count, matrix.col_count, search.nodes)
        if found is None:
            return None
        # conjugate back from the normalized matrix
        flip = Permaut.flipping(matrix.col_count, flipped)
        symmetry = Symmetry(found.sigma, flip.compose(found.phi).compose(flip))

    if symmetry.is_trivial() or not symmetry.holds_for(matrix):
        raise CertificateMismatch(f"search produced an invalid certificate {symmetry.to_dict()}")
    return symmetry


def is_asymmetric(matrix: BinaryMatrix, limits: Optional[Limits] = None) -> bool:
    """True when find_symmetry finds nothing."""
    return find_symmetry(matrix, limits) is None


def naive_symmetry_oracle(matrix: BinaryMatrix, limits: Optional[Limits] = None) -> Optional[Symmetry]:
    """
    Brute-force every (sigma, phi) pair. Small matrices only.

    Raises:
        BudgetExceeded: If the matrix is larger than the oracle limits
    """
    limits = limits or DEFAULT_LIMITS
    m, n = matrix.shape
    if m > limits.oracle_max_rows or n > limits.oracle_max_cols:
        raise BudgetExceeded(
            f"oracle limited to {limits.oracle_max_rows}x{limits.oracle_max_cols}, got {m}x{n}"
        )
    sorted_rows = sorted(matrix.rows)
    for pi in itertools.permutations(range(n)):
        for mask in range(1 << n):
            phi = Permaut(pi, frozenset(j for j in range(n) if (mask >> j) & 1))
            image = apply_permaut(matrix, phi)
            if sorted(image.rows) != sorted_rows:
                continue
            for images in itertools.permutations(range(m)):
                sigma = RowPermutation(images)
                if sigma.is_identity() and phi.is_identity():
                    continue
                if apply_row_permutation(matrix, sigma) == image:
                    return Symmetry(sigma, phi)
    return None


def _chunked(items: Iterable[Tuple[int, ...]], size: int) -> Iterator[List[Tuple[int, ...]]]:
    iterator = iter(items)
    while True:
        chunk = list(itertools.islice(iterator, size))
        if not chunk:
            return
        yield chunk


def _scan_chunk(job: Tuple[int, List[Tuple[int, ...]], Limits]) -> Tuple[int, Optional[Tuple[int, ...]]]:
    n, chunk, limits = job
    for count, rows in enumerate(chunk, start=1):
        if find_symmetry(BinaryMatrix(len(rows), n, rows), limits) is None:
            return count, rows
    return len(chunk), None


def exhaustive_nonexistence(m: int, n: int, limits: Optional[Limits] = None) -> bool:
    """
    Decide by enumeration whether no m x n matrix is asymmetric.

    Only sets of distinct rows are enumerated: equal rows always give a
    symmetry and row order never changes the verdict.

    Args:
        m: Number of rows
        n: Number of columns
        limits: max_exhaustive_bits caps m*n; workers and progress apply

    Returns:
        True iff every m x n binary matrix has a nontrivial symmetry

    Raises:
        BudgetExceeded: If m*n is above max_exhaustive_bits
    """
    limits = limits or DEFAULT_LIMITS
    if m < 1 or n < 1:
        raise OutOfRange(f"dimensions must be positive, got {m}x{n}")
    if m * n > limits.max_exhaustive_bits:
        raise BudgetExceeded(
            f"{m}x{n} needs {m * n} bits, above the exhaustive limit of {limits.max_exhaustive_bits}"
        )
    strings = 1 << n
    if m > strings:
        log.info("%dx%d: more rows than %d-bit strings, every matrix repeats a row", m, n, n)
        return True

    total = math.comb(strings, m)
    jobs = ((n, chunk, limits) for chunk in _chunked(itertools.combinations(range(strings), m), EXHAUSTIVE_CHUNK))
    checked = 0
    witness = None
    with tqdm(total=total, desc=f"{m}x{n}", unit="sets", disable=not limits.progress) as progress:
        if limits.workers > 1:
            with Pool(processes=limits.workers) as pool:
                for count, found in pool.imap(_scan_chunk, jobs):
                    checked += count
                    progress.update(count)
                    if found is not None:
                        witness = found
                        break
        else:
            for job in jobs:
                count, found = _scan_chunk(job)
                checked += count
                progress.update(count)
                if found is not None:
                    witness = found
                    break

    log.info("checked %d of %d row sets (2^%d matrices)", checked, total, m * n)
    if witness is not None:
        log.info("asymmetric %dx%d matrix: %s", m, n, " ".join(format(row, f"0{n}b") for row in witness))
        return False
    return True


def oracle_agreement(
    samples: int,
    seed: int,
    max_rows: int = 5,
    max_cols: int = 5,
    limits: Optional[Limits] = None,
) -> List[BinaryMatrix]:
    """
    Compare find_symmetry with the brute-force oracle on random matrices.

    Returns:
        The matrices on which the two disagree about symmetry
    """
    limits = limits or DEFAULT_LIMITS
    rng = random.Random(seed)
    disagreements = []
    for _ in tqdm(range(samples), desc="oracle", disable=not limits.progress):
        m = rng.randint(1, max_rows)
        n = rng.randint(1, max_cols)
        matrix = BinaryMatrix(m, n, tuple(rng.getrandbits(n) for _ in range(m)))
        if (find_symmetry(matrix, limits) is None) != (naive_symmetry_oracle(matrix, limits) is None):
            log.warning("engine and oracle disagree on %s", matrix.to_strings())
            disagreements.append(matrix)
    return disagreements
