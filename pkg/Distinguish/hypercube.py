"""
Hypercube Module - Label classes of Q_n and the automorphisms that fix them.
A vertex set distinguishes Q_n exactly when its characteristic matrix is
asymmetric; the brute-force group check here confirms that for small n.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Sequence, Tuple

from tqdm import tqdm

from Distinguish.bitmatrix import BinaryMatrix, Permaut
from Distinguish.construct import asymmetric_witness
from Distinguish.cost import CostTable, rho
from Distinguish.errors import DimensionGuardExceeded, EmptyClass, InvalidLabelClass
from Distinguish.limits import DEFAULT_LIMITS, Limits
from Distinguish.symmetry import is_asymmetric

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LabelClass:
    """Ordered set of distinct vertices of Q_n, each an n-bit string."""

    n: int
    vertices: Tuple[str, ...] = ()

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise InvalidLabelClass(f"dimension must be a positive int, got {self.n!r}")
        object.__setattr__(self, "vertices", tuple(self.vertices))
        seen = set()
        for vertex in self.vertices:
            if not isinstance(vertex, str) or len(vertex) != self.n or vertex.strip("01"):
                raise InvalidLabelClass(f"{vertex!r} is not a vertex of Q_{self.n}")
            if vertex in seen:
                raise InvalidLabelClass(f"vertex {vertex} appears twice")
            seen.add(vertex)

    def __len__(self) -> int:
        return len(self.vertices)

    @classmethod
    def from_matrix(cls, matrix: BinaryMatrix) -> "LabelClass":
        return cls(matrix.col_count, tuple(matrix.to_strings()))


@dataclass(frozen=True)
class HypercubeAutomorphism:
    """Complement the coordinates in flips, then move coordinate i to pi[i]."""

    pi: Tuple[int, ...]
    flips: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        # Permaut carries the same validation
        permaut = Permaut(self.pi, self.flips)
        object.__setattr__(self, "pi", permaut.pi)
        object.__setattr__(self, "flips", permaut.flips)

    @classmethod
    def identity(cls, n: int) -> "HypercubeAutomorphism":
        return cls(tuple(range(n)), frozenset())

    def is_identity(self) -> bool:
        return self.to_permaut().is_identity()

    def to_permaut(self) -> Permaut:
        return Permaut(self.pi, self.flips)

    def apply(self, vertex: str) -> str:
        """
        Image of one vertex.

        Args:
            vertex: n-bit string

        Returns:
            The image as an n-bit string

        Raises:
            InvalidLabelClass: If the vertex has the wrong length
        """
        if len(vertex) != len(self.pi):
            raise InvalidLabelClass(f"{vertex!r} is not a vertex of Q_{len(self.pi)}")
        image = [""] * len(vertex)
        for i, bit in enumerate(vertex):
            if i in self.flips:
                bit = "1" if bit == "0" else "0"
            image[self.pi[i]] = bit
        return "".join(image)


def apply_to_class(phi: HypercubeAutomorphism, label_class: LabelClass) -> LabelClass:
    """Image of every vertex, in the class's order."""
    return LabelClass(label_class.n, tuple(phi.apply(v) for v in label_class.vertices))


def characteristic_matrix(label_class: LabelClass) -> BinaryMatrix:
    """
    Matrix whose rows are the vertices of the class, in order.

    Raises:
        EmptyClass: If the class has no vertices
    """
    if not label_class.vertices:
        raise EmptyClass(f"empty label class in Q_{label_class.n} has no characteristic matrix")
    return BinaryMatrix.from_strings(label_class.vertices)


def is_distinguishing_class(label_class: LabelClass, limits: Optional[Limits] = None) -> bool:
    """
    Decide whether only the identity of Q_n maps the class onto itself.

    Args:
        label_class: Vertex set to judge
        limits: Search budget

    Returns:
        True iff the characteristic matrix is asymmetric
    """
    if not label_class.vertices:
        # every automorphism fixes the empty set and Q_n has nontrivial ones
        return False
    return is_asymmetric(characteristic_matrix(label_class), limits)


def _coordinate_image(vertex: int, pi: Sequence[int], n: int) -> int:
    image = 0
    for i in range(n):
        if (vertex >> (n - 1 - i)) & 1:
            image |= 1 << (n - 1 - pi[i])
    return image


def aut_preservers(label_class: LabelClass, limits: Optional[Limits] = None) -> List[HypercubeAutomorphism]:
    """
    Every automorphism of Q_n that maps the class onto itself.

    Permutations are enumerated in lexicographic order and, within each,
    flip masks in increasing order, so the identity comes first.

    Raises:
        DimensionGuardExceeded: If n is above the configured limit
    """
    limits = limits or DEFAULT_LIMITS
    n = label_class.n
    if n > limits.aut_max_dim:
        raise DimensionGuardExceeded(f"Q_{n} has {n}! * 2^{n} automorphisms; limit is n = {limits.aut_max_dim}")
    members = {int(v, 2) for v in label_class.vertices}
    size = 1 << n
    preservers = []
    permutations = itertools.permutations(range(n))
    for pi in tqdm(permutations, desc=f"Aut(Q_{n})", disable=not limits.progress):
        moved = [_coordinate_image(v, pi, n) for v in range(size)]
        for mask in range(size):
            if all(moved[v ^ mask] in members for v in members):
                flips = frozenset(i for i in range(n) if (mask >> (n - 1 - i)) & 1)
                preservers.append(HypercubeAutomorphism(pi, flips))
    return preservers


def distinguishing_class(
    n: int,
    limits: Optional[Limits] = None,
    table: Optional[CostTable] = None,
) -> LabelClass:
    """A smallest distinguishing class of Q_n, in construction order."""
    m = rho(n, table)
    matrix, plan = asymmetric_witness(m, n, limits, table)
    log.info("distinguishing class for Q_%d via %s", n, plan.case)
    return LabelClass.from_matrix(matrix)


def verify_minimality_q4(limits: Optional[Limits] = None) -> bool:
    """
    Check rho(Q_4) = 5 against the automorphism group directly.

    Every 4-subset of V(Q_4) is judged by its matrix and by brute force over
    all 384 automorphisms; the verdicts must agree and all be negative, and
    the constructed 5-subset must pass both checks.
    """
    limits = limits or DEFAULT_LIMITS
    vertices = [format(v, "04b") for v in range(16)]
    subsets = itertools.combinations(vertices, 4)
    checked = 0
    for subset in tqdm(subsets, total=1820, desc="4-subsets", disable=not limits.progress):
        label_class = LabelClass(4, subset)
        by_matrix = is_distinguishing_class(label_class, limits)
        by_group = len(aut_preservers(label_class, limits)) == 1
        checked += 1
        if by_matrix != by_group:
            log.error("matrix and group verdicts differ on %s", subset)
            return False
        if by_matrix:
            log.error("4-subset %s distinguishes Q_4", subset)
            return False
    log.info("checked %d of 1820 4-subsets", checked)

    witness = distinguishing_class(4, limits)
    if len(witness) != 5:
        return False
    preservers = aut_preservers(witness, limits)
    return is_distinguishing_class(witness, limits) and len(preservers) == 1 and preservers[0].is_identity()
