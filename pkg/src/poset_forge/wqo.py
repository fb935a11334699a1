"""Finite quasi-order experiments: coloured families, embeddability
matrices, and the coloured-fence antichain.

The flagship construction is :func:`fence_antichain`: two-coloured zigzags
whose endpoints are marked, pairwise non-embeddable, and all
indecomposable.  The antichain check is exhaustive, never probabilistic.
"""

from dataclasses import dataclass

from . import config
from .core import ColouredPoset, QuasiOrder, canonical, coloured_embed
from .errors import TooLarge
from .interval import is_indecomposable


@dataclass(frozen=True)
class Family:
    """An ordered list of coloured posets over one shared palette."""

    members: tuple
    names: tuple

    def __post_init__(self):
        if not self.members:
            raise ValueError("a family is non-empty")
        palette = self.members[0].palette
        for m in self.members:
            if m.palette != palette:
                raise ValueError("family members must share one palette")
        if len(self.names) != len(self.members):
            raise ValueError("one name per member")

    def __len__(self):
        return len(self.members)


MARK = "1"
PLAIN = "0"


def fence_palette():
    return QuasiOrder([PLAIN, MARK], [])


def fence_antichain(n_max):
    """The n_max smallest indecomposable marked zigzags.

    Member k (k = 1..n_max) is the zigzag on k+3 points with its two
    extremal points coloured 1 and the interior coloured 0, over the
    two-colour discrete palette.  The three-point zigzag is left out: its
    two extremal points form an interval, so it is decomposable and sits in
    no class of indecomposables (every three-point poset is decomposable).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    palette = fence_palette()
    members = []
    names = []
    for k in range(1, n_max + 1):
        zig = canonical("fence", k + 1)
        ends = {zig.elements[0], zig.elements[-1]}
        colouring = {e: MARK if e in ends else PLAIN for e in zig.elements}
        members.append(ColouredPoset(zig, colouring, palette))
        names.append(f"Z{k}")
    return Family(tuple(members), tuple(names))


def embeddability_matrix(fam, bound=None):
    """Boolean matrix of coloured embeddability within a family."""
    limit = config.effective_bound(config.MATRIX_FAMILY_BOUND, bound)
    if len(fam) > limit:
        raise TooLarge(f"family has {len(fam)} > {limit} members")
    return [
        [coloured_embed(a, b) is not None for b in fam.members]
        for a in fam.members
    ]


def bad_pair_search(fam, bound=None):
    """Lexicographically least (i, j), i < j, with member i not below
    member j; None when the sequence is good."""
    matrix = embeddability_matrix(fam, bound)
    for i in range(len(fam)):
        for j in range(i + 1, len(fam)):
            if not matrix[i][j]:
                return (i, j)
    return None


def family_indecomposable(fam):
    """Per-member indecomposability (used by the antichain reproduction)."""
    return [is_indecomposable(m.poset) for m in fam.members]


def matrix_text(fam, matrix):
    """0/1 grid with row and column names, plus a machine-readable stanza."""
    width = max(len(n) for n in fam.names)
    lines = [" " * (width + 1) + " ".join(fam.names)]
    for name, row in zip(fam.names, matrix):
        cells = " ".join(
            ("1" if v else "0").rjust(len(n)) for v, n in zip(row, fam.names)
        )
        lines.append(f"{name.ljust(width)} {cells}")
    lines.append(f"matrix {len(fam)}x{len(fam)}")
    lines.append("names " + " ".join(fam.names))
    for name, row in zip(fam.names, matrix):
        lines.append(f"row {name} " + "".join("1" if v else "0" for v in row))
    lines.append("end")
    return "\n".join(lines) + "\n"
