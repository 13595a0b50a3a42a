"""Partitions of the sample space and their classicality.

Three graded notions of classicality are computed for a partition:

* *dynamical* (decoherence): the off-diagonal blocks of the decoherence
  functional vanish between distinct blocks, so the coarse-grained measure is
  an honest probability measure;
* *preclusive separability*: every null event meets each block inside a null
  event contained in that block;
* *classicality with respect to the primitive co-events*: every primitive
  preclusive multiplicative co-event restricts to a homomorphism on the
  subalgebra the partition generates, which happens exactly when each
  primitive dual sits inside a single block.

Among the partitions classical with respect to the primitives there is a
unique finest one, the principle classical partition.  It is built by
chaining primitive duals that intersect: the transitive closure of pairwise
intersection partitions the duals into classes, each class is merged into one
"fat" dual, and histories not covered by any fat dual are appended as
singleton blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    Event,
    HistoriesTheory,
    SampleSpace,
    _validate_partition_blocks,
    format_mask,
    parse_mask,
)
from .exact import ceil_rational, parse_rational

ZERO = Fraction(0)

#: Ceiling on how many primitive duals the uniform fast path will materialize.
_FAT_CLASS_LIMIT = 2_000_000


@dataclass(frozen=True)
class Partition:
    """Pairwise-disjoint nonempty events covering the sample space.

    Blocks are kept in canonical order (ascending least member index), so two
    partitions with the same blocks compare equal regardless of input order.
    """

    space: SampleSpace
    blocks: tuple[Event, ...]

    def __post_init__(self):
        _validate_partition_blocks(self.space, self.blocks)
        ordered = tuple(sorted(self.blocks, key=lambda b: b.mask & -b.mask))
        object.__setattr__(self, "blocks", ordered)

    @classmethod
    def of_masks(cls, space: SampleSpace, masks) -> "Partition":
        return cls(space, tuple(space.event_from_mask(int(m)) for m in masks))

    @classmethod
    def of_blocks(cls, space: SampleSpace, blocks) -> "Partition":
        return cls(space, tuple(blocks))

    @classmethod
    def singletons(cls, space: SampleSpace) -> "Partition":
        return cls(space, space.singletons())

    @classmethod
    def trivial(cls, space: SampleSpace) -> "Partition":
        return cls(space, (space.omega,))

    @property
    def size(self) -> int:
        return len(self.blocks)

    def block_of(self, event: Event) -> Event | None:
        """The block containing the event, if one does."""
        for block in self.blocks:
            if event.issubset(block):
                return block
        return None

    def __repr__(self) -> str:
        return "Partition(" + ", ".join(b.label() for b in self.blocks) + ")"


@dataclass(frozen=True)
class FatCoEventSet:
    """The intersection-equivalence structure over the primitive duals.

    ``classes`` lists the equivalence classes (each a tuple of primitive dual
    events), ``fat_duals`` the per-class unions, and ``uncovered`` the
    singleton events of histories missed by every primitive dual.  Fat duals
    are pairwise disjoint and every primitive dual lies in exactly one.

    Uniform product measures can have astronomically many primitive duals
    (every subset of one fixed cardinality); the per-class member lists are
    then left unmaterialized (``classes`` is None) while ``class_sizes``
    still carries the exact counts.
    """

    classes: tuple[tuple[Event, ...], ...] | None
    class_sizes: tuple[int, ...]
    fat_duals: tuple[Event, ...]
    uncovered: tuple[Event, ...]


def refines(fine: Partition, coarse: Partition) -> bool:
    """Is every block of ``coarse`` a union of blocks of ``fine``?

    The singleton partition refines everything; everything refines the
    one-block partition.
    """
    if fine.space != coarse.space:
        raise ValueError("partitions over different sample spaces")
    return all(
        any(b1.issubset(b2) for b2 in coarse.blocks) for b1 in fine.blocks
    )


def is_decoherent(theory: HistoriesTheory, partition: Partition) -> bool:
    """Do distinct blocks have exactly zero interference?

    Requires the off-diagonal data: a decoherence-form theory, or a
    weights-backed classical theory (diagonal by construction, hence always
    decoherent).  Table-form theories are rejected since their off-diagonal
    values are unknown.
    """
    if partition.space != theory.space:
        raise ValueError("partition over a different sample space")
    if theory.kind == "weights":
        return True
    if theory.kind != "decoherence":
        raise ValueError("decoherence check needs off-diagonal data (decoherence form)")
    blocks = partition.blocks
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if not theory.decoherence_value(blocks[i], blocks[j]).is_zero:
                return False
    return True


def is_preclusively_separable(theory: HistoriesTheory, partition: Partition,
                              override_cap: bool = False) -> bool:
    """For every null event Z and block A: Z misses A, or some null subset of
    A contains Z's trace on A.

    Containment is read non-strictly, so a null trace may serve as its own
    witness.  Additive weights measures are always separable: the trace of a
    null event is itself null.
    """
    if partition.space != theory.space:
        raise ValueError("partition over a different sample space")
    if theory.kind == "weights":
        return True
    nulls = theory.null_family(override_cap)
    for block in partition.blocks:
        nulls_in_block = [z for z in nulls if z & ~block.mask == 0]
        for z in nulls:
            trace = z & block.mask
            if trace == 0:
                continue
            if not any(trace & ~za == 0 for za in nulls_in_block):
                return False
    return True


def _uniform_weight(theory: HistoriesTheory) -> Fraction | None:
    """The common history weight if the measure is uniform weights, else None."""
    if theory.kind == "weights" and theory.measure.is_uniform:
        return theory.measure.weights[0]
    return None


def _uniform_min_cardinality(weight: Fraction, eps: Fraction) -> int:
    """Minimal cardinality of a non-(eps-)null event under uniform weights."""
    if eps == 0:
        return 1
    return ceil_rational(eps / weight)


def is_classical_wrt_M(theory: HistoriesTheory, partition: Partition, eps=ZERO,
                       override_cap: bool = False) -> bool:
    """Is every primitive (eps-)preclusive multiplicative co-event classical
    on the partition?  Holds exactly when every primitive dual lies inside a
    single block."""
    if partition.space != theory.space:
        raise ValueError("partition over a different sample space")
    eps = parse_rational(eps)
    weight = _uniform_weight(theory)
    if weight is not None and weight > 0:
        m = _uniform_min_cardinality(weight, eps)
        n = theory.space.n
        if m > n:
            return True  # no primitive co-events at all
        if m == 1:
            return True  # singleton duals always fit in a block
        return partition.size == 1
    duals = theory.minimal_nonnegligible(eps, override_cap)
    block_masks = [b.mask for b in partition.blocks]
    return all(
        any(d & ~bm == 0 for bm in block_masks) for d in duals
    )


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[rj] = ri


def _assemble(theory: HistoriesTheory, dual_masks, class_of) -> tuple[Partition, FatCoEventSet]:
    space = theory.space
    classes: dict[int, list[int]] = {}
    for idx, mask in enumerate(dual_masks):
        classes.setdefault(class_of(idx), []).append(mask)
    class_lists = sorted(classes.values(), key=lambda masks: min(masks))
    fat_masks = []
    covered = 0
    for masks in class_lists:
        fat = 0
        for mask in masks:
            fat |= mask
        fat_masks.append(fat)
        covered |= fat
    uncovered = [
        1 << i for i in range(space.n) if not covered >> i & 1
    ]
    blocks = [space.event_from_mask(m) for m in fat_masks + uncovered]
    fat_set = FatCoEventSet(
        classes=tuple(
            tuple(space.event_from_mask(m) for m in sorted(masks)) for masks in class_lists
        ),
        class_sizes=tuple(len(masks) for masks in class_lists),
        fat_duals=tuple(space.event_from_mask(m) for m in fat_masks),
        uncovered=tuple(space.event_from_mask(m) for m in uncovered),
    )
    return Partition(space, tuple(blocks)), fat_set


def principle_classical_partition(theory: HistoriesTheory, eps=ZERO,
                                  override_cap: bool = False) -> tuple[Partition, FatCoEventSet]:
    """The unique finest partition classical with respect to the primitive
    (eps-)preclusive multiplicative co-events.

    Construction: compute the primitive duals, chain any two that intersect
    (transitive closure via union-find), merge each class into a fat dual,
    and append uncovered histories as singleton blocks.

    Uniform weights measures take a closed-form path: the primitive duals are
    exactly the subsets of the minimal non-(eps-)null cardinality m, so the
    answer is the singleton partition for m <= 1 and the one-block partition
    for m >= 2 (any two histories sit inside a common m-subset).
    """
    eps = parse_rational(eps)
    space = theory.space
    weight = _uniform_weight(theory)
    if weight is not None and weight > 0:
        n = space.n
        m = _uniform_min_cardinality(weight, eps)
        if m > n:
            # the whole space is eps-null: no primitive co-events, all
            # histories uncovered
            return _assemble(theory, (), lambda i: i)
        if m == 1:
            dual_masks = [1 << i for i in range(n)]
            return _assemble(theory, dual_masks, lambda i: i)
        import math

        count = math.comb(n, m)
        if count > _FAT_CLASS_LIMIT:
            # a single class covering everything; too many duals to list
            fat_set = FatCoEventSet(
                classes=None,
                class_sizes=(count,),
                fat_duals=(space.omega,),
                uncovered=(),
            )
            return Partition(space, (space.omega,)), fat_set
        from itertools import combinations as _combinations

        dual_masks = sorted(
            sum(1 << i for i in subset) for subset in _combinations(range(n), m)
        )
        return _assemble(theory, dual_masks, lambda i: 0)
    dual_masks = theory.minimal_nonnegligible(eps, override_cap)
    uf = _UnionFind(len(dual_masks))
    for i in range(len(dual_masks)):
        for j in range(i + 1, len(dual_masks)):
            if dual_masks[i] & dual_masks[j]:
                uf.union(i, j)
    return _assemble(theory, dual_masks, uf.find)


def iter_partitions(space: SampleSpace):
    """All partitions of the sample space, in a deterministic order.

    Generated by the standard recursion: each history joins an existing block
    or starts a new one.
    """
    n = space.n

    def rec(i: int, blocks: list[int]):
        if i == n:
            yield Partition(space, tuple(space.event_from_mask(m) for m in blocks))
            return
        bit = 1 << i
        for k in range(len(blocks)):
            blocks[k] |= bit
            yield from rec(i + 1, blocks)
            blocks[k] ^= bit
        blocks.append(bit)
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(0, [])


# ---------------------------------------------------------------------------
# JSON interface
# ---------------------------------------------------------------------------


def partition_to_json(partition: Partition) -> list[str]:
    return [format_mask(block.mask) for block in partition.blocks]


def partition_from_json(space: SampleSpace, doc) -> Partition:
    if not isinstance(doc, list):
        raise ValueError("partition document must be an array of bitmask strings")
    return Partition.of_masks(space, [parse_mask(item) for item in doc])
