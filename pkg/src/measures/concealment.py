from collections.abc import Iterable
from dataclasses import dataclass

from harness.settings import DEFAULT_ALPHA
from measures.community import CommunityError, CommunityStructure


@dataclass(frozen=True)
class ConcealmentParams:
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            msg = f"alpha must lie in [0, 1], got {self.alpha}"
            raise CommunityError(msg)


@dataclass(frozen=True)
class HiddenGroup:
    """The node set ``C†`` trying not to be detected as a community."""

    members: frozenset[int]

    @classmethod
    def of(cls, members: Iterable[int]) -> "HiddenGroup":
        group = frozenset(members)
        if not group:
            msg = "a hidden group needs at least one member"
            raise CommunityError(msg)
        return cls(members=group)

    def __len__(self) -> int:
        return len(self.members)


def _check(c: HiddenGroup, cs: CommunityStructure) -> None:
    outside = [v for v in c.members if not 0 <= v < cs.n]
    if outside:
        msg = f"hidden member {outside[0]} is not covered by the partition"
        raise CommunityError(msg)


def mu_prime(c: HiddenGroup, cs: CommunityStructure) -> float:
    """Score how widely the members are spread over the communities.

    ``(|{C_i : C_i ∩ C† ≠ ∅}| - 1) / (max(|CS| - 1, 1) * max_i |C_i ∩ C†|)``
    """
    _check(c, cs)
    overlaps = [len(community & c.members) for community in cs]
    touched = sum(1 for size in overlaps if size)
    return (touched - 1) / (max(len(cs) - 1, 1) * max(overlaps))


def mu_double_prime(c: HiddenGroup, cs: CommunityStructure, n: int) -> float:
    """Score how many non-members share a community with some member.

    Only communities that contain a member count; the sum is normalized by ``max(n - |C†|, 1)``.
    """
    _check(c, cs)
    hiding = sum(len(community - c.members) for community in cs if community & c.members)
    return hiding / max(n - len(c), 1)


def mu(c: HiddenGroup, cs: CommunityStructure, params: ConcealmentParams, n: int) -> float:
    """Return ``alpha * mu' + (1 - alpha) * mu''``."""
    return params.alpha * mu_prime(c, cs) + (1.0 - params.alpha) * mu_double_prime(c, cs, n)
