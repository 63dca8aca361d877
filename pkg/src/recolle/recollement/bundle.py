"""The recollement bundle: three categories, six functors, four adjunctions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from recolle.functorics import Adjunction, Functor, NatTrans
from recolle.repcat.category import Category, Morphism


@dataclass
class Recollement:
    """``A' <-> A <-> A''`` glued by ``i^*, i_*, i^!`` and ``j_!, j^*, j_*``.

    Bounds are the default enumeration budgets for checks: ``bound_a`` for
    objects of ``A``, ``bound_a2`` for ``A''`` and ``bound_a1`` for ``A'``.
    """

    name: str
    a1: Category
    a: Category
    a2: Category
    i_up_star: Functor        # i^*: A -> A'
    i_low_star: Functor       # i_*: A' -> A
    i_up_shriek: Functor      # i^!: A -> A'
    j_low_shriek: Functor     # j_!: A'' -> A
    j_up_star: Functor        # j^*: A -> A''
    j_low_star: Functor       # j_*: A'' -> A
    adj_i_star: Adjunction    # (i^*, i_*)
    adj_i_shriek: Adjunction  # (i_*, i^!)
    adj_j_shriek: Adjunction  # (j_!, j^*)
    adj_j_star: Adjunction    # (j^*, j_*)
    r: Functor | None = None
    bound_a: tuple[int, ...] = (2, 2)
    bound_a2: tuple[int, ...] = (3,)
    bound_a1: tuple[int, ...] = (3,)
    notes: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self._norm = NatTrans("N", self.j_low_shriek, self.j_low_star, self._norm_component)

    @property
    def functors(self) -> dict[str, Functor]:
        return {"i^*": self.i_up_star, "i_*": self.i_low_star, "i^!": self.i_up_shriek,
                "j_!": self.j_low_shriek, "j^*": self.j_up_star, "j_*": self.j_low_star}

    @property
    def adjunctions(self) -> dict[str, Adjunction]:
        return {"i^*-i_*": self.adj_i_star, "i_*-i^!": self.adj_i_shriek,
                "j_!-j^*": self.adj_j_shriek, "j^*-j_*": self.adj_j_star}

    # ---- units and counits under their usual names

    def epsilon(self, a: Any) -> Morphism:
        """Counit ``j_! j^* A -> A``."""
        return self.adj_j_shriek.counit(a)

    def eta(self, a: Any) -> Morphism:
        """Unit ``A -> j_* j^* A``."""
        return self.adj_j_star.unit(a)

    def to_i_star(self, a: Any) -> Morphism:
        """Unit ``A -> i_* i^* A``."""
        return self.adj_i_star.unit(a)

    def from_i_shriek(self, a: Any) -> Morphism:
        """Counit ``i_* i^! A -> A``."""
        return self.adj_i_shriek.counit(a)

    # ---- norm and intermediate extension

    def _norm_component(self, x: Any) -> Morphism:
        back = self.a2.inverse(self.adj_j_star.counit(x))   # x -> j^* j_* x
        return self.epsilon(self.j_low_star(x)) @ self.j_low_shriek.map(back)

    @property
    def norm_transformation(self) -> NatTrans:
        return self._norm

    def norm(self, x: Any) -> Morphism:
        """``N_X: j_! X -> j_* X``, the adjunct of the identity of ``X``."""
        return self._norm(x)

    def j_shriek_star(self, x: Any) -> tuple[Any, Morphism, Morphism]:
        """``j_!* X = Im N_X`` with its epi from ``j_! X`` and mono into ``j_* X``."""
        return self.a.image(self.norm(x))

    # ---- enumeration helpers

    def objects_a(self, bound=None) -> list:
        return self.a.iso_class_reps(bound or self.bound_a)

    def objects_a2(self, bound=None) -> list:
        return self.a2.iso_class_reps(bound or self.bound_a2)

    def objects_a1(self, bound=None) -> list:
        return self.a1.iso_class_reps(bound or self.bound_a1)
