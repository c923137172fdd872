"""Objects and morphisms of the category of finite-dimensional spaces.

An object is just a dimension over a scalar field; a morphism is a matrix
acting on column vectors, so composition is matrix multiplication and the
null object is the dimension-zero space.  Kernels and cokernels come with
their universal lifts, and the biproduct carries its two insertions and two
projections.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, ShapeError
from .fields import ScalarField
from .linalg import Matrix, left_nullspace_basis, nullspace_basis, rank, solve_matrix


@dataclass(frozen=True)
class Obj:
    """A finite-dimensional space, determined by dimension and field."""

    dim: int
    field: ScalarField

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ShapeError(f"negative dimension {self.dim}")

    @property
    def is_null(self) -> bool:
        return self.dim == 0

    def __str__(self) -> str:
        return f"{self.field}^{self.dim}"


@dataclass(frozen=True)
class Mor:
    """A morphism ``src -> dst`` backed by a ``dim(dst) x dim(src)`` matrix."""

    src: Obj
    dst: Obj
    mat: Matrix

    def __post_init__(self) -> None:
        if self.src.field != self.dst.field or self.src.field != self.mat.field:
            raise ShapeError(
                f"field mismatch: {self.src.field}, {self.dst.field}, {self.mat.field}"
            )
        if self.mat.rows != self.dst.dim or self.mat.cols != self.src.dim:
            raise ShapeError(
                f"matrix {self.mat.rows}x{self.mat.cols} does not map "
                f"{self.src} to {self.dst}"
            )

    @classmethod
    def from_matrix(cls, mat: Matrix) -> Mor:
        """Wrap a matrix, deriving source and target from its shape."""
        return cls(Obj(mat.cols, mat.field), Obj(mat.rows, mat.field), mat)

    @property
    def field(self) -> ScalarField:
        return self.src.field

    @property
    def rank(self) -> int:
        return rank(self.mat)

    @property
    def is_mono(self) -> bool:
        return self.rank == self.src.dim

    @property
    def is_epi(self) -> bool:
        return self.rank == self.dst.dim

    @property
    def is_iso(self) -> bool:
        return self.src.dim == self.dst.dim and self.rank == self.src.dim

    @property
    def is_zero(self) -> bool:
        return self.mat.is_zero

    def __matmul__(self, other: Mor) -> Mor:
        if not isinstance(other, Mor):
            return NotImplemented
        return compose(self, other)

    def __add__(self, other: Mor) -> Mor:
        self._parallel(other)
        return Mor(self.src, self.dst, self.mat + other.mat)

    def __sub__(self, other: Mor) -> Mor:
        self._parallel(other)
        return Mor(self.src, self.dst, self.mat - other.mat)

    def __neg__(self) -> Mor:
        return Mor(self.src, self.dst, -self.mat)

    def _parallel(self, other: Mor) -> None:
        if not isinstance(other, Mor):
            raise ShapeError(f"expected a morphism, got {other!r}")
        if self.src != other.src or self.dst != other.dst:
            raise ShapeError(
                f"morphisms are not parallel: {self.src}->{self.dst} "
                f"vs {other.src}->{other.dst}"
            )

    def __str__(self) -> str:
        return f"{self.src}->{self.dst} {self.mat}"


def compose(g: Mor, f: Mor) -> Mor:
    """The composite ``g after f``."""
    if f.dst != g.src:
        raise ShapeError(f"cannot compose: {f.src}->{f.dst} then {g.src}->{g.dst}")
    return Mor(f.src, g.dst, g.mat @ f.mat)


def identity(x: Obj) -> Mor:
    return Mor(x, x, Matrix.identity(x.field, x.dim))


def zero_mor(src: Obj, dst: Obj) -> Mor:
    if src.field != dst.field:
        raise ShapeError(f"field mismatch: {src.field} vs {dst.field}")
    return Mor(src, dst, Matrix.zeros(src.field, dst.dim, src.dim))


@dataclass(frozen=True)
class KernelData:
    """A kernel: the embedded subobject on which ``of`` vanishes."""

    ker_obj: Obj
    ker_mor: Mor
    of: Mor


@dataclass(frozen=True)
class CokernelData:
    """A cokernel: the canonical quotient of the target of ``of``."""

    coker_obj: Obj
    coker_mor: Mor
    of: Mor


@dataclass(frozen=True)
class Biproduct:
    """A direct sum with insertions ``ins_i, ins_j`` and projections
    ``proj_p, proj_q`` satisfying the five structure identities."""

    sum_obj: Obj
    ins_i: Mor
    ins_j: Mor
    proj_p: Mor
    proj_q: Mor


def kernel(f: Mor) -> KernelData:
    """The canonical kernel of ``f``, with its mono into the source."""
    basis = nullspace_basis(f.mat)
    ker_obj = Obj(basis.cols, f.field)
    return KernelData(ker_obj, Mor(ker_obj, f.src, basis), f)


def cokernel(f: Mor) -> CokernelData:
    """The canonical cokernel of ``f``, with its epi out of the target."""
    basis = left_nullspace_basis(f.mat)
    coker_obj = Obj(basis.rows, f.field)
    return CokernelData(coker_obj, Mor(f.dst, coker_obj, basis), f)


def mono_lift(m: Mor, t: Mor) -> Mor:
    """The unique ``s`` with ``m @ s = t`` for a mono ``m``.

    Exists exactly when the image of ``t`` lies inside the image of ``m``.
    """
    if not m.is_mono:
        raise PreconditionError(f"lift target is not a mono: {m}")
    if t.dst != m.dst:
        raise ShapeError(f"cannot lift {t.src}->{t.dst} through {m.src}->{m.dst}")
    sol = solve_matrix(m.mat, t.mat)
    if sol is None:
        raise PreconditionError(
            f"no lift: image of {t} is not contained in image of {m}"
        )
    return Mor(t.src, m.src, sol)


def epi_colift(e: Mor, t: Mor) -> Mor:
    """The unique ``v`` with ``v @ e = t`` for an epi ``e``.

    Exists exactly when ``t`` kills the kernel of ``e``.
    """
    if not e.is_epi:
        raise PreconditionError(f"colift target is not an epi: {e}")
    if t.src != e.src:
        raise ShapeError(f"cannot colift {t.src}->{t.dst} through {e.src}->{e.dst}")
    residual = t.mat @ nullspace_basis(e.mat)
    if not residual.is_zero:
        raise PreconditionError(
            f"no colift: {t} does not vanish on the kernel of {e}, residual {residual}"
        )
    sol = solve_matrix(e.mat.transpose(), t.mat.transpose())
    if sol is None:
        raise PreconditionError(f"no colift of {t} through {e}")
    return Mor(e.dst, t.dst, sol.transpose())


def kernel_lift(kd: KernelData, t: Mor) -> Mor:
    """Factor ``t`` through the kernel: the unique ``s`` with
    ``ker_mor @ s = t``, requiring that the kernel's parent kills ``t``."""
    residual = kd.of @ t
    if not residual.is_zero:
        raise PreconditionError(
            f"kernel lift needs a vanishing composite, got {residual.mat}"
        )
    return mono_lift(kd.ker_mor, t)


def cokernel_colift(cd: CokernelData, t: Mor) -> Mor:
    """Factor ``t`` through the cokernel: the unique ``v`` with
    ``v @ coker_mor = t``, requiring ``t`` to kill the parent's image."""
    residual = t @ cd.of
    if not residual.is_zero:
        raise PreconditionError(
            f"cokernel colift needs a vanishing composite, got {residual.mat}"
        )
    return epi_colift(cd.coker_mor, t)


def biproduct(a: Obj, b: Obj) -> Biproduct:
    """The direct sum ``a (+) b`` with block insertions and projections."""
    if a.field != b.field:
        raise ShapeError(f"field mismatch: {a.field} vs {b.field}")
    field = a.field
    total = Obj(a.dim + b.dim, field)
    ia = Matrix.identity(field, a.dim)
    ib = Matrix.identity(field, b.dim)
    za = Matrix.zeros(field, b.dim, a.dim)
    zb = Matrix.zeros(field, a.dim, b.dim)
    ins_i = Mor(a, total, ia.vstack(za))
    ins_j = Mor(b, total, zb.vstack(ib))
    proj_p = Mor(total, a, ia.hstack(zb))
    proj_q = Mor(total, b, za.hstack(ib))
    return Biproduct(total, ins_i, ins_j, proj_p, proj_q)
