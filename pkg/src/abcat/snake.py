"""Two composable commutative squares over exact rows, and the connecting
morphism they induce between the outer kernel and the outer cokernel.

The input is a ladder

    A --a--> B --c--> C          with verticals u, v, w down to
    A'--b--> B'--d--> C'

where ``(a, c)`` is exact with ``c`` epi (so ``c`` is a cokernel of ``a``)
and ``(b, d)`` is exact with ``b`` mono (so ``b`` is a kernel of ``d``).
The left square ``K`` is ``v @ a = b @ u`` and the right square ``L`` is
``d @ v = w @ c``.

The connecting morphism ``delta : Ker w -> Coker u`` is built by the
categorical recipe, never by picking matrix representatives:

1. pull back ``(k, c)`` where ``k`` embeds ``Ker w``; the leg onto ``Ker w``
   is epi because ``c`` is;
2. take the kernel ``z`` of that leg and factor its other leg through ``a``;
3. push out ``(p, b)`` where ``p`` projects onto ``Coker u``; the leg out of
   ``Coker u`` is mono because ``b`` is;
4. colift through the epi leg to get ``theta``, then lift ``theta`` through
   the mono leg; the result is ``delta``.

Before any of that, the input is reduced so that ``a`` is replaced by its
mono part and ``d`` by its epi part; the canonical ``Ker w`` and ``Coker u``
matrices are unchanged by the reduction, which is asserted at runtime.

``chase_delta`` is an independent oracle that never touches pullbacks or
pushouts: it solves ``c x = k kappa`` for each kernel basis column, pushes
the solution through ``v``, solves against ``b``, and projects by ``p``.
The two routes agree with one global sign fixed by the pushout's sign
convention.
"""

from __future__ import annotations

from dataclasses import dataclass

from .category import (
    CokernelData,
    KernelData,
    Mor,
    cokernel,
    cokernel_colift,
    epi_colift,
    kernel,
    kernel_lift,
    mono_lift,
)
from .constructions import (
    PullbackData,
    PushoutData,
    epi_mono_factorize,
    is_exact_pair,
    pullback,
    pushout,
)
from .errors import AbcatError, InternalCheckError
from .linalg import Matrix, solve, solve_with_column_order


@dataclass(frozen=True)
class SnakeInput:
    """The seven maps of the ladder; see the module docstring for shapes."""

    a: Mor
    c: Mor
    u: Mor
    v: Mor
    w: Mor
    b: Mor
    d: Mor


@dataclass(frozen=True)
class Violation:
    """One failed input invariant, with a machine-checkable code."""

    code: str
    message: str


class SnakeInputError(AbcatError):
    """Raised by :func:`validate`; carries the full violation list."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(v.message for v in violations))


@dataclass(frozen=True)
class SnakeTrace:
    """Every intermediate object of the connecting-morphism construction."""

    reduced: SnakeInput
    pb: PullbackData
    z: Mor
    l: Mor
    po: PushoutData
    h: Mor
    theta: Mor


@dataclass(frozen=True)
class SnakeOutput:
    """Kernels, cokernels, the five induced maps, and the exactness report
    for the four interior positions of the six-term sequence."""

    ker_u: KernelData
    ker_v: KernelData
    ker_w: KernelData
    coker_u: CokernelData
    coker_v: CokernelData
    coker_w: CokernelData
    s: Mor
    t: Mor
    delta: Mor
    x: Mor
    y: Mor
    exact_report: tuple[bool, bool, bool, bool]


def violations(inp: SnakeInput) -> list[Violation]:
    """All failed invariants of the ladder, structural ones first.

    When the shapes themselves are wrong, the dependent checks are skipped.
    """
    found: list[Violation] = []
    shapes = [
        (inp.c.src == inp.a.dst, "c must start where a ends"),
        (inp.u.src == inp.a.src, "u must share a source with a"),
        (inp.v.src == inp.a.dst, "v must start at the middle of the top row"),
        (inp.w.src == inp.c.dst, "w must start where c ends"),
        (inp.b.src == inp.u.dst, "b must start where u ends"),
        (inp.b.dst == inp.v.dst, "b must end where v ends"),
        (inp.d.src == inp.v.dst, "d must start where v ends"),
        (inp.d.dst == inp.w.dst, "d must end where w ends"),
    ]
    fields = {m.field for m in (inp.a, inp.c, inp.u, inp.v, inp.w, inp.b, inp.d)}
    if len(fields) != 1:
        found.append(Violation("field_mismatch", "all maps must share one field"))
    for ok, msg in shapes:
        if not ok:
            found.append(Violation("shape", msg))
    if found:
        return found

    res_k = inp.v @ inp.a - inp.b @ inp.u
    if not res_k.is_zero:
        found.append(Violation(
            "square_K", f"left square does not commute, residual {res_k.mat}"))
    res_l = inp.d @ inp.v - inp.w @ inp.c
    if not res_l.is_zero:
        found.append(Violation(
            "square_L", f"right square does not commute, residual {res_l.mat}"))
    if not is_exact_pair(inp.a, inp.c):
        found.append(Violation("top_row_exact", "top row is not exact in the middle"))
    if not inp.c.is_epi:
        found.append(Violation("c_epi", "c must be an epi (a cokernel of a)"))
    if not is_exact_pair(inp.b, inp.d):
        found.append(Violation("bottom_row_exact", "bottom row is not exact in the middle"))
    if not inp.b.is_mono:
        found.append(Violation("b_mono", "b must be a mono (a kernel of d)"))
    return found


def validate(inp: SnakeInput) -> SnakeInput:
    """Return the input unchanged or raise with every violation found."""
    found = violations(inp)
    if found:
        raise SnakeInputError(found)
    return inp


def reduce_input(inp: SnakeInput) -> SnakeInput:
    """Replace ``a`` by its mono part and ``d`` by its epi part.

    The induced ``u`` and ``w`` exist because ``b`` is mono and the epi part
    of ``a`` is epi (dually for ``d``).  An already reduced side is returned
    untouched.  The canonical kernel of ``w`` and cokernel of ``u`` have the
    same matrices before and after, which is asserted.
    """
    a, u = inp.a, inp.u
    if not a.is_mono:
        fa = epi_mono_factorize(inp.a)
        a = fa.mono_m
        u = mono_lift(inp.b, inp.v @ fa.mono_m)
        if cokernel(u).coker_mor.mat != cokernel(inp.u).coker_mor.mat:
            raise InternalCheckError("reduction changed the canonical cokernel of u")
    d, w = inp.d, inp.w
    if not d.is_epi:
        fd = epi_mono_factorize(inp.d)
        d = fd.epi_q
        w = mono_lift(fd.mono_m, inp.w)
        if fd.epi_q @ inp.v != w @ inp.c:
            raise InternalCheckError("reduction broke the right square")
        if kernel(w).ker_mor.mat != kernel(inp.w).ker_mor.mat:
            raise InternalCheckError("reduction changed the canonical kernel of w")
    return SnakeInput(a=a, c=inp.c, u=u, v=inp.v, w=w, b=inp.b, d=d)


def connecting_morphism(inp: SnakeInput) -> tuple[Mor, SnakeTrace]:
    """The connecting morphism ``Ker w -> Coker u`` with its construction
    trace.  Every intermediate identity is checked; a failure there is a
    bug, not bad input."""
    validate(inp)
    red = reduce_input(inp)
    kw = kernel(red.w)
    cu = cokernel(red.u)

    pb = pullback(kw.ker_mor, red.c)
    onto_ker, into_b = pb.f, pb.g
    if not onto_ker.is_epi:
        raise InternalCheckError("pulling back an epi must give an epi leg")
    z = kernel(onto_ker)
    l = mono_lift(red.a, into_b @ z.ker_mor)

    po = pushout(cu.coker_mor, red.b)
    from_coker, from_b2 = po.r, po.s
    if not from_coker.is_mono:
        raise InternalCheckError("pushing out a mono must give a mono leg")
    h = cokernel(from_coker)

    carried = from_b2 @ red.v @ into_b
    if not (carried @ z.ker_mor).is_zero:
        raise InternalCheckError("carried map does not vanish on the kernel leg")
    theta = epi_colift(onto_ker, carried)
    if not (h.coker_mor @ theta).is_zero:
        raise InternalCheckError("theta must die in the cokernel of the mono leg")
    delta = mono_lift(from_coker, theta)

    trace = SnakeTrace(reduced=red, pb=pb, z=z.ker_mor, l=l, po=po,
                       h=h.coker_mor, theta=theta)
    _check_trace(delta, trace)
    return delta, trace


def _check_trace(delta: Mor, tr: SnakeTrace) -> None:
    red, pb = tr.reduced, tr.pb
    checks = [
        (pb.c @ pb.f == pb.d @ pb.g, "fiber product square"),
        (red.a @ tr.l == pb.g @ tr.z, "factorization through a"),
        (tr.theta @ pb.f == tr.po.s @ red.v @ pb.g, "colift identity for theta"),
        (tr.po.r @ delta == tr.theta, "lift identity for delta"),
        ((tr.h @ tr.theta).is_zero, "theta vanishes under h"),
    ]
    for ok, name in checks:
        if not ok:
            raise InternalCheckError(f"trace identity failed: {name}")


def snake_sequence(inp: SnakeInput) -> SnakeOutput:
    """Kernels, cokernels, induced maps, delta, and the exactness report."""
    validate(inp)
    ku, kv, kw = kernel(inp.u), kernel(inp.v), kernel(inp.w)
    cu, cv, cw = cokernel(inp.u), cokernel(inp.v), cokernel(inp.w)
    s = kernel_lift(kv, inp.a @ ku.ker_mor)
    t = kernel_lift(kw, inp.c @ kv.ker_mor)
    x = cokernel_colift(cu, cv.coker_mor @ inp.b)
    y = cokernel_colift(cv, cw.coker_mor @ inp.d)
    delta, _ = connecting_morphism(inp)
    report = (
        is_exact_pair(s, t),
        is_exact_pair(t, delta),
        is_exact_pair(delta, x),
        is_exact_pair(x, y),
    )
    return SnakeOutput(ker_u=ku, ker_v=kv, ker_w=kw,
                       coker_u=cu, coker_v=cv, coker_w=cw,
                       s=s, t=t, delta=delta, x=x, y=y,
                       exact_report=report)


def chase_delta(inp: SnakeInput) -> Mor:
    """Element-chase oracle for the connecting morphism.

    For each basis column of ``Ker w``: lift along ``c`` (free variables
    zeroed), apply ``v``, solve against the mono ``b``, and project by the
    cokernel of ``u``.  The result does not depend on the particular lift,
    which is verified by re-solving with the unknowns in reverse order.
    """
    validate(inp)
    k = kernel(inp.w).ker_mor
    p = cokernel(inp.u).coker_mor
    field = inp.a.field
    cols: list[Matrix] = []
    reversed_order = list(reversed(range(inp.c.src.dim)))
    for j in range(k.src.dim):
        target = k.mat.col(j)
        for order_tag, lifted in (
            ("first", solve(inp.c.mat, target)),
            ("reversed", solve_with_column_order(inp.c.mat, target, reversed_order)),
        ):
            if lifted is None:
                raise InternalCheckError(f"epi c failed to lift a kernel column ({order_tag})")
            carried = inp.v.mat @ lifted
            pre = solve(inp.b.mat, carried)
            if pre is None:
                raise InternalCheckError("carried column missed the image of b")
            out = p.mat @ pre
            if order_tag == "first":
                cols.append(out)
            elif out != cols[-1]:
                raise InternalCheckError("chase result depends on the lift choice")
    out_mat = Matrix.zeros(field, p.mat.rows, 0)
    for col in cols:
        out_mat = out_mat.hstack(col)
    return Mor(k.src, p.dst, out_mat)
