"""Seeded random diagrams: morphisms, exact pairs, commuting squares, and
snake-lemma ladders.

Randomness comes from SplitMix64, implemented here on plain Python integers
so that a seed produces the same diagram on every platform and Python
version.  ``stdlib random`` is deliberately not used: its generator is
stable, but keeping the whole draw sequence explicit makes the golden files
self-explanatory.

Child streams are derived from the root seed and a tag tuple, never from
the current stream position, so adding a draw to one generator cannot
shift the output of another.
"""

from __future__ import annotations

from dataclasses import dataclass

from .category import Mor, cokernel, kernel, kernel_lift, cokernel_colift
from .constructions import pullback
from .errors import GenerationError
from .fields import RATIONALS, Scalar, ScalarField
from .linalg import Matrix, nullspace_basis
from .snake import SnakeInput, validate
from .squares import Square

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

# fixed multipliers of the splitmix64 finalizer
_MUL1 = 0xBF58476D1CE4E5B9
_MUL2 = 0x94D049BB133111EB


def _mix(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _MUL1) & MASK64
    z = ((z ^ (z >> 27)) * _MUL2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """The splitmix64 sequence: state += golden ratio, then finalize."""

    def __init__(self, seed: int):
        self._seed = seed & MASK64
        self._state = self._seed

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN) & MASK64
        return _mix(self._state)

    def below(self, n: int) -> int:
        """Uniform-enough draw in [0, n); n is tiny next to 2**64, so the
        modulo bias is irrelevant here."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next_u64() % n

    def choice(self, seq):
        if not seq:
            raise ValueError("choice() on an empty sequence")
        return seq[self.below(len(seq))]

    def derive(self, *tags: int) -> "SplitMix64":
        """Independent child stream keyed by the root seed and the tags.

        Depends only on the construction seed, not on how many draws this
        stream has made.
        """
        acc = self._seed
        for t in tags:
            acc = _mix((acc + GOLDEN + (t & MASK64)) & MASK64)
        return SplitMix64(acc)


@dataclass(frozen=True)
class GenConfig:
    seed: int
    field: ScalarField = RATIONALS
    max_dim: int = 5
    entry_pool: tuple[int, ...] = (-3, -2, -1, 1, 2, 3)
    density_pct: int = 60  # chance, in percent, that an entry is nonzero

    def __post_init__(self):
        if self.max_dim < 1:
            raise ValueError("max_dim must be >= 1")
        if not 0 < self.density_pct <= 100:
            raise ValueError("density_pct must be in (0, 100]")


def _pool(cfg: GenConfig) -> list[Scalar]:
    # distinct nonzero field elements of the pool, in first-seen order;
    # over GF(2) the whole pool collapses to [1]
    seen: list[Scalar] = []
    zero = cfg.field.zero()
    for k in cfg.entry_pool:
        x = cfg.field.from_int(k)
        if x != zero and x not in seen:
            seen.append(x)
    if not seen:
        raise GenerationError(f"entry pool has no nonzero elements in {cfg.field}")
    return seen


def rand_dim(rng: SplitMix64, cfg: GenConfig, min_dim: int = 0) -> int:
    if min_dim > cfg.max_dim:
        raise GenerationError("min_dim exceeds max_dim")
    return min_dim + rng.below(cfg.max_dim - min_dim + 1)


def rand_matrix(rng: SplitMix64, cfg: GenConfig, rows: int, cols: int) -> Matrix:
    pool = _pool(cfg)
    zero = cfg.field.zero()
    entries = []
    for _ in range(rows * cols):
        if rng.below(100) < cfg.density_pct:
            entries.append(rng.choice(pool))
        else:
            entries.append(zero)
    return Matrix(rows, cols, tuple(entries), cfg.field)


def rand_mor(rng: SplitMix64, cfg: GenConfig, src_dim: int, dst_dim: int) -> Mor:
    return Mor.from_matrix(rand_matrix(rng, cfg, dst_dim, src_dim))


_TRIES = 100


def rand_epi(rng: SplitMix64, cfg: GenConfig, src_dim: int, dst_dim: int) -> Mor:
    if dst_dim > src_dim:
        raise GenerationError("no epi onto a larger dimension")
    for _ in range(_TRIES):
        f = rand_mor(rng, cfg, src_dim, dst_dim)
        if f.is_epi:
            return f
    raise GenerationError(f"no epi of shape {dst_dim}x{src_dim} in {_TRIES} tries")


def rand_mono(rng: SplitMix64, cfg: GenConfig, src_dim: int, dst_dim: int) -> Mor:
    if src_dim > dst_dim:
        raise GenerationError("no mono into a smaller dimension")
    for _ in range(_TRIES):
        f = rand_mor(rng, cfg, src_dim, dst_dim)
        if f.is_mono:
            return f
    raise GenerationError(f"no mono of shape {dst_dim}x{src_dim} in {_TRIES} tries")


def gen_morphism(cfg: GenConfig, src_dim: int | None = None,
                 dst_dim: int | None = None) -> Mor:
    """One random morphism.  Dimensions are drawn up to max_dim unless
    pinned explicitly (pinned dimensions may exceed max_dim)."""
    rng = SplitMix64(cfg.seed).derive(1)
    src = rand_dim(rng, cfg) if src_dim is None else src_dim
    dst = rand_dim(rng, cfg) if dst_dim is None else dst_dim
    return rand_mor(rng, cfg, src, dst)


def gen_exact_pair(cfg: GenConfig) -> tuple[Mor, Mor]:
    """A composable pair (f, g) with image f = kernel g.

    g is arbitrary; f is the kernel embedding of g precomposed with a random
    epi, which is exactly the general shape of an exact pair.
    """
    rng = SplitMix64(cfg.seed).derive(2)
    dim_b = rand_dim(rng, cfg)
    dim_c = rand_dim(rng, cfg)
    g = rand_mor(rng, cfg, dim_b, dim_c)
    m = kernel(g).ker_mor
    dim_a = m.src.dim + rng.below(3)
    e = rand_epi(rng, cfg, dim_a, m.src.dim)
    return m @ e, g


def gen_semicartesian(cfg: GenConfig, variant: str = "epi") -> Square:
    """A commuting square whose comparison map into the fiber product is:

    - ``"epi"``: an arbitrary epi (semi-cartesian, often not cartesian);
    - ``"cartesian"``: the identity (the literal fiber-product square);
    - ``"deficient"``: rank-deficient (not semi-cartesian).
    """
    tags = {"epi": 0, "cartesian": 1, "deficient": 2}
    if variant not in tags:
        raise ValueError(f"unknown variant {variant!r}")
    rng = SplitMix64(cfg.seed).derive(3, tags[variant])
    for _ in range(_TRIES):
        dim_b = rand_dim(rng, cfg)
        dim_c = rand_dim(rng, cfg)
        dim_d = rand_dim(rng, cfg)
        right = rand_mor(rng, cfg, dim_b, dim_d)
        bottom = rand_mor(rng, cfg, dim_c, dim_d)
        pb = pullback(right, bottom)
        dim_p = pb.p_obj.dim
        if variant == "cartesian":
            return Square(pb.f, pb.g, right, bottom)
        if variant == "epi":
            e = rand_epi(rng, cfg, dim_p + rng.below(3), dim_p)
            return Square(pb.f @ e, pb.g @ e, right, bottom)
        # deficient: force rank < dim P by routing through a smaller object
        if dim_p == 0:
            continue  # every map to a point is epi; resample the cospan
        inner = rand_mor(rng, cfg, dim_p - 1, dim_p)
        outer = rand_mor(rng, cfg, rand_dim(rng, cfg), dim_p - 1)
        e = inner @ outer
        return Square(pb.f @ e, pb.g @ e, right, bottom)
    raise GenerationError("could not reach a nonzero fiber product")


def _rand_intertwiner(rng: SplitMix64, cfg: GenConfig, d: Mor, a: Mor) -> Mor:
    """A random v with d @ v @ a = 0, drawn from the full solution space.

    The constraint is linear in the entries of v: flattening v row-major,
    the equation indexed by (row i of d, column l of a) has coefficient
    d[i, j] * a[m, l] at unknown v[j, m].  A random combination of the
    nullspace basis of that system is a uniform-ish sample of valid v.
    """
    fld = cfg.field
    n_b, n_b2 = a.dst.dim, d.src.dim
    n_rows = d.dst.dim * a.src.dim
    n_unknowns = n_b2 * n_b
    entries: list[Scalar] = []
    for i in range(d.dst.dim):
        for l in range(a.src.dim):
            for j in range(n_b2):
                for m in range(n_b):
                    entries.append(d.mat.entry(i, j) * a.mat.entry(m, l))
    system = Matrix(n_rows, n_unknowns, tuple(entries), fld)
    basis = nullspace_basis(system)  # n_unknowns x solution_dim
    coeffs = rand_matrix(rng, cfg, basis.cols, 1)
    flat = basis @ coeffs
    v_entries = tuple(flat.entry(j * n_b + m, 0)
                      for j in range(n_b2) for m in range(n_b))
    return Mor.from_matrix(Matrix(n_b2, n_b, v_entries, fld))


def gen_snake_input(cfg: GenConfig, short_exact_rows: bool = False) -> SnakeInput:
    """A valid snake ladder.

    The rows are exact by construction: c is the cokernel of a and b is the
    kernel of d.  The middle vertical v is sampled from the solution space
    of d v a = 0, which is precisely the condition for the outer verticals
    to exist; u and w are then the induced maps.  With ``short_exact_rows``
    both rows are short exact (a mono, d epi).
    """
    rng = SplitMix64(cfg.seed).derive(4, 1 if short_exact_rows else 0)
    # bias: wide middles and narrow ends keep the boundary map's two legs
    # (a nonzero kernel on the right, a nonzero cokernel on the left) from
    # being starved; every dimension combination stays reachable
    dim_b = max(rand_dim(rng, cfg), rand_dim(rng, cfg))
    if short_exact_rows:
        dim_a = min(rng.below(dim_b + 1), rng.below(dim_b + 1))
        a = rand_mono(rng, cfg, dim_a, dim_b)
    else:
        a = rand_mor(rng, cfg, min(rand_dim(rng, cfg), rand_dim(rng, cfg)), dim_b)
    c = cokernel(a).coker_mor

    dim_b2 = max(rand_dim(rng, cfg), rand_dim(rng, cfg))
    if short_exact_rows:
        dim_c2 = min(rng.below(dim_b2 + 1), rng.below(dim_b2 + 1))
        d = rand_epi(rng, cfg, dim_b2, dim_c2)
    else:
        d = rand_mor(rng, cfg, dim_b2, min(rand_dim(rng, cfg), rand_dim(rng, cfg)))
    b = kernel(d).ker_mor

    v = _rand_intertwiner(rng, cfg, d, a)
    u = kernel_lift(kernel(d), v @ a)
    w = cokernel_colift(cokernel(a), d @ v)
    return validate(SnakeInput(a=a, c=c, u=u, v=v, w=w, b=b, d=d))
