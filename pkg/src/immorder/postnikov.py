"""Chain-level three-stage models for even cyclic groups.

The model complex X(k) over Z[Z/2k] has rank one in degrees 0..3 with
boundaries 1 - a, the norm N, and the twisted norm N_w.  It encodes the
third Postnikov stage governing almost-spin immersion targets with cyclic
fundamental group.  This module computes its cohomology with module
coefficients, decides when mod-2 degree-2 classes lift along coefficient
reductions, solves for equivariant degree-2 chain maps between models
covering a homomorphism of the groups (the single commutation identity
d2_D . h = c1 . phi#(d2_C) over the pushed-forward ring), certifies the
odd-index projection diagrams with their candidate verticals
(m^2 p, m p, p, p), decides the retraction obstruction for the augmentation
ideal, and evaluates the shift homomorphism
H_4(Z/n; Z^w) -> H_1(Z/n; (ker N)^w) by composing three explicit
snake-lemma connecting homomorphisms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .cohomology import CyclicHom, IllFormedHom
from .groupring import (
    CoefficientModule,
    GroupRingComplex,
    GroupRingElement,
    GroupRingMatrix,
    InvalidTwist,
    RingMismatch,
    coefficient_module,
    coefficients_complex,
    gr_mat_mul,
    gr_matrix,
    norm,
    regular_representation,
    standard_resolution,
    twisted_norm,
)
from .intalg import (
    FgAbelianGroup,
    IntComplex,
    IntMatrix,
    kernel_basis,
    solve_linear,
)


class UnsupportedCoefficient(ValueError):
    """Coefficient system not available for this computation."""


class InvalidClass(ValueError):
    """The given cohomology-class label is not a valid class."""


# ---------------------------------------------------------------------------
# the model complex and its cohomology


def model_complex_X(k: int) -> GroupRingComplex:
    """The degrees-0..3 model complex over Z[Z/2k].

    Boundaries: d1 = 1 - a, d2 = N (the norm), d3 = N_w (the twisted
    norm); consecutive boundaries compose to zero.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 2 * k
    d1 = GroupRingElement.one(n) - GroupRingElement.gen(n)
    return GroupRingComplex(
        n=n,
        ranks=(1, 1, 1, 1),
        boundaries=(gr_matrix([[d1]]), gr_matrix([[norm(n)]]), gr_matrix([[twisted_norm(n)]])),
    )


def model_cohomology(k_exp: int, coeff_name: str, degree: int = 2) -> FgAbelianGroup:
    """H^degree of the equivariant cochain complex Hom(X, A) for the group
    of order 2^k_exp.

    Coefficient names: "Z", "Zw", "Z2", "ZZ2w" (the last is Z[Z/2] with
    the generator acting by the coordinate swap).
    """
    if coeff_name not in ("Z", "Zw", "Z2", "ZZ2w"):
        raise UnsupportedCoefficient(f"unknown coefficient system {coeff_name!r}")
    if k_exp < 1:
        raise ValueError("group-order exponent must be >= 1")
    x = model_complex_X(2 ** (k_exp - 1))
    coeff = coefficient_module(coeff_name, x.n)
    cochain = coefficients_complex(x, coeff)[1]
    return cochain.homology(degree)


def lift_exists(k_exp: int, class_bit: int, along: str) -> bool:
    """Does the degree-2 mod-2 class lift along the coefficient reduction?

    `along` names the source of the reduction onto Z/2 coefficients:
    "Z" (reduction mod 2), "ZZ2w" (sum of the two coordinates mod 2), or
    "Z2" (the identity map).  `class_bit` labels the class in
    H^2(X; Z/2) = Z/2.
    """
    if class_bit not in (0, 1):
        raise InvalidClass(f"H^2 with Z/2 coefficients has classes 0 and 1, got {class_bit}")
    if along not in ("Z", "ZZ2w", "Z2"):
        raise UnsupportedCoefficient(f"no reduction to Z/2 from {along!r}")
    if class_bit == 0 or along == "Z2":
        return True
    x = model_complex_X(2 ** (k_exp - 1))
    n = x.n
    cochain_a = coefficients_complex(x, coefficient_module(along, n))[1]
    cochain_2 = coefficients_complex(x, coefficient_module("Z2", n))[1]
    # the label [1] must itself be a mod-2 cocycle in degree 2
    if not all(e % 2 == 0 for e in cochain_2.up[2].entries):
        raise AssertionError("degree-2 mod-2 coboundary is nonzero; class labels invalid")
    cocycles = kernel_basis(cochain_a.up[2])
    if along == "Z":
        reduction = IntMatrix.from_rows([[1]])
    else:
        reduction = IntMatrix.from_rows([[1, 1]])
    system = (reduction @ cocycles).hstack(cochain_2.up[1])
    return solve_linear(system, [class_bit], modulus=2) is not None


# ---------------------------------------------------------------------------
# equivariant chain maps between models


def push_forward(phi: CyclicHom, x: GroupRingElement) -> GroupRingElement:
    """The ring map Z[Z/l1] -> Z[Z/l2] induced by a -> a^m."""
    if x.n != phi.l1:
        raise RingMismatch("element lives over the wrong group ring for this homomorphism")
    out = [0] * phi.l2
    for i, c in enumerate(x.coeffs):
        if c:
            out[(phi.m * i) % phi.l2] += c
    return GroupRingElement(phi.l2, tuple(out))


def _push_matrix(phi: CyclicHom, mat: GroupRingMatrix) -> GroupRingMatrix:
    return gr_matrix([[push_forward(phi, e) for e in row] for row in mat])


def chain_map_exists(
    c_complex: GroupRingComplex,
    d_complex: GroupRingComplex,
    phi: CyclicHom,
    c1: GroupRingElement | GroupRingMatrix,
) -> GroupRingMatrix | None:
    """Solve for a degree-2 vertical h with d2_D . h = c1 . phi#(d2_C).

    c1 is the prescribed degree-1 vertical (a group-ring matrix over the
    target ring, shape D-rank-1 by C-rank-1; a bare element is accepted
    when both ranks are one).  Returns the witness matrix h (shape
    D-rank-2 by C-rank-2) or None when no integral solution exists; a
    returned witness is re-verified by exact group-ring multiplication.
    """
    if phi.l1 != c_complex.n or phi.l2 != d_complex.n:
        raise IllFormedHom("homomorphism does not connect the two group rings")
    if c_complex.top < 2 or d_complex.top < 2:
        raise ValueError("both complexes need degrees up to 2")
    if isinstance(c1, GroupRingElement):
        c1 = gr_matrix([[c1]])
    d1_rows, c1_rows = d_complex.ranks[1], c_complex.ranks[1]
    if (len(c1), len(c1[0]) if c1 else 0) != (d1_rows, c1_rows):
        raise ValueError("degree-1 vertical has the wrong shape")
    for row in c1:
        for e in row:
            if e.n != d_complex.n:
                raise RingMismatch("degree-1 vertical must live over the target ring")
    l2 = d_complex.n
    d2_c = c_complex.boundary(2)
    d2_d = d_complex.boundary(2)
    rhs = gr_mat_mul(c1, _push_matrix(phi, d2_c), l2)
    rows_d1, rank_c2, rank_d2 = d_complex.ranks[1], c_complex.ranks[2], d_complex.ranks[2]
    # unknowns: h[u][v] for u < rank_d2, v < rank_c2, each an element of Z[Z/l2]
    blocks = []
    b: list[int] = []
    zero_block = IntMatrix.zeros(l2, l2)
    for i in range(rows_d1):
        for v in range(rank_c2):
            row_blocks = []
            for u in range(rank_d2):
                for vp in range(rank_c2):
                    row_blocks.append(regular_representation(d2_d[i][u]) if vp == v else zero_block)
            blocks.append(row_blocks)
            b.extend(rhs[i][v].coeffs)
    system_rows = []
    for row_blocks in blocks:
        for r in range(l2):
            line: list[int] = []
            for blk in row_blocks:
                line.extend(blk.row_list(r))
            system_rows.append(line)
    system = IntMatrix.from_rows(system_rows) if system_rows else IntMatrix.zeros(0, rank_d2 * rank_c2 * l2)
    sol = solve_linear(system, b)
    if sol is None:
        return None
    h_rows = []
    for u in range(rank_d2):
        row = []
        for v in range(rank_c2):
            off = (u * rank_c2 + v) * l2
            row.append(GroupRingElement(l2, tuple(sol[off : off + l2])))
        h_rows.append(row)
    h = gr_matrix(h_rows)
    if gr_mat_mul(gr_matrix([[e for e in row] for row in d2_d]), h, l2) != rhs:
        raise AssertionError("solver produced a witness that fails the commutation identity")
    return h


@dataclass(frozen=True)
class ProjectionDiagram:
    """Result of certifying the odd-index projection diagram X(km) -> X(k).

    The candidate degree-2 vertical is m*p (p the generator-to-generator
    map); the degree-1 and degree-0 verticals are p.  `witness` is the
    solver's degree-2 vertical, which satisfies the same identity and
    agrees with the candidate in augmentation.
    """

    source_k: int
    target_k: int
    index: int
    exists: bool
    witness: GroupRingElement | None
    candidate: GroupRingElement


def verify_projection_diagram(source_k: int, target_k: int) -> ProjectionDiagram:
    """Certify the projection diagram for source group Z/2km onto Z/2k.

    Requires source_k = m * target_k with m odd.  Checks that the
    degree-1 square commutes with verticals (p, p), that the candidate
    degree-2 vertical m*p satisfies the degree-2 identity exactly, and
    runs the solver, whose witness is forced to share the candidate's
    augmentation m.
    """
    if target_k < 1 or source_k < 1 or source_k % target_k != 0:
        raise ValueError("source must be a multiple of the target")
    m = source_k // target_k
    if m % 2 == 0:
        raise ValueError("projection diagrams are certified for odd indices only")
    c = model_complex_X(source_k)
    d = model_complex_X(target_k)
    phi = CyclicHom(c.n, d.n, 1)
    p = GroupRingElement.one(d.n)
    # degree-1 square with verticals (p, p): phi#(1 - a) = 1 - a
    if push_forward(phi, c.boundary(1)[0][0]) != d.boundary(1)[0][0]:
        raise AssertionError("degree-1 square fails for the projection")
    # candidate degree-2 vertical m*p satisfies the identity on the nose:
    # N(2k) * (m*p) = p * phi#(N(2km)) = m * N(2k)
    candidate = p.scale(m)
    lhs = d.boundary(2)[0][0] * candidate
    rhs = p * push_forward(phi, c.boundary(2)[0][0])
    if lhs != rhs:
        raise AssertionError("candidate degree-2 vertical fails the identity")
    h = chain_map_exists(c, d, phi, p)
    witness = h[0][0] if h is not None else None
    if witness is not None and witness.augmentation() != m:
        raise AssertionError("witness augmentation disagrees with the diagram index")
    return ProjectionDiagram(
        source_k=source_k,
        target_k=target_k,
        index=m,
        exists=h is not None,
        witness=witness,
        candidate=candidate,
    )


# ---------------------------------------------------------------------------
# the retraction obstruction


def factorization_obstruction(k: int, full_module: bool = False) -> bool:
    """Is there NO module retraction of Z[Z/2k] onto the kernel of the norm?

    A module map f: Z[Z/2k] -> ker(N) is determined by y = f(1), which
    must satisfy eps(y) = 0, and restricts to the identity on ker(N)
    exactly when (1 - a) y = 1 - a.  Returns True when the linear system
    has no integral solution (the extension does not split).  With
    `full_module` the target constraint eps(y) = 0 is dropped (maps to
    the whole ring), and y = 1 always works.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 2 * k
    d1 = GroupRingElement.one(n) - GroupRingElement.gen(n)
    system = regular_representation(d1)
    b = list(d1.coeffs)
    if not full_module:
        system = system.vstack(IntMatrix.from_rows([[1] * n]))
        b.append(0)
    return solve_linear(system, b) is None


# ---------------------------------------------------------------------------
# the shift homomorphism


@dataclass(frozen=True)
class ShiftData:
    """Integer-matrix presentation of the three short exact sequences.

    Modules: R = Z[Z/n], Z (trivial), I = ker(eps) = ker(N), and the norm
    line (N) = ker(1 - a), all twisted by the character w.  Sequences:

      0 -> I  -> R -> Z   -> 0   (inclusion_i, proj_z)
      0 -> (N)-> R -> I   -> 0   (inclusion_n, proj_i: x -> (1-a) x)
      0 -> I  -> R -> (N) -> 0   (inclusion_i, proj_n: x -> N x)

    Each complex is the module tensored over the standard resolution,
    degrees 0..5 (chain side), so homology in degrees 1..4 is available.
    """

    n: int
    w: int
    inclusion_i: IntMatrix
    proj_z: IntMatrix
    inclusion_n: IntMatrix
    proj_i: IntMatrix
    proj_n: IntMatrix
    complex_ring: IntComplex
    complex_z: IntComplex
    complex_i: IntComplex
    complex_n: IntComplex


def shift_data(n: int, w: int) -> ShiftData:
    if n < 2:
        raise ValueError("group order must be >= 2")
    if w not in (0, 1):
        raise InvalidTwist("the orientation character is 0 or 1")
    if w == 1 and n % 2 != 0:
        raise InvalidTwist("a nontrivial character needs an even group order")
    eps = IntMatrix.from_rows([[1] * n])
    incl_i = kernel_basis(eps)
    gen_action = regular_representation(GroupRingElement.gen(n))
    # action of a on I in the chosen basis
    moved = gen_action @ incl_i
    t_cols = []
    for j in range(n - 1):
        q = solve_linear(incl_i, moved.col_list(j))
        if q is None:
            raise AssertionError("augmentation-ideal basis is not action-invariant")
        t_cols.append(q)
    t_i = IntMatrix.from_rows([[t_cols[j][i] for j in range(n - 1)] for i in range(n - 1)])
    # projection R -> I: multiplication by 1 - a, in I coordinates
    d1 = GroupRingElement.one(n) - GroupRingElement.gen(n)
    d1_mat = regular_representation(d1)
    p_cols = []
    for j in range(n):
        q = solve_linear(incl_i, d1_mat.col_list(j))
        if q is None:
            raise AssertionError("multiplication by 1 - a escaped the augmentation ideal")
        p_cols.append(q)
    proj_i = IntMatrix.from_rows([[p_cols[j][i] for j in range(n)] for i in range(n - 1)])
    incl_n = IntMatrix.column([1] * n)
    if not (eps @ incl_i).is_zero() or not (proj_i @ incl_n).is_zero():
        raise AssertionError("short exact sequences fail to compose to zero")
    res = standard_resolution(n, 5)

    def module_chain(rank: int, action: IntMatrix) -> IntComplex:
        twisted = action.scale(-1) if w else action
        coeff = CoefficientModule("internal", n, rank, twisted, 0)
        return coefficients_complex(res, coeff)[0]

    return ShiftData(
        n=n,
        w=w,
        inclusion_i=incl_i,
        proj_z=eps,
        inclusion_n=incl_n,
        proj_i=proj_i,
        proj_n=eps,
        complex_ring=module_chain(n, gen_action),
        complex_z=module_chain(1, IntMatrix.identity(1)),
        complex_i=module_chain(n - 1, t_i),
        complex_n=module_chain(1, IntMatrix.identity(1)),
    )


def _connecting(
    data: ShiftData,
    inclusion: IntMatrix,
    projection: IntMatrix,
    degree: int,
    cycle,
    rng: random.Random,
) -> tuple[int, ...]:
    """Snake-lemma connecting map at the given degree for one sequence.

    Lifts the cycle through the projection (adding a random kernel element
    so tests can certify independence of the choice), takes the boundary
    in the ring complex, and pulls the result back through the inclusion.
    """
    particular = solve_linear(projection, list(cycle))
    if particular is None:
        raise ValueError("representative is not hit by the projection")
    ker = kernel_basis(projection)
    lifted = list(particular)
    for j in range(ker.cols):
        t = rng.randint(-4, 4)
        col = ker.col_list(j)
        lifted = [x + t * y for x, y in zip(lifted, col)]
    boundary = data.complex_ring.down[degree - 1]
    db = boundary.apply_vec(lifted)
    pre = solve_linear(inclusion, db)
    if pre is None:
        raise AssertionError("boundary of the lift escaped the submodule")
    return tuple(pre)


@dataclass(frozen=True)
class ShiftResult:
    """The shifted class and everything met along the way.

    groups/classes/cycles are indexed by stage: degree 4 with Z^w
    coefficients, degree 3 with I^w, degree 2 with (N)^w, degree 1 with
    I^w.  classes hold canonical coordinates in the corresponding
    homology groups; cycles hold the chain-level representatives (which
    depend on the seed, unlike the classes).
    """

    n: int
    w: int
    input_multiple: int
    groups: tuple[FgAbelianGroup, FgAbelianGroup, FgAbelianGroup, FgAbelianGroup]
    classes: tuple[tuple[int, ...], ...]
    cycles: tuple[tuple[int, ...], ...]


def shift(n: int, w: int, c: int, seed: int = 0) -> ShiftResult:
    """Evaluate the composite connecting homomorphism on c times the
    generator of H_4(Z/n; Z^w).

    The value lands in H_1(Z/n; I^w) where I is the kernel of the norm;
    the intermediate degree-3 and degree-2 classes are reported as well.
    The homology class of the output is independent of `seed`, which only
    perturbs the chain-level preimage choices.
    """
    data = shift_data(n, w)
    rng = random.Random(seed)
    h4 = data.complex_z.homology_data(4)
    if h4.group.is_zero():
        z4: tuple[int, ...] = (0,)
    else:
        gen4 = h4.generator(0)
        z4 = tuple(c * x for x in gen4)
    z3 = _connecting(data, data.inclusion_i, data.proj_z, 4, z4, rng)
    z2 = _connecting(data, data.inclusion_n, data.proj_i, 3, z3, rng)
    z1 = _connecting(data, data.inclusion_i, data.proj_n, 2, z2, rng)
    h3 = data.complex_i.homology_data(3)
    h2 = data.complex_n.homology_data(2)
    h1 = data.complex_i.homology_data(1)
    return ShiftResult(
        n=n,
        w=w,
        input_multiple=c,
        groups=(h4.group, h3.group, h2.group, h1.group),
        classes=(h4.class_of(z4), h3.class_of(z3), h2.class_of(z2), h1.class_of(z1)),
        cycles=(tuple(z4), z3, z2, z1),
    )
