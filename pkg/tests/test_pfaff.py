from __future__ import annotations

import numpy as np
import pytest

from belowcolor.errors import GuardError
from belowcolor.ffield import Q, Rng
from belowcolor.pfaff import (
    SkewRingMatrix,
    field_determinant,
    field_pfaffian,
    pfaffian,
    pfaffian_bruteforce,
    pfaffian_chain_tops,
    pfaffian_ranked,
)
from belowcolor.sqring import RingElement, from_sparse_terms, ranked_mobius


def random_sparse(p: int, rng: Rng, density: float, with_constant: bool) -> RingElement:
    c = rng.sample_array(1 << p)
    c[rng.random(1 << p) >= density] = 0
    if not with_constant:
        c[0] = 0
    return RingElement(p, c)


def random_matrix(dim: int, p: int, rng: Rng, fill: float = 0.7, density: float = 0.5,
                  constants: str = "all") -> SkewRingMatrix:
    upper = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            if rng.random() < fill:
                with_const = constants == "all" or (constants == "some" and rng.random() < 0.5)
                upper[(i, j)] = random_sparse(p, rng, density, with_const)
    return SkewRingMatrix.from_upper(p, dim, upper)


def random_field_skew(dim: int, rng: Rng) -> list[list[int]]:
    rows = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            v = rng.sample_uniform()
            rows[i][j], rows[j][i] = v, (-v) % Q
    return rows


def sym(p: int, *terms: tuple[int, int]) -> RingElement:
    return from_sparse_terms(p, list(terms))


def test_dim0_and_dim2():
    assert pfaffian(SkewRingMatrix(0, 3, ())) == RingElement.one(3)
    a = sym(2, (0, 4), (0b01, 9))
    m = SkewRingMatrix.from_upper(2, 2, {(0, 1): a})
    assert pfaffian(m) == a == pfaffian_bruteforce(m)


def test_dim4_three_term_expansion():
    rng = Rng(4)
    m = random_matrix(4, 3, rng, fill=1.0, density=1.0)
    e = m.entries
    expected = e[0][1] * e[2][3] - e[0][2] * e[1][3] + e[0][3] * e[1][2]
    assert pfaffian_bruteforce(m) == expected
    assert pfaffian(m) == expected
    assert pfaffian(m, "division_free") == expected


def test_zero_row_gives_zero():
    rng = Rng(5)
    m = random_matrix(6, 2, rng, fill=1.0)
    rows = [list(r) for r in m.entries]
    zero = RingElement.zero(2)
    for j in range(6):
        rows[2][j] = zero
        rows[j][2] = zero
    z = SkewRingMatrix(6, 2, tuple(tuple(r) for r in rows))
    assert pfaffian_bruteforce(z).is_zero()
    assert pfaffian(z).is_zero()


@pytest.mark.parametrize("constants", ["all", "some", "none"])
def test_routes_agree_with_bruteforce(constants):
    rng = Rng({"all": 1, "some": 2, "none": 3}[constants])
    for trial in range(40):
        dim = 2 * (1 + trial % 4)
        p = trial % 5
        m = random_matrix(dim, p, rng, constants=constants)
        ref = pfaffian_bruteforce(m)
        assert pfaffian(m) == ref
        assert pfaffian(m, "division_free") == ref


def test_field_pfaffian_squared_is_determinant():
    rng = Rng(10)
    for dim in (0, 2, 4, 6, 8, 10):
        rows = random_field_skew(dim, rng)
        pf = field_pfaffian(rows)
        assert pf * pf % Q == field_determinant(rows)


def test_field_determinant_small():
    assert field_determinant([[2, 3], [5, 7]]) == (14 - 15) % Q
    assert field_determinant([[0, 1], [1, 0]]) == Q - 1
    assert field_determinant([[1, 2], [2, 4]]) == 0
    assert field_determinant([]) == 1


def test_simultaneous_transposition_flips_sign():
    rng = Rng(11)
    for trial in range(10):
        dim = 2 * (1 + trial % 4)
        m = random_matrix(dim, 3, rng)
        i, j = sorted(rng.permutation(dim)[:2].tolist())
        perm = list(range(dim))
        perm[i], perm[j] = j, i
        swapped = SkewRingMatrix(dim, 3, tuple(tuple(m.entries[perm[a]][perm[b]] for b in range(dim))
                                                for a in range(dim)))
        assert pfaffian(swapped) == -pfaffian(m)


def test_validation():
    a = RingElement.one(1)
    with pytest.raises(ValueError):
        SkewRingMatrix(2, 1, ((RingElement.zero(1), a), (a, RingElement.zero(1))))
    with pytest.raises(ValueError):
        SkewRingMatrix(1, 1, ((a,),))
    odd = SkewRingMatrix.from_upper(1, 3, {(0, 1): a})
    with pytest.raises(ValueError):
        pfaffian(odd)
    with pytest.raises(ValueError):
        pfaffian_bruteforce(odd)
    with pytest.raises(ValueError):
        pfaffian(SkewRingMatrix(0, 1, ()), "cayley")
    with pytest.raises(GuardError):
        pfaffian_bruteforce(SkewRingMatrix.from_upper(0, 14, {}))


def test_nilpotent_remainder_larger_than_p_is_zero():
    # every entry nilpotent and dim/2 > p: each matching term has too many factors
    rng = Rng(13)
    m = random_matrix(8, 3, rng, fill=1.0, constants="none")
    assert pfaffian(m).is_zero() and pfaffian_bruteforce(m).is_zero()


def test_chunked_lanes_match_single_chunk():
    rng = Rng(14)
    m = random_matrix(6, 6, rng)
    pairs = m.upper_pairs()
    raw = np.array([m.entries[i][j].coeffs for i, j in pairs])
    whole = pfaffian_ranked(raw, pairs, 6, 6)
    tiny = pfaffian_ranked(raw, pairs, 6, 6, chunk_bytes=1)
    assert np.array_equal(ranked_mobius(whole, 6), ranked_mobius(tiny, 6))


def test_chain_tops_match_explicit_products():
    rng = Rng(15)
    p = 4
    m = random_matrix(4, p, rng, constants="some")
    factors = [random_sparse(p, rng, 0.7, False) for _ in range(3)]
    pairs = m.upper_pairs()
    raw = np.array([m.entries[i][j].coeffs for i, j in pairs])
    chain = np.array([f.coeffs for f in factors])
    acc = pfaffian_bruteforce(m)
    expected = [int(acc.coeffs[-1])]
    for f in factors:
        acc = acc * f
        expected.append(int(acc.coeffs[-1]))
    assert pfaffian_chain_tops(raw, pairs, 4, p, chain) == expected
    assert pfaffian_chain_tops(raw, pairs, 4, p, chain, chunk_bytes=1) == expected
