"""Named and random motives used by the test-suite and `selftest`."""
from __future__ import annotations

import random

from .algebra.matrix import Matrix
from .algebra.places import Place
from .algebra.poly import Poly
from .algebra.tower import FieldTower
from .motive import CharacteristicData, Motive, build, rings

DEFAULT_PLACE = "t"


def tower(q: int, e: int = 1) -> FieldTower:
    return FieldTower.from_defs(q, e)


def chardata_at(tw: FieldTower, place: str = DEFAULT_PLACE, theta: str = "0") -> CharacteristicData:
    """Characteristic data with one finite place (given in L-notation)."""
    R = rings(tw)
    return CharacteristicData(tw, [R.place(place)], [R.field_element(theta)])


def from_rows(cd: CharacteristicData, rows, mode: str = "ii-prime", name=None) -> Motive:
    R = rings(cd.tower)
    T = Matrix(R.KL, [[R.KL(R.element(str(x))) for x in row] for row in rows], len(rows))
    return build(cd, T, mode, name=name)


def carlitz(q: int, e: int = 1, c: str = "1", power: int = 1) -> Motive:
    """T = c (t - 0)^power at the place (t)."""
    cd = chardata_at(tower(q, e))
    name = "carlitz" if c == "1" and power == 1 else f"carlitz[c={c},k={power}]"
    return from_rows(cd, [[f"({c})*t^{power}"]], name=name)


def unit(q: int, e: int = 1, r: int = 1) -> Motive:
    cd = chardata_at(tower(q, e))
    return from_rows(cd, [["1" if i == j else "0" for j in range(r)] for i in range(r)], name="unit")


def drinfeld2(q: int, g: str = "1", e: int = 1) -> Motive:
    """Rank-2 motive of phi_t = theta + g tau + tau^2 (theta = 0): T = [[0, 1], [t, g]]."""
    cd = chardata_at(tower(q, e))
    return from_rows(cd, [["0", "1"], ["t", g]], name=f"drinfeld[g={g}]")


def unipotent(q: int, a: str = "1", b: str = "1", e: int = 1) -> Motive:
    """[[a, b], [0, a]]; not semisimple when b != 0 and e = 1."""
    cd = chardata_at(tower(q, e))
    return from_rows(cd, [[a, b], ["0", a]], name=f"unipotent[a={a},b={b}]")


def conjugate(M: Motive, P: Matrix, name=None) -> Motive:
    """The isomorphic motive P^-1 T sigma(P) (P invertible over L[t])."""
    R = M.rings
    T = P.inverse() * M.T * R.sigma_matrix(P)
    return build(M.chardata, T, M.mode, name=name or (f"{M.name}^P" if M.name else None))


def random_unimodular(tw: FieldTower, r: int, rng: random.Random, steps: int = 2,
                      max_degree: int = 1) -> Matrix:
    """Product of elementary matrices with entries of degree <= max_degree over L[t]."""
    R = rings(tw)
    L = tw.L
    P = Matrix.identity(R.KL, r)
    if r < 2:
        return Matrix.scalar(R.KL, r, R.KL(_random_unit(L, rng)))
    for _ in range(steps):
        i, j = rng.sample(range(r), 2)
        f = Poly(R.RL, [L.random_element(rng) for _ in range(max_degree + 1)])
        E = Matrix.identity(R.KL, r).copy()
        rows = [list(row) for row in E.rows]
        rows[i][j] = R.KL(f)
        P = P * Matrix(R.KL, rows, r)
    D = [[R.KL(_random_unit(L, rng)) if a == b else R.KL.zero for b in range(r)] for a in range(r)]
    return P * Matrix(R.KL, D, r)


def _random_unit(F, rng):
    while True:
        x = F.random_element(rng)
        if x:
            return x


def random_motive(q: int, e: int, r: int, rng: random.Random, k_max: int = 2,
                  max_degree: int = 3) -> Motive:
    """U1 diag((t - theta)^k_i) U2 with unimodular U1, U2 and deg_t T <= max_degree.

    theta = 0 at the place (t), so every validation mode accepts the result.
    """
    tw = tower(q, e)
    R = rings(tw)
    cd = chardata_at(tw)
    t = R.KL.gen
    for _ in range(100):
        ks = [rng.randint(0, k_max) for _ in range(r)]
        if not any(ks):
            ks[rng.randrange(r)] = 1
        D = Matrix(R.KL, [[t ** ks[i] if i == j else R.KL.zero for j in range(r)] for i in range(r)], r)
        U1 = random_unimodular(tw, r, rng, steps=rng.randint(0, 2))
        U2 = random_unimodular(tw, r, rng, steps=rng.randint(0, 2))
        T = U1 * D * U2
        if all(x.is_polynomial() and x.num.degree() <= max_degree for x in T.entries()):
            return build(cd, T, "ii-prime", name=f"random[q={q},e={e},r={r}]")
    raise RuntimeError("could not generate a motive within the degree bound")


def random_non_semisimple(q: int, rng: random.Random) -> Motive:
    """Conjugate of [[a, b], [0, a]] with a in {1, t, c t} and b != 0 over e = 1."""
    tw = tower(q, 1)
    R = rings(tw)
    cd = chardata_at(tw)
    Fq = tw.Fq
    t = R.KL.gen
    a = rng.choice([R.KL.one, t, R.KL(_random_unit(Fq, rng)) * t])
    b = R.KL(Poly(R.RL, [tw.fq_to_L(_random_unit(Fq, rng))])) * (t ** rng.randint(0, 1))
    M = build(cd, Matrix(R.KL, [[a, b], [R.KL.zero, a]], 2), "ii-prime", name="nonss")
    P = random_unimodular(tw, 2, rng, steps=2, max_degree=1)
    return conjugate(M, P, name="nonss^P")


def honda_tate_corpus(q: int = 3) -> list:
    """Simple motives over F_q sharing the characteristic data ((t), 0)."""
    D1 = drinfeld2(q, "1")
    R = D1.rings
    P = Matrix(R.KL, [[R.KL.one, R.KL.gen], [R.KL.zero, R.KL.one]], 2)
    return [
        carlitz(q),
        carlitz(q, c="-1"),
        carlitz(q, power=2),
        D1,
        drinfeld2(q, "-1"),
        conjugate(D1, P, name="drinfeld[g=1]^P"),
        unit(q),
    ]


def first_places(Fq, count: int, exclude=(), max_degree: int = 3) -> list:
    from .algebra.places import iter_places
    out = []
    for v in iter_places(Fq, max_degree):
        if v in exclude:
            continue
        out.append(v)
        if len(out) == count:
            break
    return out


__all__ = ["tower", "chardata_at", "from_rows", "carlitz", "unit", "drinfeld2", "unipotent",
           "conjugate", "random_unimodular", "random_motive", "random_non_semisimple",
           "honda_tate_corpus", "first_places", "Place"]
