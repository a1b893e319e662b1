"""Bundled orbifold inputs.

Two hand-checked global quotients of the projective line:

* ``p1_z2`` - the involution z -> -z.  Fixed points 0 and infinity give
  two order-2 twisted point sectors of shift 1/2; the ambient sector is
  localized with the standard torus z -> t z (weights +-1 at 0, inf).

* ``s3_p1`` - the full S3 = <r: z -> wz, s: z -> 1/z> action (w a cube
  root of unity).  The r-sector sits at 0 and infinity with shifts 1/3
  and 2/3, the s-sector at the two square roots of unity with shift
  1/2.  For h != identity the fixed points are already isolated, so the
  torus weights are 0 there; only the identity needs the torus.

The dicts below are the exact content of the JSON files shipped under
inputs/; keep them in sync (scripts/write_inputs.py regenerates).
"""

from __future__ import annotations


def _line(lam, zeta, w=0, tangent=False):
    return {"lambda": lam, "zeta": zeta, "w": w, "tangent": tangent}


def _pt(label, *lines):
    return {"point": label, "lines": list(lines)}


def p1_z2() -> dict:
    """[P1 / Z2] with the involution z -> -z."""
    point_sector = lambda label, zetas: {
        "name": label,
        "mg": 2,
        "exponents": [1],
        "cohomology": {"characters": {"0": [1], "1": [1]}},
        "localization": {
            "0": [_pt(label, _line("1/2", zetas[0]))],
            "1": [_pt(label, _line("1/2", zetas[1]))],
        },
    }
    return {
        "dim": 1,
        "group": {"order": 2, "table": [[0, 1], [1, 0]], "labels": ["e", "g"]},
        "classes": [
            {
                "rep": 0,
                "components": [
                    {
                        "name": "P1",
                        "mg": 1,
                        "exponents": [0],
                        "cohomology": {
                            "characters": {"0": [1, 0, 1], "1": [1, 0, 1]}
                        },
                        "localization": {
                            "0": [_pt("0", _line(0, 0, 1, True)),
                                  _pt("inf", _line(0, 0, -1, True))],
                            "1": [_pt("0", _line(0, "1/2", 1, True)),
                                  _pt("inf", _line(0, "1/2", -1, True))],
                        },
                    }
                ],
            },
            {
                "rep": 1,
                "components": [point_sector("pt0", ["0", "1/2"]),
                               point_sector("ptinf", ["0", "1/2"])],
            },
        ],
    }


# S3 as (a, eps) -> a + 3*eps with (a,eps)*(b,delta) = (a + (-1)^eps b, eps+delta)
_S3_TABLE = [
    [0, 1, 2, 3, 4, 5],
    [1, 2, 0, 4, 5, 3],
    [2, 0, 1, 5, 3, 4],
    [3, 5, 4, 0, 2, 1],
    [4, 3, 5, 1, 0, 2],
    [5, 4, 3, 2, 1, 0],
]


def s3_p1() -> dict:
    """[P1 / S3] with r: z -> wz, s: z -> 1/z (elements r^a s^eps = a + 3 eps)."""
    all_ones = {str(h): [1, 0, 1] for h in range(6)}
    # r-sector points: twist exponent m at 0 is 1 (r acts by w on T_0),
    # at infinity 2; h = r^k acts on the normal line by w^{k m}.
    def r_point(label, m):
        return {
            "name": f"r-{label}",
            "mg": 3,
            "exponents": [m],
            "cohomology": {"characters": {str(h): [1] for h in (0, 1, 2)}},
            "localization": {
                str(h): [_pt(label, _line(f"{m}/3", f"{(h * m) % 3}/3"))]
                for h in (0, 1, 2)
            },
        }
    # s-sector points z = +-1: s has derivative -1 there.
    def s_point(label):
        return {
            "name": f"s-{label}",
            "mg": 2,
            "exponents": [1],
            "cohomology": {"characters": {"0": [1], "3": [1]}},
            "localization": {
                "0": [_pt(label, _line("1/2", 0))],
                "3": [_pt(label, _line("1/2", "1/2"))],
            },
        }
    # identity sector: torus localization at 0, inf for h in <r>; the
    # reflections have their own isolated pairs of fixed points.
    loc = {
        "0": [_pt("0", _line(0, 0, 1, True)), _pt("inf", _line(0, 0, -1, True))],
        "1": [_pt("0", _line(0, "1/3", 0, True)),
              _pt("inf", _line(0, "2/3", 0, True))],
        "2": [_pt("0", _line(0, "2/3", 0, True)),
              _pt("inf", _line(0, "1/3", 0, True))],
        "3": [_pt("1", _line(0, "1/2", 0, True)),
              _pt("-1", _line(0, "1/2", 0, True))],
        "4": [_pt("w1", _line(0, "1/2", 0, True)),
              _pt("w2", _line(0, "1/2", 0, True))],
        "5": [_pt("v1", _line(0, "1/2", 0, True)),
              _pt("v2", _line(0, "1/2", 0, True))],
    }
    return {
        "dim": 1,
        "group": {"order": 6, "table": _S3_TABLE,
                  "labels": ["e", "r", "r2", "s", "rs", "r2s"]},
        "classes": [
            {
                "rep": 0,
                "components": [{
                    "name": "P1",
                    "mg": 1,
                    "exponents": [0],
                    "cohomology": {"characters": all_ones},
                    "localization": loc,
                }],
            },
            {"rep": 1, "components": [r_point("0", 1), r_point("inf", 2)]},
            {"rep": 3, "components": [s_point("1"), s_point("-1")]},
        ],
    }


BUNDLED = {"p1_z2": p1_z2, "s3_p1": s3_p1}
