"""Single runner for every identity the model is expected to satisfy.

Each check is an exact integer statement; there are no tolerances anywhere.
Failures never raise: they are returned as report entries (exceptions inside
a check are converted to failing entries) with witness data sufficient to
reproduce the comparison.  Randomized checks draw from an explicit seed
recorded in the report header.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .words import AXIS_PAIRS, Generator, Macro, Word, expand_macro, render
from .rep3 import IDENTITY3, decompose_sl3, word_image3
from .mesh.homology import (
    CurveRef,
    HomologyData,
    PROJECTION,
    defining_pair_check,
    intersection_number,
    mat_mul,
    tube_pattern,
    twist_matrix,
)
from .mesh.curves import cut_along, tube_section
from .rep6 import (
    GeneratorTable6,
    IDENTITY6,
    derive_twist6,
    word_image6,
)


@dataclass
class RelationReport:
    resolution: int
    seed: int
    tube_radius: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def add(self, name: str, claim: str, ok: bool, witness):
        self.checks.append(
            {
                "name": name,
                "claim": claim,
                "status": "pass" if ok else "fail",
                "witness": witness,
            }
        )

    def run(self, name: str, claim: str, thunk):
        """Evaluate a check; exceptions become failing entries, not errors."""
        try:
            ok, witness = thunk()
        except Exception as exc:  # noqa: BLE001 - report, never raise
            ok, witness = False, {"exception": f"{type(exc).__name__}: {exc}"}
        self.add(name, claim, ok, witness)

    def to_json(self) -> dict:
        return {
            "resolution": self.resolution,
            "seed": self.seed,
            "tube_radius": self.tube_radius,
            "all_passed": self.passed,
            "checks": self.checks,
        }

    def summary_lines(self):
        for c in self.checks:
            yield f"[{c['status'].upper():4s}] {c['name']}: {c['claim']}"


def _rows(m):
    return [list(r) for r in m]


def random_word(rng: random.Random, alphabet, max_len: int) -> Word:
    return tuple(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))


FULL_ALPHABET = tuple(
    Generator(k, s)
    for k in ("a12", "a13", "a21", "a23", "a31", "a32", "s", "t")
    for s in (1, -1)
)
SHEAR_ALPHABET = tuple(
    Generator(f"a{i}{j}", s) for (i, j) in AXIS_PAIRS for s in (1, -1)
)


def run_suite(table: GeneratorTable6, h: HomologyData, seed: int = 0) -> RelationReport:
    report = RelationReport(
        resolution=h.mesh.resolution, seed=seed, tube_radius=str(h.tube_radius)
    )

    def check_shear_images():
        bad = []
        for i, j in AXIS_PAIRS:
            m = word_image3((Generator(f"a{i}{j}", 1),))
            expect = tuple(
                tuple(
                    1 if r == c else (1 if (r, c) == (j - 1, i - 1) else 0)
                    for c in range(3)
                )
                for r in range(3)
            )
            if m != expect:
                bad.append({"generator": f"a{i}{j}", "got": _rows(m)})
        return not bad, bad or {"count": 6}

    report.run(
        "shear_images",
        "each shear maps to the identity plus one off-diagonal unit entry",
        check_shear_images,
    )

    def check_kernel_generators():
        ok = (
            word_image3((Generator("s", 1),)) == IDENTITY3
            and word_image3((Generator("t", 1),)) == IDENTITY3
        )
        return ok, {}

    report.run(
        "kernel_generators",
        "the swap and the reference twist act trivially downstairs",
        check_kernel_generators,
    )

    def check_twist_macros():
        bad = []
        for i, j in AXIS_PAIRS:
            w = expand_macro(Macro(f"t{i}{j}", 1))
            if word_image3(w) != IDENTITY3:
                bad.append({"macro": f"t{i}{j}", "got": _rows(word_image3(w))})
        return not bad, bad or {"count": 6}

    report.run(
        "twist_macros_downstairs",
        "every derived twist word acts trivially downstairs",
        check_twist_macros,
    )

    def check_rotations():
        bad = []
        for i, j in AXIS_PAIRS:
            m = word_image3(expand_macro(Macro(f"r{i}{j}", 1)))
            k = ({1, 2, 3} - {i, j}).pop()
            cols = [tuple(m[r][c] for r in range(3)) for c in range(3)]
            e = lambda a: tuple(1 if r == a - 1 else 0 for r in range(3))
            ne = lambda a: tuple(-1 if r == a - 1 else 0 for r in range(3))
            if not (
                cols[i - 1] == e(j) and cols[j - 1] == ne(i) and cols[k - 1] == e(k)
            ):
                bad.append({"macro": f"r{i}{j}", "got": _rows(m)})
        return not bad, bad or {"count": 6}

    report.run(
        "rotation_words",
        "each rotation word carries axis i to axis j and axis j to minus axis i",
        check_rotations,
    )

    def check_swap_involution():
        s6 = table.matrices["s"]
        sq = mat_mul(s6, s6)
        ok = sq == IDENTITY6
        return ok, {"matrix": _rows(s6)} if ok else {"square": _rows(sq)}

    report.run(
        "swap_involution",
        "the surface action of the swap squares to the identity",
        check_swap_involution,
    )

    def check_twist_pairs():
        bad = []
        for i, j in AXIS_PAIRS:
            m1 = word_image6(expand_macro(Macro(f"t{i}{j}", 1)), table)
            m2 = word_image6(expand_macro(Macro(f"t{j}{i}", 1)), table)
            if mat_mul(m2, m1) != IDENTITY6:
                bad.append({"pair": f"t{i}{j}*t{j}{i}", "got": _rows(mat_mul(m2, m1))})
        return not bad, bad or {"count": 6}

    report.run(
        "twist_inverse_pairs",
        "opposite twist macros are mutually inverse on surface homology",
        check_twist_pairs,
    )

    def check_handedness():
        word_t13 = expand_macro(Macro("t13", 1))
        pair_tube = tube_section(
            h.mesh, 2, (Fraction(0), Fraction(1, 2)), h.tube_radius
        )
        if len(pair_tube.loops) != 4:
            return False, {"pair_tube_loops": len(pair_tube.loops)}
        winners = []
        details = {}
        for pattern in ("all_plus", "alternating"):
            mats = dict(table.matrices)
            mats["t"] = derive_twist6(h, pattern)
            trial = GeneratorTable6(
                matrices=mats,
                provenance={},
                candidate_counts={},
                handedness=pattern,
                resolution=h.mesh.resolution,
                tube_radius=str(h.tube_radius),
            )
            lhs = word_image6(word_t13, trial)
            eps = tube_pattern(h, pair_tube, pattern)
            loops = [
                (CurveRef(pair_tube, i), eps[i]) for i in range(len(pair_tube.loops))
            ]
            rhs = twist_matrix(h, loops)
            details[pattern] = {"conjugated": _rows(lhs), "direct": _rows(rhs)}
            if lhs == rhs:
                winners.append(pattern)
        ok = len(winners) == 1 and winners[0] == table.handedness
        witness = {"winners": winners, "table_handedness": table.handedness}
        if not ok:
            witness["details"] = details
        return ok, witness

    report.run(
        "handedness_arbiter",
        "exactly one twist pattern is consistent under conjugation to the "
        "(1,3) disk-pair tube, and the table uses it",
        check_handedness,
    )

    def check_intertwining():
        rng = random.Random(seed)
        bad = []
        tests = [(g,) for g in FULL_ALPHABET] + [
            random_word(rng, FULL_ALPHABET, 20) for _ in range(100)
        ]
        for w in tests:
            lhs = mat_mul(PROJECTION, word_image6(w, table))
            rhs = mat_mul(word_image3(w), PROJECTION)
            if lhs != rhs:
                bad.append(
                    {
                        "word": render(w),
                        "projected_surface_action": _rows(lhs),
                        "ambient_action_projected": _rows(rhs),
                    }
                )
                if len(bad) >= 3:
                    break
        return not bad, bad or {"words_tested": len(tests)}

    report.run(
        "projection_intertwining",
        "winding part of the surface action equals the ambient action on all "
        "generators and 100 seeded random words",
        check_intertwining,
    )

    def check_mesh_facts():
        problems = []
        refs = list(h.disk_sections_a) + list(h.disk_sections_b)
        names = [f"A{i}" for i in (1, 2, 3)] + [f"B{i}" for i in (1, 2, 3)]
        for x in range(6):
            for y in range(x + 1, 6):
                alg, geo = intersection_number(h, refs[x], refs[y])
                same_family = (x < 3) == (y < 3)
                expect_geo = 0 if same_family or (x % 3 == y % 3) else 2
                if alg != 0 or geo != expect_geo:
                    problems.append(
                        {
                            "pair": f"{names[x]},{names[y]}",
                            "algebraic": alg,
                            "geometric": geo,
                        }
                    )
        for i in (1, 2, 3):
            for j in (1, 2, 3):
                if defining_pair_check(h, i, j) != (i == j):
                    problems.append({"defining_pair": (i, j)})
        tube = h.tubes[2]
        if len(tube.loops) != 4:
            problems.append({"tube_loops": len(tube.loops)})
        for loop in tube.loops:
            if loop.displacement not in ((0, 0, 1), (0, 0, -1)):
                problems.append({"loop_displacement": loop.displacement})
        pieces = cut_along(h.mesh, tube)
        if not (
            len(pieces) == 2
            and all(
                p["euler_characteristic"] == -2 and p["genus"] == 0 for p in pieces
            )
        ):
            problems.append({"cut_pieces": pieces})
        witness = problems or {
            "pairs": 15,
            "cut_pieces": [p["euler_characteristic"] for p in pieces],
        }
        return not problems, witness

    report.run(
        "mesh_facts",
        "15 distinguished crossing counts, defining-pair verdicts, 4 tube "
        "longitudes and two planar complementary pieces",
        check_mesh_facts,
    )

    def check_decomposition():
        rng = random.Random(seed + 1)
        bad = []
        for idx in range(1000):
            w = random_word(rng, SHEAR_ALPHABET, 30)
            m = word_image3(w)
            w2 = decompose_sl3(m)
            if word_image3(w2) != m:
                bad.append({"index": idx, "word": render(w)})
                if len(bad) >= 3:
                    break
        return not bad, bad or {"words_tested": 1000}

    report.run(
        "decomposition_roundtrip",
        "1000 seeded random shear words decompose and re-evaluate exactly",
        check_decomposition,
    )

    return report
